#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace padicv {

/// Exit codes of the runner.
enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2, kPrecisionExhausted = 3 };

/// Invalid configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    long p = 3, f = 1, k = 1, d = 4;
    std::vector<long> N{6, 8, 10};
    long order = 200;        ///< series order for ode-check
    long K_neg = 20;         ///< micro-inverse truncation (compared against 2 K_neg)
    long K_pos = 12;         ///< beta / cocycle truncation
    long dwork_q = 2, dwork_K = 12;
    long prec = 60;
    std::string format = "json";
    std::uint64_t seed = 1;
    long cases = 300;        ///< randomized cases per property
    long samples = 50;       ///< sampled group elements for beta-check and cocycle-check
    bool timing = false;     ///< report measured runtime_ms instead of 0
    long q() const;
    /// k rescaled to d = q+1.
    long k_unramified() const;
};

/// Reads "key = value" lines on top of base; "#" comments, "[table]" headers, quoted values and
/// "N = [6, 8, 10]" are accepted, so flat TOML files parse. Throws ConfigError.
RunConfig parse_config_file(const std::string& path, RunConfig base = {});
/// Applies one key/value pair. Throws ConfigError for unknown keys or bad values.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);
/// Throws ConfigError naming the violated rule.
void validate(const RunConfig& cfg);

struct Report {
    std::string command;
    std::string paper_ref;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    bool pass = false;
    long runtime_ms = 0;
};

/// Subcommand names, "all" last.
const std::vector<std::string>& commands();

/// Runs one subcommand (not "all"). Progress lines go to progress when non-null.
/// Throws ConfigError for an unknown command and padic::PrecisionExhausted when precision runs out.
Report run(const std::string& command, const RunConfig& cfg, std::ostream* progress = nullptr);
/// Every subcommand in order.
std::vector<Report> run_all(const RunConfig& cfg, std::ostream* progress = nullptr);

std::string emit(const Report& r, const std::string& format);
std::string emit(const std::vector<Report>& rs, const std::string& format);
Report parse_json_report(const std::string& text);
Report parse_csv_report(const std::string& text);

/// Full command-line entry point; returns the process exit code.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace padicv
