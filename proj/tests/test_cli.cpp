#include "doctest.h"

#include "runner.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace padicv;

namespace {

struct Proc {
    int rc = -1;
    std::string out;
};

/// Runs the padicv binary named by $PADICV with stderr discarded.
Proc run_bin(const std::string& args) {
    const char* bin = std::getenv("PADICV");
    REQUIRE_MESSAGE(bin != nullptr, "PADICV must name the padicv binary");
    std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    Proc p;
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) p.out.append(buf.data(), n);
    int st = pclose(f);
    p.rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return p;
}

std::string temp_file(const std::string& name, const std::string& body) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << body;
    return path.string();
}

std::string param(const Report& r, const std::string& key) {
    for (auto& [k, v] : r.params)
        if (k == key) return v;
    return "<missing>";
}

bool same(const Report& a, const Report& b) {
    return a.command == b.command && a.paper_ref == b.paper_ref && a.params == b.params && a.columns == b.columns &&
           a.rows == b.rows && a.pass == b.pass && a.runtime_ms == b.runtime_ms;
}

}  // namespace

TEST_CASE("output is byte-identical across runs") {
    auto a = run_bin("dwork-check");
    auto b = run_bin("dwork-check");
    CHECK(a.rc == kPass);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"runtime_ms\": 0") != std::string::npos);
    auto c = run_bin("kummer-table --seed 7 --cases 500 --format csv");
    auto d = run_bin("kummer-table --seed 7 --cases 500 --format csv");
    CHECK(c.out == d.out);
    CHECK(c.rc == kPass);
}

TEST_CASE("exit codes") {
    CHECK(run_bin("--help").rc == kPass);
    CHECK(run_bin("").rc == kUsage);
    CHECK(run_bin("no-such-command").rc == kUsage);
    CHECK(run_bin("dwork-check --bogus 1").rc == kUsage);
    CHECK(run_bin("dwork-check --p 4").rc == kUsage);
    CHECK(run_bin("dwork-check --d 3").rc == kUsage);       // d must divide q+1
    CHECK(run_bin("dwork-check --p 5 --d 5").rc == kUsage);  // p divides d
    CHECK(run_bin("dwork-check --prec 0").rc == kUsage);
    CHECK(run_bin("dwork-check --format xml").rc == kUsage);
    CHECK(run_bin("dwork-check --config /nonexistent/padicv.cfg").rc == kUsage);
    auto bad = temp_file("padicv_unknown.cfg", "p = 3\nfrobnicate = 2\n");
    CHECK(run_bin("dwork-check --config " + bad).rc == kUsage);
    CHECK_THROWS_AS(parse_config_file(bad), ConfigError);
    CHECK_THROWS_AS(parse_config_file("/nonexistent/padicv.cfg"), ConfigError);
}

TEST_CASE("parity rule rejects N") {
    CHECK(run_bin("sum-estimate --N 7").rc == kUsage);
    CHECK(run_bin("sum-estimate --N 4").rc == kUsage);
    RunConfig c;
    c.N = {6, 7};
    CHECK_THROWS_AS(validate(c), ConfigError);
    c.N = {7};
    c.k = 3;  // k = q > 2 needs odd N
    CHECK_NOTHROW(validate(c));
    c.N = {8};
    CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("flags override the configuration file") {
    auto cfg = temp_file("padicv_prec.cfg", "# comment\nprec = 30   # trailing comment\nN = 6\n");
    auto from_file = parse_json_report(run_bin("sum-estimate --config " + cfg).out);
    CHECK(param(from_file, "prec") == "30");
    CHECK(param(from_file, "N") == "6");
    auto over = run_bin("sum-estimate --config " + cfg + " --Prec 45");
    CHECK(over.rc == kPass);
    CHECK(param(parse_json_report(over.out), "prec") == "45");
    CHECK(param(parse_json_report(run_bin("sum-estimate --config " + cfg + " --prec 41").out), "prec") == "41");
}

TEST_CASE("valuations print as exact rationals") {
    auto r = parse_csv_report(run_bin("sum-estimate --N 6 --format csv").out);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.columns == std::vector<std::string>{"N", "n_N", "M", "s", "v_sum", "v_dominant", "bound"});
    CHECK(r.rows[0] == std::vector<std::string>{"6", "456", "5", "92", "-3", "-3", "-3/2"});
    CHECK(r.pass);
}

TEST_CASE("empty rows and failing verdicts") {
    Report r;
    r.command = "x";
    r.paper_ref = "none";
    r.columns = {"a"};
    auto js = emit(r, "json");
    CHECK(js.find("\"rows\": []") != std::string::npos);
    CHECK(js.find("\"verdict\": \"FAIL\"") != std::string::npos);
    CHECK(emit(r, "csv").find("# verdict: FAIL") != std::string::npos);
    CHECK(same(parse_json_report(js), r));
    CHECK(same(parse_csv_report(emit(r, "csv")), r));
}

TEST_CASE("JSON and CSV round trips") {
    RunConfig c;
    c.samples = 3;
    for (auto cmd : {"dwork-check", "beta-check", "qexp-check", "sum-estimate"}) {
        auto r = run(cmd, c);
        CHECK(r.pass);
        CHECK(same(parse_json_report(emit(r, "json")), r));
        CHECK(same(parse_csv_report(emit(r, "csv")), r));
    }
    Report q;
    q.command = "quoting";
    q.paper_ref = "cells with \"quotes\", commas";
    q.params = {{"a", "1,2"}};
    q.columns = {"c,1", "c2"};
    q.rows = {{"x,\"y\"", ""}};
    q.pass = true;
    CHECK(same(parse_csv_report(emit(q, "csv")), q));
    CHECK(same(parse_json_report(emit(q, "json")), q));
}

TEST_CASE("all aggregates every command") {
    CHECK(commands().back() == "all");
    CHECK(commands().size() == 11);
    CHECK_THROWS_AS(run("all", RunConfig{}), ConfigError);
    std::vector<Report> rs(2);
    rs[0].command = "a";
    rs[0].pass = true;
    rs[1].command = "b";
    rs[1].pass = false;
    auto js = emit(rs, "json");
    CHECK(js.find("\"command\": \"all\"") != std::string::npos);
    CHECK(js.rfind("\"verdict\": \"FAIL\"") != std::string::npos);
    CHECK(emit(rs, "csv").find("# overall: FAIL") != std::string::npos);
}
