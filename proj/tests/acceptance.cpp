// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "runner.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace padicv;

namespace {

/// Wall-clock budget for one sum-estimate index.
constexpr long kPerNBudgetMs = 60000;
/// Digits of agreement required between the series and carry paths at N = 6.
constexpr long kMinAgreeDigits = 30;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

std::string cell(const Report& r, size_t row, const std::string& col) {
    for (size_t i = 0; i < r.columns.size(); ++i)
        if (r.columns[i] == col) return r.rows.at(row).at(i);
    throw std::out_of_range("no column " + col);
}

std::string param(const Report& r, const std::string& key) {
    for (auto& [k, v] : r.params)
        if (k == key) return v;
    throw std::out_of_range("no param " + key);
}

RunConfig config(long p, long f, long k, long d, std::vector<long> N = {6, 8, 10}) {
    RunConfig c;
    c.p = p;
    c.f = f;
    c.k = k;
    c.d = d;
    c.N = std::move(N);
    c.timing = true;
    validate(c);
    return c;
}

std::map<long, std::string> table_A;  // N -> v_sum for (3,1,1,4), reused by criterion 2

void sum_estimates(Outcome& o) {
    struct Case {
        const char* name;
        RunConfig cfg;
    };
    std::vector<Case> cases = {{"(3,1,1,4)", config(3, 1, 1, 4)},
                               {"(2,1,1,3)", config(2, 1, 1, 3)},
                               {"(3,1,3,4)", config(3, 1, 3, 4, {7, 9})}};
    for (auto& c : cases) {
        Report all = run("sum-estimate", c.cfg, &std::cerr);
        o.require(all.pass, std::string(c.name) + " verdict");
        o.detail << " " << c.name << ":";
        for (size_t i = 0; i < all.rows.size(); ++i) {
            long N = std::stol(cell(all, i, "N"));
            RunConfig one = c.cfg;
            one.N = {N};
            Report single = run("sum-estimate", one, nullptr);
            o.require(single.runtime_ms <= kPerNBudgetMs, std::string(c.name) + " N=" + std::to_string(N) + " runtime");
            o.require(cell(single, 0, "v_sum") == cell(all, i, "v_sum"), "single-N rerun differs");
            o.detail << " N=" << N << " v=" << cell(all, i, "v_sum") << " (" << single.runtime_ms << " ms)";
            if (std::string(c.name) == "(3,1,1,4)") table_A[N] = cell(all, i, "v_sum");
        }
    }
}

void zeta_profile(Outcome& o) {
    Report r = run("zeta-valuations", config(3, 1, 1, 4), &std::cerr);
    o.require(r.pass, "verdict");
    for (size_t i = 0; i < r.rows.size(); ++i) {
        long N = std::stol(cell(r, i, "N"));
        o.require(table_A.count(N) && table_A[N] == cell(r, i, "v_carry"), "profile differs from criterion 1 at N=" + std::to_string(N));
        if (N == 6) {
            std::string a = cell(r, i, "agree_digits");
            o.require(a != "-" && std::stol(a) >= kMinAgreeDigits, "series agreement at N=6");
            o.require(cell(r, i, "v_series") == cell(r, i, "v_carry"), "series valuation at N=6");
            o.detail << " N=6 agree_digits=" << a;
        }
        o.detail << " N=" << N << " v=" << cell(r, i, "v_carry");
    }
}

void ode(Outcome& o) {
    RunConfig c = config(3, 1, 1, 4);
    c.order = 200;
    c.prec = 60;
    Report r = run("ode-check", c, &std::cerr);
    o.require(r.pass, "verdict");
    o.require(r.rows.size() == 201, "coefficients y^0..y^200");
    long floor = std::stol(param(r, "precision_floor"));
    for (size_t i = 0; i < r.rows.size(); ++i) {
        o.require(cell(r, i, "exact_residual") == "0", "exact residual at j=" + std::to_string(i));
        o.require(cell(r, i, "padic_zero") == "yes" && std::stol(cell(r, i, "absprec")) >= floor,
                  "p-adic residual at j=" + std::to_string(i));
    }
    o.detail << " through y^200 at prec 60, precision floor " << floor;
}

void micro(Outcome& o) {
    for (long d : {2L, 3L}) {
        RunConfig c = config(5, 1, 1, d);
        c.K_neg = 20;
        Report r = run("micro-inverse", c, &std::cerr);
        o.require(r.pass, "d=" + std::to_string(d));
        o.detail << " d=" << d << ": left " << param(r, "left_norm_K") << "->" << param(r, "left_norm_2K") << ", right "
                 << param(r, "right_norm_K") << "->" << param(r, "right_norm_2K");
    }
}

void dwork(Outcome& o) {
    for (long q : {2L, 3L}) {
        RunConfig c = config(3, 1, 1, 4);
        c.dwork_q = q;
        c.dwork_K = 12;
        Report r = run("dwork-check", c, &std::cerr);
        o.require(r.pass, "q=" + std::to_string(q));
        long through = 1L << 40;
        for (size_t i = 0; i < r.rows.size(); ++i) through = std::min(through, std::stol(cell(r, i, "checked_through")));
        o.require(through >= 12 - q, "checked through K - q");
        o.detail << " q=" << q << " exact through " << through;
    }
}

void beta_cocycle(Outcome& o) {
    RunConfig c = config(3, 1, 1, 4);
    c.samples = 50;
    Report b = run("beta-check", c, &std::cerr);
    Report k = run("cocycle-check", c, &std::cerr);
    o.require(b.pass, "beta");
    o.require(k.pass, "cocycle");
    long translations = 0;
    for (size_t i = 0; i < b.rows.size(); ++i) translations += cell(b, i, "kind") == "translation" && cell(b, i, "m_max") == "30";
    o.require(translations == 3, "translations with m <= 30");
    o.require(b.rows.size() == 53 && k.rows.size() == 50, "50 samples");
    o.detail << " " << translations << " translations (m<=30), 50 beta samples, 50 cocycle samples";
}

void carries(Outcome& o) {
    RunConfig c = config(3, 1, 1, 4);
    c.cases = 10000;
    Report r = run("kummer-table", c, &std::cerr);
    o.require(r.pass, "kummer");
    o.require(cell(r, 0, "cases") == "10000" && cell(r, 1, "cases") == "1000", "case counts");
    std::set<std::string> patterns;
    long rows = 0;
    for (auto [p, d] : {std::pair{2L, 3L}, std::pair{3L, 4L}, std::pair{5L, 6L}}) {
        Report qx = run("qexp-check", config(p, 1, 1, d), &std::cerr);
        o.require(qx.pass, "qexp q=" + std::to_string(p));
        for (size_t i = 0; i < qx.rows.size(); ++i) patterns.insert(cell(qx, i, "case"));
        rows += static_cast<long>(qx.rows.size());
    }
    o.require(patterns == std::set<std::string>{"a", "b", "c", "d", "e"}, "all five digit patterns");
    o.detail << " kummer 10000+1000, " << rows << " (q,k,N) indices, patterns " << patterns.size();
}

void properties(Outcome& o) {
    RunConfig c = config(3, 1, 1, 4);
    c.cases = 300;
    Report r = run("star-props", c, &std::cerr);
    o.require(r.pass, "verdict");
    for (size_t i = 0; i < r.rows.size(); ++i) {
        o.require(std::stol(cell(r, i, "cases")) >= 300, cell(r, i, "property") + " case count");
        o.detail << " " << cell(r, i, "property") << "=" << cell(r, i, "failures") << "/" << cell(r, i, "cases");
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<int, std::function<void(Outcome&)>>> criteria = {
        {1, sum_estimates}, {2, zeta_profile}, {3, ode},     {4, micro},
        {5, dwork},         {6, beta_cocycle}, {7, carries}, {8, properties},
    };
    bool all = true;
    for (auto& [id, fn] : criteria) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            fn(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << ms << " ms)" << o.detail.str()
                  << std::endl;
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
