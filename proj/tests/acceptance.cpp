// Runs both verification suites with the default configuration and prints one
// PASS/FAIL line per acceptance criterion.  Exit status 0 iff every line passes.

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "wcalc/harness.hpp"

using namespace wcalc;

namespace {

struct Criterion {
    int id;
    const char* title;
    std::vector<std::string> checks;
};

std::map<std::string, CheckResult> by_name;

// all named checks ran and passed; the summary lists value against tolerance
bool suite_criterion(const Criterion& c, std::string& summary) {
    bool ok = true;
    for (const auto& n : c.checks) {
        const auto it = by_name.find(n);
        char buf[160];
        if (it == by_name.end()) {
            std::snprintf(buf, sizeof buf, "%s=missing", n.c_str());
            ok = false;
        } else {
            const CheckResult& r = it->second;
            std::snprintf(buf, sizeof buf, "%s=%s(%.2g/%.2g)", n.c_str(), r.status.c_str(), r.value,
                          r.tolerance);
            ok = ok && r.status == "pass";
        }
        if (!summary.empty()) summary += " ";
        summary += buf;
    }
    return ok;
}

bool exponent_criterion(std::string& summary) {
    const auto E = [](const char* s) { return ExtExponent::parse(s); };
    const ExtExponent two = E("2"), one = E("1"), inf = ExtExponent::inf();
    struct Case {
        const char* what;
        bool got, want;
    };
    const Case cases[] = {
        {"twist(2..2)", check_exponents_twist(two, two, two, two, two, two), true},
        {"weyl(2..2)", check_exponents_weyl(two, two, two, two, two, two), true},
        {"weyl(p=1,q=inf)", check_exponents_weyl(one, one, one, inf, inf, inf), false},
        {"twist(q order)", check_exponents_twist(two, two, two, one, inf, one), false},
        {"corollary(2,2)", check_exponents_twist_corollary(two, two), true},
        {"corollary(3,3/2)", check_exponents_twist_corollary(E("3"), E("3/2")), true},
        {"corollary(4/3,4/3)", check_exponents_twist_corollary(E("4/3"), E("4/3")), true},
        {"corollary(3,2)", check_exponents_twist_corollary(E("3"), two), false},
        {"corollary(3/2,2)", check_exponents_twist_corollary(E("3/2"), two), false},
        {"lebesgue(2,2,2)", check_exponents_twist_lebesgue(two, two, two), true},
        {"lebesgue(2,2,1)", check_exponents_twist_lebesgue(two, two, one), false},
        {"young(1,1;1)", check_exponents_young({one, one}, one), true},
        {"young(2,2;1)", check_exponents_young({two, two}, one), false},
    };
    bool ok = true;
    for (const auto& c : cases)
        if (c.got != c.want) {
            ok = false;
            if (!summary.empty()) summary += " ";
            summary += std::string(c.what) + "=wrong";
        }
    if (ok) summary = std::to_string(sizeof cases / sizeof cases[0]) + " exact cases reproduced";
    return ok;
}

bool determinism_criterion(std::string& summary) {
    SuiteConfig c;
    c.checks = {"fsigma_involution", "twist_routes",    "a_twist_composition",
                "hilbert_schmidt",   "schatten_holder", "twist_domination",
                "twist_lebesgue_ratio"};
    auto run = [&] {
        auto rs = run_identity_suite(c);
        for (auto& r : run_inequality_suite(c)) rs.push_back(std::move(r));
        return report_json(rs);
    };
    const std::string a = run(), b = run();
    summary = std::to_string(a.size()) + " report bytes, " + (a == b ? "identical" : "different");
    return a == b;
}

}  // namespace

int main() {
    const SuiteConfig cfg;
    std::vector<CheckResult> all = run_identity_suite(cfg);
    for (auto& r : run_inequality_suite(cfg)) all.push_back(std::move(r));
    for (const auto& r : all) by_name[r.name] = r;

    const std::vector<Criterion> crit = {
        {1, "transform identities", {"fsigma_involution", "fsigma_parseval", "fsigma_gaussian"}},
        {2,
         "product identities",
         {"weyl_product_twist", "fsigma_of_twist", "fsigma_of_weyl_product", "stft_weyl_product",
          "stft_twisted_product"}},
        {3, "operator-level identities", {"a_twist_composition", "t_product_composition"}},
        {4, "rank-one calculus", {"rank_one_wigner", "rank_one_schatten"}},
        {5, "Hilbert-Schmidt law", {"hilbert_schmidt"}},
        {6,
         "Wigner algebra",
         {"wigner_twist", "window_change", "wigner_calculus_change", "calculus_roundtrip"}},
        {7, "dilated convolution identity", {"dilated_convolution"}},
        {8, "positivity preservation", {"dilated_mult_positive", "weyl_conv_positive"}},
        {9, "Toeplitz operators", {"toeplitz_weyl_route", "smooth_unit_operators", "toeplitz_positive"}},
        {10,
         "Schatten structure",
         {"schatten_holder", "polar_reconstruction", "polar_lp_formula", "schatten_duality"}},
        {11,
         "twisted-convolution Young",
         {"twist_domination", "twist_young_chain", "twist_l2_chain", "twist_lebesgue_ratio",
          "twist_mixed_ratio", "twist_corollary_ratio"}},
        {12, "exact exponent checkers", {}},
        {13, "oracle equivalences", {"twist_routes", "infconv_exhaustive", "mixed_norm_gaussian"}},
        {14, "determinism", {}},
    };

    int failed = 0;
    for (const auto& c : crit) {
        std::string summary;
        bool ok;
        if (c.id == 12)
            ok = exponent_criterion(summary);
        else if (c.id == 14)
            ok = determinism_criterion(summary);
        else
            ok = suite_criterion(c, summary);
        if (!ok) ++failed;
        std::printf("%s criterion %d (%s): %s\n", ok ? "PASS" : "FAIL", c.id, c.title,
                    summary.c_str());
    }

    int suite_fail = 0;
    for (const auto& r : all) suite_fail += r.status == "fail";
    std::printf("suite checks: %zu run, %d failed\n", all.size(), suite_fail);
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
