#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "wcalc/harness.hpp"

using namespace wcalc;

namespace {

ExtExponent ex(const char* s) { return ExtExponent::parse(s); }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// checks that finish in well under a second at N = 64
SuiteConfig cheap_config() {
    SuiteConfig c;
    c.count = 5;
    c.heavy_count = 2;
    c.checks = {"fsigma_involution", "fsigma_parseval", "mixed_norm_gaussian",
                "infconv_exhaustive", "hilbert_schmidt"};
    return c;
}

}  // namespace

TEST_CASE("configuration files") {
    const SuiteConfig d;
    CHECK(d.N == 64);
    CHECK(d.seed == 42);
    const SuiteConfig c = SuiteConfig::from_json_text(
        R"j({"N": 32, "seed": 18446744073709551615, "count": 7, "checks": ["a", "b"],
            "tolerances": {"a": 1e-3}, "weights": {"w": "sig(x,1)"}, "timing": true})j");
    CHECK(c.N == 32);
    CHECK(c.seed == 18446744073709551615ull);
    CHECK(c.count == 7);
    CHECK(c.timing);
    CHECK(c.selected("a"));
    CHECK_FALSE(c.selected("c"));
    CHECK(c.tol("a", 1.0) == 1e-3);
    CHECK(c.tol("b", 1.0) == 1.0);
    CHECK(c.weight("w", "const(1)") == "sig(x,1)");
    CHECK(c.weight("v", "const(1)") == "const(1)");

    // round trip through the writer
    const SuiteConfig r = SuiteConfig::from_json_text(c.to_json_text());
    CHECK(r.to_json_text() == c.to_json_text());

    CHECK_THROWS_AS(SuiteConfig::from_json_text("{"), Error);
    CHECK_THROWS_AS(SuiteConfig::from_json_text("[]"), Error);
    CHECK_THROWS_AS(SuiteConfig::from_json_text(R"j({"bogus": 1})j"), Error);
    CHECK_THROWS_AS(SuiteConfig::from_json_text(R"j({"count": -3})j"), Error);
    CHECK_THROWS_AS(SuiteConfig::from_json_text(R"j({"seed": -1})j"), Error);
    CHECK_THROWS_AS(SuiteConfig::from_json_text(R"j({"tolerances": {"a": -1}})j"), Error);
    CHECK_THROWS_AS(SuiteConfig::from_json_text(R"j({"weights": {"w": "sig(q,1)"}})j"), Error);
    CHECK_THROWS_AS(SuiteConfig::load("no_such_config.json"), Error);
}

TEST_CASE("check results and reports") {
    CHECK(report_json({}) == "[]");
    const std::string path = "test_harness_report.json";
    CHECK(emit_report({}, path) == 0);
    CHECK(slurp(path) == "[]\n");

    CheckResult ok;
    ok.name = "ok";
    ok.value = 1e-10;
    ok.tolerance = 1e-8;
    ok.finish();
    CHECK(ok.status == "pass");

    CheckResult bad = ok;
    bad.name = "bad";
    bad.value = 1e-6;
    bad.status = "pending";
    bad.finish();
    CHECK(bad.status == "fail");
    CHECK(emit_report({ok, bad}, path) == 1);

    CheckResult zero = ok;
    zero.status = "pending";
    zero.value = 0;
    zero.tolerance = 0;
    zero.finish();
    CHECK(zero.status == "fail");

    CheckResult nan = ok;
    nan.status = "pending";
    nan.value = NAN;
    nan.finish();
    CHECK(nan.status == "fail");

    CheckResult skip = ok;
    skip.status = "skip";
    skip.value = INFINITY;
    skip.finish();
    CHECK(skip.status == "skip");
    CHECK(all_passed({ok, skip}));

    // keys come out sorted and wall_time only on request
    ok.details["zeta"] = 1;
    ok.details["alpha"] = 2;
    const std::string j = report_json({ok});
    CHECK(j.find("\"anchor\"") < j.find("\"details\""));
    CHECK(j.find("\"alpha\"") < j.find("\"zeta\""));
    CHECK(j.find("\"name\"") < j.find("\"status\""));
    CHECK(j.find("wall_time") == std::string::npos);
    CHECK(report_json({ok}, true).find("wall_time") != std::string::npos);
    CHECK(report_json({ok}) == j);
    std::remove(path.c_str());
}

TEST_CASE("random ensembles") {
    const GridSpec g = default_grid(32);
    for (const char* kind : {"gauss_mod", "gauss_mod_phase", "rank_one", "sigma_pos", "weyl_pos"}) {
        const auto a = random_ensemble(42, kind, 3, g);
        const auto b = random_ensemble(42, kind, 3, g);
        REQUIRE(a.size() == 3);
        for (int k = 0; k < 3; ++k) {
            if (std::holds_alternative<ConfigFn>(a[k])) {
                CHECK(std::get<ConfigFn>(a[k]).v == std::get<ConfigFn>(b[k]).v);
                const double n = l2_norm(std::get<ConfigFn>(a[k]));
                CHECK(n == doctest::Approx(1.0).epsilon(1e-12));
            } else {
                CHECK(std::get<PhaseFn>(a[k]).v == std::get<PhaseFn>(b[k]).v);
                const double n = l2_norm(std::get<PhaseFn>(a[k]));
                CHECK(n >= 0.1);
                CHECK(n <= 10.0);
            }
        }
        const auto c = random_ensemble(43, kind, 1, g);
        if (std::holds_alternative<ConfigFn>(c[0]))
            CHECK(std::get<ConfigFn>(c[0]).v != std::get<ConfigFn>(a[0]).v);
        else
            CHECK(std::get<PhaseFn>(c[0]).v != std::get<PhaseFn>(a[0]).v);
    }
    // member k is the seed + k draw
    CHECK(std::get<ConfigFn>(random_ensemble(42, "gauss_mod", 3, g)[2]).v ==
          gauss_mod(44, 0, g).v);
    for (const auto& m : random_ensemble(7, "sigma_pos", 3, default_grid(64)))
        CHECK(sigma_positive(std::get<PhaseFn>(m)).ok);
    CHECK_THROWS_AS(random_ensemble(1, "uniform", 1, g), Error);
}

TEST_CASE("exponent checkers") {
    const ExtExponent two = ex("2"), one = ex("1"), inf = ExtExponent::inf();
    CHECK(check_exponents_weyl(two, two, two, two, two, two));
    CHECK_FALSE(check_exponents_weyl(one, one, one, inf, inf, inf));
    CHECK(check_exponents_twist(two, two, two, two, two, two));
    // q exponents out of order relative to their bounds
    CHECK_FALSE(check_exponents_twist(two, two, two, one, inf, one));

    CHECK(check_exponents_young({one, one}, one));
    CHECK(check_exponents_young({two, two}, inf));
    CHECK_FALSE(check_exponents_young({two, two}, two));
    CHECK_FALSE(check_exponents_young({two, two}, one));
    CHECK(check_exponents_young({ex("4/3"), ex("4/3")}, two));
    CHECK(check_exponents_young({ex("3/2"), ex("3/2"), ex("3/2")}, inf));
    CHECK(check_exponents_young({one, one, one}, one));

    // twisted convolution on Lebesgue spaces admits L2 x L2 -> L2
    CHECK(check_exponents_twist_lebesgue(two, two, two));
    CHECK_FALSE(check_exponents_twist_lebesgue(two, two, one));
    CHECK(check_exponents_twist_mixed(two, two, two, two, two, two));

    CHECK(check_exponents_twist_corollary(two, two));
    CHECK(check_exponents_twist_corollary(ex("3"), ex("3/2")));
    CHECK_FALSE(check_exponents_twist_corollary(ex("3"), two));
    CHECK_FALSE(check_exponents_twist_corollary(ex("3/2"), two));
}

TEST_CASE("weight conditions") {
    const GridSpec g = default_grid(32);
    WeightCondition c;
    c.kind = WeightCondKind::submult;
    c.weights = {"const(1)", "const(1)", "const(1)"};
    auto r = check_weight_condition(c, g);
    CHECK(r.ok);
    CHECK(r.C_est == doctest::Approx(1.0));

    c.weights = {"sig(X,2)", "sig(X,2)", "sig(X,2)"};
    r = check_weight_condition(c, g);
    CHECK(r.ok);
    CHECK(r.C_est <= 2.0 + 1e-12);

    c.weights = {"sig(X,2)", "const(1)", "const(1)"};
    CHECK_FALSE(check_weight_condition(c, g).ok);

    WeightCondition w4;
    w4.kind = weight_cond_kind("weyl4");
    w4.weights = std::vector<std::string>(6, "const(1)");
    r = check_weight_condition(w4, g);
    CHECK(r.ok);
    CHECK(r.C_est == doctest::Approx(1.0));
    CHECK_THROWS_AS(weight_cond_kind("peetre"), Error);
}

TEST_CASE("weight inf-convolution") {
    const GridSpec g = default_grid(16);
    const WeightFn ones = weight_infconv({WeightExpr(), WeightExpr()}, {1.0, 1.0}, g);
    CHECK((ones.v.array() - 1).abs().maxCoeff() < 1e-14);

    const std::vector<WeightExpr> f = {WeightExpr("sig(X,1)"), WeightExpr("sig(x,2)")};
    const std::vector<double> t = {1.0, std::sqrt(2.0)};
    const WeightFn fast = weight_infconv(f, t, g);
    const WeightFn slow = weight_infconv_exhaustive(f, t, g);
    CHECK((fast.v - slow.v).cwiseAbs().maxCoeff() < 1e-12 * slow.v.maxCoeff());
    // splitting X = X + 0 bounds the infimum by each factor times the other at 0
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j)
            CHECK(fast.v(i, j) <= f[0](g.x(i), g.xi(j)) * f[1](0, 0) * (1 + 1e-12));
}

TEST_CASE("suite plumbing") {
    SuiteConfig c = cheap_config();
    const auto rs = run_identity_suite(c);
    REQUIRE(rs.size() == c.checks.size());
    for (const auto& r : rs) {
        CHECK(r.status == "pass");
        CHECK(r.seed == c.seed);
    }

    // a zero tolerance fails every check
    c.tolerance = 0;
    for (const auto& r : run_identity_suite(c)) CHECK(r.status == "fail");

    // a single selected check runs alone
    SuiteConfig one = cheap_config();
    one.checks = {"mixed_norm_gaussian"};
    const auto single = run_identity_suite(one);
    REQUIRE(single.size() == 1);
    CHECK(single[0].name == "mixed_norm_gaussian");
    CHECK(run_inequality_suite(one).empty());

    SuiteConfig in;
    in.heavy_count = 2;
    in.checks = {"twist_domination"};
    const auto ir = run_inequality_suite(in);
    REQUIRE(ir.size() == 1);
    CHECK(ir[0].status == "pass");

    // every check has a name, anchor and suite tag
    for (const auto* v : {&identity_checks(), &inequality_checks()})
        for (const auto& i : *v) {
            CHECK_FALSE(i.name.empty());
            CHECK_FALSE(i.anchor.empty());
        }
}

TEST_CASE("reports do not depend on the thread count") {
    const SuiteConfig c = cheap_config();
    setenv("WCALC_THREADS", "1", 1);
    const std::string a = report_json(run_identity_suite(c));
    setenv("WCALC_THREADS", "3", 1);
    const std::string b = report_json(run_identity_suite(c));
    unsetenv("WCALC_THREADS");
    CHECK(a == b);
}
