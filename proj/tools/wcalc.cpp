// Command-line front end: verification suites, reports and one-shot
// computations on grid-function files.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <variant>

#include "wcalc/harness.hpp"
#include "wcalc/transforms.hpp"

using namespace wcalc;

namespace {

struct SuiteOpts {
    std::string config;
    std::vector<std::string> checks;
    std::string out;
    bool timing = false;
};

void add_suite_opts(CLI::App* c, SuiteOpts& o) {
    c->add_option("--config", o.config, "JSON file with SuiteConfig fields");
    c->add_option("--check", o.checks, "run only the named check (repeatable)");
    c->add_option("--out", o.out, "write the report here instead of stdout");
    c->add_flag("--timing", o.timing, "include wall_time in the report");
}

SuiteConfig suite_config(const SuiteOpts& o) {
    SuiteConfig cfg = o.config.empty() ? SuiteConfig{} : SuiteConfig::load(o.config);
    if (!o.checks.empty()) cfg.checks = o.checks;
    if (o.timing) cfg.timing = true;
    return cfg;
}

int finish(const std::vector<CheckResult>& rs, const SuiteOpts& o, bool timing) {
    if (!o.out.empty()) return emit_report(rs, o.out, timing);
    std::cout << report_json(rs, timing) << "\n";
    return all_passed(rs) ? 0 : 1;
}

const PhaseFn& need_phase(const GridFunction& f, const char* what) {
    if (!std::holds_alternative<PhaseFn>(f))
        throw Error(std::string(what) + ": expected a phase-space file");
    return std::get<PhaseFn>(f);
}

ConfigFn window_or_gaussian(const std::string& path, const GridSpec& g) {
    if (path.empty()) return gaussian(g);
    const GridFunction f = read_gfn(path);
    if (!std::holds_alternative<ConfigFn>(f)) throw Error("window: expected a configuration file");
    return std::get<ConfigFn>(f);
}

TemperedSpace space_for(const std::string& w, const GridSpec& g) {
    if (w.empty()) return l2_space(g);
    return make_space(WeightExpr(w), gaussian(g));
}

void print_value(double v) { std::printf("%.17g\n", v); }

int selftest() {
    SuiteConfig cfg;
    cfg.count = 5;
    cfg.heavy_count = 2;
    cfg.checks = {"fsigma_involution", "fsigma_parseval", "twist_routes",
                  "hilbert_schmidt",   "mixed_norm_gaussian", "infconv_exhaustive"};
    auto rs = run_identity_suite(cfg);
    SuiteConfig icfg;
    icfg.heavy_count = 2;
    icfg.checks = {"twist_domination", "twist_l2_chain"};
    for (auto& r : run_inequality_suite(icfg)) rs.push_back(std::move(r));

    const ExtExponent two = ExtExponent::parse("2");
    CheckResult ex;
    ex.name = "exponent_checkers";
    ex.anchor = "p_j = q_j = 2 admissible for both products";
    ex.tolerance = 0.5;
    ex.value = check_exponents_weyl(two, two, two, two, two, two) &&
                       check_exponents_twist(two, two, two, two, two, two)
                   ? 0
                   : 1;
    ex.finish();
    rs.push_back(ex);

    for (const auto& r : rs)
        std::printf("%-22s %-4s %.3g (tol %.3g)\n", r.name.c_str(), r.status.c_str(), r.value,
                    r.tolerance);
    return all_passed(rs) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wcalc: Weyl calculus, twisted convolution and Schatten classes on a grid"};
    app.require_subcommand(1);

    auto* c_self = app.add_subcommand("selftest", "quick sanity run of core identities");

    SuiteOpts id_opts, in_opts, rep_opts;
    auto* c_id = app.add_subcommand("identities", "run the identity suite");
    add_suite_opts(c_id, id_opts);
    auto* c_in = app.add_subcommand("inequalities", "run the inequality suite");
    add_suite_opts(c_in, in_opts);
    auto* c_rep = app.add_subcommand("report", "run both suites and write one report");
    c_rep->add_option("--config", rep_opts.config, "JSON file with SuiteConfig fields");
    c_rep->add_option("--out", rep_opts.out, "report path")->required();
    c_rep->add_flag("--timing", rep_opts.timing, "include wall_time in the report");

    auto* c_list = app.add_subcommand("list", "list check names");

    std::string in, out, spec, w1, w2, h1, h2, route = "direct", pstr, kind;
    double t = 0.5;
    int n = 64, idx = 0;
    std::uint64_t seed = 42;

    auto* c_norm = app.add_subcommand("norm", "mixed or modulation norm of a grid function");
    c_norm->add_option("--in", in, "grid-function file")->required();
    c_norm->add_option("--spec", spec, "\"M:p,q:WEIGHT\" or \"W:p,q:WEIGHT\"")->required();

    auto* c_quant = app.add_subcommand("quantize", "matrix of Op_t(a)");
    c_quant->add_option("--in", in, "phase-space symbol file")->required();
    c_quant->add_option("--t", t, "calculus parameter")->required();
    c_quant->add_option("--out", out, "operator-matrix file")->required();

    auto* c_sch = app.add_subcommand("schatten", "Schatten norm of Op_t(a) from H1 to H2");
    c_sch->add_option("--in", in, "phase-space symbol file")->required();
    c_sch->add_option("--t", t, "calculus parameter")->required();
    c_sch->add_option("--p", pstr, "exponent, e.g. 1, 4/3, inf")->required();
    c_sch->add_option("--w1", w1, "weight of H1 = M2(w1); default L2");
    c_sch->add_option("--w2", w2, "weight of H2 = M2(w2); default L2");

    auto* c_toep = app.add_subcommand("toeplitz", "matrix of Tp_{h1,h2}(a)");
    c_toep->add_option("--in", in, "phase-space symbol file")->required();
    c_toep->add_option("--h1", h1, "window file; default unit Gaussian");
    c_toep->add_option("--h2", h2, "window file; default unit Gaussian");
    c_toep->add_option("--route", route, "direct or weyl")
        ->check(CLI::IsMember({"direct", "weyl"}));
    c_toep->add_option("--out", out, "operator-matrix file")->required();

    auto* c_ens = app.add_subcommand("ensemble", "write one random ensemble member");
    c_ens->add_option("--kind", kind, "gauss_mod, gauss_mod_phase, rank_one, sigma_pos, weyl_pos")
        ->required();
    c_ens->add_option("--seed", seed, "ensemble seed");
    c_ens->add_option("--index", idx, "member index")->check(CLI::NonNegativeNumber);
    c_ens->add_option("--N", n, "grid size")->check(CLI::PositiveNumber);
    c_ens->add_option("--out", out, "grid-function file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_self->parsed()) return selftest();
        if (c_id->parsed()) {
            const SuiteConfig cfg = suite_config(id_opts);
            return finish(run_identity_suite(cfg), id_opts, cfg.timing);
        }
        if (c_in->parsed()) {
            const SuiteConfig cfg = suite_config(in_opts);
            return finish(run_inequality_suite(cfg), in_opts, cfg.timing);
        }
        if (c_rep->parsed()) {
            const SuiteConfig cfg = suite_config(rep_opts);
            auto rs = run_identity_suite(cfg);
            for (auto& r : run_inequality_suite(cfg)) rs.push_back(std::move(r));
            return emit_report(rs, rep_opts.out, cfg.timing);
        }
        if (c_list->parsed()) {
            for (const auto* v : {&identity_checks(), &inequality_checks()})
                for (const auto& c : *v)
                    std::printf("%-13s %-28s %s\n", c.suite.c_str(), c.name.c_str(),
                                c.anchor.c_str());
            return 0;
        }
        if (c_norm->parsed()) {
            const GridFunction f = read_gfn(in);
            const MixedNormSpec s = MixedNormSpec::parse(spec);
            if (std::holds_alternative<ConfigFn>(f)) {
                const ConfigFn& u = std::get<ConfigFn>(f);
                print_value(mod_norm(u, s, gaussian(u.grid)));
            } else {
                print_value(mixed_norm(std::get<PhaseFn>(f), s));
            }
            return 0;
        }
        if (c_quant->parsed()) {
            write_opm(out, op_t(need_phase(read_gfn(in), "quantize"), t));
            return 0;
        }
        if (c_sch->parsed()) {
            const GridFunction f = read_gfn(in);
            const PhaseFn& a = need_phase(f, "schatten");
            print_value(schatten_norm(a, t, ExtExponent::parse(pstr), space_for(w1, a.grid),
                                      space_for(w2, a.grid)));
            return 0;
        }
        if (c_toep->parsed()) {
            const GridFunction f = read_gfn(in);
            const PhaseFn& a = need_phase(f, "toeplitz");
            write_opm(out, toeplitz(a, window_or_gaussian(h1, a.grid),
                                    window_or_gaussian(h2, a.grid),
                                    route == "weyl" ? ToeplitzRoute::weyl : ToeplitzRoute::direct));
            return 0;
        }
        if (c_ens->parsed()) {
            const auto v = random_ensemble(seed + static_cast<std::uint64_t>(idx), kind, 1,
                                           default_grid(n));
            write_gfn(out, v.at(0));
            return 0;
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "wcalc: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "wcalc: %s\n", e.what());
        return 2;
    }
    return 0;
}
