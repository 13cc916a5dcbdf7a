#pragma once

// Shared plumbing of the identity and inequality suites.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "wcalc/harness.hpp"
#include "wcalc/numerics.hpp"
#include "wcalc/products.hpp"

namespace wcalc::suite {

struct Def {
    CheckInfo info;
    double tol;
    std::string metric;
    // fills value, trials, details and note; status is set afterwards unless
    // the runner already decided it
    std::function<void(const SuiteConfig&, CheckResult&)> run;
};

inline std::vector<CheckResult> run_defs(const std::vector<Def>& defs, const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    for (const Def& d : defs) {
        if (!cfg.selected(d.info.name)) continue;
        CheckResult r;
        r.name = d.info.name;
        r.anchor = d.info.anchor;
        r.metric = d.metric;
        r.seed = cfg.seed;
        r.tolerance = cfg.tol(d.info.name, d.tol);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            d.run(cfg, r);
        } catch (const Error& e) {
            r.status = "fail";
            r.value = INFINITY;
            r.note = std::string("error: ") + e.what();
        }
        r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.finish();
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<CheckInfo> infos(const std::vector<Def>& defs) {
    std::vector<CheckInfo> v;
    for (const auto& d : defs) v.push_back(d.info);
    return v;
}

// seed of trial k
inline std::uint64_t trial_seed(const SuiteConfig& cfg, int k) {
    return cfg.seed + static_cast<std::uint64_t>(k);
}

// Runs f(k) for every trial and returns the largest value.  Results land in
// per-trial slots, so the reduction order is fixed.
inline double trial_max(int n, const std::function<double(int)>& f) {
    std::vector<double> v(n, 0.0);
    parallel_for(n, [&](int k) { v[k] = f(k); });
    double m = -INFINITY;
    for (double x : v) m = std::isnan(x) ? INFINITY : std::max(m, x);
    return m;
}

// Per-component maxima of f(k), which returns m values per trial.
inline std::vector<double> trial_maxes(int n, int m,
                                       const std::function<std::vector<double>(int)>& f) {
    std::vector<std::vector<double>> v(n);
    parallel_for(n, [&](int k) { v[k] = f(k); });
    std::vector<double> out(m, 0.0);
    for (const auto& t : v)
        for (int c = 0; c < m; ++c) out[c] = std::isnan(t[c]) ? INFINITY : std::max(out[c], t[c]);
    return out;
}

inline double max_of(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, x);
    return m;
}

inline double rel_frob(const CMat& a, const CMat& b) { return (a - b).norm() / b.norm(); }

inline double max_abs(const Phase4Fn& F) {
    double m = 0;
    for (const cplx& z : F.v) m = std::max(m, std::abs(z));
    return m;
}

inline double rel_err4(const Phase4Fn& a, const Phase4Fn& b) {
    double e = 0;
    for (std::size_t k = 0; k < a.v.size(); ++k) e = std::max(e, std::abs(a.v[k] - b.v[k]));
    return e / max_abs(b);
}

inline PhaseFn scaled(PhaseFn a, cplx c) {
    a.v *= c;
    return a;
}

// L^{p,q} norm of M(i, j) >= 0 with cells cx, cy; order 1 integrates i first
inline double lattice_mixed(const RMat& M, const ExtExponent& p, const ExtExponent& q, int order,
                     double cx, double cy) {
    auto lp = [](const RVec& v, const ExtExponent& e, double cell) {
        if (e.is_inf()) return v.maxCoeff();
        const double pe = e.as_double();
        double s = 0;
        for (int k = 0; k < v.size(); ++k) s += std::pow(v(k), pe);
        return std::pow(s * cell, 1.0 / pe);
    };
    const int N = static_cast<int>(M.rows());
    RVec outer(N);
    for (int k = 0; k < N; ++k)
        outer(k) = order == 1 ? lp(M.col(k), p, cx) : lp(M.row(k).transpose(), q, cy);
    return order == 1 ? lp(outer, q, cy) : lp(outer, p, cx);
}

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace wcalc::suite
