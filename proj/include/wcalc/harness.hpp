#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wcalc/spectral.hpp"

namespace wcalc {

// ---- configuration -----------------------------------------------------------

struct SuiteConfig {
    int N = 64;              // main grid
    double L = 0.0;          // 0: square default grid for N
    int coarse_N = 16;       // 4-variable oracles
    int fine_N = 256;        // smooth-truncated constant symbols
    int positivity_N = 128;  // monomial and squared rank-one positivity
    int stability_N = 32;    // partner grid for reported ratios
    std::uint64_t seed = 42;
    int count = 100;         // cheap checks
    int heavy_count = 20;    // O(N^4) checks
    int dilation_count = 10;
    int modulation_count = 3;   // trials per grid for 4-variable modulation norms
    bool timing = false;     // write wall_time into reports
    double tolerance = -1;   // >= 0 overrides every tolerance
    std::map<std::string, double> tolerances;
    std::vector<std::string> checks;  // empty: all
    std::map<std::string, std::string> weights;

    static SuiteConfig from_json_text(const std::string& text);
    static SuiteConfig load(const std::string& path);
    std::string to_json_text() const;

    GridSpec grid(int n) const;  // default grid of size n (L honoured for n == N)
    double tol(const std::string& check, double def) const;
    bool selected(const std::string& check) const;
    std::string weight(const std::string& key, const std::string& def) const;
};

// ---- results -------------------------------------------------------------------

// pass iff 0 < tolerance and value <= tolerance; metric names what value measures
struct CheckResult {
    std::string name;
    std::string anchor;
    std::string status = "pending";  // pass | fail | skip once finished
    std::string metric = "max_err";
    double value = 0.0;
    double tolerance = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    double wall_time = 0.0;
    std::map<std::string, double> details;
    std::string note;

    void finish();  // decides a pending status from value and tolerance
};

std::string report_json(const std::vector<CheckResult>& results, bool timing = false);
// writes report_json(results) to path; returns 0 iff no result failed
int emit_report(const std::vector<CheckResult>& results, const std::string& path,
                bool timing = false);
bool all_passed(const std::vector<CheckResult>& results);

// ---- random ensembles ----------------------------------------------------------------

// Member k of an ensemble uses seed + k; slot separates independent draws
// within one trial.  Every member has unit L2 norm.
//   gauss_mod:       Gaussian envelope times a random trigonometric polynomial
//   gauss_mod_phase: the same on phase space
//   rank_one:        Weyl-Wigner distribution of two gauss_mod vectors
//   sigma_pos:       A^{-1} of a random positive combination of rank-one projections
//   weyl_pos:        positive combination of W_{f,f}, a positive Weyl symbol
ConfigFn gauss_mod(std::uint64_t seed, int slot, const GridSpec& g);
PhaseFn gauss_mod_phase(std::uint64_t seed, int slot, const GridSpec& g);
PhaseFn rank_one_symbol(std::uint64_t seed, int slot, const GridSpec& g);
PhaseFn sigma_pos_symbol(std::uint64_t seed, int slot, const GridSpec& g);
PhaseFn weyl_pos_symbol(std::uint64_t seed, int slot, const GridSpec& g);
std::vector<GridFunction> random_ensemble(std::uint64_t seed, const std::string& kind, int count,
                                          const GridSpec& g);

// ---- exponent admissibility (exact) ---------------------------------------------------

// Weyl product on M^{p,q}: p-combination equals 1 minus q-combination, and
// every 1/p_j, 1/q_j lies between them
bool check_exponents_weyl(const ExtExponent& p0, const ExtExponent& p1, const ExtExponent& p2,
                          const ExtExponent& q0, const ExtExponent& q1, const ExtExponent& q2);
// twisted convolution on W^{p,q}: same equality, roles of the bounds swapped
bool check_exponents_twist(const ExtExponent& p0, const ExtExponent& p1, const ExtExponent& p2,
                           const ExtExponent& q0, const ExtExponent& q1, const ExtExponent& q2);
// sum_j 1/p_j = (n - 1) + 1/r
bool check_exponents_young(const std::vector<ExtExponent>& p, const ExtExponent& r);
// twisted convolution on weighted Lebesgue spaces L^{p1} x L^{p2} -> L^p
bool check_exponents_twist_lebesgue(const ExtExponent& p1, const ExtExponent& p2,
                                    const ExtExponent& p);
// mixed-norm refinement, both exponent families
bool check_exponents_twist_mixed(const ExtExponent& p1, const ExtExponent& q1,
                                 const ExtExponent& p2, const ExtExponent& q2,
                                 const ExtExponent& p, const ExtExponent& q);
// L^p x L^q -> L^p with q <= min(p, p')
bool check_exponents_twist_corollary(const ExtExponent& p, const ExtExponent& q);

// ---- weight conditions --------------------------------------------------------------------

enum class WeightCondKind {
    weyl4,       // w0(X,Y) <= C w1(X-Y+Z, Z) w2(X+Z, Y-Z)
    twist4,      // w0(X,Y) <= C w1(X-Y+Z, Z) w2(Y-Z, X+Z)
    submult,     // w0(X1+X2) <= C w1(X1) w2(X2)
    dilated,     // omega, theta against dilated factor weights with sign pattern
    dilated_weyl // as dilated, without the reflection in the j = 1 factors
};
WeightCondKind weight_cond_kind(const std::string& name);

// weights:
//   weyl4/twist4: six expressions w0X, w0Y, w1X, w1Y, w2X, w2Y of product
//                 weights w(X, Y) = wX(X) wY(Y)
//   submult:      w0, w1, w2
//   dilated*:     omega, theta, then omega_k, theta_k for each factor
// dilations and signs are used by the dilated kinds only.
struct WeightCondition {
    WeightCondKind kind = WeightCondKind::submult;
    std::vector<std::string> weights;
    std::vector<double> dilations;
    std::vector<int> signs;
};
struct WeightCondResult {
    bool ok;
    double C_est;
};
// sup of LHS / RHS over grid samples (at most `samples` points per axis)
WeightCondResult check_weight_condition(const WeightCondition& c, const GridSpec& g,
                                        double cap = 4.0, int samples = 16);

// w(X) = min over lattice splittings X = X_1 + ... + X_n of prod_k w_k(t_k X_k).
// Fast route: iterated min-plus passes in the log domain.
WeightFn weight_infconv(const std::vector<WeightExpr>& factors, const std::vector<double>& dilations,
                        const GridSpec& g);
// exhaustive enumeration of all splittings; small grids only
WeightFn weight_infconv_exhaustive(const std::vector<WeightExpr>& factors,
                                   const std::vector<double>& dilations, const GridSpec& g);

// ---- suites ---------------------------------------------------------------------------------

struct CheckInfo {
    std::string name, anchor, suite;
};
const std::vector<CheckInfo>& identity_checks();
const std::vector<CheckInfo>& inequality_checks();

std::vector<CheckResult> run_identity_suite(const SuiteConfig& cfg);
std::vector<CheckResult> run_inequality_suite(const SuiteConfig& cfg);

}  // namespace wcalc
