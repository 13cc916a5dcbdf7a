// Inequalities and positivity statements.  Bounds with an explicit constant
// are asserted; bounds with an unstated constant are recorded as ratios and
// must stay within a factor 2 between two grid sizes.

#include <cmath>
#include <map>
#include <mutex>

#include "suite_util.hpp"
#include "wcalc/harness.hpp"
#include "wcalc/products.hpp"

namespace wcalc {

using namespace suite;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt2Pi = std::sqrt(2 * kPi);

ExtExponent E(const char* s) { return ExtExponent::parse(s); }

using Named = std::vector<std::pair<std::string, double>>;

// per-label maximum over trials
std::map<std::string, double> max_named(int n, const std::function<Named(int)>& f) {
    std::vector<Named> v(n);
    parallel_for(n, [&](int k) { v[k] = f(k); });
    std::map<std::string, double> out;
    for (const Named& t : v)
        for (const auto& [key, x] : t) {
            auto it = out.find(key);
            const double y = std::isnan(x) ? INFINITY : x;
            if (it == out.end()) out[key] = y;
            else it->second = std::max(it->second, y);
        }
    return out;
}

using RatioFn = std::function<std::map<std::string, double>(const GridSpec&)>;

// Ratios on the main grid and on the stability grid; value is the largest
// |log2| drift between them.
void reported(const SuiteConfig& cfg, CheckResult& r, int trials, const RatioFn& f) {
    const GridSpec gb = cfg.grid(cfg.N), gs = cfg.grid(cfg.stability_N);
    const auto big = f(gb), small = f(gs);
    double drift = 0;
    for (const auto& [key, v] : big) {
        const double s = small.at(key);
        r.details[key + " N=" + std::to_string(gb.N)] = v;
        r.details[key + " N=" + std::to_string(gs.N)] = s;
        if (!(std::isfinite(v) && std::isfinite(s) && v > 0 && s > 0)) drift = INFINITY;
        else drift = std::max(drift, std::abs(std::log2(v / s)));
    }
    if (big.empty()) {
        r.status = "skip";
        r.note = "no admissible parameter set";
    }
    r.trials = trials;
    r.value = drift;
}

// -min eig / max |eig| of the Hermitian part
double neg_part(const OperatorMatrix& T) {
    const PositivityResult p = psd_check(T, 0.0);
    const double scale = std::max(std::abs(p.min_eig), std::abs(p.max_eig));
    return scale > 0 ? -p.min_eig / scale : 0.0;
}

double lp_phase(const PhaseFn& a, const ExtExponent& p, const RMat& w) {
    const RMat m = a.v.cwiseAbs().cwiseProduct(w);
    if (p.is_inf()) return m.maxCoeff();
    const double pe = p.as_double();
    return std::pow(m.array().pow(pe).sum() * a.grid.dx() * a.grid.h(), 1.0 / pe);
}

RMat weight_table(const std::string& expr, const GridSpec& g) {
    return weight_eval(expr, g).v;
}

std::string label3(const ExtExponent& a, const ExtExponent& b, const ExtExponent& c) {
    return a.str() + "," + b.str() + "," + c.str();
}

struct Pattern {
    double t1, t2;
    int j1, j2;
    std::string name() const { return "(" + std::to_string(j1) + std::to_string(j2) + ")"; }
};

// dilations for convolutions: (-1)^j t^-2 sum to 1
const std::vector<Pattern>& conv_patterns() {
    static const std::vector<Pattern> p = {
        {kSqrt2, kSqrt2, 0, 0}, {1 / kSqrt2, 1.0, 0, 1}, {1.0, 1 / kSqrt2, 1, 0}};
    return p;
}
// dilations for products: (-1)^j t^2 sum to 1
const std::vector<Pattern>& mult_patterns() {
    static const std::vector<Pattern> p = {
        {1 / kSqrt2, 1 / kSqrt2, 0, 0}, {kSqrt2, 1.0, 0, 1}, {1.0, kSqrt2, 1, 0}};
    return p;
}

struct Triple {
    const char *p1, *p2, *r;
};
const std::vector<Triple>& young_candidates() {
    static const std::vector<Triple> t = {{"1", "1", "1"},     {"1", "2", "2"},
                                          {"2", "1", "2"},     {"4/3", "4/3", "2"},
                                          {"1", "inf", "inf"}, {"2", "2", "inf"},
                                          {"2", "2", "2"}};  // last one is rejected
    return t;
}

// Young triples accepted by the exact checker; rejected ones are counted
std::vector<Triple> young_gate(CheckResult& r) {
    std::vector<Triple> ok;
    int rej = 0;
    for (const Triple& t : young_candidates()) {
        if (check_exponents_young({E(t.p1), E(t.p2)}, E(t.r))) ok.push_back(t);
        else ++rej;
    }
    r.details["rejected_sets"] = rej;
    return ok;
}

// weights for the dilated-product theorems: all equal to w, which is even
bool dilated_weight_gate(const std::string& w, const Pattern& p, const GridSpec& g,
                         WeightCondKind kind, bool multiplicative) {
    WeightCondition c;
    c.kind = kind;
    c.weights = {w, w, w, w, w, w};
    // the product theorems reuse the convolution condition with t -> 1/t
    c.dilations = multiplicative ? std::vector<double>{1 / p.t1, 1 / p.t2}
                                 : std::vector<double>{p.t1, p.t2};
    c.signs = {p.j1, p.j2};
    return check_weight_condition(c, g).ok;
}

struct Spaces {
    TemperedSpace H1, H2;
};

// (M2(1/w), M2(w)) on g
Spaces weighted_pair(const std::string& w, const GridSpec& g) {
    const ConfigFn g0 = gaussian(g);
    const WeightExpr e(w);
    return {make_space(e.inverted(), g0), make_space(e, g0)};
}

// Schatten norms for several exponents from one SVD
std::vector<double> schatten_many(const OperatorMatrix& T, const std::vector<ExtExponent>& ps,
                                  const Spaces& s) {
    const RVec l = singular_value_list(T, s.H1, s.H2);
    std::vector<double> out;
    for (const auto& p : ps) out.push_back(lp_norm(l, p));
    return out;
}

// ---- modulation-space ratios share one pass per symbol ----

struct ModResult {
    std::map<std::string, double> weyl, twist;
    int weyl_rejected = 0, twist_rejected = 0;
};

ModResult modulation_ratios(const SuiteConfig& cfg, const GridSpec& g) {
    static std::mutex mu;
    static std::map<std::string, ModResult> cache;
    const std::string key = std::to_string(cfg.seed) + "/" + std::to_string(g.N) + "/" +
                            std::to_string(g.L) + "/" + std::to_string(cfg.modulation_count);
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    struct Set {
        const char *p0, *p1, *p2, *q0, *q1, *q2;
    };
    // M^{p,q} exponents for the Weyl product; W^{p,q} for twisted convolution
    const Set wsets[] = {{"2", "2", "2", "2", "2", "2"},
                         {"inf", "inf", "inf", "1", "1", "1"},
                         {"2", "2", "inf", "2", "1", "2"},
                         {"1", "1", "1", "inf", "inf", "inf"}};  // rejected
    const Set tsets[] = {{"2", "2", "2", "2", "2", "2"},
                         {"1", "1", "1", "inf", "inf", "inf"},
                         {"2", "1", "2", "2", "2", "inf"},
                         {"inf", "inf", "inf", "1", "1", "1"}};  // rejected
    ModResult res;
    std::vector<Set> wok, tok;
    for (const Set& s : wsets) {
        if (check_exponents_weyl(E(s.p0), E(s.p1), E(s.p2), E(s.q0), E(s.q1), E(s.q2)))
            wok.push_back(s);
        else
            ++res.weyl_rejected;
    }
    for (const Set& s : tsets) {
        if (check_exponents_twist(E(s.p0), E(s.p1), E(s.p2), E(s.q0), E(s.q1), E(s.q2)))
            tok.push_back(s);
        else
            ++res.twist_rejected;
    }
    // trivial weights satisfy both four-variable conditions with C = 1
    WeightCondition wc;
    wc.kind = WeightCondKind::weyl4;
    wc.weights.assign(6, "const(1)");
    const bool wgate = check_weight_condition(wc, g).ok;
    wc.kind = WeightCondKind::twist4;
    const bool tgate = check_weight_condition(wc, g).ok;

    // norm lists per symbol: order 1 = M, order 2 = W
    auto specs_for = [&](int which) {
        std::vector<SymplNormSpec> sp;
        for (const Set& s : wok) {
            const char* p = which == 0 ? s.p0 : which == 1 ? s.p1 : s.p2;
            const char* q = which == 0 ? s.q0 : which == 1 ? s.q1 : s.q2;
            if (wgate) sp.push_back({E(p), E(q), 1});
        }
        for (const Set& s : tok) {
            const char* p = which == 0 ? s.p0 : which == 1 ? s.p1 : s.p2;
            const char* q = which == 0 ? s.q0 : which == 1 ? s.q1 : s.q2;
            if (tgate) sp.push_back({E(p), E(q), 2});
        }
        return sp;
    };
    const PhaseFn phi = gaussian_phase(g);
    const int nw = wgate ? static_cast<int>(wok.size()) : 0;
    const int nt = tgate ? static_cast<int>(tok.size()) : 0;
    const auto s1 = specs_for(1), s2 = specs_for(2), s0 = specs_for(0);
    std::vector<SymplNormSpec> s0w(s0.begin(), s0.begin() + nw), s0t(s0.begin() + nw, s0.end());

    const auto m = max_named(cfg.modulation_count, [&](int k) {
        const std::uint64_t sd = trial_seed(cfg, k);
        const PhaseFn a1 = gauss_mod_phase(sd, 0, g), a2 = gauss_mod_phase(sd, 1, g);
        const auto n1 = sympl_mod_norms(a1, s1, phi), n2 = sympl_mod_norms(a2, s2, phi);
        Named out;
        if (nw > 0) {
            const auto n0 = sympl_mod_norms(weyl_product(a1, a2), s0w, phi);
            for (int i = 0; i < nw; ++i) {
                const Set& s = wok[i];
                out.push_back({std::string("weyl p=") + s.p0 + "," + s.p1 + "," + s.p2 + " q=" +
                                   s.q0 + "," + s.q1 + "," + s.q2,
                               n0[i] / (n1[i] * n2[i])});
            }
        }
        if (nt > 0) {
            const auto n0 = sympl_mod_norms(twisted_convolve(a1, a2), s0t, phi);
            for (int i = 0; i < nt; ++i) {
                const Set& s = tok[i];
                out.push_back({std::string("twist p=") + s.p0 + "," + s.p1 + "," + s.p2 + " q=" +
                                   s.q0 + "," + s.q1 + "," + s.q2,
                               n0[i] / (n1[nw + i] * n2[nw + i])});
            }
        }
        return out;
    });
    for (const auto& [k, v] : m) (k.rfind("weyl", 0) == 0 ? res.weyl : res.twist)[k] = v;
    std::lock_guard<std::mutex> lk(mu);
    cache[key] = res;
    return res;
}

std::vector<Def> make_defs() {
    std::vector<Def> d;
    auto add = [&](const char* name, const char* anchor, double tol, const char* metric,
                   std::function<void(const SuiteConfig&, CheckResult&)> f) {
        d.push_back(Def{{name, anchor, "inequalities"}, tol, metric, std::move(f)});
    };

    // ---- twisted convolution on Lebesgue spaces ----

    add("twist_domination", "|a twisted b| <= (2/pi)^{1/2} (|a| * |b|) pointwise", 1e-12,
        "max_slack_rel", [](const SuiteConfig& cfg, CheckResult& r) {
            const GridSpec g = cfg.grid(cfg.N);
            r.trials = cfg.heavy_count;
            r.value = trial_max(r.trials, [&](int k) {
                const PhaseFn a = gauss_mod_phase(trial_seed(cfg, k), 0, g);
                const PhaseFn b = gauss_mod_phase(trial_seed(cfg, k), 1, g);
                const double scale = std::sqrt(2 / kPi) * a.v.cwiseAbs().sum() * g.dx() * g.h() *
                                     b.v.cwiseAbs().maxCoeff();
                return pointwise_domination(a, b) / scale;
            });
        });

    add("twist_young_chain",
        "domination and Young give |a twisted b|_p <= (2/pi)^{1/2} |a|_p1 |b|_p2", 1e-8,
        "max_ratio_minus_1", [](const SuiteConfig& cfg, CheckResult& r) {
            const GridSpec g = cfg.grid(cfg.N);
            std::vector<Triple> ts;
            for (const Triple& t : young_gate(r))
                if (check_exponents_twist_lebesgue(E(t.p1), E(t.p2), E(t.r))) ts.push_back(t);
            const RMat one = RMat::Ones(g.N, g.N);
            r.trials = cfg.heavy_count;
            const auto m = max_named(r.trials, [&](int k) {
                const PhaseFn a = gauss_mod_phase(trial_seed(cfg, k), 0, g);
                const PhaseFn b = gauss_mod_phase(trial_seed(cfg, k), 1, g);
                const PhaseFn c = twisted_convolve(a, b);
                Named out;
                for (const Triple& t : ts)
                    out.push_back({label3(E(t.p1), E(t.p2), E(t.r)),
                                   lp_phase(c, E(t.r), one) /
                                       (std::sqrt(2 / kPi) * lp_phase(a, E(t.p1), one) *
                                        lp_phase(b, E(t.p2), one))});
                return out;
            });
            double v = -INFINITY;
            for (const auto& [k, x] : m) {
                r.details[k] = x;
                v = std::max(v, x - 1);
            }
            r.value = v;
        });

    add("twist_l2_chain", "|a twisted b|_2 <= |a|_2 |b|_2, through the unitary map A", 1e-8,
        "max_ratio_minus_1", [](const SuiteConfig& cfg, CheckResult& r) {
            const GridSpec g = cfg.grid(cfg.N);
            if (!check_exponents_twist_lebesgue(E("2"), E("2"), E("2")))
                throw Error("p1 = p2 = p = 2 rejected by the exponent checker");
            r.trials = cfg.heavy_count;
            r.value = trial_max(r.trials, [&](int k) {
                const PhaseFn a = gauss_mod_phase(trial_seed(cfg, k), 0, g);
                const PhaseFn b = gauss_mod_phase(trial_seed(cfg, k), 1, g);
                return l2_norm(twisted_convolve(a, b)) / (l2_norm(a) * l2_norm(b)) - 1;
            });
        });

    add("twist_lebesgue_ratio",
        "twisted convolution on weighted L^p: admissible exponents give finite stable ratios", 1,
        "log2_grid_drift", [](const SuiteConfig& cfg, CheckResult& r) {
            const Triple cand[] = {{"2", "2", "2"}, {"4/3", "2", "2"}, {"3/2", "3/2", "2"},
                                   {"2", "2", "4"}, {"1", "1", "1"},   {"2", "2", "1"}};
            std::vector<Triple> ts;
            int rej = 0;
            for (const Triple& t : cand) {
                if (check_exponents_twist_lebesgue(E(t.p1), E(t.p2), E(t.r))) ts.push_back(t);
                else ++rej;
            }
            const std::string w = cfg.weight("twist_lebesgue_ratio", "sig(X,1)");
            WeightCondition wc;
            wc.kind = WeightCondKind::submult;
            wc.weights = {w, w, w};
            const auto gate = check_weight_condition(wc, cfg.grid(cfg.N));
            r.details["weight_C_est"] = gate.C_est;
            r.details["rejected_sets"] = rej;
            reported(cfg, r, cfg.heavy_count, [&](const GridSpec& g) {
                const RMat one = RMat::Ones(g.N, g.N), wt = weight_table(w, g);
                return max_named(cfg.heavy_count, [&](int k) {
                    const PhaseFn a = gauss_mod_phase(trial_seed(cfg, k), 0, g);
                    const PhaseFn b = gauss_mod_phase(trial_seed(cfg, k), 1, g);
                    const PhaseFn c = twisted_convolve(a, b);
                    Named out;
                    for (const Triple& t : ts) {
                        const auto p1 = E(t.p1), p2 = E(t.p2), p = E(t.r);
                        out.push_back({label3(p1, p2, p),
                                       lp_phase(c, p, one) /
                                           (lp_phase(a, p1, one) * lp_phase(b, p2, one))});
                        if (gate.ok)
                            out.push_back({label3(p1, p2, p) + " weighted",
                                           lp_phase(c, p, wt) /
                                               (lp_phase(a, p1, wt) * lp_phase(b, p2, wt))});
                    }
                    return out;
                });
            });
        });

    add("twist_mixed_minkowski",
        "|a twisted b|_{L^{p,q}} <= (2/pi)^{1/2} |a|_1 |b|_{L^{p,q}} and the mirrored case", 1e-8,
        "max_ratio_minus_1", [](const SuiteConfig& cfg, CheckResult& r) {
            const GridSpec g = cfg.grid(cfg.N);
            struct PQ {
                const char *p, *q;
            };
            const PQ pqs[] = {{"2", "2"}, {"1", "inf"}, {"inf", "1"}, {"2", "4/3"}};
            std::vector<PQ> ok;
            for (const PQ& s : pqs) {
                const auto p = E(s.p), q = E(s.q), one = E("1");
                if (check_exponents_twist_mixed(one, one, p, q, p, q) &&
                    check_exponents_twist_mixed(p, q, one, one, p, q))
                    ok.push_back(s);
            }
            r.trials = cfg.heavy_count;
            const auto m = max_named(r.trials, [&](int k) {
                const PhaseFn a = gauss_mod_phase(trial_seed(cfg, k), 0, g);
                const PhaseFn b = gauss_mod_phase(trial_seed(cfg, k), 1, g);
                const RMat ma = a.v.cwiseAbs(), mb = b.v.cwiseAbs();
                const RMat ab = twisted_convolve(a, b).v.cwiseAbs();
                const double c = std::sqrt(2 / kPi), cell = g.dx() * g.h();
                Named out;
                for (const PQ& s : ok) {
                    const auto p = E(s.p), q = E(s.q);
                    const double nab = lattice_mixed(ab, p, q, 1, g.dx(), g.h());
                    out.push_back({std::string("L1 x L^{") + s.p + "," + s.q + "}",
                                   nab / (c * ma.sum() * cell *
                                          lattice_mixed(mb, p, q, 1, g.dx(), g.h()))});
                    out.push_back({std::string("L^{") + s.p + "," + s.q + "} x L1",
                                   nab / (c * mb.sum() * cell *
                                          lattice_mixed(ma, p, q, 1, g.dx(), g.h()))});
                }
                return out;
            });
            double v = -INFINITY;
            for (const auto& [k, x] : m) {
                r.details[k] = x;
                v = std::max(v, x - 1);
            }
            r.value = v;
        });

    add("twist_mixed_ratio",
        "twisted convolution on mixed Lebesgue spaces: admissible sets give stable ratios", 1,
        "log2_grid_drift", [](const SuiteConfig& cfg, CheckResult& r) {
            struct Set {
                const char *p1, *q1, *p2, *q2, *p, *q;
            };
            const Set cand[] = {{"2", "2", "2", "2", "2", "2"},
                                {"4/3", "2", "4/3", "2", "2", "2"},
                                {"2", "4/3", "2", "4/3", "2", "2"},
                                {"2", "4/3", "2", "4/3", "2", "4"}};  // last rejected
            std::vector<Set> ok;
            int rej = 0;
            for (const Set& s : cand) {
                if (check_exponents_twist_mixed(E(s.p1), E(s.q1), E(s.p2), E(s.q2), E(s.p), E(s.q)))
                    ok.push_back(s);
                else
                    ++rej;
            }
            r.details["rejected_sets"] = rej;
            reported(cfg, r, cfg.heavy_count, [&](const GridSpec& g) {
                return max_named(cfg.heavy_count, [&](int k) {
                    const PhaseFn a = gauss_mod_phase(trial_seed(cfg, k), 0, g);
                    const PhaseFn b = gauss_mod_phase(trial_seed(cfg, k), 1, g);
                    const RMat ma = a.v.cwiseAbs(), mb = b.v.cwiseAbs();
                    const RMat ab = twisted_convolve(a, b).v.cwiseAbs();
                    Named out;
                    for (const Set& s : ok) {
                        const double lhs = lattice_mixed(ab, E(s.p), E(s.q), 1, g.dx(), g.h());
                        const double rhs =
                            lattice_mixed(ma, E(s.p1), E(s.q1), 1, g.dx(), g.h()) *
                            lattice_mixed(mb, E(s.p2), E(s.q2), 1, g.dx(), g.h());
                        out.push_back({std::string(s.p1) + "," + s.q1 + " x " + s.p2 + "," +
                                           s.q2 + " -> " + s.p + "," + s.q,
                                       lhs / rhs});
                    }
                    return out;
                });
            });
        });

    add("twist_corollary_ratio",
        "L^p twisted L^q into L^p for q <= min(p, p'): finite stable ratios", 1,
        "log2_grid_drift", [](const SuiteConfig& cfg, CheckResult& r) {
            struct PQ {
                const char *p, *q;
            };
            const PQ cand[] = {{"2", "2"}, {"2", "1"},   {"4", "4/3"}, {"4/3", "4/3"},
                               {"inf", "1"}, {"1", "1"}, {"2", "4"}};  // last rejected
            std::vector<PQ> ok;
            int rej = 0;
            for (const PQ& s : cand) {
                if (check_exponents_twist_corollary(E(s.p), E(s.q))) ok.push_back(s);
                else ++rej;
            }
            r.details["rejected_sets"] = rej;
            reported(cfg, r, cfg.heavy_count, [&](const GridSpec& g) {
                const RMat one = RMat::Ones(g.N, g.N);
                return max_named(cfg.heavy_count, [&](int k) {
                    const PhaseFn a = gauss_mod_phase(trial_seed(cfg, k), 0, g);
                    const PhaseFn b = gauss_mod_phase(trial_seed(cfg, k), 1, g);
                    const PhaseFn c = twisted_convolve(a, b);
                    Named out;
                    for (const PQ& s : ok)
                        out.push_back({std::string("p=") + s.p + " q=" + s.q,
                                       lp_phase(c, E(s.p), one) /
                                           (lp_phase(a, E(s.p), one) * lp_phase(b, E(s.q), one))});
                    return out;
                });
            });
        });

    // ---- modulation spaces ----

    add("weyl_modulation_ratio",
        "Weyl product on symplectic modulation spaces: admissible exponents give stable ratios",
        1, "log2_grid_drift", [](const SuiteConfig& cfg, CheckResult& r) {
            r.details["rejected_sets"] = modulation_ratios(cfg, cfg.grid(cfg.N)).weyl_rejected;
            reported(cfg, r, cfg.modulation_count,
                     [&](const GridSpec& g) { return modulation_ratios(cfg, g).weyl; });
        });

    add("twist_modulation_ratio",
        "twisted convolution on symplectic W spaces: admissible exponents give stable ratios", 1,
        "log2_grid_drift", [](const SuiteConfig& cfg, CheckResult& r) {
            r.details["rejected_sets"] = modulation_ratios(cfg, cfg.grid(cfg.N)).twist_rejected;
            reported(cfg, r, cfg.modulation_count,
                     [&](const GridSpec& g) { return modulation_ratios(cfg, g).twist; });
        });

    // ---- dilated convolutions and products in Schatten classes ----

    // shared driver: two factors, A or Weyl flavour, convolution or product
    struct DilSpec {
        bool product;       // a1(t1.) a2(t2.) instead of a1(t1.) * a2(t2.)
        bool weyl;          // s^w norms instead of s^A
    };
    auto dilated_ratio = [](const SuiteConfig& cfg, CheckResult& r, DilSpec ds) {
        const auto triples = young_gate(r);
        const std::string w = cfg.weight("dilated", "sig(X,1)");
        const auto& pats = ds.product ? mult_patterns() : conv_patterns();
        const WeightCondKind kind =
            ds.weyl ? WeightCondKind::dilated_weyl : WeightCondKind::dilated;
        std::vector<bool> wok;
        for (const Pattern& p : pats) {
            wok.push_back(dilated_weight_gate(w, p, cfg.grid(cfg.N), kind, ds.product));
            r.details["weight_gate " + p.name()] = wok.back() ? 1 : 0;
        }
        std::vector<ExtExponent> ps;
        for (const char* s : {"1", "4/3", "2", "inf"}) ps.push_back(E(s));
        auto idx = [&](const char* s) {
            const ExtExponent e = E(s);
            for (std::size_t i = 0; i < ps.size(); ++i)
                if (ps[i] == e) return i;
            throw Error("exponent not tabulated");
        };
        reported(cfg, r, cfg.heavy_count, [&](const GridSpec& g) {
            const Spaces L2{l2_space(g), l2_space(g)};
            const Spaces W = weighted_pair(w, g);
            auto opm = [&](const PhaseFn& a) { return ds.weyl ? op_t(a, 0.5) : A_op(a); };
            return max_named(cfg.heavy_count, [&](int k) {
                const PhaseFn a1 = gauss_mod_phase(trial_seed(cfg, k), 0, g);
                const PhaseFn a2 = gauss_mod_phase(trial_seed(cfg, k), 1, g);
                Named out;
                for (int space = 0; space < 2; ++space) {
                    const Spaces& S = space == 0 ? L2 : W;
                    const auto n1 = schatten_many(opm(a1), ps, S);
                    const auto n2 = schatten_many(opm(a2), ps, S);
                    for (std::size_t pi = 0; pi < pats.size(); ++pi) {
                        if (space == 1 && !wok[pi]) continue;
                        const Pattern& p = pats[pi];
                        const PhaseFn d1 = dilate(a1, p.t1), d2 = dilate(a2, p.t2);
                        PhaseFn c(g);
                        if (ds.product) c.v = d1.v.cwiseProduct(d2.v);
                        else c = convolve(d1, d2, ConvMode::linear);
                        const auto n0 = schatten_many(opm(c), ps, S);
                        for (const Triple& t : triples) {
                            const auto p1 = E(t.p1), p2 = E(t.p2);
                            // |t|^{-2/p} for convolutions, |t|^{-2/p'} for products
                            const double e1 = (ds.product ? p1.conj() : p1).recip().value();
                            const double e2 = (ds.product ? p2.conj() : p2).recip().value();
                            const double cst = std::pow(std::abs(p.t1), -2 * e1) *
                                               std::pow(std::abs(p.t2), -2 * e2);
                            out.push_back({p.name() + " " + label3(p1, p2, E(t.r)) +
                                               (space ? " weighted" : ""),
                                           n0[idx(t.r)] / (cst * n1[idx(t.p1)] * n2[idx(t.p2)])});
                        }
                    }
                }
                return out;
            });
        });
    };

    add("dilated_conv_schatten",
        "dilated convolution on s^A classes: ratio to |t1|^{-2/p1}|t2|^{-2/p2} times the norms", 1,
        "log2_grid_drift", [dilated_ratio](const SuiteConfig& cfg, CheckResult& r) {
            dilated_ratio(cfg, r, {false, false});
        });

    add("dilated_mult_schatten",
        "dilated product on s^A classes: ratio to |t1|^{-2/p1'}|t2|^{-2/p2'} times the norms", 1,
        "log2_grid_drift", [dilated_ratio](const SuiteConfig& cfg, CheckResult& r) {
            dilated_ratio(cfg, r, {true, false});
        });

    add("weyl_conv_schatten", "dilated convolution on s^w classes: stable ratios", 1,
        "log2_grid_drift", [dilated_ratio](const SuiteConfig& cfg, CheckResult& r) {
            dilated_ratio(cfg, r, {false, true});
        });

    add("weyl_mult_schatten", "dilated product on s^w classes: stable ratios", 1,
        "log2_grid_drift", [dilated_ratio](const SuiteConfig& cfg, CheckResult& r) {
            dilated_ratio(cfg, r, {true, true});
        });

    add("dilated_conv3_schatten",
        "three-factor dilated convolution, t_k = 3^{1/2}: stable ratios", 1, "log2_grid_drift",
        [](const SuiteConfig& cfg, CheckResult& r) {
            struct Quad {
                const char *p1, *p2, *p3, *r;
            };
            const Quad cand[] = {{"1", "1", "1", "1"},
                                 {"1", "1", "2", "2"},
                                 {"4/3", "4/3", "4/3", "4"},
                                 {"2", "2", "2", "2"}};  // last rejected
            std::vector<Quad> ok;
            int rej = 0;
            for (const Quad& q : cand) {
                if (check_exponents_young({E(q.p1), E(q.p2), E(q.p3)}, E(q.r))) ok.push_back(q);
                else ++rej;
            }
            r.details["rejected_sets"] = rej;
            const double t = std::sqrt(3.0);
            reported(cfg, r, cfg.heavy_count, [&](const GridSpec& g) {
                const TemperedSpace L2 = l2_space(g);
                const Spaces S{L2, L2};
                std::vector<ExtExponent> ps{E("1"), E("4/3"), E("2"), E("4")};
                auto at = [&](const std::vector<double>& v, const char* s) {
                    for (std::size_t i = 0; i < ps.size(); ++i)
                        if (ps[i] == E(s)) return v[i];
                    throw Error("exponent not tabulated");
                };
                return max_named(cfg.heavy_count, [&](int k) {
                    std::vector<PhaseFn> a;
                    std::vector<std::vector<double>> n;
                    for (int j = 0; j < 3; ++j) {
                        a.push_back(gauss_mod_phase(trial_seed(cfg, k), j, g));
                        n.push_back(schatten_many(A_op(a.back()), ps, S));
                    }
                    const PhaseFn c = convolve(
                        convolve(dilate(a[0], t), dilate(a[1], t), ConvMode::linear),
                        dilate(a[2], t), ConvMode::linear);
                    const auto n0 = schatten_many(A_op(c), ps, S);
                    Named out;
                    for (const Quad& q : ok) {
                        double cst = 1;
                        for (const char* p : {q.p1, q.p2, q.p3})
                            cst *= std::pow(t, -2 * E(p).recip().value());
                        out.push_back({std::string(q.p1) + "," + q.p2 + "," + q.p3 + "," + q.r,
                                       at(n0, q.r) / (cst * at(n[0], q.p1) * at(n[1], q.p2) *
                                                      at(n[2], q.p3))});
                    }
                    return out;
                });
            });
        });

    // ---- positivity ----

    add("dilated_mult_positive",
        "products of dilated sigma-positive symbols are sigma-positive", 1e-8, "max_neg_eig_rel",
        [](const SuiteConfig& cfg, CheckResult& r) {
            const GridSpec g = cfg.grid(cfg.positivity_N);
            r.trials = cfg.heavy_count;
            const auto m = max_named(r.trials, [&](int k) {
                const PhaseFn a1 = sigma_pos_symbol(trial_seed(cfg, k), 0, g);
                const PhaseFn a2 = sigma_pos_symbol(trial_seed(cfg, k), 1, g);
                Named out;
                out.push_back({"factor", std::max(neg_part(A_op(a1)), neg_part(A_op(a2)))});
                for (const Pattern& p : mult_patterns()) {
                    PhaseFn c(g);
                    c.v = dilate(a1, p.t1).v.cwiseProduct(dilate(a2, p.t2).v);
                    out.push_back({p.name(), neg_part(A_op(c))});
                }
                return out;
            });
            r.value = -INFINITY;
            for (const auto& [k, v] : m) {
                r.details[k] = v;
                if (k != "factor") r.value = std::max(r.value, v);
            }
        });

    add("weyl_conv_positive",
        "dilated convolutions of positive Weyl symbols give positive Weyl operators", 1e-8,
        "max_neg_eig_rel", [](const SuiteConfig& cfg, CheckResult& r) {
            const GridSpec g = cfg.grid(cfg.positivity_N);
            r.trials = cfg.heavy_count;
            const auto m = max_named(r.trials, [&](int k) {
                const PhaseFn a1 = weyl_pos_symbol(trial_seed(cfg, k), 0, g);
                const PhaseFn a2 = weyl_pos_symbol(trial_seed(cfg, k), 1, g);
                Named out;
                out.push_back({"factor", std::max(neg_part(op_t(a1, 0.5)), neg_part(op_t(a2, 0.5)))});
                for (const Pattern& p : conv_patterns()) {
                    const PhaseFn c =
                        convolve(dilate(a1, p.t1), dilate(a2, p.t2), ConvMode::linear);
                    out.push_back({p.name(), neg_part(op_t(c, 0.5))});
                }
                return out;
            });
            r.value = -INFINITY;
            for (const auto& [k, v] : m) {
                r.details[k] = v;
                if (k != "factor") r.value = std::max(r.value, v);
            }
        });

    add("t_calculus_conv_positive",
        "the same for Op_t with factors positive in Op_t (pattern (00)) at t = 0 and t = 0.3",
        1e-8, "max_neg_eig_rel", [](const SuiteConfig& cfg, CheckResult& r) {
            const GridSpec g = cfg.grid(cfg.N);
            r.trials = cfg.heavy_count;
            const auto m = max_named(r.trials, [&](int k) {
                Named out;
                for (double t : {0.0, 0.3}) {
                    const PhaseFn a1 =
                        calculus_transform(weyl_pos_symbol(trial_seed(cfg, k), 0, g), 0.5, t);
                    const PhaseFn a2 =
                        calculus_transform(weyl_pos_symbol(trial_seed(cfg, k), 1, g), 0.5, t);
                    const PhaseFn c =
                        convolve(dilate(a1, kSqrt2), dilate(a2, kSqrt2), ConvMode::linear);
                    out.push_back({"t=" + fmt(t), neg_part(op_t(c, t))});
                }
                return out;
            });
            r.value = -INFINITY;
            for (const auto& [k, v] : m) {
                r.details[k] = v;
                r.value = std::max(r.value, v);
            }
        });

    add("t_calculus_conv_schatten",
        "dilated convolution on s_{t,p} classes, pattern (00), t = 0.3: stable ratios", 1,
        "log2_grid_drift", [](const SuiteConfig& cfg, CheckResult& r) {
            const auto triples = young_gate(r);
            const double t = 0.3;
            reported(cfg, r, cfg.heavy_count, [&](const GridSpec& g) {
                const Spaces S{l2_space(g), l2_space(g)};
                std::vector<ExtExponent> ps{E("1"), E("4/3"), E("2"), E("inf")};
                auto at = [&](const std::vector<double>& v, const char* s) {
                    for (std::size_t i = 0; i < ps.size(); ++i)
                        if (ps[i] == E(s)) return v[i];
                    throw Error("exponent not tabulated");
                };
                return max_named(cfg.heavy_count, [&](int k) {
                    const PhaseFn a1 = gauss_mod_phase(trial_seed(cfg, k), 0, g);
                    const PhaseFn a2 = gauss_mod_phase(trial_seed(cfg, k), 1, g);
                    const PhaseFn c =
                        convolve(dilate(a1, kSqrt2), dilate(a2, kSqrt2), ConvMode::linear);
                    const auto n0 = schatten_many(op_t(c, t), ps, S);
                    const auto n1 = schatten_many(op_t(a1, t), ps, S);
                    const auto n2 = schatten_many(op_t(a2, t), ps, S);
                    Named out;
                    for (const Triple& tr : triples) {
                        const double cst = std::pow(kSqrt2, -2 * E(tr.p1).recip().value()) *
                                           std::pow(kSqrt2, -2 * E(tr.p2).recip().value());
                        out.push_back({label3(E(tr.p1), E(tr.p2), E(tr.r)),
                                       at(n0, tr.r) / (cst * at(n1, tr.p1) * at(n2, tr.p2))});
                    }
                    return out;
                });
            });
        });

    add("odd_monomial_positive", "odd monomials of sigma-positive symbols are sigma-positive",
        1e-8, "max_neg_eig_rel", [](const SuiteConfig& cfg, CheckResult& r) {
            const GridSpec g = cfg.grid(cfg.positivity_N);
            r.trials = std::min(cfg.heavy_count, 5);
            const auto m = max_named(r.trials, [&](int k) {
                const PhaseFn a1 = sigma_pos_symbol(trial_seed(cfg, k), 0, g);
                const PhaseFn a2 = sigma_pos_symbol(trial_seed(cfg, k), 1, g);
                return Named{{"a^3", neg_part(A_op(odd_monomial({a1}, {3})))},
                             {"a1^2 a2", neg_part(A_op(odd_monomial({a1, a2}, {2, 1})))}};
            });
            r.value = -INFINITY;
            for (const auto& [k, v] : m) {
                r.details[k] = v;
                r.value = std::max(r.value, v);
            }
        });

    add("odd_monomial_schatten",
        "odd monomials in s^A_1(1/v, v): ratio to the product of the norms, stable", 1,
        "log2_grid_drift", [](const SuiteConfig& cfg, CheckResult& r) {
            const std::string v = cfg.weight("odd_monomial", "sig(X,1)");
            reported(cfg, r, cfg.heavy_count, [&](const GridSpec& g) {
                const Spaces S = weighted_pair(v, g);
                const std::vector<ExtExponent> one{E("1")};
                return max_named(cfg.heavy_count, [&](int k) {
                    const PhaseFn a1 = gauss_mod_phase(trial_seed(cfg, k), 0, g);
                    const PhaseFn a2 = gauss_mod_phase(trial_seed(cfg, k), 1, g);
                    const double n1 = schatten_many(A_op(a1), one, S)[0];
                    const double n2 = schatten_many(A_op(a2), one, S)[0];
                    return Named{
                        {"a^3", schatten_many(A_op(odd_monomial({a1}, {3})), one, S)[0] /
                                    std::pow(n1, 3)},
                        {"a1^2 a2",
                         schatten_many(A_op(odd_monomial({a1, a2}, {2, 1})), one, S)[0] /
                             (n1 * n1 * n2)}};
                });
            });
        });

    add("rank_one_square_positive",
        "a = |u(X/2^{1/2})|^2 for a rank-one Weyl symbol u gives a positive operator", 1e-8,
        "max_neg_eig_rel", [](const SuiteConfig& cfg, CheckResult& r) {
            const GridSpec g = cfg.grid(cfg.positivity_N);
            r.trials = std::min(cfg.heavy_count, 5);
            r.value = trial_max(r.trials, [&](int k) {
                const PhaseFn u = dilate(rank_one_symbol(trial_seed(cfg, k), 0, g), 1 / kSqrt2);
                PhaseFn a(g);
                a.v = u.v.cwiseAbs2().cast<cplx>();
                return neg_part(op_t(a, 0.5));
            });
        });

    add("rank_one_square_schatten",
        "the same symbol in s^w_1(1/v1, v1), v1 = v(./2^{1/2}): ratio to |u|^2, stable", 1,
        "log2_grid_drift", [](const SuiteConfig& cfg, CheckResult& r) {
            const WeightExpr v(cfg.weight("rank_one_square", "sig(X,1)"));
            reported(cfg, r, cfg.heavy_count, [&](const GridSpec& g) {
                const Spaces Sv = weighted_pair(v.text(), g);
                const ConfigFn g0 = gaussian(g);
                const WeightExpr v1 = v.dilated(1 / kSqrt2);
                const Spaces S1{make_space(v1.inverted(), g0), make_space(v1, g0)};
                const std::vector<ExtExponent> one{E("1")};
                return max_named(cfg.heavy_count, [&](int k) {
                    const PhaseFn u0 = rank_one_symbol(trial_seed(cfg, k), 0, g);
                    const PhaseFn u = dilate(u0, 1 / kSqrt2);
                    PhaseFn a(g);
                    a.v = u.v.cwiseAbs2().cast<cplx>();
                    const double nu = schatten_many(op_t(u0, 0.5), one, Sv)[0];
                    return Named{{"rank_one", schatten_many(op_t(a, 0.5), one, S1)[0] / (nu * nu)}};
                });
            });
        });

    add("toeplitz_positive",
        "Tp_{h,h}(a) >= 0 when a(2^{1/2} .) has a positive Weyl operator", 1e-8,
        "max_neg_eig_rel", [](const SuiteConfig& cfg, CheckResult& r) {
            const GridSpec g = cfg.grid(cfg.N);
            r.trials = cfg.heavy_count;
            r.value = trial_max(r.trials, [&](int k) {
                const PhaseFn b = weyl_pos_symbol(trial_seed(cfg, k), 0, g);
                const ConfigFn h = gauss_mod(trial_seed(cfg, k), 7, g);
                return neg_part(toeplitz(dilate(b, 1 / kSqrt2), h, h));
            });
        });

    add("toeplitz_schatten",
        "Tp_{h1,h2}(a) in I_p against |a(2^{1/2} .)|_{s^w_p} |h1| |h2|: stable ratios", 1,
        "log2_grid_drift", [](const SuiteConfig& cfg, CheckResult& r) {
            reported(cfg, r, cfg.heavy_count, [&](const GridSpec& g) {
                const Spaces S{l2_space(g), l2_space(g)};
                const std::vector<ExtExponent> ps{E("1"), E("2"), E("inf")};
                return max_named(cfg.heavy_count, [&](int k) {
                    const PhaseFn a = gauss_mod_phase(trial_seed(cfg, k), 0, g);
                    const ConfigFn h1 = gauss_mod(trial_seed(cfg, k), 1, g);
                    const ConfigFn h2 = gauss_mod(trial_seed(cfg, k), 2, g);
                    const auto nt = schatten_many(toeplitz(a, h1, h2), ps, S);
                    const auto nb = schatten_many(op_t(dilate(a, kSqrt2), 0.5), ps, S);
                    Named out;
                    for (std::size_t i = 0; i < ps.size(); ++i)
                        out.push_back({"p=" + ps[i].str(),
                                       nt[i] / (nb[i] * l2_norm(h1) * l2_norm(h2))});
                    return out;
                });
            });
        });

    // ---- Schatten structure ----

    add("schatten_holder",
        "|a2 #_t a1|_{s_r(H1,H3)} <= |a1|_{s_p1(H1,H2)} |a2|_{s_p2(H2,H3)}, 1/r = 1/p1 + 1/p2",
        1e-8, "max_rel_excess", [](const SuiteConfig& cfg, CheckResult& r) {
            const GridSpec g = cfg.grid(cfg.N);
            const ConfigFn g0 = gaussian(g);
            const TemperedSpace H1 = l2_space(g);
            const TemperedSpace H2 = make_space(WeightExpr(cfg.weight("holder_H2", "sig(x,1)")), g0);
            const TemperedSpace H3 =
                make_space(WeightExpr(cfg.weight("holder_H3", "sig(xi,1)*sig(x,-1)")), g0);
            struct PP {
                const char *p1, *p2;
            };
            const PP pairs[] = {{"2", "2"}, {"1", "inf"}, {"inf", "1"}, {"4", "4/3"},
                                {"2", "inf"}, {"4", "4"}, {"inf", "inf"}, {"3", "6"}};
            r.trials = cfg.count;
            const auto m = max_named(r.trials, [&](int k) {
                const PP& pp = pairs[k % 8];
                const ExtExponent p1 = E(pp.p1), p2 = E(pp.p2);
                const Rational rr = p1.recip() + p2.recip();
                const ExtExponent re = rr == Rational(0) ? ExtExponent::inf()
                                                         : ExtExponent(Rational(1) / rr);
                const PhaseFn a1 = gauss_mod_phase(trial_seed(cfg, k), 0, g);
                const PhaseFn a2 = gauss_mod_phase(trial_seed(cfg, k), 1, g);
                const PhaseFn c = weyl_product(a2, a1, TwistRoute::a_route);
                const double lhs = schatten_norm(c, 0.5, re, H1, H3);
                const double rhs =
                    schatten_norm(a1, 0.5, p1, H1, H2) * schatten_norm(a2, 0.5, p2, H2, H3);
                return Named{{std::string("p1=") + pp.p1 + " p2=" + pp.p2, (lhs - rhs) / rhs}};
            });
            r.value = -INFINITY;
            for (const auto& [k, v] : m) {
                r.details[k] = v;
                r.value = std::max(r.value, v);
            }
        });

    add("schatten_duality",
        "|(a, b)| / (2 pi) <= |a|_{s_p(H1,H2)} |b|_{s_p'(H1',H2')}", 1e-8, "max_rel_excess",
        [](const SuiteConfig& cfg, CheckResult& r) {
            const GridSpec g = cfg.grid(cfg.N);
            const ConfigFn g0 = gaussian(g);
            const TemperedSpace H1 = make_space(WeightExpr(cfg.weight("holder_H2", "sig(x,1)")), g0);
            const TemperedSpace H2 =
                make_space(WeightExpr(cfg.weight("holder_H3", "sig(xi,1)*sig(x,-1)")), g0);
            const char* ps[] = {"1", "2", "4/3", "inf"};
            r.trials = cfg.heavy_count;
            const auto m = max_named(r.trials, [&](int k) {
                const PhaseFn a = gauss_mod_phase(trial_seed(cfg, k), 0, g);
                // b correlated with a so that the pairing is not small
                PhaseFn b = gauss_mod_phase(trial_seed(cfg, k), 1, g);
                b.v = 0.3 * b.v + a.v;
                Named out;
                for (const char* p : ps) {
                    const DualityPair dp = schatten_duality_pair(a, b, 0.5, E(p), H1, H2);
                    out.push_back({std::string("p=") + p, (dp.lhs - dp.rhs) / dp.rhs});
                }
                return out;
            });
            r.value = -INFINITY;
            for (const auto& [k, v] : m) {
                r.details[k] = v;
                r.value = std::max(r.value, v);
            }
        });

    return d;
}

const std::vector<Def>& defs() {
    static const std::vector<Def> d = make_defs();
    return d;
}

}  // namespace

const std::vector<CheckInfo>& inequality_checks() {
    static const std::vector<CheckInfo> v = infos(defs());
    return v;
}

std::vector<CheckResult> run_inequality_suite(const SuiteConfig& cfg) {
    return run_defs(defs(), cfg);
}

}  // namespace wcalc
