// Exact identities of the calculus, checked on seeded random ensembles.

#include <cmath>

#include "suite_util.hpp"
#include "wcalc/harness.hpp"
#include "wcalc/products.hpp"

namespace wcalc {

using namespace suite;

namespace {

const double kSqrt2Pi = std::sqrt(2 * kPi);
// the direct sum is checked against this route by twist_routes
constexpr TwistRoute kFast = TwistRoute::a_route;

struct Ctx {
    const SuiteConfig& cfg;
    GridSpec g;
    explicit Ctx(const SuiteConfig& c) : cfg(c), g(c.grid(c.N)) {}
    std::uint64_t seed(int k) const { return trial_seed(cfg, k); }
    PhaseFn sym(int k, int slot) const { return gauss_mod_phase(seed(k), slot, g); }
    // t-symbol of the operator whose Weyl symbol is sym(k, slot); a generic
    // localized symbol used directly at t != 1/2 would be a chirped operator
    PhaseFn sym_t(int k, int slot, double t) const {
        return t == 0.5 ? sym(k, slot) : calculus_transform(sym(k, slot), 0.5, t);
    }
    ConfigFn vec(int k, int slot) const { return gauss_mod(seed(k), slot, g); }
};

// max |a - b| over rows and columns 1..N-1, relative to max |b|; index 0 has
// no mirror image on the grid
double rel_err_interior(const CMat& a, const CMat& b) {
    const int n = static_cast<int>(a.rows()) - 1;
    return (a.bottomRightCorner(n, n) - b.bottomRightCorner(n, n)).cwiseAbs().maxCoeff() /
           b.cwiseAbs().maxCoeff();
}

std::vector<Def> make_defs() {
    std::vector<Def> d;
    auto add = [&](const char* name, const char* anchor, double tol,
                   std::function<void(const SuiteConfig&, CheckResult&)> f,
                   const char* metric = "max_rel_err") {
        d.push_back(Def{{name, anchor, "identities"}, tol, metric, std::move(f)});
    };

    add("fsigma_involution", "the symplectic Fourier transform is its own inverse", 1e-8,
        [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            r.trials = cfg.heavy_count;
            r.value = trial_max(r.trials, [&](int k) {
                const PhaseFn a = c.sym(k, 0);
                return rel_err(sympl_fourier(sympl_fourier(a)).v, a.v);
            });
        });

    add("fsigma_parseval", "the symplectic and the plain Fourier transforms preserve L2 products",
        1e-8, [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            r.trials = cfg.heavy_count;
            r.value = trial_max(r.trials, [&](int k) {
                const PhaseFn a = c.sym(k, 0), b = c.sym(k, 1);
                const double na = l2_norm(a), nb = l2_norm(b);
                const double e1 = std::abs(l2_norm(sympl_fourier(a)) - na) / na;
                const double e2 =
                    std::abs(l2_inner(sympl_fourier(a), sympl_fourier(b)) - l2_inner(a, b)) /
                    (na * nb);
                const ConfigFn f = c.vec(k, 2);
                const double e3 = std::abs(l2_norm(fourier(f)) - l2_norm(f)) / l2_norm(f);
                return std::max({e1, e2, e3});
            });
        });

    add("fsigma_gaussian",
        "exp(-l|X|^2) maps to exp(-|X|^2/l)/l; l = 1 is a fixed point", 1e-8,
        [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            const double lams[] = {1.0, 0.5, 2.0};
            r.trials = 3;
            double e = 0;
            for (double l : lams) {
                PhaseFn a(c.g), ref(c.g);
                for (int i = 0; i < c.g.N; ++i)
                    for (int j = 0; j < c.g.N; ++j) {
                        const double r2 = c.g.x(i) * c.g.x(i) + c.g.xi(j) * c.g.xi(j);
                        a.v(i, j) = std::exp(-l * r2);
                        ref.v(i, j) = std::exp(-r2 / l) / l;
                    }
                const double el = rel_err(sympl_fourier(a).v, ref.v);
                r.details["lambda=" + fmt(l)] = el;
                e = std::max(e, el);
            }
            r.value = e;
        });

    add("twist_routes", "twisted convolution by direct quadrature equals the route through A",
        1e-9, [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            r.trials = cfg.heavy_count;
            r.value = trial_max(r.trials, [&](int k) {
                const PhaseFn a = c.sym(k, 0), b = c.sym(k, 1);
                return rel_err(twisted_convolve(a, b, TwistRoute::a_route).v,
                               twisted_convolve(a, b).v);
            });
        });

    add("weyl_product_twist",
        "Weyl product equals (2 pi)^{-1/2} a twisted with the symplectic Fourier image of b",
        1e-8, [](const SuiteConfig& cfg, CheckResult& r) {
            // oracle: A(F a) = (2 pi)^{1/2} Op(a), so A(F(a#b)) = (2 pi)^{-1/2} A(Fa) A(Fb)
            Ctx c(cfg);
            r.trials = cfg.heavy_count;
            const auto e = trial_maxes(r.trials, 2, [&](int k) {
                const PhaseFn a = c.sym(k, 0), b = c.sym(k, 1);
                const PhaseFn ab = weyl_product(a, b);
                const double route = rel_err(weyl_product(a, b, TwistRoute::a_route).v, ab.v);
                OperatorMatrix rhs = compose(A_op(sympl_fourier(a)), A_op(sympl_fourier(b)));
                rhs.m /= kSqrt2Pi;
                return std::vector<double>{route, rel_err(A_op(sympl_fourier(ab)).m, rhs.m)};
            });
            r.details["route_err"] = e[0];
            r.details["operator_err"] = e[1];
            r.value = max_of(e);
        });

    add("fsigma_of_twist",
        "F(a twisted b) = (F a) twisted b = (a reflected) twisted (F b)", 1e-8,
        [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            r.trials = cfg.heavy_count;
            r.value = trial_max(r.trials, [&](int k) {
                const PhaseFn a = c.sym(k, 0), b = c.sym(k, 1);
                const PhaseFn lhs = sympl_fourier(twisted_convolve(a, b, kFast));
                return std::max(
                    rel_err(twisted_convolve(sympl_fourier(a), b, kFast).v, lhs.v),
                    rel_err(twisted_convolve(reflect(a), sympl_fourier(b), kFast).v, lhs.v));
            });
        });

    add("fsigma_of_weyl_product", "F(a # b) = (2 pi)^{-1/2} (F a) twisted (F b)", 1e-8,
        [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            r.trials = cfg.heavy_count;
            r.value = trial_max(r.trials, [&](int k) {
                const PhaseFn a = c.sym(k, 0), b = c.sym(k, 1);
                const PhaseFn rhs = scaled(twisted_convolve(sympl_fourier(a), sympl_fourier(b), kFast),
                                           1.0 / kSqrt2Pi);
                return rel_err(sympl_fourier(weyl_product(a, b, kFast)).v, rhs.v);
            });
        });

    add("twist_pairing_associativity",
        "L2 pairings move factors across a twisted product; the product is associative", 1e-8,
        [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            r.trials = cfg.heavy_count;
            r.value = trial_max(r.trials, [&](int k) {
                const PhaseFn a1 = c.sym(k, 0), a2 = c.sym(k, 1), b = c.sym(k, 2);
                const PhaseFn t1 = symmetry_transform(a1, SymKind::tilde);
                const PhaseFn t2 = symmetry_transform(a2, SymKind::tilde);
                const cplx x = l2_inner(twisted_convolve(a1, a2, kFast), b);
                const cplx y = l2_inner(a1, twisted_convolve(b, t2, kFast));
                const cplx z = l2_inner(a2, twisted_convolve(t1, b, kFast));
                const double s = l2_norm(a1) * l2_norm(a2) * l2_norm(b);
                const double assoc =
                    rel_err(twisted_convolve(twisted_convolve(a1, a2, kFast), b, kFast).v,
                            twisted_convolve(a1, twisted_convolve(a2, b, kFast), kFast).v);
                return std::max({std::abs(x - y) / s, std::abs(x - z) / s, assoc});
            });
        });

    add("sympl_stft_fourier",
        "symplectic STFT of F a with window F phi is the swapped transform times a phase",
        1e-8, [](const SuiteConfig& cfg, CheckResult& r) {
            const GridSpec g = cfg.grid(cfg.coarse_N);
            const int N = g.N;
            const PhaseFn phi = gaussian_phase(g);  // even window
            r.trials = 3;
            r.value = trial_max(r.trials, [&](int k) {
                const PhaseFn a = gauss_mod_phase(trial_seed(cfg, k), 0, g);
                const Phase4Fn L = sympl_stft(sympl_fourier(a), sympl_fourier(phi));
                const Phase4Fn R = sympl_stft(a, phi);
                double e = 0;
                for (int i = 0; i < N; ++i)
                    for (int j = 0; j < N; ++j)
                        for (int m = 0; m < N; ++m)
                            for (int l = 0; l < N; ++l) {
                                const cplx ph =
                                    std::polar(1.0, 2 * (g.x(i) * g.xi(l) - g.x(m) * g.xi(j)));
                                e = std::max(e, std::abs(L.at(i, j, m, l) - ph * R.at(m, l, i, j)));
                            }
                return e / max_abs(R);
            });
        });

    add("stft_weyl_product",
        "symplectic STFT of a Weyl product against the quadrature formula over Z", 1e-5,
        [](const SuiteConfig& cfg, CheckResult& r) {
            const GridSpec g = cfg.grid(cfg.coarse_N);
            r.trials = 3;
            r.value = trial_max(r.trials, [&](int k) {
                const std::uint64_t s = trial_seed(cfg, k);
                const PhaseFn a1 = gauss_mod_phase(s, 0, g), a2 = gauss_mod_phase(s, 1, g);
                const PhaseFn p1 = gauss_mod_phase(s, 2, g), p2 = gauss_mod_phase(s, 3, g);
                const PhaseFn phi = scaled(weyl_product(p1, p2), kPi);
                return rel_err4(sympl_stft(weyl_product(a1, a2), phi),
                                weyl_stft_oracle(a1, a2, p1, p2));
            });
        });

    add("stft_twisted_product",
        "symplectic STFT of a twisted product against the quadrature formula over Z", 1e-5,
        [](const SuiteConfig& cfg, CheckResult& r) {
            const GridSpec g = cfg.grid(cfg.coarse_N);
            r.trials = 3;
            r.value = trial_max(r.trials, [&](int k) {
                const std::uint64_t s = trial_seed(cfg, k);
                const PhaseFn a1 = gauss_mod_phase(s, 0, g), a2 = gauss_mod_phase(s, 1, g);
                const PhaseFn p1 = gauss_mod_phase(s, 2, g), p2 = gauss_mod_phase(s, 3, g);
                const PhaseFn phi = scaled(twisted_convolve(p1, p2), 0.5);
                return rel_err4(sympl_stft(twisted_convolve(a1, a2), phi),
                                twisted_stft_oracle(a1, a2, p1, p2));
            });
        });

    add("a_twist_composition", "A maps twisted convolution to kernel composition", 1e-6,
        [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            r.trials = cfg.heavy_count;
            r.value = trial_max(r.trials, [&](int k) {
                const PhaseFn a = c.sym(k, 0), b = c.sym(k, 1);
                return rel_frob(A_op(twisted_convolve(a, b)).m, compose(A_op(a), A_op(b)).m);
            });
        });

    add("a_reflection", "A of the reflected symbol is the reflected kernel", 1e-8,
        [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            const int N = c.g.N;
            r.trials = cfg.heavy_count;
            r.value = trial_max(r.trials, [&](int k) {
                const PhaseFn a = c.sym(k, 0);
                const CMat U = A_op(a).m;
                CMat R(N, N);
                for (int i = 0; i < N; ++i)
                    for (int l = 0; l < N; ++l) R(i, l) = U((N - i) % N, (N - l) % N);
                return rel_err_interior(A_op(reflect(a)).m, R);
            });
            r.note = "rows and columns of the point -L excluded: its mirror is off the grid";
        });

    add("a_fourier_flip", "A of the symplectic Fourier image flips the first kernel variable",
        1e-8, [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            const int N = c.g.N;
            r.trials = cfg.heavy_count;
            r.value = trial_max(r.trials, [&](int k) {
                const PhaseFn a = c.sym(k, 0);
                const CMat U = A_op(a).m;
                CMat J(N, N);
                for (int i = 0; i < N; ++i)
                    for (int l = 0; l < N; ++l) J(i, l) = U((N - i) % N, l);
                return rel_err_interior(A_op(sympl_fourier(a)).m, J);
            });
            r.note = "rows and columns of the point -L excluded: its mirror is off the grid";
        });

    add("a_weyl_link",
        "A(F a) = (2 pi)^{1/2} Op(a), and the Weyl form equals the pairing of Aa with g-check x conj f",
        1e-6, [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            const int N = c.g.N;
            const double dx = c.g.dx();
            r.trials = cfg.heavy_count;
            const auto e = trial_maxes(r.trials, 2, [&](int k) {
                const PhaseFn a = c.sym(k, 0);
                const OperatorMatrix W = op_t(a, 0.5);
                const double e1 = rel_err(A_op(sympl_fourier(a)).m, W.m * kSqrt2Pi);
                const ConfigFn f = c.vec(k, 1), h = c.vec(k, 2), hr = reflect(h);
                const CMat U = A_op(a).m;
                cplx s = 0;
                for (int i = 0; i < N; ++i)
                    for (int l = 0; l < N; ++l) s += U(i, l) * std::conj(hr.v(i)) * f.v(l);
                s *= dx * dx / kSqrt2Pi;
                const cplx lhs = l2_inner(apply(W, f), h);
                return std::vector<double>{e1, std::abs(lhs - s) / (W.m.norm() * dx)};
            });
            r.details["kernel_err"] = e[0];
            r.details["pairing_err"] = e[1];
            r.value = max_of(e);
        });

    add("a_adjoint", "the adjoint of Aa is A of conj(a(-X))", 1e-8,
        [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            r.trials = cfg.heavy_count;
            r.value = trial_max(r.trials, [&](int k) {
                const PhaseFn a = c.sym(k, 0);
                return rel_err(A_op(symmetry_transform(a, SymKind::tilde)).m,
                               CMat(A_op(a).m.adjoint()));
            });
        });

    add("t_product_composition", "Op_t(a #_t b) = Op_t(a) Op_t(b) for t = 0 and t = 1/2", 1e-6,
        [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            r.trials = cfg.heavy_count;
            const auto e = trial_maxes(r.trials, 2, [&](int k) {
                const PhaseFn a = c.sym(k, 0), b = c.sym(k, 1);
                const double h = rel_frob(op_t(weyl_product(a, b), 0.5).m,
                                          compose(op_t(a, 0.5), op_t(b, 0.5)).m);
                const double z = rel_frob(op_t(weyl_product_t(a, b, 0.0), 0.0).m,
                                          compose(op_t(a, 0.0), op_t(b, 0.0)).m);
                return std::vector<double>{z, h};
            });
            r.details["t=0"] = e[0];
            r.details["t=0.5"] = e[1];
            r.value = max_of(e);
        });

    add("rank_one_wigner", "Op_t((2 pi)^{1/2} W^t_{f1,f2}) is f -> (f, f2) f1", 1e-6,
        [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            const double ts[] = {0.0, 0.5, 1.0, 0.3};
            r.trials = cfg.heavy_count;
            r.value = trial_max(r.trials, [&](int k) {
                const ConfigFn f1 = c.vec(k, 0), f2 = c.vec(k, 1);
                const CMat R = rank_one(f1, f2).m;
                double e = 0;
                for (double t : ts)
                    e = std::max(e, rel_err(op_t(scaled(wigner_t(f1, f2, t), kSqrt2Pi), t).m, R));
                return e;
            });
        });

    add("rank_one_schatten",
        "every Schatten norm of a rank-one Wigner symbol is (2 pi)^{-1/2} |f1| |f2|", 1e-6,
        [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            const TemperedSpace L2 = l2_space(c.g);
            const char* ps[] = {"1", "2", "4", "inf"};
            const ConfigFn g0 = gaussian(c.g);
            const PhaseFn w0 = wigner_t(g0, g0, 0.5);
            double e = 0;
            for (const char* p : ps) {
                const double v = schatten_norm(w0, 0.5, ExtExponent::parse(p), L2, L2);
                r.details[std::string("gaussian_p=") + p] = v;
                e = std::max(e, std::abs(v * kSqrt2Pi - 1.0));
            }
            r.trials = cfg.heavy_count;
            const double er = trial_max(r.trials, [&](int k) {
                const ConfigFn f1 = c.vec(k, 0), f2 = c.vec(k, 1);
                const PhaseFn w = wigner_t(f1, f2, 0.5);
                const double ref = l2_norm(f1) * l2_norm(f2) / kSqrt2Pi;
                double m = 0;
                for (const char* p : ps)
                    m = std::max(m, std::abs(schatten_norm(w, 0.5, ExtExponent::parse(p), L2, L2) -
                                             ref) / ref);
                return m;
            });
            r.value = std::max(e, er);
        });

    add("hilbert_schmidt", "the s_2 Weyl norm on L2 is (2 pi)^{-1/2} times the L2 norm", 1e-8,
        [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            const TemperedSpace L2 = l2_space(c.g);
            r.trials = std::max(1, cfg.count / 2);
            r.value = trial_max(r.trials, [&](int k) {
                const PhaseFn a = c.sym(k, 0);
                const double ref = l2_norm(a) / kSqrt2Pi;
                return std::abs(schatten_norm(a, 0.5, ExtExponent::parse("2"), L2, L2) - ref) / ref;
            });
        });

    add("wigner_calculus_change", "W^t equals the calculus transform of W^s", 1e-6,
        [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            const double st[][2] = {{0.5, 0.0}, {0.5, 0.3}, {0.0, 1.0}, {1.0, 0.5}};
            r.trials = cfg.heavy_count;
            r.value = trial_max(r.trials, [&](int k) {
                const ConfigFn f1 = c.vec(k, 0), f2 = c.vec(k, 1);
                double e = 0;
                for (const auto& p : st)
                    e = std::max(e, rel_err(calculus_transform(wigner_t(f1, f2, p[0]), p[0], p[1]).v,
                                            wigner_t(f1, f2, p[1]).v));
                return e;
            });
        });

    add("calculus_roundtrip",
        "Op_s(a) = Op_t(b) for the calculus transform b of a, and the transform inverts", 1e-6,
        [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            const double st[][2] = {{0.0, 0.5}, {0.5, 0.3}, {1.0, 0.0}};
            r.trials = cfg.heavy_count;
            r.value = trial_max(r.trials, [&](int k) {
                double e = 0;
                for (const auto& p : st) {
                    const PhaseFn a = c.sym_t(k, 0, p[0]);
                    const PhaseFn b = calculus_transform(a, p[0], p[1]);
                    e = std::max(e, rel_frob(op_t(b, p[1]).m, op_t(a, p[0]).m));
                    e = std::max(e, rel_err(calculus_transform(b, p[1], p[0]).v, a.v));
                }
                return e;
            });
        });

    add("wigner_stft_norms",
        "W_{f,phi-check}(x,xi) = 2 e^{2ix xi} V_phi f(2x,2xi) and the matching mixed-norm constant",
        1e-6, [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            const GridSpec& g = c.g;
            const int N = g.N;
            const WeightExpr w(cfg.weight("wigner_stft_norms", "sig(X,1)"));
            struct PQ {
                const char *p, *q;
            };
            const PQ pqs[] = {{"1", "1"}, {"2", "2"}, {"1", "inf"}, {"inf", "2"}, {"4", "4/3"}};
            r.trials = std::min(cfg.heavy_count, 5);
            const auto res = trial_maxes(r.trials, 2, [&](int k) {
                const ConfigFn f = c.vec(k, 0), phi = c.vec(k, 1);
                const PhaseFn W = wigner_t(f, reflect(phi), 0.5);
                RMat mw(N, N), mv(N, N);
                double e = 0;
                for (int i = 0; i < N; ++i)
                    for (int j = 0; j < N; ++j) {
                        const cplx v = stft_at(f, phi, 2 * i - N / 2, 2 * g.xi(j));
                        const cplx ref = 2.0 * std::polar(1.0, 2 * g.x(i) * g.xi(j)) * v;
                        e = std::max(e, std::abs(W.v(i, j) - ref));
                        const double wt = w(2 * g.x(i), 2 * g.xi(j));
                        mw(i, j) = std::abs(W.v(i, j)) * wt;
                        mv(i, j) = std::abs(v) * wt;
                    }
                e /= W.v.cwiseAbs().maxCoeff();
                double en = 0;
                for (const PQ& s : pqs)
                    for (int order : {1, 2}) {
                        const ExtExponent p = ExtExponent::parse(s.p), q = ExtExponent::parse(s.q);
                        const double nw = lattice_mixed(mw, p, q, order, g.dx(), g.h());
                        const double nv = lattice_mixed(mv, p, q, order, 2 * g.dx(), 2 * g.h());
                        const double cst =
                            std::pow(2.0, 1.0 - p.recip().value() - q.recip().value());
                        en = std::max(en, std::abs(nw - cst * nv) / nw);
                    }
                return std::vector<double>{e, en};
            });
            r.details["pointwise_err"] = res[0];
            r.details["norm_err"] = res[1];
            r.value = max_of(res);
        });

    add("wigner_twist", "W_{f1,g1} twisted W_{f2,g2} = (f2-check, g1) W_{f1,g2}", 1e-6,
        [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            r.trials = cfg.heavy_count;
            r.value = trial_max(r.trials, [&](int k) {
                const ConfigFn f1 = c.vec(k, 0), g1 = c.vec(k, 1), f2 = c.vec(k, 2),
                               g2 = c.vec(k, 3);
                const PhaseFn lhs =
                    twisted_convolve(wigner_t(f1, g1, 0.5), wigner_t(f2, g2, 0.5), kFast);
                const PhaseFn rhs = scaled(wigner_t(f1, g2, 0.5), l2_inner(reflect(f2), g1));
                return (lhs.v - rhs.v).cwiseAbs().maxCoeff() /
                       wigner_t(f1, g2, 0.5).v.cwiseAbs().maxCoeff();
            });
        });

    add("window_change", "|psi|^2 W_{f,phi-check} = W_{f,psi-check} twisted W_{psi,phi-check}",
        1e-6, [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            r.trials = cfg.heavy_count;
            r.value = trial_max(r.trials, [&](int k) {
                const ConfigFn f = c.vec(k, 0), phi = c.vec(k, 1), psi = c.vec(k, 2);
                const PhaseFn lhs =
                    scaled(wigner_t(f, reflect(phi), 0.5), std::pow(l2_norm(psi), 2));
                const PhaseFn rhs = twisted_convolve(wigner_t(f, reflect(psi), 0.5),
                                                     wigner_t(psi, reflect(phi), 0.5), kFast);
                return rel_err(rhs.v, lhs.v);
            });
        });

    add("dilated_convolution",
        "A(a(s.) * b(t.)) as an integral of dilated, shifted kernels, all sign patterns", 1e-5,
        [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            const double r2 = std::sqrt(2.0);
            struct Pat {
                double s, t;
                int j, k;
            };
            const Pat pats[] = {{r2, r2, 0, 0}, {1 / r2, 1, 0, 1}, {1, 1 / r2, 1, 0}};
            const int n = cfg.dilation_count;
            double worst = 0;
            for (const Pat& p : pats) {
                const double e = trial_max(n, [&](int k) {
                    // inputs pre-scaled so that a(s.) and b(t.) have the shape of
                    // pattern (00) and the convolution stays inside the box
                    const PhaseFn a = dilate(c.sym(k, 0), r2 / p.s);
                    const PhaseFn b = dilate(c.sym(k, 1), r2 / p.t);
                    const auto d = dilated_conv_pair(a, b, p.s, p.t, p.j, p.k);
                    return rel_err(d.rhs.m, d.lhs.m);
                });
                r.details["pattern_" + std::to_string(p.j) + std::to_string(p.k)] = e;
                worst = std::max(worst, e);
            }
            // (1,1) needs -s^-2 - t^-2 = 1: no real dilations exist
            bool rejected = false;
            try {
                dilated_conv_pair(c.sym(0, 0), c.sym(0, 1), r2, r2, 1, 1);
            } catch (const Error&) {
                rejected = true;
            }
            r.details["pattern_11_rejected"] = rejected ? 1.0 : 0.0;
            r.trials = 3 * n;
            r.value = rejected ? worst : INFINITY;
        });

    add("toeplitz_weyl_route",
        "Tp_{h1,h2}(a) equals Op_t of a convolved with the reflected Wigner symbol", 1e-5,
        [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            r.trials = cfg.heavy_count;
            r.value = trial_max(r.trials, [&](int k) {
                const PhaseFn a = c.sym(k, 0);
                const ConfigFn h1 = c.vec(k, 1), h2 = c.vec(k, 2);
                const CMat D = toeplitz(a, h1, h2).m;
                double e = 0;
                for (double t : {0.5, 0.0})
                    e = std::max(e, rel_frob(toeplitz(a, h1, h2, ToeplitzRoute::weyl, t).m, D));
                return e;
            });
        });

    add("partial_stft_norm",
        "the triple-integral norm with a partial STFT equals the full M2 norm", 1e-6,
        [](const SuiteConfig& cfg, CheckResult& r) {
            const GridSpec g = cfg.grid(cfg.stability_N);
            ConfigFn chi = gaussian(g);
            chi.v /= l2_norm(chi);
            const WeightExpr w(cfg.weight("partial_stft_norm", "sig(x,1)*sig(xi,1)"));
            r.trials = 3;
            r.value = trial_max(r.trials, [&](int k) {
                const std::uint64_t s = trial_seed(cfg, k);
                const ConfigFn f1 = gauss_mod(s, 0, g), f2 = gauss_mod(s, 1, g),
                               f3 = gauss_mod(s, 2, g), f4 = gauss_mod(s, 3, g);
                const PhaseFn F(g,
                                CMat(f1.v * f2.v.transpose() +
                                     cplx(0.5, -0.3) * f3.v * f4.v.transpose()),
                                Lattice::kernel);
                const double a = m2_partial_norm(F, w, chi), b = m2_full_norm(F, w, chi);
                return std::abs(a - b) / b;
            });
        });

    add("polar_reconstruction",
        "the Schatten decomposition into Wigner terms reproduces the symbol", 1e-6,
        [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            const ConfigFn g0 = gaussian(c.g);
            const TemperedSpace H1 =
                make_space(WeightExpr(cfg.weight("polar_H1", "sig(x,1)")), g0);
            const TemperedSpace H2 =
                make_space(WeightExpr(cfg.weight("polar_H2", "sig(xi,1)*sig(x,-1)")), g0);
            r.trials = std::min(cfg.heavy_count, 5);
            r.value = trial_max(r.trials, [&](int k) {
                double e = 0;
                for (double t : {0.5, 0.0}) {
                    const PhaseFn a = c.sym_t(k, 0, t);
                    e = std::max(e, rel_err(polar_reconstruct(polar_decompose(a, t, H1, H2), t).v,
                                            a.v));
                }
                return e;
            });
        });

    add("polar_lp_formula",
        "decomposition coefficients give the Schatten norms; the vectors are orthonormal", 1e-8,
        [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            const ConfigFn g0 = gaussian(c.g);
            const TemperedSpace L2 = l2_space(c.g);
            const TemperedSpace H1 =
                make_space(WeightExpr(cfg.weight("polar_H1", "sig(x,1)")), g0);
            const TemperedSpace H2 =
                make_space(WeightExpr(cfg.weight("polar_H2", "sig(xi,1)*sig(x,-1)")), g0);
            const TemperedSpace D1 = dual_space(H1);
            r.trials = std::min(cfg.heavy_count, 5);
            r.value = trial_max(r.trials, [&](int k) {
                const PhaseFn a = c.sym(k, 0);
                // on L2 the s_2 norm is independently (2 pi)^{-1/2} |a|
                const SpectralData s0 = polar_decompose(a, 0.5, L2, L2);
                double e = std::abs(s0.lambda.norm() - l2_norm(a)) / l2_norm(a);
                // the largest coefficient matches the sup-route operator norm
                const SpectralData s = polar_decompose(a, 0.5, H1, H2);
                const double pw = op_norm_power(op_t(a, 0.5), H1, H2) * kSqrt2Pi;
                e = std::max(e, std::abs(s.lambda(0) - pw) / pw);
                const int n = static_cast<int>(s.lambda.size());
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        const double d = i == j ? 1.0 : 0.0;
                        e = std::max(e, std::abs(H2.inner(s.left[i], s.left[j]) - d));
                        e = std::max(e, std::abs(D1.inner(s.right[i], s.right[j]) - d));
                    }
                return e;
            });
        });

    add("smooth_unit_product", "a # 1 = a and 1 # a = a with the smoothly truncated unit", 1e-5,
        [](const SuiteConfig& cfg, CheckResult& r) {
            const GridSpec g = cfg.grid(cfg.fine_N);
            const PhaseFn one = smooth_one(g);
            r.trials = 1;
            const PhaseFn a = gauss_mod_phase(trial_seed(cfg, 0), 0, g);
            const double e1 = rel_err(weyl_product(a, one, TwistRoute::a_route).v, a.v);
            const double e2 = rel_err(weyl_product(one, a, TwistRoute::a_route).v, a.v);
            r.details["right"] = e1;
            r.details["left"] = e2;
            r.value = std::max(e1, e2);
        });

    add("smooth_unit_operators",
        "Op(1) and Tp_{g0,g0}(1) act as the identity on localized Gaussians", 1e-5,
        [](const SuiteConfig& cfg, CheckResult& r) {
            const GridSpec g = cfg.grid(cfg.fine_N);
            const PhaseFn one = smooth_one(g);
            const ConfigFn g0 = gaussian(g);
            const OperatorMatrix W = op_t(one, 0.5), T = toeplitz(one, g0, g0);
            double ew = 0, et = 0;
            r.trials = 0;
            for (double s : {-0.5, 0.0, 0.5}) {
                const ConfigFn f = gaussian(g, s);
                ew = std::max(ew, rel_err(apply(W, f).v, f.v));
                et = std::max(et, rel_err(apply(T, f).v, f.v));
                ++r.trials;
            }
            r.details["weyl"] = ew;
            r.details["toeplitz"] = et;
            r.value = std::max(ew, et);
        });

    add("mixed_norm_gaussian", "the L2 norm of exp(-x^2-xi^2) is (pi/2)^{1/2}", 1e-8,
        [](const SuiteConfig& cfg, CheckResult& r) {
            Ctx c(cfg);
            PhaseFn F(c.g);
            for (int i = 0; i < c.g.N; ++i)
                for (int j = 0; j < c.g.N; ++j)
                    F.v(i, j) = std::exp(-c.g.x(i) * c.g.x(i) - c.g.xi(j) * c.g.xi(j));
            const double v = mixed_norm(F, MixedNormSpec::parse("M:2,2"));
            r.trials = 1;
            r.details["value"] = v;
            r.value = std::abs(v - std::sqrt(kPi / 2));
        }, "abs_err");

    add("infconv_exhaustive",
        "weight inf-convolution by min-plus passes equals exhaustive splitting", 1e-12,
        [](const SuiteConfig& cfg, CheckResult& r) {
            const GridSpec g = cfg.grid(cfg.coarse_N);
            struct Case {
                std::vector<std::string> w;
                std::vector<double> t;
            };
            const Case cases[] = {
                {{"sig(X,1)", "sig(X,1)"}, {std::sqrt(2.0), std::sqrt(2.0)}},
                {{"sig(x,2)*sig(xi,-1)", "sig(X,1)"}, {1 / std::sqrt(2.0), 1.0}},
                {{"sig(X,1)", "sig(x,1)", "sig(xi,2)"},
                 {std::sqrt(3.0), std::sqrt(3.0), std::sqrt(3.0)}},
            };
            double e = 0;
            r.trials = 0;
            for (const Case& cs : cases) {
                std::vector<WeightExpr> w;
                for (const auto& s : cs.w) w.emplace_back(s);
                const WeightFn a = weight_infconv(w, cs.t, g);
                const WeightFn b = weight_infconv_exhaustive(w, cs.t, g);
                e = std::max(e, ((a.v - b.v).cwiseAbs().array() / b.v.array()).maxCoeff());
                ++r.trials;
            }
            r.value = e;
        });

    return d;
}

const std::vector<Def>& defs() {
    static const std::vector<Def> d = make_defs();
    return d;
}

}  // namespace

const std::vector<CheckInfo>& identity_checks() {
    static const std::vector<CheckInfo> v = infos(defs());
    return v;
}

std::vector<CheckResult> run_identity_suite(const SuiteConfig& cfg) {
    return run_defs(defs(), cfg);
}

}  // namespace wcalc
