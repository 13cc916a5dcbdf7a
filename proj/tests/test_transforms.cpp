#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wcalc/transforms.hpp"

using namespace wcalc;

namespace {

ConfigFn random_fn(const GridSpec& g, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    ConfigFn f(g);
    for (int k = 0; k < g.N; ++k) f.v(k) = cplx(nd(rng), nd(rng)) * std::exp(-0.3 * g.x(k) * g.x(k));
    return f;
}

PhaseFn random_phase(const GridSpec& g, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    PhaseFn a(g);
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j)
            a.v(i, j) = cplx(nd(rng), nd(rng)) *
                        std::exp(-0.3 * (g.x(i) * g.x(i) + g.xi(j) * g.xi(j)));
    return a;
}

double lp(const CVec& v, double p, double cell) {
    if (std::isinf(p)) return v.cwiseAbs().maxCoeff();
    double s = 0;
    for (int k = 0; k < v.size(); ++k) s += std::pow(std::abs(v(k)), p);
    return std::pow(s * cell, 1 / p);
}

}  // namespace

TEST_CASE("stft of the Gaussian and Moyal identity") {
    const GridSpec g = make_grid(1, 64, 6.0);
    const ConfigFn g0 = gaussian(g);
    CHECK(stft(ConfigFn(g), g0).v.cwiseAbs().maxCoeff() == 0.0);

    for (Lattice lat : {Lattice::symplectic, Lattice::dual}) {
        const PhaseFn V = stft(g0, g0, lat);
        Eigen::Index i, j;
        V.v.cwiseAbs().maxCoeff(&i, &j);
        CHECK(i == g.N / 2);
        CHECK(j == g.N / 2);
        CHECK(std::abs(V.v(i, j) - 1 / std::sqrt(2 * kPi)) < 1e-12);
    }

    // discrete Moyal identity on the dual lattice
    const ConfigFn f = random_fn(g, 1), phi = random_fn(g, 2);
    const PhaseFn V = stft(f, phi, Lattice::dual);
    CHECK(std::abs(l2_norm(V) - l2_norm(f) * l2_norm(phi)) < 1e-12 * l2_norm(f) * l2_norm(phi));

    // single values agree with the full transform away from the edges; the
    // difference is the wrapped window tail, e^{-18} at L = 6
    const PhaseFn S = stft(f, g0);
    const double smax = S.v.cwiseAbs().maxCoeff();
    for (int m : {20, 32, 41})
        for (int j : {5, 32, 50})
            CHECK(std::abs(stft_at(f, g0, m, g.xi(j)) - S.v(m, j)) < 1e-8 * smax);
}

TEST_CASE("Wigner distribution of the Gaussian") {
    const GridSpec g = make_grid(1, 64, 6.0);
    const ConfigFn g0 = gaussian(g);
    const PhaseFn W = wigner_t(g0, g0, 0.5);
    PhaseFn want(g);
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j)
            want.v(i, j) = std::sqrt(2 / kPi) * std::exp(-g.x(i) * g.x(i) - g.xi(j) * g.xi(j));
    CHECK(rel_err(W.v, want.v) < 1e-6);
    // W_{f,f} is real at t = 1/2
    const ConfigFn f = random_fn(g, 3);
    CHECK(wigner_t(f, f, 0.5).v.imag().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("calculus transform") {
    const GridSpec g = make_grid(1, 64, 6.0);
    const PhaseFn a = random_phase(g, 4);
    CHECK(rel_err(calculus_transform(a, 0.3, 0.3).v, a.v) < 1e-15);
    // composition and inversion
    const PhaseFn b = calculus_transform(calculus_transform(a, 0.0, 0.5), 0.5, 1.0);
    CHECK(rel_err(b.v, calculus_transform(a, 0.0, 1.0).v) < 1e-12);
    CHECK(rel_err(calculus_transform(calculus_transform(a, 0.2, 0.7), 0.7, 0.2).v, a.v) < 1e-12);
    // Wigner distributions of smooth vectors follow the same transform
    ConfigFn f1 = gaussian(g, 1.0), f2 = gaussian(g, -0.5);
    for (int k = 0; k < g.N; ++k) f1.v(k) *= std::exp(0.7 * kI * g.x(k));
    CHECK(rel_err(calculus_transform(wigner_t(f1, f2, 0.5), 0.5, 0.0).v,
                  wigner_t(f1, f2, 0.0).v) < 1e-6);
}

TEST_CASE("mixed norms") {
    const GridSpec g = make_grid(1, 64, 6.0);
    const PhaseFn G = gaussian_phase(g);
    const MixedNormSpec s2 = MixedNormSpec::parse("M:2,2");
    CHECK(std::abs(mixed_norm(G, s2) - std::sqrt(kPi / 2)) < 1e-8);

    // separable functions: product of the one-dimensional norms in either order
    const ConfigFn u = random_fn(g, 7), w = random_fn(g, 8);
    PhaseFn F(g);
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j) F.v(i, j) = u.v(i) * w.v(j);
    // the inner integral carries p: x for M, xi for W
    CHECK(mixed_norm(F, MixedNormSpec::parse("M:1,3")) ==
          doctest::Approx(lp(u.v, 1.0, g.dx()) * lp(w.v, 3.0, g.h())).epsilon(1e-12));
    CHECK(mixed_norm(F, MixedNormSpec::parse("W:1,3")) ==
          doctest::Approx(lp(w.v, 1.0, g.h()) * lp(u.v, 3.0, g.dx())).epsilon(1e-12));
    const PhaseFn R = random_phase(g, 13);
    CHECK(mixed_norm(R, MixedNormSpec::parse("M:3,3")) ==
          doctest::Approx(mixed_norm(R, MixedNormSpec::parse("W:3,3"))).epsilon(1e-12));
    const double winf = lp(u.v, INFINITY, 1) * lp(w.v, 2.0, g.h());
    CHECK(mixed_norm(F, MixedNormSpec::parse("M:inf,2")) == doctest::Approx(winf).epsilon(1e-12));

    // a weight multiplies the integrand
    const MixedNormSpec sw = MixedNormSpec::parse("M:2,2:sig(x,2)");
    PhaseFn Gw = G;
    for (int i = 0; i < g.N; ++i) Gw.v.row(i) *= 1 + g.x(i) * g.x(i);
    CHECK(mixed_norm(G, sw) == doctest::Approx(mixed_norm(Gw, s2)).epsilon(1e-12));

    CHECK_THROWS_AS(MixedNormSpec::parse("Q:2,2"), Error);
    CHECK_THROWS_AS(MixedNormSpec::parse("M:2"), Error);
}

TEST_CASE("modulation norms") {
    const GridSpec g = make_grid(1, 64, 6.0);
    const ConfigFn g0 = gaussian(g);
    const ConfigFn f = random_fn(g, 9);
    const MixedNormSpec s = MixedNormSpec::parse("M:2,2");
    CHECK(std::abs(mod_norm(f, s, g0) - l2_norm(f)) < 1e-8 * l2_norm(f));
    CHECK(std::abs(mod_norm(f, MixedNormSpec::parse("W:2,2"), g0) - l2_norm(f)) <
          1e-8 * l2_norm(f));
    // the unweighted norm grows with the weight
    CHECK(mod_norm(f, MixedNormSpec::parse("M:2,2:sig(x,1)"), g0) > l2_norm(f));
}

TEST_CASE("symplectic modulation norms") {
    const GridSpec g = default_grid(16);
    const PhaseFn a = random_phase(g, 10);
    const PhaseFn phi = gaussian_phase(g);
    CHECK(std::abs(sympl_stft(PhaseFn(g), phi).v[17]) == 0.0);

    // L2 in (X, Y) factors through the unitarity of the symplectic transform
    const ExtExponent two = ExtExponent::parse("2");
    const double n2 = sympl_mod_norm(a, two, two, phi);
    CHECK(n2 == doctest::Approx(l2_norm(a) * l2_norm(phi)).epsilon(1e-10));

    const Phase4Fn V = sympl_stft(a, phi);
    double s = 0;
    for (const cplx& z : V.v) s += std::norm(z);
    const double cell = g.dx() * g.h();
    CHECK(std::sqrt(s * cell * cell) == doctest::Approx(n2).epsilon(1e-10));

    // the batched and the single routes agree
    const ExtExponent one = ExtExponent::parse("1"), inf = ExtExponent::inf();
    const auto many = sympl_mod_norms(a, {{one, inf, 1}, {two, two, 1}, {one, two, 1}}, phi);
    CHECK(many[0] == doctest::Approx(sympl_mod_norm(a, one, inf, phi)).epsilon(1e-12));
    CHECK(many[1] == doctest::Approx(n2).epsilon(1e-12));
    CHECK(many[2] == doctest::Approx(sympl_mod_norm(a, one, two, phi)).epsilon(1e-12));
}

TEST_CASE("partial and full M2 norms") {
    const GridSpec g = make_grid(1, 32, 4.5);
    ConfigFn chi = gaussian(g);
    chi.v /= l2_norm(chi);
    const WeightExpr one;
    CHECK(m2_partial_norm(PhaseFn(g, Lattice::kernel), one, chi) == 0.0);

    const ConfigFn u = random_fn(g, 11), w = random_fn(g, 12);
    PhaseFn F(g, Lattice::kernel);
    for (int i = 0; i < g.N; ++i)
        for (int k = 0; k < g.N; ++k) F.v(i, k) = u.v(i) * w.v(k);
    const double want = l2_norm(u) * l2_norm(w);
    CHECK(m2_partial_norm(F, one, chi) == doctest::Approx(want).epsilon(1e-8));
    CHECK(m2_full_norm(F, one, chi) == doctest::Approx(want).epsilon(1e-8));
}
