#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wcalc/harness.hpp"
#include "wcalc/products.hpp"

using namespace wcalc;

namespace {

// e^{-c |X|^2} on the symplectic lattice
PhaseFn gauss2(const GridSpec& g, double c) {
    PhaseFn a(g);
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j)
            a.v(i, j) = std::exp(-c * (g.x(i) * g.x(i) + g.xi(j) * g.xi(j)));
    return a;
}

PhaseFn tilde(const PhaseFn& a) { return symmetry_transform(a, SymKind::tilde); }

}  // namespace

TEST_CASE("ordinary convolution") {
    const GridSpec g = make_grid(1, 64, 6.0);
    const PhaseFn G = gauss2(g, 1.0);
    PhaseFn want = gauss2(g, 0.5);
    want.v *= kPi / 2;
    CHECK(rel_err(convolve(G, G).v, want.v) < 1e-6);
    CHECK(rel_err(convolve(G, G, ConvMode::linear).v, want.v) < 1e-6);

    const GridSpec c = make_grid(1, 16, 3.0);
    const PhaseFn a = gauss_mod_phase(1, 0, c), b = gauss_mod_phase(1, 1, c);
    for (ConvMode m : {ConvMode::periodic, ConvMode::linear})
        CHECK(rel_err(convolve(a, b, m).v, convolve_direct(a, b, m).v) < 1e-12);

    // a narrow normalized bump acts as an approximate identity
    PhaseFn bump = gauss2(g, 40.0);
    bump.v /= bump.v.sum() * g.dx() * g.h();
    const PhaseFn s = gauss_mod_phase(2, 0, g);
    CHECK(rel_err(convolve(s, bump).v, s.v) < 0.05);
}

TEST_CASE("twisted convolution") {
    const GridSpec g = default_grid(64);
    const PhaseFn a = gauss_mod_phase(3, 0, g), b = gauss_mod_phase(3, 1, g),
                  c = gauss_mod_phase(3, 2, g);

    // value at the origin against the squared L2 norm
    const PhaseFn at = twisted_convolve(a, tilde(a));
    const double n2 = l2_norm(a) * l2_norm(a);
    CHECK(std::abs(at.v(g.N / 2, g.N / 2) - std::sqrt(2 / kPi) * n2) < 1e-10 * n2);

    // direct sum against the A-route
    const PhaseFn ab = twisted_convolve(a, b);
    CHECK(rel_err(twisted_convolve(a, b, TwistRoute::a_route).v, ab.v) < 1e-9);

    const auto r = TwistRoute::a_route;
    CHECK(rel_err(twisted_convolve(twisted_convolve(a, b, r), c, r).v,
                  twisted_convolve(a, twisted_convolve(b, c, r), r).v) < 1e-8);

    // the twist is really there: the product does not commute
    const PhaseFn ba = twisted_convolve(b, a);
    CHECK(l2_norm(PhaseFn(g, ab.v - ba.v)) > 0.1 * l2_norm(a) * l2_norm(b));
}

TEST_CASE("twisted square of the Gaussian Wigner symbol") {
    const GridSpec g = make_grid(1, 64, 6.0);
    const ConfigFn g0 = gaussian(g);
    const PhaseFn W = wigner_t(g0, g0, 0.5);
    CHECK(rel_err(twisted_convolve(W, W, TwistRoute::a_route).v, W.v) < 1e-6);
}

TEST_CASE("Weyl product") {
    const GridSpec g = default_grid(64);
    const PhaseFn a = gauss_mod_phase(4, 0, g), b = gauss_mod_phase(4, 1, g);
    const PhaseFn ab = weyl_product(a, b);
    PhaseFn via = twisted_convolve(a, sympl_fourier(b));
    via.v /= std::sqrt(2 * kPi);
    CHECK(rel_err(ab.v, via.v) < 1e-12);
    CHECK(rel_err(weyl_product(a, b, TwistRoute::a_route).v, ab.v) < 1e-9);
    CHECK(rel_err(weyl_product_t(a, b, 0.5).v, ab.v) < 1e-9);
    CHECK_THROWS_AS(weyl_product(a, gauss_mod_phase(4, 1, default_grid(16))), Error);
}

TEST_CASE("Weyl product with the smooth unit") {
    const GridSpec g = default_grid(256);
    const PhaseFn a = gauss_mod_phase(5, 0, g);
    const PhaseFn one = smooth_one(g);
    CHECK(rel_err(weyl_product(a, one, TwistRoute::a_route).v, a.v) < 1e-5);
    CHECK(rel_err(weyl_product(one, a, TwistRoute::a_route).v, a.v) < 1e-5);
}

TEST_CASE("STFT oracles vanish with a zero factor") {
    const GridSpec g = default_grid(16);
    const PhaseFn a = gauss_mod_phase(6, 0, g), phi = gaussian_phase(g);
    double m = 0;
    for (const cplx& z : twisted_stft_oracle(a, PhaseFn(g), phi, phi).v) m = std::max(m, std::abs(z));
    for (const cplx& z : weyl_stft_oracle(PhaseFn(g), a, phi, phi).v) m = std::max(m, std::abs(z));
    CHECK(m == 0.0);
}

TEST_CASE("dilated convolution pair") {
    const GridSpec g = default_grid(32);
    const PhaseFn a = gauss_mod_phase(7, 0, g);
    const double r2 = std::sqrt(2.0);
    const DilatedPair z = dilated_conv_pair(a, PhaseFn(g), r2, r2, 0, 0);
    CHECK(z.lhs.m.cwiseAbs().maxCoeff() == 0.0);
    CHECK(z.rhs.m.cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(dilated_conv_pair(a, a, 1.0, 1.0, 0, 0), Error);
}

TEST_CASE("pointwise domination") {
    const GridSpec g = default_grid(32);
    for (int k = 0; k < 3; ++k) {
        const PhaseFn a = gauss_mod_phase(8 + k, 0, g), b = gauss_mod_phase(8 + k, 1, g);
        const double scale = a.v.cwiseAbs().maxCoeff() * b.v.cwiseAbs().sum() * g.dx() * g.h();
        CHECK(pointwise_domination(a, b) <= 1e-12 * scale);
    }
    CHECK(pointwise_domination(PhaseFn(g), gauss_mod_phase(1, 0, g)) == 0.0);
    // a bump at the origin: the twist phase is 1 there, so the bound is attained at X = 0
    PhaseFn d(g);
    d.v(g.N / 2, g.N / 2) = 1.0;
    const PhaseFn G = gaussian_phase(g);
    const PhaseFn tw = twisted_convolve(G, d);
    const PhaseFn cv = convolve(G, d);
    CHECK(std::abs(std::abs(tw.v(g.N / 2, g.N / 2)) - std::sqrt(2 / kPi) * std::abs(cv.v(g.N / 2, g.N / 2))) <
          1e-14);
}

TEST_CASE("odd monomials") {
    const GridSpec g = default_grid(32);
    const PhaseFn a = gauss_mod_phase(11, 0, g), b = gauss_mod_phase(11, 1, g);
    CHECK(odd_monomial({a}, {1}).v == a.v);
    CHECK(rel_err(odd_monomial({a}, {3}).v, a.v.array().cube().matrix().eval()) < 1e-14);
    const CMat want = (a.v.array().square() * b.v.array()).matrix();
    CHECK(rel_err(odd_monomial({a, b}, {2, 1}).v, want) < 1e-14);
    CHECK_THROWS_AS(odd_monomial({a, b}, {1, 1}), Error);

    // positivity needs the finer grid to resolve the cube
    const PhaseFn p = sigma_pos_symbol(12, 0, default_grid(128));
    const PositivityResult r = sigma_positive(odd_monomial({p}, {3}));
    CHECK(r.min_eig >= -1e-8 * r.max_eig);
}
