#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "wcalc/phasespace.hpp"
#include "wcalc/transforms.hpp"

using namespace wcalc;

namespace {

ConfigFn random_fn(const GridSpec& g, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    ConfigFn f(g);
    for (int k = 0; k < g.N; ++k) f.v(k) = cplx(nd(rng), nd(rng)) * std::exp(-0.1 * g.x(k) * g.x(k));
    return f;
}

PhaseFn random_phase(const GridSpec& g, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    PhaseFn a(g);
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j)
            a.v(i, j) = cplx(nd(rng), nd(rng)) *
                        std::exp(-0.1 * (g.x(i) * g.x(i) + g.xi(j) * g.xi(j)));
    return a;
}

// e^{-c |X|^2} on the symplectic lattice
PhaseFn gauss2(const GridSpec& g, double c) {
    PhaseFn a(g);
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j)
            a.v(i, j) = std::exp(-c * (g.x(i) * g.x(i) + g.xi(j) * g.xi(j)));
    return a;
}

}  // namespace

TEST_CASE("grid spacing and preconditions") {
    const GridSpec g = make_grid(1, 64, 6.0);
    CHECK(g.dx() == doctest::Approx(0.1875).epsilon(1e-15));
    CHECK(g.dxi() == doctest::Approx(kPi / 6).epsilon(1e-15));
    const GridSpec h = make_grid(1, 8, kPi);
    CHECK(h.dx() * h.dxi() * h.N == doctest::Approx(2 * kPi).epsilon(1e-14));
    CHECK_THROWS_AS(make_grid(1, 7, 6.0), Error);
    CHECK_THROWS_AS(make_grid(1, 4, 6.0), Error);
    CHECK_THROWS_AS(make_grid(2, 64, 6.0), Error);
    CHECK_THROWS_AS(make_grid(1, 64, -1.0), Error);
    const GridSpec s = default_grid(64);
    CHECK(s.dx() == doctest::Approx(s.h()).epsilon(1e-14));
}

TEST_CASE("inner products") {
    const GridSpec g = make_grid(1, 64, 6.0);
    const ConfigFn g0 = gaussian(g);
    CHECK(std::abs(l2_inner(g0, g0) - 1.0) < 1e-10);
    CHECK(std::abs(l2_inner(random_fn(g, 1), ConfigFn(g))) == 0.0);
    // conjugate linear in the second slot
    const ConfigFn f = random_fn(g, 2), h = random_fn(g, 3);
    ConfigFn ih = h;
    ih.v *= kI;
    CHECK(std::abs(l2_inner(f, ih) + kI * l2_inner(f, h)) < 1e-12);
}

TEST_CASE("fourier transform") {
    // at L = 6 the cut-off Gaussian tail alone is 1e-8, so use the wider square grid
    const GridSpec g = default_grid(64);
    const ConfigFn g0 = gaussian(g);
    const ConfigFn G = fourier(g0);
    CHECK(G.grid == g.dual());
    CHECK(rel_err(G.v, gaussian(g.dual()).v) < 1e-10);

    const ConfigFn f = random_fn(g, 4), h = random_fn(g, 5);
    const ConfigFn F = fourier(f), H = fourier(h);
    CHECK(std::abs(l2_norm(F) - l2_norm(f)) < 1e-12 * l2_norm(f));
    CHECK(std::abs(l2_inner(F, H) - l2_inner(f, h)) < 1e-12 * l2_norm(f) * l2_norm(h));
    CHECK(rel_err(fourier_inv(F, g).v, f.v) < 1e-12);
    // applying the transform twice reflects
    const ConfigFn FF = fourier(F);
    CHECK(FF.grid == g);
    CHECK(rel_err(FF.v, reflect(f).v) < 1e-12);

    const cplx al(0.3, -1.2), be(-0.7, 0.4);
    ConfigFn comb(g, al * f.v + be * h.v);
    CHECK(rel_err(fourier(comb).v, (al * F.v + be * H.v).eval()) < 1e-12);
}

TEST_CASE("partial fourier transform of a tensor product") {
    const GridSpec g = make_grid(1, 64, 6.0);
    const ConfigFn u = random_fn(g, 6);
    PhaseFn F(g, Lattice::kernel2);
    // second factor e^{-y^2/2} on the kernel2 axis; its transform is e^{-xi^2/2}
    for (int i = 0; i < g.N; ++i)
        for (int k = 0; k < g.N; ++k) {
            const double y = F.second(k);
            F.v(i, k) = u.v(i) * std::exp(-y * y / 2);
        }
    const PhaseFn a = partial_fourier2(F);
    CHECK(a.lattice == Lattice::symplectic);
    PhaseFn want(g);
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j) want.v(i, j) = u.v(i) * std::exp(-g.xi(j) * g.xi(j) / 2);
    CHECK(rel_err(a.v, want.v) < 1e-10);
    CHECK(rel_err(partial_fourier2_inv(a).v, F.v) < 1e-12);
}

TEST_CASE("symplectic form") {
    CHECK(sympl_form(1, 0, 0, 1) == -1.0);
    CHECK(sympl_form(0.3, -2, 0.3, -2) == 0.0);
    CHECK(sympl_form(1.5, 2, -0.5, 3) == -sympl_form(-0.5, 3, 1.5, 2));
    CHECK(sympl_form(std::vector<double>{1, 0}, std::vector<double>{0, 1}) == -1.0);
    CHECK_THROWS_AS(sympl_form(std::vector<double>{1, 0, 2}, std::vector<double>{0, 1}), Error);
}

TEST_CASE("symplectic fourier transform") {
    const GridSpec g = make_grid(1, 64, 6.0);
    const PhaseFn a = random_phase(g, 7);
    const PhaseFn Fa = sympl_fourier(a);
    CHECK(rel_err(sympl_fourier(Fa).v, a.v) < 1e-10);
    CHECK(std::abs(l2_norm(Fa) - l2_norm(a)) < 1e-12 * l2_norm(a));

    // Gaussian fixed point against a direct Riemann sum of the defining integral
    const PhaseFn gs = gauss2(g, 1.0);
    CHECK(rel_err(sympl_fourier(gs).v, gs.v) < 1e-8);
    const int pts[][2] = {{32, 32}, {20, 40}, {5, 60}};
    const PhaseFn Fg = sympl_fourier(gs);
    for (const auto& p : pts) {
        cplx s = 0;
        for (int k = 0; k < g.N; ++k)
            for (int l = 0; l < g.N; ++l)
                s += gs.v(k, l) *
                     std::exp(2.0 * kI * sympl_form(g.x(p[0]), g.xi(p[1]), g.x(k), g.xi(l)));
        s *= g.dx() * g.h() / kPi;
        CHECK(std::abs(s - Fg.v(p[0], p[1])) < 1e-12);
    }
}

TEST_CASE("weights") {
    const WeightExpr w("sig(x,2)");
    CHECK(w(std::sqrt(3.0), 0.7) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(WeightExpr("sig(x,0)")(0, 0) == 1.0);
    CHECK(WeightExpr("sig(x,1)*sig(xi,-1)")(0, 0) == 1.0);
    CHECK(WeightExpr("sig(X,2)")(1, 2) == doctest::Approx(6.0));
    CHECK(WeightExpr("const(3)*sig(xi,1)")(5, 0) == doctest::Approx(3.0));
    CHECK(WeightExpr("sig(x,2)").inverted()(1, 0) == doctest::Approx(0.5));
    CHECK(WeightExpr("sig(x,2)").dilated(2)(1, 0) == doctest::Approx(5.0));
    CHECK(WeightExpr("const(1)").is_trivial());
    CHECK_THROWS_AS(WeightExpr("sig(y,2)"), Error);
    CHECK_THROWS_AS(WeightExpr("sig(x,2"), Error);
    CHECK_THROWS_AS(WeightExpr("const(-1)"), Error);

    const GridSpec g = make_grid(1, 32, 4.0);
    const WeightFn W = weight_eval("sig(xi,1)", g);
    CHECK(W.v(3, 7) == doctest::Approx(std::sqrt(1 + g.xi(7) * g.xi(7))));
}

TEST_CASE("moderate weights") {
    const GridSpec g = make_grid(1, 64, 6.0);
    const auto peetre = check_moderate(weight_eval("sig(X,2)", g), weight_eval("sig(X,2)", g));
    CHECK(peetre.ok);
    CHECK(peetre.C_est <= 2.0 + 1e-12);
    const auto bad = check_moderate(weight_eval("sig(X,1)", g), weight_eval("const(1)", g));
    CHECK_FALSE(bad.ok);
    const auto one = check_moderate(weight_eval("const(1)", g), weight_eval("const(1)", g));
    CHECK(one.ok);
    CHECK(one.C_est == doctest::Approx(1.0));
}

TEST_CASE("symmetries") {
    const GridSpec g = make_grid(1, 64, 6.0);
    const PhaseFn a = random_phase(g, 8);
    CHECK(reflect(reflect(a)).v == a.v);
    const PhaseFn r = reflect(a);
    CHECK(r.v(10, 20) == a.v(g.N - 10, g.N - 20));
    CHECK(symmetry_transform(a, SymKind::tilde).v ==
          symmetry_transform(r, SymKind::conj).v);
    const PhaseFn tor = symmetry_transform(a, SymKind::torsion);
    CHECK(tor.v(10, 20) == std::conj(a.v(10, g.N - 20)));
    CHECK(sym_kind_from_name("tilde") == SymKind::tilde);
    CHECK_THROWS_AS(sym_kind_from_name("rotate"), Error);

    const PhaseFn d = dilate(gauss2(g, 1.0), std::sqrt(2.0));
    CHECK(rel_err(d.v, gauss2(g, 2.0).v) < 1e-8);
    CHECK_THROWS_AS(dilate(a, 0.0), Error);
}

TEST_CASE("exact exponents") {
    const ExtExponent p = ExtExponent::parse("4/3");
    CHECK(p.conj() == ExtExponent::parse("4"));
    CHECK(p.recip() == Rational(3, 4));
    CHECK(ExtExponent::parse("1.5").value() == Rational(3, 2));
    CHECK(ExtExponent::parse("inf").recip() == Rational(0));
    CHECK(ExtExponent::parse("1").conj().is_inf());
    CHECK(ExtExponent::inf().conj() == ExtExponent::parse("1"));
    CHECK(ExtExponent::parse("2").str() == "2");
    CHECK(std::isinf(ExtExponent::inf().as_double()));
    CHECK_THROWS_AS(ExtExponent::parse("1/2"), Error);
    CHECK_THROWS_AS(ExtExponent::parse("abc"), Error);
    CHECK_THROWS_AS(ExtExponent::inf().value(), Error);

    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(Rational(-3, 6).value() == -0.5);
    CHECK_THROWS_AS(Rational(1, 0), Error);
}

TEST_CASE("grid function files round trip") {
    const GridSpec g = make_grid(1, 16, 3.0);
    const std::string pc = "test_phasespace_cfg.gfn", pp = "test_phasespace_phase.gfn";
    const ConfigFn f = random_fn(g, 9);
    write_gfn(pc, f);
    const GridFunction rf = read_gfn(pc);
    REQUIRE(std::holds_alternative<ConfigFn>(rf));
    CHECK(std::get<ConfigFn>(rf).grid == g);
    CHECK(std::get<ConfigFn>(rf).v == f.v);

    const PhaseFn a = random_phase(g, 10);
    write_gfn(pp, a);
    const GridFunction ra = read_gfn(pp);
    REQUIRE(std::holds_alternative<PhaseFn>(ra));
    CHECK(std::get<PhaseFn>(ra).v == a.v);
    CHECK(std::get<PhaseFn>(ra).lattice == a.lattice);
    std::remove(pc.c_str());
    std::remove(pp.c_str());
    CHECK_THROWS_AS(read_gfn("no_such_file.gfn"), Error);
}
