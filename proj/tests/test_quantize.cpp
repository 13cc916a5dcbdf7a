#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "wcalc/harness.hpp"
#include "wcalc/products.hpp"
#include "wcalc/quantize.hpp"

using namespace wcalc;

namespace {

const double kSqrt2Pi = std::sqrt(2 * kPi);

PhaseFn scaled(PhaseFn a, cplx c) {
    a.v *= c;
    return a;
}

double rel_frob(const CMat& a, const CMat& b) { return (a - b).norm() / b.norm(); }

// Gram-free Frobenius norm of a kernel: (sum |K|^2 dx^2)^{1/2}
double kernel_norm(const OperatorMatrix& T) { return T.m.norm() * T.grid.dx(); }

}  // namespace

TEST_CASE("rank-one Wigner symbols quantize to rank-one operators") {
    const GridSpec g = default_grid(64);
    const ConfigFn f1 = gauss_mod(1, 0, g), f2 = gauss_mod(1, 1, g);
    const OperatorMatrix R = rank_one(f1, f2);
    for (double t : {0.0, 0.5, 1.0})
        CHECK(rel_err(op_t(scaled(wigner_t(f1, f2, t), kSqrt2Pi), t).m, R.m) < 1e-6);
    // the rank-one map itself
    const ConfigFn f = gauss_mod(1, 2, g);
    CHECK(rel_err(apply(R, f).v, (l2_inner(f, f2) * f1.v).eval()) < 1e-12);
}

TEST_CASE("quantization of the smooth unit") {
    const GridSpec g = default_grid(256);
    const OperatorMatrix I = op_t(smooth_one(g), 0.5);
    for (int k = 0; k < 3; ++k) {
        const ConfigFn f = gauss_mod(2, k, g);
        CHECK(rel_err(apply(I, f).v, f.v) < 1e-5);
    }
    const OperatorMatrix T = toeplitz(smooth_one(g), gaussian(g), gaussian(g));
    const ConfigFn f = gauss_mod(2, 5, g);
    CHECK(rel_err(apply(T, f).v, f.v) < 1e-5);
    CHECK(rel_err(apply(identity_op(g), f).v, f.v) < 1e-14);
}

TEST_CASE("calculus change keeps the operator") {
    const GridSpec g = default_grid(64);
    const PhaseFn a = gauss_mod_phase(3, 0, g);
    for (double t : {0.0, 1.0, 0.3})
        CHECK(rel_frob(op_t(calculus_transform(a, 0.5, t), t).m, op_t(a, 0.5).m) < 1e-5);
    CHECK(rel_frob(op_t(calculus_transform(a, 0.5, 0.0), 0.0).m, op_t(a, 0.5).m) < 1e-6);
}

TEST_CASE("the operator A") {
    const GridSpec g = default_grid(64);
    const PhaseFn a = gauss_mod_phase(4, 0, g), b = gauss_mod_phase(4, 1, g);
    const OperatorMatrix Aa = A_op(a);

    CHECK(rel_err(A_op(sympl_fourier(a)).m, (kSqrt2Pi * op_t(a, 0.5).m).eval()) < 1e-6);
    CHECK(rel_err(A_op(symmetry_transform(a, SymKind::tilde)).m, Aa.m.adjoint().eval()) < 1e-8);
    CHECK(rel_err(adjoint(Aa).m, Aa.m.adjoint().eval()) == 0.0);

    // F_sigma negates the first kernel variable; the point -L has no mirror
    // on the grid, so its row and column are left out
    const int n = g.N - 1;
    const CMat AF = A_op(sympl_fourier(a)).m;
    CMat flipped(g.N, g.N);
    for (int i = 0; i < g.N; ++i) flipped.row(i) = Aa.m.row(wrap(g.N - i, g.N));
    CHECK(rel_err(CMat(AF.bottomRightCorner(n, n)), CMat(flipped.bottomRightCorner(n, n))) < 1e-8);

    // inverse, unitarity and linearity
    CHECK(rel_err(A_inv(Aa).v, a.v) < 1e-8);
    CHECK(std::abs(kernel_norm(Aa) - l2_norm(a)) < 1e-8 * l2_norm(a));
    const cplx al(0.4, 1.1);
    const PhaseFn lin(g, (a.v + al * b.v).eval());
    CHECK(rel_err(A_op(lin).m, (Aa.m + al * A_op(b).m).eval()) < 1e-12);

    // a rank-one kernel has an A-preimage of the same L2 norm
    const ConfigFn g0 = gaussian(g);
    const OperatorMatrix U = rank_one(g0, g0);
    const PhaseFn u = A_inv(U);
    CHECK(std::abs(l2_norm(u) - kernel_norm(U)) < 1e-8 * kernel_norm(U));
    CHECK(rel_err(A_op(u).m, U.m) < 1e-8);
}

TEST_CASE("compositions") {
    const GridSpec g = default_grid(64);
    const PhaseFn a = gauss_mod_phase(5, 0, g), b = gauss_mod_phase(5, 1, g);
    const auto r = TwistRoute::a_route;
    CHECK(rel_frob(A_op(twisted_convolve(a, b, r)).m, compose(A_op(a), A_op(b)).m) < 1e-6);
    CHECK(rel_frob(op_t(weyl_product(a, b, r), 0.5).m, compose(op_t(a, 0.5), op_t(b, 0.5)).m) <
          1e-6);
    // composition carries the quadrature weight
    const OperatorMatrix I = identity_op(g);
    CHECK(rel_err(compose(I, A_op(a)).m, A_op(a).m) < 1e-14);
}

TEST_CASE("Toeplitz operators") {
    const GridSpec g = default_grid(32);
    const PhaseFn a = gauss_mod_phase(6, 0, g);
    const ConfigFn h1 = gauss_mod(6, 1, g), h2 = gauss_mod(6, 2, g);
    const OperatorMatrix D = toeplitz(a, h1, h2);

    // against the bilinear form built from explicit STFT matrices
    const CMat S1 = stft_matrix(reflect(h1)), S2 = stft_matrix(reflect(h2));
    const double cell = g.dx() * g.h();
    CVec av(g.N * g.N);
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j) av(i * g.N + j) = a.v(i, j) * cell;
    const CMat M = S2.adjoint() * av.asDiagonal() * S1 / (g.dx() * g.dx());
    CHECK(rel_err(D.m, M) < 1e-12);

    const ConfigFn f = gauss_mod(6, 3, g);
    const PhaseFn V = stft(f, reflect(h1));
    CHECK(rel_err(stft_matrix(reflect(h1)) * f.v, CVec(V.v.transpose().reshaped())) < 1e-12);

    CHECK_THROWS_AS(toeplitz(a, ConfigFn(g), h2), Error);
}

TEST_CASE("Toeplitz routes and positivity") {
    const GridSpec g = default_grid(64);
    const PhaseFn a = gauss_mod_phase(7, 0, g);
    const ConfigFn h1 = gauss_mod(7, 1, g), h2 = gauss_mod(7, 2, g);
    const OperatorMatrix D = toeplitz(a, h1, h2);
    for (double t : {0.5, 0.0})
        CHECK(rel_frob(toeplitz(a, h1, h2, ToeplitzRoute::weyl, t).m, D.m) < 1e-5);

    PhaseFn p(g);
    p.v = a.v.cwiseAbs().cast<cplx>();
    const PositivityResult r = psd_check(toeplitz(p, h1, h1));
    CHECK(r.min_eig >= -1e-8 * r.max_eig);
}

TEST_CASE("operator-matrix files") {
    const GridSpec g = default_grid(16);
    const OperatorMatrix T = A_op(gauss_mod_phase(8, 0, g));
    const std::string path = "test_quantize.opm";
    write_opm(path, T);
    const OperatorMatrix R = read_opm(path);
    CHECK(R.grid == g);
    CHECK(R.m == T.m);
    {
        std::ifstream is(path);
        std::string header;
        std::getline(is, header);
        CHECK(header.find("\"N\"") != std::string::npos);
    }
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_opm("no_such_file.opm"), Error);
}
