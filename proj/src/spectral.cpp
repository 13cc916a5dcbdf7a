#include "wcalc/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "wcalc/numerics.hpp"

namespace wcalc {

cplx TemperedSpace::inner(const ConfigFn& f, const ConfigFn& g) const {
    require_same_grid(grid, f.grid, "TemperedSpace::inner");
    require_same_grid(grid, g.grid, "TemperedSpace::inner");
    return g.v.dot(G * f.v) * grid.dx();
}

double TemperedSpace::norm(const ConfigFn& f) const {
    return std::sqrt(std::max(0.0, inner(f, f).real()));
}

TemperedSpace space_from_gram(const GridSpec& g, const CMat& G0, const std::string& label) {
    if (G0.rows() != g.N || G0.cols() != g.N) throw Error("space_from_gram: Gram size mismatch");
    const double scale = G0.cwiseAbs().maxCoeff();
    if ((G0 - G0.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw Error("space_from_gram: Gram matrix is not Hermitian");
    TemperedSpace H;
    H.grid = g;
    H.label = label;
    H.G = 0.5 * (G0 + G0.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(H.G);
    const RVec ev = es.eigenvalues();
    if (ev.minCoeff() <= 0.0) throw Error("space_from_gram: Gram matrix is not positive definite");
    H.cond = ev.maxCoeff() / ev.minCoeff();
    if (H.cond > kMaxCondition)
        throw Error("space_from_gram: condition number " + std::to_string(H.cond) +
                    " exceeds the cap");
    const CMat& V = es.eigenvectors();
    H.G_half = V * ev.cwiseSqrt().cast<cplx>().asDiagonal() * V.adjoint();
    H.G_inv_half = V * ev.cwiseSqrt().cwiseInverse().cast<cplx>().asDiagonal() * V.adjoint();
    return H;
}

TemperedSpace l2_space(const GridSpec& g) {
    return space_from_gram(g, CMat::Identity(g.N, g.N), "L2");
}

TemperedSpace make_space(const WeightExpr& omega, const ConfigFn& phi0) {
    const GridSpec& g = phi0.grid;
    const int N = g.N;
    const double n = l2_norm(phi0);
    if (n == 0.0) throw Error("make_space: zero window");
    ConfigFn phi = phi0;
    phi.v /= n;
    const CMat S = stft_matrix(phi, Lattice::dual);
    CMat WS(N * N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            const double w = omega(g.x(i), g.xd(j));
            if (!(w > 0.0) || !std::isfinite(w)) throw Error("make_space: weight must be positive");
            WS.row(i * N + j) = S.row(i * N + j) * (w * w);
        }
    const CMat G = S.adjoint() * WS * (g.dx() * g.dxi() / g.dx());
    return space_from_gram(g, 0.5 * (G + G.adjoint()), "M2(" + omega.text() + ")");
}

TemperedSpace dual_space(const TemperedSpace& H) {
    const CMat Ginv = H.G_inv_half * H.G_inv_half;
    TemperedSpace D = space_from_gram(H.grid, 0.5 * (Ginv + Ginv.adjoint()), H.label + "'");
    return D;
}

TemperedSpace reflected_space(const TemperedSpace& H) {
    const int N = H.grid.N;
    CMat G(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) G(i, j) = H.G((N - i) % N, (N - j) % N);
    return space_from_gram(H.grid, G, H.label + "^refl");
}

TemperedSpace conj_space(const TemperedSpace& H) {
    return space_from_gram(H.grid, H.G.conjugate(), H.label + "^conj");
}

SpectralData singular_values(const OperatorMatrix& T, const TemperedSpace& H1,
                             const TemperedSpace& H2) {
    require_same_grid(T.grid, H1.grid, "singular_values");
    require_same_grid(T.grid, H2.grid, "singular_values");
    const double dx = T.grid.dx();
    const CMat B = H2.G_half * (T.m * dx) * H1.G_inv_half;
    Eigen::BDCSVD<CMat> svd(B, Eigen::ComputeFullU | Eigen::ComputeFullV);
    SpectralData out;
    out.lambda = svd.singularValues();
    const int N = T.grid.N;
    const double sq = 1.0 / std::sqrt(dx);
    for (int j = 0; j < N; ++j) {
        out.right.emplace_back(T.grid, CVec(H1.G_inv_half * svd.matrixV().col(j) * sq));
        out.left.emplace_back(T.grid, CVec(H2.G_inv_half * svd.matrixU().col(j) * sq));
    }
    return out;
}

RVec singular_value_list(const OperatorMatrix& T, const TemperedSpace& H1,
                         const TemperedSpace& H2) {
    require_same_grid(T.grid, H1.grid, "singular_value_list");
    require_same_grid(T.grid, H2.grid, "singular_value_list");
    const CMat B = H2.G_half * (T.m * T.grid.dx()) * H1.G_inv_half;
    return Eigen::BDCSVD<CMat>(B).singularValues();
}

double op_norm_power(const OperatorMatrix& T, const TemperedSpace& H1, const TemperedSpace& H2,
                     int iters) {
    // generalized Rayleigh quotient |Tf|^2_H2 / |f|^2_H1 maximized by
    // iterating f <- G1^{-1} T* G2 T f
    const double dx = T.grid.dx();
    const CMat Tw = T.m * dx;
    const CMat C = Tw.adjoint() * H2.G * Tw;
    const Eigen::PartialPivLU<CMat> lu(H1.G);
    const int N = T.grid.N;
    CVec f(N);
    for (int k = 0; k < N; ++k) f(k) = cplx(1.0 + 0.01 * k, 0.3 - 0.007 * k);
    double rq = 0;
    for (int it = 0; it < iters; ++it) {
        f = lu.solve(C * f);
        const double n = f.norm();
        if (n == 0.0) return 0.0;
        f /= n;
        rq = (f.dot(C * f)).real() / (f.dot(H1.G * f)).real();
    }
    return std::sqrt(std::max(0.0, rq));
}

double lp_norm(const RVec& v, const ExtExponent& p) {
    if (p.is_inf()) return v.cwiseAbs().maxCoeff();
    const double pp = p.as_double();
    double s = 0;
    for (int k = 0; k < v.size(); ++k) s += std::pow(std::abs(v(k)), pp);
    return std::pow(s, 1.0 / pp);
}

double schatten_norm(const OperatorMatrix& T, const ExtExponent& p, const TemperedSpace& H1,
                     const TemperedSpace& H2) {
    return lp_norm(singular_value_list(T, H1, H2), p);
}

double schatten_norm(const PhaseFn& a, double t, const ExtExponent& p, const TemperedSpace& H1,
                     const TemperedSpace& H2, SchattenFlavor flavor) {
    const OperatorMatrix T = flavor == SchattenFlavor::A ? A_op(a) : op_t(a, t);
    return schatten_norm(T, p, H1, H2);
}

cplx trace(const OperatorMatrix& T) { return T.m.diagonal().sum() * T.grid.dx(); }

DualityPair schatten_duality_pair(const PhaseFn& a, const PhaseFn& b, double t,
                                  const ExtExponent& p, const TemperedSpace& H1,
                                  const TemperedSpace& H2) {
    // the L2 form of symbols equals 2 pi times the trace form of the operators
    DualityPair d;
    d.lhs = std::abs(l2_inner(a, b)) / (2 * kPi);
    d.rhs = schatten_norm(a, t, p, H1, H2) *
            schatten_norm(b, t, p.conj(), dual_space(H1), dual_space(H2));
    return d;
}

SpectralData polar_decompose(const PhaseFn& a, double t, const TemperedSpace& H1,
                             const TemperedSpace& H2) {
    SpectralData s = singular_values(op_t(a, t), H1, H2);
    s.lambda *= std::sqrt(2 * kPi);
    for (auto& f : s.right) f.v = H1.G * f.v;  // orthonormal in the dual of H1
    return s;
}

PhaseFn polar_reconstruct(const SpectralData& s, double t) {
    if (s.left.empty()) throw Error("polar_reconstruct: empty decomposition");
    const GridSpec& g = s.left[0].grid;
    std::vector<PhaseFn> terms(s.lambda.size());
    parallel_for(static_cast<int>(s.lambda.size()), [&](int j) {
        terms[j] = wigner_t(s.left[j], s.right[j], t);
        terms[j].v *= s.lambda(j);
    });
    PhaseFn out(g);
    for (const auto& w : terms) out.v += w.v;
    return out;
}

PositivityResult psd_check(const OperatorMatrix& T, double rel_tol) {
    const CMat H = 0.5 * (T.m + T.m.adjoint()) * T.grid.dx();
    Eigen::SelfAdjointEigenSolver<CMat> es(H, Eigen::EigenvaluesOnly);
    const RVec& ev = es.eigenvalues();
    PositivityResult r;
    r.min_eig = ev.minCoeff();
    r.max_eig = ev.maxCoeff();
    const double scale = std::max(std::abs(r.min_eig), std::abs(r.max_eig));
    r.ok = r.min_eig >= -rel_tol * scale;
    return r;
}

PositivityResult sigma_positive(const PhaseFn& a, double rel_tol) {
    return psd_check(A_op(a), rel_tol);
}

EquivalenceReport symbol_equivalences(const PhaseFn& a, const ExtExponent& p,
                                      const TemperedSpace& H1, const TemperedSpace& H2,
                                      double t) {
    if (t == 0.5) throw Error("symbol_equivalences: pick t != 1/2 for item 7");
    const TemperedSpace D1 = dual_space(H1), D2 = dual_space(H2);
    const TemperedSpace R1 = reflected_space(H1), R2 = reflected_space(H2);
    EquivalenceReport r;
    r.norms[0] = schatten_norm(a, 0.5, p, H1, H2);
    r.norms[1] = schatten_norm(A_op(sympl_fourier(a)), p, H1, H2) / std::sqrt(2 * kPi);
    r.norms[2] = schatten_norm(symmetry_transform(a, SymKind::conj), 0.5, p, D2, D1);
    r.norms[3] = schatten_norm(symmetry_transform(a, SymKind::torsion), 0.5, p, conj_space(H1),
                               conj_space(H2));
    r.norms[4] = schatten_norm(reflect(a), 0.5, p, R1, R2);
    r.norms[5] = schatten_norm(symmetry_transform(a, SymKind::tilde), 0.5, p,
                               reflected_space(D2), reflected_space(D1));
    r.norms[6] = schatten_norm(calculus_transform(a, 0.5, t), t, p, H1, H2);
    for (double n : r.norms)
        r.max_rel_diff = std::max(r.max_rel_diff, std::abs(n - r.norms[0]) / r.norms[0]);
    return r;
}

}  // namespace wcalc
