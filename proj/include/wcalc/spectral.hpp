#pragma once

#include <array>
#include <string>
#include <vector>

#include "wcalc/quantize.hpp"

namespace wcalc {

// Weighted Hilbert space on the configuration grid, (f, g)_H = g* G f dx.
struct TemperedSpace {
    GridSpec grid;
    std::string label;
    CMat G, G_half, G_inv_half;
    double cond = 1.0;

    cplx inner(const ConfigFn& f, const ConfigFn& g) const;
    double norm(const ConfigFn& f) const;
};

inline constexpr double kMaxCondition = 1e12;

// space with the given Gram matrix; rejects non-Hermitian or ill-conditioned G
TemperedSpace space_from_gram(const GridSpec& g, const CMat& G, const std::string& label);
TemperedSpace l2_space(const GridSpec& g);
// M^2 with weight omega(x, xi) and window phi (renormalized to unit L2 norm).
// G = S* diag(omega^2 dx dxi) S / dx with S the dual-lattice STFT matrix.
TemperedSpace make_space(const WeightExpr& omega, const ConfigFn& phi);
// L2 dual: Gram G^{-1}
TemperedSpace dual_space(const TemperedSpace& H);
// Gram of f -> f(-.) and of f -> conj(f): P G P and conj(G)
TemperedSpace reflected_space(const TemperedSpace& H);
TemperedSpace conj_space(const TemperedSpace& H);

struct SpectralData {
    RVec lambda;                  // decreasing
    std::vector<ConfigFn> right;  // unit in H1, T right_j = lambda_j left_j
    std::vector<ConfigFn> left;   // unit in H2
};

SpectralData singular_values(const OperatorMatrix& T, const TemperedSpace& H1,
                             const TemperedSpace& H2);
// singular values only, decreasing
RVec singular_value_list(const OperatorMatrix& T, const TemperedSpace& H1,
                         const TemperedSpace& H2);
// largest singular value by power iteration on the sup characterization
double op_norm_power(const OperatorMatrix& T, const TemperedSpace& H1, const TemperedSpace& H2,
                     int iters = 500);

double lp_norm(const RVec& v, const ExtExponent& p);

enum class SchattenFlavor { op_t, A };
double schatten_norm(const PhaseFn& a, double t, const ExtExponent& p, const TemperedSpace& H1,
                     const TemperedSpace& H2, SchattenFlavor flavor = SchattenFlavor::op_t);
double schatten_norm(const OperatorMatrix& T, const ExtExponent& p, const TemperedSpace& H1,
                     const TemperedSpace& H2);

// sum of the diagonal of the quadrature-weighted matrix
cplx trace(const OperatorMatrix& T);

struct DualityPair {
    double lhs, rhs;
};
// |(a, b)_{L2}| against ||a||_{s_{t,p}(H1,H2)} ||b||_{s_{t,p'}(H1',H2')}
DualityPair schatten_duality_pair(const PhaseFn& a, const PhaseFn& b, double t,
                                  const ExtExponent& p, const TemperedSpace& H1,
                                  const TemperedSpace& H2);

// a = sum_j lambda_j W^t_{g_j, phi_j}: lambda = (2 pi)^{1/2} singular values,
// left = g_j (unit in H2), right = phi_j (unit in the dual of H1)
SpectralData polar_decompose(const PhaseFn& a, double t, const TemperedSpace& H1,
                             const TemperedSpace& H2);
PhaseFn polar_reconstruct(const SpectralData& s, double t);

struct PositivityResult {
    bool ok;
    double min_eig, max_eig;
};
// eigenvalues of the Hermitian part of the quadrature-weighted matrix
PositivityResult psd_check(const OperatorMatrix& T, double rel_tol = 1e-8);
PositivityResult sigma_positive(const PhaseFn& a, double rel_tol = 1e-8);

// The seven equivalent norms of a symbol (Weyl calculus on H1 -> H2):
//  0 a on H1->H2; 1 F_sigma a through A, scaled by (2 pi)^{-1/2};
//  2 conj a on H2'->H1'; 3 torsion on conjugated spaces;
//  4 reflection on reflected spaces; 5 tilde on reflected duals;
//  6 calculus transform to t on H1->H2.
struct EquivalenceReport {
    std::array<double, 7> norms{};
    double max_rel_diff = 0;
};
EquivalenceReport symbol_equivalences(const PhaseFn& a, const ExtExponent& p,
                                      const TemperedSpace& H1, const TemperedSpace& H2,
                                      double t = 0.0);

}  // namespace wcalc
