#pragma once

#include <string>

#include "wcalc/transforms.hpp"

namespace wcalc {

// Kernel K(x, y) = (2 pi)^{-1} int a((1-t) x + t y, xi) e^{i (x - y) xi} dxi
// sampled on the grid; the first argument is interpolated when off grid.
OperatorMatrix op_t(const PhaseFn& a, double t);

// (Aa)(x, y) = (2 pi)^{-1/2} int a((y - x)/2, xi) e^{-i (x + y) xi} dxi
OperatorMatrix A_op(const PhaseFn& a);
// (A^{-1} U)(x, xi) = (2 pi)^{-1/2} int e^{i y xi} U(y/2 - x, y/2 + x) dy
PhaseFn A_inv(const OperatorMatrix& U);

// kernel of S o T: S dx T
OperatorMatrix compose(const OperatorMatrix& S, const OperatorMatrix& T);
OperatorMatrix adjoint(const OperatorMatrix& T);
ConfigFn apply(const OperatorMatrix& T, const ConfigFn& f);
// f -> (f, f2) f1
OperatorMatrix rank_one(const ConfigFn& f1, const ConfigFn& f2);
OperatorMatrix identity_op(const GridSpec& g);

// Matrix of f -> V_phi f on the symplectic lattice, N^2 x N, row index i*N + j
CMat stft_matrix(const ConfigFn& phi, Lattice lattice = Lattice::symplectic);

enum class ToeplitzRoute { direct, weyl };
// (Tp f1, f2) = (a V_{h1 reflected} f1, V_{h2 reflected} f2)
OperatorMatrix toeplitz(const PhaseFn& a, const ConfigFn& h1, const ConfigFn& h2,
                        ToeplitzRoute route = ToeplitzRoute::direct, double t = 0.5);

void write_opm(const std::string& path, const OperatorMatrix& T);
OperatorMatrix read_opm(const std::string& path);

}  // namespace wcalc
