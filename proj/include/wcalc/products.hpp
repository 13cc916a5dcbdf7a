#pragma once

#include <vector>

#include "wcalc/transforms.hpp"

namespace wcalc {

enum class ConvMode { periodic, linear };

// int a(X - Y) b(Y) dY.  periodic: indices wrap mod N (FFT route).
// linear: zero extension outside the grid.
PhaseFn convolve(const PhaseFn& a, const PhaseFn& b, ConvMode mode = ConvMode::periodic);
// direct double sum, O(N^4); oracle for convolve
PhaseFn convolve_direct(const PhaseFn& a, const PhaseFn& b, ConvMode mode = ConvMode::periodic);

enum class TwistRoute { direct, a_route };

// (a *_sigma b)(X) = (2/pi)^{1/2} int a(X - Y) b(Y) e^{2 i sigma(X, Y)} dY.
// direct: O(N^4) sum with periodic indices.  a_route: A^{-1}(Aa Ab).
PhaseFn twisted_convolve(const PhaseFn& a, const PhaseFn& b,
                         TwistRoute route = TwistRoute::direct);

// a # b = (2 pi)^{-1/2} a *_sigma (F_sigma b)
PhaseFn weyl_product(const PhaseFn& a, const PhaseFn& b, TwistRoute route = TwistRoute::direct);
// product of the t-calculus, conjugated through the Weyl product
PhaseFn weyl_product_t(const PhaseFn& a, const PhaseFn& b, double t);

// Stand-in for the constant symbol 1: exp(-(|X|/L0)^8), L0 = 0.8 L.
// Accurate to 1e-5 on well-localized functions once N >= 256.
PhaseFn smooth_one(const GridSpec& g);

// Right-hand sides of the STFT-of-product formulas by direct quadrature
// over Z, with windows chi1 = phi2 and chi2 = phi1.
//   weyl:    compare with sympl_stft(a1 # a2, pi phi1 # phi2)
//   twisted: compare with sympl_stft(a1 *_sigma a2, phi1 *_sigma phi2 / 2)
Phase4Fn weyl_stft_oracle(const PhaseFn& a1, const PhaseFn& a2, const PhaseFn& phi1,
                          const PhaseFn& phi2);
Phase4Fn twisted_stft_oracle(const PhaseFn& a1, const PhaseFn& a2, const PhaseFn& phi1,
                             const PhaseFn& phi2);

// A(a(s.) * b(t.)) and the z-integral of dilated, translated and (for
// j or k = 1) transposed kernels of Aa and Ab.  Requires
// (-1)^j s^-2 + (-1)^k t^-2 = 1.
struct DilatedPair {
    OperatorMatrix lhs, rhs;
};
DilatedPair dilated_conv_pair(const PhaseFn& a, const PhaseFn& b, double s, double t, int j,
                              int k);

// max over the grid of |a *_sigma b| - (2/pi)^{1/2} (|a| * |b|)
double pointwise_domination(const PhaseFn& a, const PhaseFn& b);

// prod_k a_k^{alpha_k}, |alpha| odd
PhaseFn odd_monomial(const std::vector<PhaseFn>& a, const std::vector<int>& alpha);

}  // namespace wcalc
