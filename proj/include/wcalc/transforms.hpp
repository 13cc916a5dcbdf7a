#pragma once

#include <string>
#include <vector>

#include "wcalc/phasespace.hpp"

namespace wcalc {

// V_phi f(x, xi) = (2 pi)^{-1/2} int f(y) conj(phi(y - x)) e^{-i y xi} dy.
// Shifts wrap periodically.  The dual lattice gives an exact discrete
// Moyal identity; the symplectic lattice matches the other phase objects.
PhaseFn stft(const ConfigFn& f, const ConfigFn& phi, Lattice lattice = Lattice::symplectic);
// Single value with the window shifted by x_m = -L + m dx (any integer m) at
// frequency xi.  The window is zero outside the grid rather than wrapped.
cplx stft_at(const ConfigFn& f, const ConfigFn& phi, int m, double xi);

// Largest N for which Phase4Fn may be materialized.
inline constexpr int kMaxPhase4N = 32;

// V_phi a(X, Y) = F_sigma(a phi(. - X))(Y)
Phase4Fn sympl_stft(const PhaseFn& a, const PhaseFn& phi);

// W^t_{f1,f2}(x, xi) = (2 pi)^{-1/2} int f1(x + t y) conj(f2(x - (1-t) y)) e^{-i y xi} dy
PhaseFn wigner_t(const ConfigFn& f1, const ConfigFn& f2, double t);

// e^{i(t-s)<D_x, D_xi>} a, the map taking s-symbols to t-symbols
PhaseFn calculus_transform(const PhaseFn& a, double s, double t);

struct MixedNormSpec {
    ExtExponent p, q;
    int order = 1;  // 1: x innermost, 2: xi innermost
    WeightExpr omega;
    char flavor = 'M';

    // "M:p,q:WEIGHT" or "W:p,q:WEIGHT"; WEIGHT defaults to const(1)
    static MixedNormSpec parse(const std::string& s);
};

double mixed_norm(const PhaseFn& F, const MixedNormSpec& spec);
// modulation norm: mixed_norm(stft(f, phi) on the dual lattice), order 1 for
// flavor M and 2 for flavor W
double mod_norm(const ConfigFn& f, const MixedNormSpec& spec, const ConfigFn& phi);

// One exponent pair of a symplectic modulation norm.  order 1 integrates X
// innermost with p (M-type), order 2 integrates Y innermost with q (W-type).
struct SymplNormSpec {
    ExtExponent p, q;
    int order = 1;
};
// Several norms of the same symbol from one pass over the 4-variable transform.
std::vector<double> sympl_mod_norms(const PhaseFn& a, const std::vector<SymplNormSpec>& specs,
                                    const PhaseFn& phi, const WeightExpr& wX = WeightExpr(),
                                    const WeightExpr& wY = WeightExpr());

// Norm of a phase function a in the symplectic modulation space with window
// phi: L^{p,q} over (X, Y) with X innermost and weight wX(X) wY(Y).
// Streams the 4-variable transform, so any N is allowed.
double sympl_mod_norm(const PhaseFn& a, const ExtExponent& p, const ExtExponent& q,
                      const PhaseFn& phi, const WeightExpr& wX = WeightExpr(),
                      const WeightExpr& wY = WeightExpr());

// e^{-|X|^2} on the symplectic lattice
PhaseFn gaussian_phase(const GridSpec& g);

// Triple-integral norm: STFT in the first variable of F(x, y) only, weighted
// by omega(x, xi), L^2 over (x, y, xi).  F uses the kernel lattice.
double m2_partial_norm(const PhaseFn& F, const WeightExpr& omega, const ConfigFn& chi);
// Full M^2 norm of F on R^2 with window chi (x) chi and weight omega(x, xi).
double m2_full_norm(const PhaseFn& F, const WeightExpr& omega, const ConfigFn& chi);

}  // namespace wcalc
