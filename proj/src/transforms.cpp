#include "wcalc/transforms.hpp"

#include <cmath>
#include <iostream>

#include "wcalc/numerics.hpp"

namespace wcalc {

namespace {

void require_nonzero(const ConfigFn& phi, const char* what) {
    if (phi.v.cwiseAbs().maxCoeff() == 0.0) throw Error(std::string(what) + ": zero window");
}

}  // namespace

PhaseFn stft(const ConfigFn& f, const ConfigFn& phi, Lattice lattice) {
    require_same_grid(f.grid, phi.grid, "stft");
    require_nonzero(phi, "stft");
    if (lattice != Lattice::symplectic && lattice != Lattice::dual)
        throw Error("stft: lattice must be symplectic or dual");
    const GridSpec& g = f.grid;
    const int N = g.N;
    PhaseFn out(g, lattice);
    const double c = std::pow(2 * kPi, -0.5) * g.dx();
    parallel_for(N, [&](int i) {
        std::vector<cplx> prod(N), res(N);
        for (int k = 0; k < N; ++k) prod[k] = f.v(k) * std::conj(phi.v(wrap(k - i + N / 2, N)));
        if (lattice == Lattice::symplectic)
            sdft(prod.data(), N, -g.L, g.dx(), -g.R(), g.h(), -1, res.data(), N);
        else
            sdft(prod.data(), N, -g.L, g.dx(), -kPi / g.dx(), g.dxi(), -1, res.data(), N);
        for (int j = 0; j < N; ++j) out.v(i, j) = res[j] * c;
    });
    return out;
}

cplx stft_at(const ConfigFn& f, const ConfigFn& phi, int m, double xi) {
    const GridSpec& g = f.grid;
    const int N = g.N;
    cplx s = 0;
    for (int k = 0; k < N; ++k) {
        const int w = k - m + N / 2;
        if (w < 0 || w >= N) continue;
        s += f.v(k) * std::conj(phi.v(w)) * std::polar(1.0, -g.x(k) * xi);
    }
    return s * std::pow(2 * kPi, -0.5) * g.dx();
}

Phase4Fn sympl_stft(const PhaseFn& a, const PhaseFn& phi) {
    require_same_grid(a.grid, phi.grid, "sympl_stft");
    require_lattice(a, Lattice::symplectic, "sympl_stft");
    require_lattice(phi, Lattice::symplectic, "sympl_stft");
    const int N = a.grid.N;
    if (N > kMaxPhase4N)
        throw Error("sympl_stft: N = " + std::to_string(N) + " exceeds the memory guard (" +
                    std::to_string(kMaxPhase4N) + ")");
    if (phi.v.cwiseAbs().maxCoeff() == 0.0) throw Error("sympl_stft: zero window");
    Phase4Fn out;
    out.grid = a.grid;
    out.v.assign(std::size_t(N) * N * N * N, cplx(0));
    parallel_for(N * N, [&](int X) {
        const int i = X / N, j = X % N;
        PhaseFn prod(a.grid);
        for (int k = 0; k < N; ++k)
            for (int l = 0; l < N; ++l)
                prod.v(k, l) = a.v(k, l) * phi.v(wrap(k - i + N / 2, N), wrap(l - j + N / 2, N));
        PhaseFn F = sympl_fourier(prod);
        for (int k = 0; k < N; ++k)
            for (int l = 0; l < N; ++l) out.at(i, j, k, l) = F.v(k, l);
    });
    return out;
}

PhaseFn wigner_t(const ConfigFn& f1, const ConfigFn& f2, double t) {
    require_same_grid(f1.grid, f2.grid, "wigner_t");
    const GridSpec& g = f1.grid;
    const int N = g.N;
    PhaseFn out(g);
    if (t == 0.5) {
        // y = 2u with u on the grid: arguments x +- u stay on the grid
        const double c = 2.0 * std::pow(2 * kPi, -0.5) * g.dx();
        parallel_for(N, [&](int i) {
            std::vector<cplx> prod(N), res(N);
            for (int k = 0; k < N; ++k) {
                const int p = i + k - N / 2, m = i - k + N / 2;
                const cplx v1 = (p >= 0 && p < N) ? f1.v(p) : cplx(0);
                const cplx v2 = (m >= 0 && m < N) ? f2.v(m) : cplx(0);
                prod[k] = v1 * std::conj(v2);
            }
            sdft(prod.data(), N, -2 * g.L, 2 * g.dx(), -g.R(), g.h(), -1, res.data(), N);
            for (int j = 0; j < N; ++j) out.v(i, j) = res[j] * c;
        });
        return out;
    }
    // general t: y on [-2L, 2L) with 2N nodes covers every in-range pair
    const TrigInterp I1(f1.v.data(), N, -g.L, g.dx()), I2(f2.v.data(), N, -g.L, g.dx());
    const double c = std::pow(2 * kPi, -0.5) * g.dx();
    parallel_for(N, [&](int i) {
        std::vector<cplx> prod(2 * N), res(N);
        for (int q = 0; q < 2 * N; ++q) {
            const double y = -2 * g.L + q * g.dx();
            prod[q] = I1(g.x(i) + t * y) * std::conj(I2(g.x(i) - (1 - t) * y));
        }
        sdft(prod.data(), 2 * N, -2 * g.L, g.dx(), -g.R(), g.h(), -1, res.data(), N);
        for (int j = 0; j < N; ++j) out.v(i, j) = res[j] * c;
    });
    return out;
}

PhaseFn calculus_transform(const PhaseFn& a, double s, double t) {
    if (s == t) return a;
    const GridSpec& g = a.grid;
    const int N = g.N;
    double dxi;
    switch (a.lattice) {
    case Lattice::symplectic: dxi = g.h(); break;
    case Lattice::dual: dxi = g.dxi(); break;
    default: throw Error("calculus_transform: needs a phase-space lattice");
    }
    auto fftfreq = [N](int k, double d) {
        const int m = k < (N + 1) / 2 ? k : k - N;  // numpy-style ordering
        return 2 * kPi * m / (N * d);
    };
    CMat A = a.v;
    fft2(A, -1);
    for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l)
            A(k, l) *= std::polar(1.0, -(t - s) * fftfreq(k, g.dx()) * fftfreq(l, dxi));
    fft2(A, +1);
    PhaseFn out(g, A / double(N * N), a.lattice);
    return out;
}

// ---- mixed norms ------------------------------------------------------------------

MixedNormSpec MixedNormSpec::parse(const std::string& s) {
    MixedNormSpec spec;
    const auto c1 = s.find(':');
    if (c1 == std::string::npos) throw Error("norm spec: expected FLAVOR:p,q[:WEIGHT]");
    const std::string fl = s.substr(0, c1);
    if (fl != "M" && fl != "W") throw Error("norm spec: flavor must be M or W");
    spec.flavor = fl[0];
    spec.order = fl == "M" ? 1 : 2;
    const auto c2 = s.find(':', c1 + 1);
    const std::string pq = s.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1);
    const auto comma = pq.find(',');
    if (comma == std::string::npos) throw Error("norm spec: expected p,q");
    spec.p = ExtExponent::parse(pq.substr(0, comma));
    spec.q = ExtExponent::parse(pq.substr(comma + 1));
    spec.omega = WeightExpr(c2 == std::string::npos ? "const(1)" : s.substr(c2 + 1));
    return spec;
}

namespace {

// L^p over the inner index then L^q over the outer index of a nonnegative
// array; cell sizes din, dout.
double lpq(const RMat& A, bool inner_rows, const ExtExponent& p, const ExtExponent& q,
           double din, double dout) {
    const int nin = inner_rows ? A.rows() : A.cols();
    const int nout = inner_rows ? A.cols() : A.rows();
    std::vector<double> S(nout);
    for (int o = 0; o < nout; ++o) {
        double acc = 0;
        if (p.is_inf()) {
            for (int k = 0; k < nin; ++k) acc = std::max(acc, inner_rows ? A(k, o) : A(o, k));
        } else {
            const double pp = p.as_double();
            for (int k = 0; k < nin; ++k) acc += std::pow(inner_rows ? A(k, o) : A(o, k), pp);
            acc = std::pow(acc * din, 1.0 / pp);
        }
        S[o] = acc;
    }
    if (q.is_inf()) {
        double m = 0;
        for (double v : S) m = std::max(m, v);
        return m;
    }
    const double qq = q.as_double();
    double acc = 0;
    for (double v : S) acc += std::pow(v, qq);
    return std::pow(acc * dout, 1.0 / qq);
}

}  // namespace

double mixed_norm(const PhaseFn& F, const MixedNormSpec& spec) {
    const GridSpec& g = F.grid;
    const int N = g.N;
    RMat A(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) A(i, j) = std::abs(F.v(i, j)) * spec.omega(g.x(i), F.second(j));
    const double dx = g.dx(), dxi = F.cell() / g.dx();
    if (spec.order == 1) return lpq(A, true, spec.p, spec.q, dx, dxi);
    if (spec.order == 2) return lpq(A, false, spec.p, spec.q, dxi, dx);
    throw Error("mixed_norm: order must be 1 or 2");
}

double mod_norm(const ConfigFn& f, const MixedNormSpec& spec, const ConfigFn& phi) {
    PhaseFn V = stft(f, phi, Lattice::dual);
    MixedNormSpec s = spec;
    s.order = spec.flavor == 'W' ? 2 : 1;
    return mixed_norm(V, s);
}

PhaseFn gaussian_phase(const GridSpec& g) {
    PhaseFn a(g);
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j) a.v(i, j) = std::exp(-g.x(i) * g.x(i) - g.xi(j) * g.xi(j));
    return a;
}

std::vector<double> sympl_mod_norms(const PhaseFn& a, const std::vector<SymplNormSpec>& specs,
                                    const PhaseFn& phi, const WeightExpr& wX,
                                    const WeightExpr& wY) {
    require_same_grid(a.grid, phi.grid, "sympl_mod_norm");
    require_lattice(a, Lattice::symplectic, "sympl_mod_norm");
    for (const auto& s : specs)
        if (s.order != 1 && s.order != 2) throw Error("sympl_mod_norm: order must be 1 or 2");
    const GridSpec& g = a.grid;
    const int N = g.N;
    const int M = static_cast<int>(specs.size());
    const double cell = g.dx() * g.h();
    // 0: sup, 1, 2 fast paths, 3 general power
    auto mode = [](const ExtExponent& e) {
        if (e.is_inf()) return 0;
        const double v = e.as_double();
        return v == 1.0 ? 1 : v == 2.0 ? 2 : 3;
    };
    auto acc = [&](double s, double v, const ExtExponent& e) {
        switch (mode(e)) {
            case 0: return std::max(s, v);
            case 1: return s + v;
            case 2: return s + v * v;
            default: return s + std::pow(v, e.as_double());
        }
    };
    auto fin = [&](double s, const ExtExponent& e) {
        return e.is_inf() ? s : std::pow(s * cell, 1.0 / e.as_double());
    };
    // order 1: part1[m][i](k, l) accumulates over X = (i, .) for fixed Y.
    // order 2: part2[m](i, j) is the finished inner Y-norm at X.
    std::vector<std::vector<RMat>> part1(M);
    std::vector<RMat> part2(M, RMat::Zero(N, N));
    for (int m = 0; m < M; ++m)
        if (specs[m].order == 1) part1[m].assign(N, RMat::Zero(N, N));
    RMat WX(N, N), WY(N, N);
    for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) {
            WX(k, l) = wX(g.x(k), g.xi(l));
            WY(k, l) = wY(g.x(k), g.xi(l));
        }
    parallel_for(N, [&](int i) {
        PhaseFn prod(g);
        RMat mag(N, N);
        for (int j = 0; j < N; ++j) {
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l)
                    prod.v(k, l) = a.v(k, l) * phi.v(wrap(k - i + N / 2, N), wrap(l - j + N / 2, N));
            const PhaseFn F = sympl_fourier(prod);
            mag = F.v.cwiseAbs().cwiseProduct(WY) * WX(i, j);
            for (int m = 0; m < M; ++m) {
                const SymplNormSpec& s = specs[m];
                if (s.order == 1) {
                    RMat& P = part1[m][i];
                    for (int k = 0; k < N; ++k)
                        for (int l = 0; l < N; ++l) P(k, l) = acc(P(k, l), mag(k, l), s.p);
                } else {
                    double t = 0;
                    for (int k = 0; k < N; ++k)
                        for (int l = 0; l < N; ++l) t = acc(t, mag(k, l), s.q);
                    part2[m](i, j) = fin(t, s.q);
                }
            }
        }
    });
    std::vector<double> out(M);
    for (int m = 0; m < M; ++m) {
        const SymplNormSpec& s = specs[m];
        if (s.order == 1) {
            RMat S = RMat::Zero(N, N);
            for (int i = 0; i < N; ++i)
                for (int k = 0; k < N; ++k)
                    for (int l = 0; l < N; ++l)
                        S(k, l) = s.p.is_inf() ? std::max(S(k, l), part1[m][i](k, l))
                                               : S(k, l) + part1[m][i](k, l);
            double t = 0;
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l) t = acc(t, fin(S(k, l), s.p), s.q);
            out[m] = fin(t, s.q);
        } else {
            double t = 0;
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) t = acc(t, part2[m](i, j), s.p);
            out[m] = fin(t, s.p);
        }
    }
    return out;
}

double sympl_mod_norm(const PhaseFn& a, const ExtExponent& p, const ExtExponent& q,
                      const PhaseFn& phi, const WeightExpr& wX, const WeightExpr& wY) {
    return sympl_mod_norms(a, {SymplNormSpec{p, q, 1}}, phi, wX, wY)[0];
}

namespace {

ConfigFn unit_window(const ConfigFn& chi, const char* what) {
    const double n = l2_norm(chi);
    if (n == 0.0) throw Error(std::string(what) + ": zero window");
    if (std::abs(n - 1.0) > 1e-12) {
        std::cerr << "warning: " << what << ": window renormalized to unit L2 norm\n";
        ConfigFn c = chi;
        c.v /= n;
        return c;
    }
    return chi;
}

}  // namespace

double m2_partial_norm(const PhaseFn& F, const WeightExpr& omega, const ConfigFn& chi0) {
    require_lattice(F, Lattice::kernel, "m2_partial_norm");
    const ConfigFn chi = unit_window(chi0, "m2_partial_norm");
    const GridSpec& g = F.grid;
    const int N = g.N;
    std::vector<double> col(N, 0.0);
    parallel_for(N, [&](int k) {
        ConfigFn f(g);
        for (int i = 0; i < N; ++i) f.v(i) = F.v(i, k);
        PhaseFn V = stft(f, chi, Lattice::dual);
        double s = 0;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                const double w = omega(g.x(i), g.xd(j));
                s += std::norm(V.v(i, j)) * w * w;
            }
        col[k] = s;
    });
    double s = 0;
    for (double v : col) s += v;
    return std::sqrt(s * g.dx() * g.dx() * g.dxi());
}

double m2_full_norm(const PhaseFn& F, const WeightExpr& omega, const ConfigFn& chi0) {
    require_lattice(F, Lattice::kernel, "m2_full_norm");
    const ConfigFn chi = unit_window(chi0, "m2_full_norm");
    const GridSpec& g = F.grid;
    const int N = g.N;
    const double c = std::pow(2 * kPi, -1.0) * g.dx() * g.dx();
    std::vector<double> acc(N, 0.0);
    parallel_for(N, [&](int i) {
        double s = 0;
        std::vector<cplx> row(N), res(N);
        CMat T(N, N);
        for (int k = 0; k < N; ++k) {
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b)
                    T(a, b) = F.v(a, b) * std::conj(chi.v(wrap(a - i + N / 2, N))) *
                              std::conj(chi.v(wrap(b - k + N / 2, N)));
            // DFT on the dual lattice in both variables
            for (int b = 0; b < N; ++b) {
                for (int a = 0; a < N; ++a) row[a] = T(a, b);
                sdft(row.data(), N, -g.L, g.dx(), -kPi / g.dx(), g.dxi(), -1, res.data(), N);
                for (int a = 0; a < N; ++a) T(a, b) = res[a];
            }
            for (int a = 0; a < N; ++a) {
                for (int b = 0; b < N; ++b) row[b] = T(a, b);
                sdft(row.data(), N, -g.L, g.dx(), -kPi / g.dx(), g.dxi(), -1, res.data(), N);
                const double w = omega(g.x(i), g.xd(a));
                for (int b = 0; b < N; ++b) s += std::norm(res[b] * c) * w * w;
            }
        }
        acc[i] = s;
    });
    double s = 0;
    for (double v : acc) s += v;
    return std::sqrt(s * g.dx() * g.dx() * g.dxi() * g.dxi());
}

}  // namespace wcalc
