#include "wcalc/products.hpp"

#include <cmath>

#include "wcalc/numerics.hpp"
#include "wcalc/quantize.hpp"

namespace wcalc {

namespace {

void require_pair(const PhaseFn& a, const PhaseFn& b, const char* what) {
    require_same_grid(a.grid, b.grid, what);
    if (a.lattice != b.lattice) throw Error(std::string(what) + ": lattice mismatch");
}

}  // namespace

PhaseFn convolve(const PhaseFn& a, const PhaseFn& b, ConvMode mode) {
    require_pair(a, b, "convolve");
    const int N = a.grid.N;
    const double cell = a.cell();
    PhaseFn out(a.grid, a.lattice);
    if (mode == ConvMode::periodic) {
        CMat A = a.v, B = b.v;
        fft2(A, -1);
        fft2(B, -1);
        CMat C = A.cwiseProduct(B);
        fft2(C, +1);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                out.v(i, j) = C((i + N / 2) % N, (j + N / 2) % N) * (cell / (double(N) * N));
        return out;
    }
    CMat A = CMat::Zero(2 * N, 2 * N), B = CMat::Zero(2 * N, 2 * N);
    A.topLeftCorner(N, N) = a.v;
    B.topLeftCorner(N, N) = b.v;
    fft2(A, -1);
    fft2(B, -1);
    CMat C = A.cwiseProduct(B);
    fft2(C, +1);
    out.v = C.block(N / 2, N / 2, N, N) * (cell / (4.0 * N * N));
    return out;
}

PhaseFn convolve_direct(const PhaseFn& a, const PhaseFn& b, ConvMode mode) {
    require_pair(a, b, "convolve_direct");
    const int N = a.grid.N;
    PhaseFn out(a.grid, a.lattice);
    parallel_for(N, [&](int i) {
        for (int j = 0; j < N; ++j) {
            cplx s = 0;
            for (int k = 0; k < N; ++k) {
                int p = i - k + N / 2;
                if (mode == ConvMode::periodic)
                    p = wrap(p, N);
                else if (p < 0 || p >= N)
                    continue;
                for (int l = 0; l < N; ++l) {
                    int q = j - l + N / 2;
                    if (mode == ConvMode::periodic)
                        q = wrap(q, N);
                    else if (q < 0 || q >= N)
                        continue;
                    s += a.v(p, q) * b.v(k, l);
                }
            }
            out.v(i, j) = s * a.cell();
        }
    });
    return out;
}

namespace {

// E(k, j) = e^{2 i x_k xi_j}
CMat twist_phase(const GridSpec& g) {
    const int N = g.N;
    CMat E(N, N);
    for (int k = 0; k < N; ++k)
        for (int j = 0; j < N; ++j) E(k, j) = std::polar(1.0, 2 * g.x(k) * g.xi(j));
    return E;
}

}  // namespace

PhaseFn twisted_convolve(const PhaseFn& a, const PhaseFn& b, TwistRoute route) {
    require_pair(a, b, "twisted_convolve");
    require_lattice(a, Lattice::symplectic, "twisted_convolve");
    const GridSpec& g = a.grid;
    if (route == TwistRoute::a_route) return A_inv(compose(A_op(a), A_op(b)));
    const int N = g.N;
    const CMat E = twist_phase(g);
    const double c = std::sqrt(2 / kPi) * g.dx() * g.h();
    PhaseFn out(g);
    parallel_for(N, [&](int i) {
        std::vector<cplx> inner(N);
        for (int j = 0; j < N; ++j) {
            // sum_l conj(E(i, l)) sum_k a(X - Y) b(Y) E(k, j)
            cplx s = 0;
            for (int l = 0; l < N; ++l) {
                const int q = wrap(j - l + N / 2, N);
                cplx t = 0;
                for (int k = 0; k < N; ++k) t += a.v(wrap(i - k + N / 2, N), q) * b.v(k, l) * E(k, j);
                s += t * std::conj(E(i, l));
            }
            out.v(i, j) = s * c;
        }
    });
    return out;
}

PhaseFn weyl_product(const PhaseFn& a, const PhaseFn& b, TwistRoute route) {
    PhaseFn out = twisted_convolve(a, sympl_fourier(b), route);
    out.v *= std::pow(2 * kPi, -0.5);
    return out;
}

PhaseFn weyl_product_t(const PhaseFn& a, const PhaseFn& b, double t) {
    if (t == 0.5) return weyl_product(a, b);
    return calculus_transform(
        weyl_product(calculus_transform(a, t, 0.5), calculus_transform(b, t, 0.5)), 0.5, t);
}

PhaseFn smooth_one(const GridSpec& g) {
    PhaseFn a(g);
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j) {
            const double r = std::hypot(g.x(i), g.xi(j)) / (0.8 * g.L);
            a.v(i, j) = std::exp(-std::pow(r, 8));
        }
    return a;
}

namespace {

Phase4Fn zeros4(const GridSpec& g) {
    Phase4Fn out;
    out.grid = g;
    out.v.assign(std::size_t(g.N) * g.N * g.N * g.N, cplx(0));
    return out;
}

}  // namespace

Phase4Fn weyl_stft_oracle(const PhaseFn& a1, const PhaseFn& a2, const PhaseFn& phi1,
                          const PhaseFn& phi2) {
    const Phase4Fn V1 = sympl_stft(a1, phi2), V2 = sympl_stft(a2, phi1);
    const GridSpec& g = a1.grid;
    const int N = g.N, H = N / 2;
    const CMat E = twist_phase(g);
    const double cell = g.dx() * g.h();
    Phase4Fn out = zeros4(g);
    // integrand e^{2 i sigma(Z, Y)} V1(X - Y + Z, Z) V2(X + Z, Y - Z)
    parallel_for(N * N, [&](int ik) {
        const int i = ik / N, k = ik % N;
        for (int j = 0; j < N; ++j)
            for (int l = 0; l < N; ++l) {
                cplx s = 0;
                for (int m = 0; m < N; ++m) {
                    const int p1 = wrap(i - k + m, N), p2 = wrap(i + m - H, N), p3 = wrap(k - m + H, N);
                    for (int n = 0; n < N; ++n) {
                        const cplx ph = E(k, n) * std::conj(E(m, l));
                        s += ph * V1.at(p1, wrap(j - l + n, N), m, n) *
                             V2.at(p2, wrap(j + n - H, N), p3, wrap(l - n + H, N));
                    }
                }
                out.at(i, j, k, l) = s * cell;
            }
    });
    return out;
}

Phase4Fn twisted_stft_oracle(const PhaseFn& a1, const PhaseFn& a2, const PhaseFn& phi1,
                             const PhaseFn& phi2) {
    const Phase4Fn V1 = sympl_stft(a1, phi2), V2 = sympl_stft(a2, phi1);
    const GridSpec& g = a1.grid;
    const int N = g.N, H = N / 2;
    const CMat E = twist_phase(g);
    const double cell = g.dx() * g.h();
    Phase4Fn out = zeros4(g);
    // integrand e^{2 i sigma(X, Z - Y)} V1(X - Y + Z, Z) V2(Y - Z, X + Z)
    parallel_for(N * N, [&](int ik) {
        const int i = ik / N, k = ik % N;
        for (int j = 0; j < N; ++j)
            for (int l = 0; l < N; ++l) {
                cplx s = 0;
                for (int m = 0; m < N; ++m) {
                    const int p1 = wrap(i - k + m, N), p2 = wrap(k - m + H, N), p3 = wrap(i + m - H, N);
                    const cplx phx = E(m, j) * std::conj(E(k, j));
                    for (int n = 0; n < N; ++n) {
                        const cplx ph = phx * std::conj(E(i, n)) * E(i, l);
                        s += ph * V1.at(p1, wrap(j - l + n, N), m, n) *
                             V2.at(p2, wrap(l - n + H, N), p3, wrap(j + n - H, N));
                    }
                }
                out.at(i, j, k, l) = s * cell;
            }
    });
    return out;
}

namespace {

// rows: interpolation weights of the configuration grid at the given points
CMat interp_rows(const GridSpec& g, const std::vector<double>& pts) {
    const int N = g.N;
    CMat P(pts.size(), N);
    std::vector<cplx> w(N);
    for (std::size_t r = 0; r < pts.size(); ++r) {
        TrigInterp::weights(N, -g.L, g.dx(), pts[r], w.data());
        for (int k = 0; k < N; ++k) P(r, k) = w[k];
    }
    return P;
}

}  // namespace

DilatedPair dilated_conv_pair(const PhaseFn& a, const PhaseFn& b, double s, double t, int j,
                              int k) {
    require_pair(a, b, "dilated_conv_pair");
    require_lattice(a, Lattice::symplectic, "dilated_conv_pair");
    if (s == 0.0 || t == 0.0) throw Error("dilated_conv_pair: s t must be nonzero");
    if ((j != 0 && j != 1) || (k != 0 && k != 1))
        throw Error("dilated_conv_pair: j, k must be 0 or 1");
    const double cond = (j ? -1.0 : 1.0) / (s * s) + (k ? -1.0 : 1.0) / (t * t);
    if (std::abs(cond - 1.0) > 1e-12)
        throw Error("dilated_conv_pair: (-1)^j s^-2 + (-1)^k t^-2 must equal 1");
    const GridSpec& g = a.grid;
    const int N = g.N;

    DilatedPair out;
    out.lhs = A_op(convolve(dilate(a, s), dilate(b, t), ConvMode::linear));

    const CMat Aa = A_op(a).m, Ab = A_op(b).m;
    // integrand vanishes once either factor leaves the box
    auto reach = [&](double u) { return (g.L / std::abs(u) + g.L) / std::abs(u); };
    const double dz = 0.5 * g.dx();
    const int nh = static_cast<int>(std::ceil(std::min(reach(s), reach(t)) / dz));
    const int nz = 2 * nh;
    std::vector<CMat> part(nz);
    parallel_for(nz, [&](int q) {
        const double z = (q - nh) * dz;
        std::vector<double> p1(N), p2(N), p3(N), p4(N);
        for (int i = 0; i < N; ++i) {
            p1[i] = g.x(i) / s - s * z;
            p2[i] = g.x(i) / s + s * z;
            p3[i] = g.x(i) / t + t * z;
            p4[i] = g.x(i) / t - t * z;
        }
        CMat V1 = interp_rows(g, p1) * Aa * interp_rows(g, p2).transpose();
        CMat V2 = interp_rows(g, p3) * Ab * interp_rows(g, p4).transpose();
        if (j) V1.transposeInPlace();
        if (k) V2.transposeInPlace();
        part[q] = V1.cwiseProduct(V2);
    });
    CMat rhs = CMat::Zero(N, N);
    for (const auto& p : part) rhs += p;
    out.rhs = OperatorMatrix(g, rhs * (std::sqrt(2 * kPi) / std::abs(s * t) * dz));
    return out;
}

double pointwise_domination(const PhaseFn& a, const PhaseFn& b) {
    const PhaseFn tw = twisted_convolve(a, b);
    PhaseFn aa = a, bb = b;
    aa.v = a.v.cwiseAbs().cast<cplx>();
    bb.v = b.v.cwiseAbs().cast<cplx>();
    const PhaseFn cv = convolve(aa, bb);
    double slack = -INFINITY;
    for (int i = 0; i < a.grid.N; ++i)
        for (int j = 0; j < a.grid.N; ++j)
            slack = std::max(slack, std::abs(tw.v(i, j)) - std::sqrt(2 / kPi) * cv.v(i, j).real());
    return slack;
}

PhaseFn odd_monomial(const std::vector<PhaseFn>& a, const std::vector<int>& alpha) {
    if (a.empty() || a.size() != alpha.size())
        throw Error("odd_monomial: need one exponent per factor");
    int total = 0;
    for (int e : alpha) {
        if (e < 0) throw Error("odd_monomial: exponents must be nonnegative");
        total += e;
    }
    if (total % 2 == 0) throw Error("odd_monomial: |alpha| must be odd");
    PhaseFn out(a[0].grid, a[0].lattice);
    out.v.setOnes();
    for (std::size_t n = 0; n < a.size(); ++n) {
        require_pair(a[0], a[n], "odd_monomial");
        for (int e = 0; e < alpha[n]; ++e) out.v = out.v.cwiseProduct(a[n].v);
    }
    return out;
}

}  // namespace wcalc
