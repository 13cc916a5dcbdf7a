#include "wcalc/quantize.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "wcalc/numerics.hpp"
#include "wcalc/products.hpp"

namespace wcalc {

OperatorMatrix op_t(const PhaseFn& a, double t) {
    require_lattice(a, Lattice::symplectic, "op_t");
    const GridSpec& g = a.grid;
    const int N = g.N;
    // b(x_k, w_q) = (2 pi)^{-1} sum_m a(x_k, xi_m) e^{i w_q xi_m} h,  w_q = -2L + q dx
    CMat E(N, 2 * N);
    for (int m = 0; m < N; ++m)
        for (int q = 0; q < 2 * N; ++q) E(m, q) = std::polar(1.0, g.xi(m) * (-2 * g.L + q * g.dx()));
    const CMat b = (a.v * E) * (g.h() / (2 * kPi));
    OperatorMatrix K(g, CMat::Zero(N, N));
    const bool on_grid = (t == 0.0 || t == 1.0);
    parallel_for(2 * N - 1, [&](int qm) {
        const int q = qm + 1;  // q = i - j + N ranges over 1 .. 2N-1
        const cplx* col = b.col(q).data();
        TrigInterp I;
        if (!on_grid) I = TrigInterp(col, N, -g.L, g.dx());
        for (int i = 0; i < N; ++i) {
            const int j = i - q + N;
            if (j < 0 || j >= N) continue;
            if (t == 0.0)
                K.m(i, j) = col[i];
            else if (t == 1.0)
                K.m(i, j) = col[j];
            else
                K.m(i, j) = I((1 - t) * g.x(i) + t * g.x(j));
        }
    });
    return K;
}

namespace {

// a(z_p, xi) on the half grid z_p = -L + p dx/2, p < 2N, by zero-padded FFT
CMat halfgrid_x(const PhaseFn& a) {
    const int N = a.grid.N;
    CMat c = a.v;
    for (int j = 0; j < N; ++j) fft(c.col(j).data(), N, -1);
    CMat pad = CMat::Zero(2 * N, N);
    pad.topRows(N / 2) = c.topRows(N / 2);
    pad.bottomRows(N / 2 - 1) = c.bottomRows(N / 2 - 1);
    pad.row(N / 2) = c.row(N / 2) / 2.0;
    pad.row(2 * N - N / 2) = c.row(N / 2) / 2.0;
    for (int j = 0; j < N; ++j) fft(pad.col(j).data(), 2 * N, +1);
    return pad / double(N);
}

}  // namespace

OperatorMatrix A_op(const PhaseFn& a) {
    require_lattice(a, Lattice::symplectic, "A_op");
    const GridSpec& g = a.grid;
    const int N = g.N;
    const CMat az = halfgrid_x(a);
    CMat E(N, 2 * N);
    for (int m = 0; m < N; ++m)
        for (int q = 0; q < 2 * N; ++q)
            E(m, q) = std::polar(1.0, -g.xi(m) * (-2 * g.L + q * g.dx()));
    const CMat b = (az * E) * (std::pow(2 * kPi, -0.5) * g.h());
    OperatorMatrix U(g, CMat(N, N));
    for (int i = 0; i < N; ++i)
        for (int l = 0; l < N; ++l) U.m(i, l) = b(l - i + N, i + l);
    return U;
}

PhaseFn A_inv(const OperatorMatrix& U) {
    const GridSpec& g = U.grid;
    const int N = g.N;
    PhaseFn out(g);
    const double c = std::pow(2 * kPi, -0.5) * 2 * g.dx();
    parallel_for(N, [&](int k) {
        for (int j = 0; j < N; ++j) {
            cplx s = 0;
            for (int i = 0; i < N; ++i) {
                const int l = i + 2 * k - N;
                if (l < 0 || l >= N) continue;
                s += std::polar(1.0, g.xi(j) * (g.x(i) + g.x(l))) * U.m(i, l);
            }
            out.v(k, j) = s * c;
        }
    });
    return out;
}

OperatorMatrix compose(const OperatorMatrix& S, const OperatorMatrix& T) {
    require_same_grid(S.grid, T.grid, "compose");
    return OperatorMatrix(S.grid, S.m * T.m * S.grid.dx());
}

OperatorMatrix adjoint(const OperatorMatrix& T) { return OperatorMatrix(T.grid, T.m.adjoint()); }

ConfigFn apply(const OperatorMatrix& T, const ConfigFn& f) {
    require_same_grid(T.grid, f.grid, "apply");
    return ConfigFn(f.grid, T.m * f.v * f.grid.dx());
}

OperatorMatrix rank_one(const ConfigFn& f1, const ConfigFn& f2) {
    require_same_grid(f1.grid, f2.grid, "rank_one");
    return OperatorMatrix(f1.grid, f1.v * f2.v.adjoint());
}

OperatorMatrix identity_op(const GridSpec& g) {
    return OperatorMatrix(g, CMat::Identity(g.N, g.N) / g.dx());
}

CMat stft_matrix(const ConfigFn& phi, Lattice lattice) {
    const GridSpec& g = phi.grid;
    const int N = g.N;
    CMat S(N * N, N);
    for (int k = 0; k < N; ++k) {
        ConfigFn e(g);
        e.v(k) = 1.0;
        const PhaseFn V = stft(e, phi, lattice);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) S(i * N + j, k) = V.v(i, j);
    }
    return S;
}

OperatorMatrix toeplitz(const PhaseFn& a, const ConfigFn& h1, const ConfigFn& h2,
                        ToeplitzRoute route, double t) {
    require_same_grid(a.grid, h1.grid, "toeplitz");
    require_same_grid(a.grid, h2.grid, "toeplitz");
    require_lattice(a, Lattice::symplectic, "toeplitz");
    if (h1.v.cwiseAbs().maxCoeff() == 0.0 || h2.v.cwiseAbs().maxCoeff() == 0.0)
        throw Error("toeplitz: zero window");
    const GridSpec& g = a.grid;
    const int N = g.N;
    if (route == ToeplitzRoute::direct) {
        // S2* diag(a) S1 with S the symplectic STFT matrices of the reflected
        // windows, summed over xi first: B(i, d) = sum_j a(i, j) e^{i d dx xi_j}
        const ConfigFn r1 = reflect(h1), r2 = reflect(h2);
        CMat E(N, 2 * N);
        for (int j = 0; j < N; ++j)
            for (int q = 0; q < 2 * N; ++q) E(j, q) = std::polar(1.0, (q - N) * g.dx() * g.xi(j));
        const CMat B = a.v * E;
        CMat H1(N, N), H2(N, N);
        for (int k = 0; k < N; ++k)
            for (int i = 0; i < N; ++i) {
                H1(k, i) = std::conj(r1.v(wrap(k - i + N / 2, N)));
                H2(k, i) = r2.v(wrap(k - i + N / 2, N));
            }
        const double c = g.dx() * g.h() / (2 * kPi);
        OperatorMatrix T(g, CMat(N, N));
        parallel_for(N, [&](int k) {
            for (int l = 0; l < N; ++l) {
                cplx s = 0;
                for (int i = 0; i < N; ++i) s += H2(k, i) * H1(l, i) * B(i, k - l + N);
                T.m(k, l) = s * c;
            }
        });
        return T;
    }
    PhaseFn u = reflect(wigner_t(h2, h1, t));
    u.v *= std::pow(2 * kPi, -0.5);
    return op_t(convolve(a, u, ConvMode::linear), t);
}

void write_opm(const std::string& path, const OperatorMatrix& T) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("opm: cannot open " + path + " for writing");
    nlohmann::json h = {{"N", T.grid.N}, {"d", T.grid.d}, {"L", T.grid.L}};
    os << h.dump() << "\n";
    for (int i = 0; i < T.m.rows(); ++i)
        for (int j = 0; j < T.m.cols(); ++j) {
            put_f64(os, T.m(i, j).real());
            put_f64(os, T.m(i, j).imag());
        }
    if (!os) throw Error("opm: write failed for " + path);
}

OperatorMatrix read_opm(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("opm: cannot open " + path);
    std::string line;
    if (!std::getline(is, line)) throw Error("opm: missing header");
    nlohmann::json h;
    try {
        h = nlohmann::json::parse(line);
    } catch (const std::exception& e) {
        throw Error(std::string("opm: bad header: ") + e.what());
    }
    const GridSpec g = make_grid(h.at("d").get<int>(), h.at("N").get<int>(), h.at("L").get<double>());
    OperatorMatrix T(g, CMat(g.N, g.N));
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j) {
            const double re = get_f64(is), im = get_f64(is);
            T.m(i, j) = cplx(re, im);
        }
    return T;
}

}  // namespace wcalc
