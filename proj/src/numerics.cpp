#include "wcalc/numerics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <thread>

namespace wcalc {

const char* lattice_name(Lattice l) {
    switch (l) {
    case Lattice::symplectic: return "symplectic";
    case Lattice::dual: return "dual";
    case Lattice::kernel: return "kernel";
    case Lattice::kernel2: return "kernel2";
    }
    return "?";
}

Lattice lattice_from_name(const std::string& s) {
    if (s == "symplectic") return Lattice::symplectic;
    if (s == "dual") return Lattice::dual;
    if (s == "kernel") return Lattice::kernel;
    if (s == "kernel2") return Lattice::kernel2;
    throw Error("unknown lattice '" + s + "'");
}

double PhaseFn::cell() const {
    switch (lattice) {
    case Lattice::symplectic: return grid.dx() * grid.h();
    case Lattice::dual: return grid.dx() * grid.dxi();
    case Lattice::kernel: return grid.dx() * grid.dx();
    case Lattice::kernel2: return grid.dx() * 2.0 * grid.dx();
    }
    return 0;
}

double PhaseFn::second(int j) const {
    switch (lattice) {
    case Lattice::symplectic: return grid.xi(j);
    case Lattice::dual: return grid.xd(j);
    case Lattice::kernel: return grid.x(j);
    case Lattice::kernel2: return -2.0 * grid.L + 2.0 * j * grid.dx();
    }
    return 0;
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
    if (a != b) throw Error(std::string(what) + ": grid mismatch");
}

void require_lattice(const PhaseFn& a, Lattice l, const char* what) {
    if (a.lattice != l)
        throw Error(std::string(what) + ": expected " + lattice_name(l) +
                    " lattice, got " + lattice_name(a.lattice));
}

double rel_err(const CMat& a, const CMat& b) {
    const double den = b.cwiseAbs().maxCoeff();
    const double num = (a - b).cwiseAbs().maxCoeff();
    return num / std::max(den, 1e-300);
}

double rel_err(const CVec& a, const CVec& b) {
    const double den = b.cwiseAbs().maxCoeff();
    const double num = (a - b).cwiseAbs().maxCoeff();
    return num / std::max(den, 1e-300);
}

namespace {

struct Plan {
    fftw_plan p;
    int n;
};

std::mutex plan_mu;
std::map<std::pair<int, int>, Plan> plans;

// scratch buffers come from fftw_malloc so the alignment seen by a plan
// never changes between calls
struct Scratch {
    fftw_complex* buf = nullptr;
    int cap = 0;
    ~Scratch() {
        if (buf) fftw_free(buf);
    }
    fftw_complex* get(int n) {
        if (n > cap) {
            if (buf) fftw_free(buf);
            buf = fftw_alloc_complex(n);
            cap = n;
        }
        return buf;
    }
};

thread_local Scratch scratch;

fftw_plan get_plan(int n, int sign) {
    std::lock_guard<std::mutex> lk(plan_mu);
    auto key = std::make_pair(n, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second.p;
    fftw_complex* tmp = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(n, tmp, tmp, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                   FFTW_ESTIMATE);
    fftw_free(tmp);
    plans[key] = Plan{p, n};
    return p;
}

}  // namespace

void fft(cplx* data, int n, int sign) {
    fftw_plan p = get_plan(n, sign);
    fftw_complex* buf = scratch.get(n);
    std::copy(data, data + n, reinterpret_cast<cplx*>(buf));
    fftw_execute_dft(p, buf, buf);
    std::copy(reinterpret_cast<cplx*>(buf), reinterpret_cast<cplx*>(buf) + n, data);
}

void fft(CVec& v, int sign) { fft(v.data(), static_cast<int>(v.size()), sign); }

void fft2(CMat& a, int sign) {
    const int r = static_cast<int>(a.rows()), c = static_cast<int>(a.cols());
    std::vector<cplx> tmp(std::max(r, c));
    for (int j = 0; j < c; ++j) fft(a.col(j).data(), r, sign);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < c; ++j) tmp[j] = a(i, j);
        fft(tmp.data(), c, sign);
        for (int j = 0; j < c; ++j) a(i, j) = tmp[j];
    }
}

void sdft(const cplx* v, int n, double y0, double dy, double w0, double dw, int sign,
          cplx* out, int nout) {
    const double Mf = 2.0 * kPi / (dy * dw);
    const int M = static_cast<int>(std::lround(Mf));
    if (std::abs(Mf - M) > 1e-6 * Mf || M < n || M < nout)
        throw Error("sdft: lattice spacings are not DFT-compatible");
    std::vector<cplx> pad(M, cplx(0.0));
    for (int k = 0; k < n; ++k) pad[k] = v[k] * std::polar(1.0, sign * k * dy * w0);
    fft(pad.data(), M, sign < 0 ? -1 : +1);
    for (int j = 0; j < nout; ++j) out[j] = pad[j] * std::polar(1.0, sign * y0 * (w0 + j * dw));
}

TrigInterp::TrigInterp(const cplx* samples, int n, double start, double step)
    : c_(samples, samples + n), n_(n), start_(start), step_(step) {
    fft(c_.data(), n, -1);
    for (auto& z : c_) z /= double(n);
}

void TrigInterp::weights(int n, double start, double step, double u, cplx* w) {
    // value = sum_k w_k s_k with w_k = (1/n) sum_m e^{2 pi i m (u - u_k)/P}
    const double P = n * step;
    const double rel = u - start;
    if (rel < -1e-12 * P || rel >= P - 0.5 * step + 1e-12 * P) {
        std::fill(w, w + n, cplx(0.0));
        return;
    }
    const int ny = n / 2;
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * kPi * (rel - k * step) / P;
        // sum over m = -ny+1 .. ny-1 of e^{i m th} plus cos(ny th)
        // Dirichlet kernel form
        double s;
        const double sh = std::sin(0.5 * th);
        if (std::abs(sh) < 1e-14)
            s = 2.0 * ny - 1.0;
        else
            s = std::sin((ny - 0.5) * th) / sh;
        s += std::cos(ny * th);
        w[k] = s / n;
    }
}

cplx TrigInterp::operator()(double u) const {
    const double P = n_ * step_;
    const double rel = u - start_;
    if (rel < -1e-12 * P || rel >= P - 0.5 * step_ + 1e-12 * P) return 0.0;
    const int ny = n_ / 2;
    const double th = 2.0 * kPi * rel / P;
    // sum_{m=-ny+1}^{ny-1} c_m e^{i m th} + c_ny cos(ny th)
    const cplx e1 = std::polar(1.0, th);
    cplx acc = c_[0];
    cplx ep = e1, em = std::conj(e1);
    for (int m = 1; m < ny; ++m) {
        acc += c_[m] * ep + c_[n_ - m] * em;
        ep *= e1;
        em *= std::conj(e1);
        if ((m & 31) == 0) {  // renormalize against drift
            ep = std::polar(1.0, (m + 1) * th);
            em = std::conj(ep);
        }
    }
    acc += c_[ny] * std::cos(ny * th);
    return acc;
}

void put_f64(std::ostream& os, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap64(u);
    os.write(reinterpret_cast<const char*>(&u), 8);
}

double get_f64(std::istream& is) {
    std::uint64_t u;
    if (!is.read(reinterpret_cast<char*>(&u), 8)) throw Error("truncated binary data");
    if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap64(u);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}

int thread_count() {
    if (const char* s = std::getenv("WCALC_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end != s && v > 0) return static_cast<int>(v);
    }
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : static_cast<int>(h);
}

void parallel_for(int n, const std::function<void(int)>& f) {
    const int nt = std::min(thread_count(), n);
    if (nt <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= n) break;
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace wcalc
