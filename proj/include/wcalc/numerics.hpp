#pragma once

// FFT, shifted DFT, band-limited interpolation and a deterministic
// parallel-for.  Shared by every module.

#include <functional>
#include <iosfwd>

#include "wcalc/core.hpp"

namespace wcalc {

// Unnormalized DFT in place.  sign = -1: sum x_k e^{-2 pi i jk/n}.
void fft(cplx* data, int n, int sign);
void fft(CVec& v, int sign);
// 2-d DFT over both axes of a matrix
void fft2(CMat& a, int sign);

// out_j = sum_k v_k exp(sign * i * y_k * w_j),  y_k = y0 + k dy,
// w_j = w0 + j dw, for j < nout.  Requires dy*dw = 2 pi / M for an
// integer M >= max(n, nout).
void sdft(const cplx* v, int n, double y0, double dy, double w0, double dw,
          int sign, cplx* out, int nout);

// Trigonometric interpolant of N samples at start + k*step.  The Nyquist
// mode enters as a cosine; points outside [start, start + (N - 1/2) step)
// evaluate to zero.
class TrigInterp {
public:
    TrigInterp() = default;
    TrigInterp(const cplx* samples, int n, double start, double step);
    cplx operator()(double u) const;
    // weight row: value(u) = sum_k w_k samples_k
    static void weights(int n, double start, double step, double u, cplx* w);

private:
    std::vector<cplx> c_;
    int n_ = 0;
    double start_ = 0, step_ = 1;
};

// Little-endian f64 I/O for the binary file formats.
void put_f64(std::ostream& os, double v);
double get_f64(std::istream& is);

// Number of worker threads: WCALC_THREADS if set, else hardware count.
int thread_count();

// Runs f(i) for i in [0, n).  Each index must write only its own output,
// which keeps results independent of scheduling.
void parallel_for(int n, const std::function<void(int)>& f);

}  // namespace wcalc
