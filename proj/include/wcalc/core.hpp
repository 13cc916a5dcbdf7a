#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace wcalc {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Uniform grid on [-L, L) with N points per axis.
//
// Configuration points are x_k = -L + k dx.  Phase-space functions sample
// the frequency variable on one of two lattices (see Lattice).
struct GridSpec {
    int d = 1;
    int N = 64;
    double L = 6.0;

    double dx() const { return 2.0 * L / N; }
    double dxi() const { return kPi / L; }
    // spacing of the symplectic xi lattice; dx * h = pi / N
    double h() const { return kPi / (2.0 * L); }
    double R() const { return kPi * N / (4.0 * L); }

    double x(int k) const { return -L + k * dx(); }
    double xi(int j) const { return -R() + j * h(); }
    double xd(int j) const { return -kPi / dx() + j * dxi(); }

    // grid carrying the Fourier transform of a function on this grid
    GridSpec dual() const { return GridSpec{d, N, kPi * N / (2.0 * L)}; }

    bool operator==(const GridSpec& o) const {
        return d == o.d && N == o.N && L == o.L;
    }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

// Frequency lattice of a PhaseFn.
//   symplectic: xi_j = -R + j h, h = pi/(2L).  Closed under F_sigma.
//   dual:       xi_j = -pi/dx + j pi/L.  Exact discrete Moyal for STFTs.
//   kernel:     second axis is a configuration variable y_k = x_k.
//   kernel2:    second axis y_k = -2L + 2k dx (partial Fourier image).
enum class Lattice { symplectic, dual, kernel, kernel2 };

const char* lattice_name(Lattice l);
Lattice lattice_from_name(const std::string& s);

struct ConfigFn {
    GridSpec grid;
    CVec v;

    ConfigFn() = default;
    ConfigFn(const GridSpec& g) : grid(g), v(CVec::Zero(g.N)) {}
    ConfigFn(const GridSpec& g, CVec vals) : grid(g), v(std::move(vals)) {}
    int size() const { return static_cast<int>(v.size()); }
};

// values(i, j): i indexes x, j indexes the second axis
struct PhaseFn {
    GridSpec grid;
    Lattice lattice = Lattice::symplectic;
    CMat v;

    PhaseFn() = default;
    explicit PhaseFn(const GridSpec& g, Lattice l = Lattice::symplectic)
        : grid(g), lattice(l), v(CMat::Zero(g.N, g.N)) {}
    PhaseFn(const GridSpec& g, CMat vals, Lattice l = Lattice::symplectic)
        : grid(g), lattice(l), v(std::move(vals)) {}

    double cell() const;
    double second(int j) const;
};

// Function of (X, Y) on the symplectic lattice, X = (x, xi), Y = (y, eta).
// Flat index ((i*N + j)*N + k)*N + l.
struct Phase4Fn {
    GridSpec grid;
    std::vector<cplx> v;

    std::size_t index(int i, int j, int k, int l) const {
        const std::size_t N = grid.N;
        return ((i * N + j) * N + k) * N + l;
    }
    cplx& at(int i, int j, int k, int l) { return v[index(i, j, k, l)]; }
    cplx at(int i, int j, int k, int l) const { return v[index(i, j, k, l)]; }
};

// Dense operator on sampled configuration functions:
// (T f)(x_i) = sum_j m(i, j) f(x_j) dx.
struct OperatorMatrix {
    GridSpec grid;
    CMat m;

    OperatorMatrix() = default;
    OperatorMatrix(const GridSpec& g, CMat mm) : grid(g), m(std::move(mm)) {}
};

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);
void require_lattice(const PhaseFn& a, Lattice l, const char* what);

// max |a - b| / max |b|
double rel_err(const CMat& a, const CMat& b);
double rel_err(const CVec& a, const CVec& b);

inline int wrap(int k, int N) {
    k %= N;
    return k < 0 ? k + N : k;
}

}  // namespace wcalc
