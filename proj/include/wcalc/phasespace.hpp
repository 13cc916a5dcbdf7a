#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "wcalc/core.hpp"

namespace wcalc {

// ---- grids and inner products -------------------------------------------

GridSpec make_grid(int d, int N, double L);
// square phase grid: L = sqrt(pi N / 4), so dx equals the xi spacing
GridSpec default_grid(int N);

cplx l2_inner(const ConfigFn& f, const ConfigFn& g);
double l2_norm(const ConfigFn& f);
cplx l2_inner(const PhaseFn& a, const PhaseFn& b);
double l2_norm(const PhaseFn& a);

ConfigFn gaussian(const GridSpec& g, double center = 0.0);  // pi^{-1/4} e^{-(x-c)^2/2}

// ---- Fourier transforms -------------------------------------------------

// (2 pi)^{-1/2} int f(x) e^{+i x xi} dx on the dual grid (grid.dual())
ConfigFn fourier(const ConfigFn& f);
// inverse of fourier(); input lives on g.dual(), output on g
ConfigFn fourier_inv(const ConfigFn& fhat, const GridSpec& g);

// Fourier transform in the second variable: F(x, y) -> a(x, xi)
// with a(x, xi) = (2 pi)^{-1/2} int F(x, y) e^{i y xi} dy.  Input lattice
// kernel2, output symplectic.
PhaseFn partial_fourier2(const PhaseFn& F);
PhaseFn partial_fourier2_inv(const PhaseFn& a);

double sympl_form(double x, double xi, double y, double eta);
double sympl_form(const std::vector<double>& X, const std::vector<double>& Y);

// pi^{-d} int a(Y) e^{2 i sigma(X, Y)} dY on the symplectic lattice
PhaseFn sympl_fourier(const PhaseFn& a);

// ---- weights -------------------------------------------------------------

// Parsed weight expression: product of sig(var, s) and const(c) terms.
class WeightExpr {
public:
    WeightExpr() : WeightExpr("const(1)") {}
    explicit WeightExpr(const std::string& text);

    double operator()(double x, double xi) const;
    const std::string& text() const { return text_; }
    bool is_trivial() const;
    // w(X) -> w(s X)
    WeightExpr dilated(double s) const;
    // w(X) -> 1 / w(X)
    WeightExpr inverted() const;

    struct Term {
        int var;  // 0 = x, 1 = xi, 2 = X, -1 = const
        double s;
    };
    const std::vector<Term>& terms() const { return terms_; }

private:
    std::string text_;
    std::vector<Term> terms_;
    double scale_ = 1.0;
    double dil_ = 1.0;
    bool inv_ = false;
};

struct WeightFn {
    GridSpec grid;
    Lattice lattice = Lattice::symplectic;
    RMat v;
    std::string expr;
};

WeightFn weight_eval(const std::string& expr, const GridSpec& g,
                     Lattice lattice = Lattice::symplectic);

struct ModerateResult {
    bool ok;
    double C_est;
};
// sup of w(X+Y)/(w(X) v(Y)) over pairs sampled with stride max(1, N/16)
ModerateResult check_moderate(const WeightFn& w, const WeightFn& v, double cap = 4.0);

// ---- symmetries ----------------------------------------------------------

enum class SymKind { reflect, conj, torsion, tilde, dilate };
SymKind sym_kind_from_name(const std::string& s);

PhaseFn symmetry_transform(const PhaseFn& a, SymKind kind, double t = 1.0);
PhaseFn reflect(const PhaseFn& a);
ConfigFn reflect(const ConfigFn& f);
PhaseFn dilate(const PhaseFn& a, double t);

// ---- exact exponents ------------------------------------------------------

class Rational {
public:
    Rational(std::int64_t n = 0, std::int64_t d = 1);
    std::int64_t num() const { return n_; }
    std::int64_t den() const { return d_; }
    double value() const { return double(n_) / double(d_); }
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    bool operator==(const Rational& o) const { return n_ == o.n_ && d_ == o.d_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const { return !(o < *this); }
    std::string str() const;

private:
    std::int64_t n_, d_;
};

// p in [1, inf] as an exact rational or the symbol inf
class ExtExponent {
public:
    ExtExponent() : ExtExponent(Rational(2)) {}
    explicit ExtExponent(Rational p);
    static ExtExponent inf();
    static ExtExponent parse(const std::string& s);

    bool is_inf() const { return inf_; }
    Rational value() const;  // throws for inf
    Rational recip() const;  // 1/p, 0 for inf
    ExtExponent conj() const;
    double as_double() const;
    std::string str() const;
    bool operator==(const ExtExponent& o) const {
        return inf_ == o.inf_ && (inf_ || p_ == o.p_);
    }

private:
    bool inf_ = false;
    Rational p_{2};
};

// ---- grid function files ----------------------------------------------------

using GridFunction = std::variant<ConfigFn, PhaseFn>;
void write_gfn(const std::string& path, const GridFunction& f);
GridFunction read_gfn(const std::string& path);

}  // namespace wcalc
