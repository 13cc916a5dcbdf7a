#include "wcalc/phasespace.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "wcalc/numerics.hpp"

namespace wcalc {

GridSpec make_grid(int d, int N, double L) {
    if (d != 1) throw Error("make_grid: only d = 1 is supported");
    if (N < 8 || (N & (N - 1)) != 0) throw Error("make_grid: N must be a power of two >= 8");
    if (!(L > 0.0) || !std::isfinite(L)) throw Error("make_grid: L must be positive");
    return GridSpec{d, N, L};
}

GridSpec default_grid(int N) { return make_grid(1, N, std::sqrt(kPi * N / 4.0)); }

cplx l2_inner(const ConfigFn& f, const ConfigFn& g) {
    require_same_grid(f.grid, g.grid, "l2_inner");
    // Eigen's dot conjugates its left operand
    return g.v.dot(f.v) * f.grid.dx();
}

double l2_norm(const ConfigFn& f) { return std::sqrt(f.v.squaredNorm() * f.grid.dx()); }

cplx l2_inner(const PhaseFn& a, const PhaseFn& b) {
    require_same_grid(a.grid, b.grid, "l2_inner");
    if (a.lattice != b.lattice) throw Error("l2_inner: lattice mismatch");
    cplx s = 0;
    for (int j = 0; j < a.v.cols(); ++j)
        for (int i = 0; i < a.v.rows(); ++i) s += a.v(i, j) * std::conj(b.v(i, j));
    return s * a.cell();
}

double l2_norm(const PhaseFn& a) { return std::sqrt(a.v.squaredNorm() * a.cell()); }

ConfigFn gaussian(const GridSpec& g, double c) {
    ConfigFn f(g);
    for (int k = 0; k < g.N; ++k) {
        const double x = g.x(k) - c;
        f.v(k) = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    }
    return f;
}

// ---- Fourier ---------------------------------------------------------------

ConfigFn fourier(const ConfigFn& f) {
    const GridSpec& g = f.grid;
    ConfigFn out(g.dual());
    sdft(f.v.data(), g.N, -g.L, g.dx(), -kPi / g.dx(), g.dxi(), +1, out.v.data(), g.N);
    out.v *= std::pow(2 * kPi, -0.5) * g.dx();
    return out;
}

ConfigFn fourier_inv(const ConfigFn& fhat, const GridSpec& g) {
    require_same_grid(fhat.grid, g.dual(), "fourier_inv");
    ConfigFn out(g);
    sdft(fhat.v.data(), g.N, -kPi / g.dx(), g.dxi(), -g.L, g.dx(), -1, out.v.data(), g.N);
    out.v *= std::pow(2 * kPi, -0.5) * g.dxi();
    return out;
}

PhaseFn partial_fourier2(const PhaseFn& F) {
    require_lattice(F, Lattice::kernel2, "partial_fourier2");
    const GridSpec& g = F.grid;
    const int N = g.N;
    PhaseFn out(g, Lattice::symplectic);
    std::vector<cplx> row(N), res(N);
    for (int i = 0; i < N; ++i) {
        for (int k = 0; k < N; ++k) row[k] = F.v(i, k);
        sdft(row.data(), N, -2 * g.L, 2 * g.dx(), -g.R(), g.h(), +1, res.data(), N);
        for (int j = 0; j < N; ++j) out.v(i, j) = res[j] * std::pow(2 * kPi, -0.5) * 2.0 * g.dx();
    }
    return out;
}

PhaseFn partial_fourier2_inv(const PhaseFn& a) {
    require_lattice(a, Lattice::symplectic, "partial_fourier2_inv");
    const GridSpec& g = a.grid;
    const int N = g.N;
    PhaseFn out(g, Lattice::kernel2);
    std::vector<cplx> row(N), res(N);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) row[j] = a.v(i, j);
        sdft(row.data(), N, -g.R(), g.h(), -2 * g.L, 2 * g.dx(), -1, res.data(), N);
        for (int k = 0; k < N; ++k) out.v(i, k) = res[k] * std::pow(2 * kPi, -0.5) * g.h();
    }
    return out;
}

double sympl_form(double x, double xi, double y, double eta) { return y * xi - x * eta; }

double sympl_form(const std::vector<double>& X, const std::vector<double>& Y) {
    if (X.size() != Y.size() || X.size() % 2 != 0)
        throw Error("sympl_form: dimension mismatch");
    const std::size_t d = X.size() / 2;
    double s = 0;
    for (std::size_t k = 0; k < d; ++k) s += Y[k] * X[d + k] - X[k] * Y[d + k];
    return s;
}

PhaseFn sympl_fourier(const PhaseFn& a) {
    require_lattice(a, Lattice::symplectic, "sympl_fourier");
    const GridSpec& g = a.grid;
    const int N = g.N;
    // y -> xi along the first axis, then eta -> x along the second.  Both
    // passes are length-N DFTs (2 dx h N = 2 pi) with the offset phases
    // tabulated once.
    std::vector<cplx> pre1(N), post1(N), pre2(N), post2(N);
    for (int k = 0; k < N; ++k) {
        pre1[k] = std::polar(1.0, k * 2 * g.dx() * -g.R());
        post1[k] = std::polar(1.0, -2 * g.L * (-g.R() + k * g.h()));
        pre2[k] = std::polar(1.0, -k * 2 * g.h() * -g.L);
        post2[k] = std::polar(1.0, 2 * g.R() * (-g.L + k * g.dx()));
    }
    const double c = g.dx() * g.h() / kPi;
    CMat t(N, N);
    for (int l = 0; l < N; ++l) {
        for (int k = 0; k < N; ++k) t(k, l) = a.v(k, l) * pre1[k];
        fft(t.col(l).data(), N, +1);
        for (int j = 0; j < N; ++j) t(j, l) *= post1[j];
    }
    PhaseFn out(g);
    std::vector<cplx> buf(N);
    for (int j = 0; j < N; ++j) {
        for (int l = 0; l < N; ++l) buf[l] = t(j, l) * pre2[l];
        fft(buf.data(), N, -1);
        for (int i = 0; i < N; ++i) out.v(i, j) = buf[i] * post2[i] * c;
    }
    return out;
}

// ---- weights -----------------------------------------------------------------

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error("weight expression: " + msg + " at position " + std::to_string(pos));
    }
    void ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(const std::string& t) {
        ws();
        if (s.compare(pos, t.size(), t) == 0) {
            pos += t.size();
            return true;
        }
        return false;
    }
    void expect(const std::string& t) {
        if (!eat(t)) fail("expected '" + t + "'");
    }
    double number() {
        ws();
        const char* b = s.c_str() + pos;
        char* e = nullptr;
        double v = std::strtod(b, &e);
        if (e == b) fail("expected a number");
        pos += static_cast<std::size_t>(e - b);
        if (!std::isfinite(v)) fail("non-finite number");
        return v;
    }
};

}  // namespace

WeightExpr::WeightExpr(const std::string& text) : text_(text) {
    Parser p{text};
    for (;;) {
        p.ws();
        if (p.eat("sig(")) {
            int var;
            // order matters: "xi" before "x"
            if (p.eat("xi"))
                var = 1;
            else if (p.eat("x"))
                var = 0;
            else if (p.eat("X"))
                var = 2;
            else
                p.fail("expected x, xi or X");
            p.expect(",");
            double sv = p.number();
            p.expect(")");
            terms_.push_back({var, sv});
        } else if (p.eat("const(")) {
            double c = p.number();
            if (!(c > 0)) p.fail("const() needs a positive value");
            p.expect(")");
            terms_.push_back({-1, c});
            scale_ *= c;
        } else {
            p.fail("expected sig( or const(");
        }
        p.ws();
        if (p.pos == text.size()) break;
        p.expect("*");
    }
}

double WeightExpr::operator()(double x, double xi) const {
    x *= dil_;
    xi *= dil_;
    double w = scale_;
    for (const auto& t : terms_) {
        switch (t.var) {
        case 0: w *= std::pow(1 + x * x, 0.5 * t.s); break;
        case 1: w *= std::pow(1 + xi * xi, 0.5 * t.s); break;
        case 2: w *= std::pow(1 + x * x + xi * xi, 0.5 * t.s); break;
        default: break;
        }
    }
    return inv_ ? 1.0 / w : w;
}

bool WeightExpr::is_trivial() const {
    if (scale_ != 1.0) return false;
    for (const auto& t : terms_)
        if (t.var >= 0 && t.s != 0.0) return false;
    return true;
}

WeightExpr WeightExpr::dilated(double s) const {
    WeightExpr w = *this;
    w.dil_ *= s;
    return w;
}

WeightExpr WeightExpr::inverted() const {
    WeightExpr w = *this;
    w.inv_ = !w.inv_;
    return w;
}

WeightFn weight_eval(const std::string& expr, const GridSpec& g, Lattice lattice) {
    WeightExpr w(expr);
    WeightFn out;
    out.grid = g;
    out.lattice = lattice;
    out.expr = expr;
    out.v.resize(g.N, g.N);
    PhaseFn probe(g, lattice);
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j) out.v(i, j) = w(g.x(i), probe.second(j));
    return out;
}

ModerateResult check_moderate(const WeightFn& w, const WeightFn& v, double cap) {
    require_same_grid(w.grid, v.grid, "check_moderate");
    const int N = w.grid.N;
    const int stride = std::max(1, N / 16);
    double C = 0;
    auto clip = [N](int k) { return std::clamp(k, 0, N - 1); };
    for (int i = 0; i < N; i += stride)
        for (int j = 0; j < N; j += stride)
            for (int k = 0; k < N; k += stride)
                for (int l = 0; l < N; l += stride) {
                    const int si = clip(i + k - N / 2), sj = clip(j + l - N / 2);
                    const double r = w.v(si, sj) / (w.v(i, j) * v.v(k, l));
                    C = std::max(C, r);
                }
    return {std::isfinite(C) && C <= cap, C};
}

// ---- symmetries ----------------------------------------------------------------

SymKind sym_kind_from_name(const std::string& s) {
    if (s == "reflect") return SymKind::reflect;
    if (s == "conj") return SymKind::conj;
    if (s == "torsion") return SymKind::torsion;
    if (s == "tilde") return SymKind::tilde;
    if (s == "dilate") return SymKind::dilate;
    throw Error("unknown symmetry kind '" + s + "'");
}

PhaseFn reflect(const PhaseFn& a) {
    const int N = a.grid.N;
    PhaseFn out(a.grid, a.lattice);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) out.v(i, j) = a.v((N - i) % N, (N - j) % N);
    return out;
}

ConfigFn reflect(const ConfigFn& f) {
    const int N = f.grid.N;
    ConfigFn out(f.grid);
    for (int k = 0; k < N; ++k) out.v(k) = f.v((N - k) % N);
    return out;
}

namespace {

void second_axis(const PhaseFn& a, double& start, double& step) {
    const GridSpec& g = a.grid;
    switch (a.lattice) {
    case Lattice::symplectic: start = -g.R(); step = g.h(); break;
    case Lattice::dual: start = -kPi / g.dx(); step = g.dxi(); break;
    case Lattice::kernel: start = -g.L; step = g.dx(); break;
    case Lattice::kernel2: start = -2 * g.L; step = 2 * g.dx(); break;
    }
}

}  // namespace

PhaseFn dilate(const PhaseFn& a, double t) {
    if (t == 0.0) throw Error("dilate: t must be nonzero");
    const GridSpec& g = a.grid;
    const int N = g.N;
    double s0 = 0, ds = 1;
    second_axis(a, s0, ds);
    CMat b(N, N);
    std::vector<cplx> w(N);
    // first axis
    CMat Wx(N, N), Wy(N, N);
    for (int i = 0; i < N; ++i) {
        TrigInterp::weights(N, -g.L, g.dx(), t * g.x(i), w.data());
        for (int k = 0; k < N; ++k) Wx(i, k) = w[k];
        TrigInterp::weights(N, s0, ds, t * (s0 + i * ds), w.data());
        for (int k = 0; k < N; ++k) Wy(i, k) = w[k];
    }
    PhaseFn out(g, a.lattice);
    out.v = Wx * a.v * Wy.transpose();
    return out;
}

PhaseFn symmetry_transform(const PhaseFn& a, SymKind kind, double t) {
    const int N = a.grid.N;
    switch (kind) {
    case SymKind::reflect: return reflect(a);
    case SymKind::conj: {
        PhaseFn out = a;
        out.v = a.v.conjugate();
        return out;
    }
    case SymKind::torsion: {
        PhaseFn out(a.grid, a.lattice);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) out.v(i, j) = std::conj(a.v(i, (N - j) % N));
        return out;
    }
    case SymKind::tilde: {
        PhaseFn out = reflect(a);
        out.v = out.v.conjugate().eval();
        return out;
    }
    case SymKind::dilate: return dilate(a, t);
    }
    throw Error("symmetry_transform: bad kind");
}

// ---- rationals and exponents -------------------------------------------------

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw Error("Rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const std::int64_t gg = std::gcd(n < 0 ? -n : n, d);
    n_ = gg ? n / gg : n;
    d_ = gg ? d / gg : d;
}

namespace {

Rational make_rat(__int128 n, __int128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) {
        __int128 r = a % b;
        a = b;
        b = r;
    }
    if (a == 0) a = 1;
    n /= a;
    d /= a;
    const __int128 lim = (__int128)INT64_MAX;
    if (n > lim || -n > lim || d > lim) throw Error("Rational: overflow");
    return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}

}  // namespace

Rational Rational::operator+(const Rational& o) const {
    return make_rat((__int128)n_ * o.d_ + (__int128)o.n_ * d_, (__int128)d_ * o.d_);
}
Rational Rational::operator-(const Rational& o) const {
    return make_rat((__int128)n_ * o.d_ - (__int128)o.n_ * d_, (__int128)d_ * o.d_);
}
Rational Rational::operator*(const Rational& o) const {
    return make_rat((__int128)n_ * o.n_, (__int128)d_ * o.d_);
}
Rational Rational::operator/(const Rational& o) const {
    if (o.n_ == 0) throw Error("Rational: division by zero");
    return make_rat((__int128)n_ * o.d_, (__int128)d_ * o.n_);
}
bool Rational::operator<(const Rational& o) const {
    return (__int128)n_ * o.d_ < (__int128)o.n_ * d_;
}
std::string Rational::str() const {
    return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
}

ExtExponent::ExtExponent(Rational p) : inf_(false), p_(p) {
    if (p < Rational(1)) throw Error("exponent must be >= 1, got " + p.str());
}

ExtExponent ExtExponent::inf() {
    ExtExponent e;
    e.inf_ = true;
    return e;
}

ExtExponent ExtExponent::parse(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "inf" || s == "Inf" || s == "INF" || s == "∞") return inf();
    auto parse_dec = [&](const std::string& t) -> Rational {
        // exact decimal: digits[.digits]
        std::size_t dot = t.find('.');
        std::string ip = t.substr(0, dot), fp = dot == std::string::npos ? "" : t.substr(dot + 1);
        if (ip.empty() && fp.empty()) throw Error("bad exponent '" + raw + "'");
        for (char c : ip + fp)
            if (!std::isdigit(static_cast<unsigned char>(c))) throw Error("bad exponent '" + raw + "'");
        if (fp.size() > 15) throw Error("exponent has too many decimals");
        std::int64_t den = 1;
        for (std::size_t k = 0; k < fp.size(); ++k) den *= 10;
        std::int64_t num = std::stoll((ip.empty() ? "0" : ip) + fp);
        return Rational(num, den);
    };
    std::size_t slash = s.find('/');
    Rational r = slash == std::string::npos
                     ? parse_dec(s)
                     : parse_dec(s.substr(0, slash)) / parse_dec(s.substr(slash + 1));
    return ExtExponent(r);
}

Rational ExtExponent::value() const {
    if (inf_) throw Error("ExtExponent: value of inf");
    return p_;
}

Rational ExtExponent::recip() const { return inf_ ? Rational(0) : Rational(1) / p_; }

ExtExponent ExtExponent::conj() const {
    if (inf_) return ExtExponent(Rational(1));
    if (p_ == Rational(1)) return inf();
    // p' = p / (p - 1)
    return ExtExponent(p_ / (p_ - Rational(1)));
}

double ExtExponent::as_double() const { return inf_ ? INFINITY : p_.value(); }

std::string ExtExponent::str() const { return inf_ ? "inf" : p_.str(); }

// ---- gfn files -------------------------------------------------------------

void write_gfn(const std::string& path, const GridFunction& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("gfn: cannot open " + path + " for writing");
    nlohmann::json h;
    if (std::holds_alternative<ConfigFn>(f)) {
        const auto& c = std::get<ConfigFn>(f);
        h = {{"kind", "config"}, {"d", c.grid.d}, {"N", c.grid.N}, {"L", c.grid.L},
             {"count", c.grid.N}};
        os << h.dump() << "\n";
        for (int k = 0; k < c.size(); ++k) {
            put_f64(os, c.v(k).real());
            put_f64(os, c.v(k).imag());
        }
    } else {
        const auto& a = std::get<PhaseFn>(f);
        const int N = a.grid.N;
        h = {{"kind", "phase"}, {"d", a.grid.d}, {"N", N}, {"L", a.grid.L}, {"count", N * N}};
        if (a.lattice != Lattice::symplectic) h["lattice"] = lattice_name(a.lattice);
        os << h.dump() << "\n";
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                put_f64(os, a.v(i, j).real());
                put_f64(os, a.v(i, j).imag());
            }
    }
    if (!os) throw Error("gfn: write failed for " + path);
}

GridFunction read_gfn(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("gfn: cannot open " + path);
    std::string line;
    if (!std::getline(is, line)) throw Error("gfn: missing header");
    nlohmann::json h;
    try {
        h = nlohmann::json::parse(line);
    } catch (const std::exception& e) {
        throw Error(std::string("gfn: bad header: ") + e.what());
    }
    const std::string kind = h.at("kind").get<std::string>();
    GridSpec g = make_grid(h.at("d").get<int>(), h.at("N").get<int>(), h.at("L").get<double>());
    const long count = h.at("count").get<long>();
    if (kind == "config") {
        if (count != g.N) throw Error("gfn: count does not match N");
        ConfigFn f(g);
        for (int k = 0; k < g.N; ++k) {
            double re = get_f64(is), im = get_f64(is);
            f.v(k) = cplx(re, im);
        }
        return f;
    }
    if (kind == "phase") {
        if (count != long(g.N) * g.N) throw Error("gfn: count does not match N^2");
        Lattice lat = h.contains("lattice") ? lattice_from_name(h["lattice"].get<std::string>())
                                            : Lattice::symplectic;
        PhaseFn a(g, lat);
        for (int i = 0; i < g.N; ++i)
            for (int j = 0; j < g.N; ++j) {
                double re = get_f64(is), im = get_f64(is);
                a.v(i, j) = cplx(re, im);
            }
        return a;
    }
    throw Error("gfn: unknown kind '" + kind + "'");
}

}  // namespace wcalc
