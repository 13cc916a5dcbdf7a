#include "wcalc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "wcalc/numerics.hpp"
#include "wcalc/products.hpp"

namespace wcalc {

using json = nlohmann::json;

// ---- configuration -----------------------------------------------------------

namespace {

int positive_int(const json& j, const char* key) {
    if (!j.is_number_integer() || j.get<long long>() <= 0)
        throw Error(std::string("config: ") + key + " must be a positive integer");
    return j.get<int>();
}

double nonneg_number(const json& j, const std::string& key) {
    if (!j.is_number()) throw Error("config: " + key + " must be a number");
    const double v = j.get<double>();
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error("config: " + key + " must be >= 0");
    return v;
}

}  // namespace

SuiteConfig SuiteConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw Error("config: top level must be an object");
    SuiteConfig c;
    for (const auto& [key, val] : j.items()) {
        if (key == "N") c.N = positive_int(val, "N");
        else if (key == "coarse_N") c.coarse_N = positive_int(val, "coarse_N");
        else if (key == "fine_N") c.fine_N = positive_int(val, "fine_N");
        else if (key == "positivity_N") c.positivity_N = positive_int(val, "positivity_N");
        else if (key == "stability_N") c.stability_N = positive_int(val, "stability_N");
        else if (key == "count") c.count = positive_int(val, "count");
        else if (key == "heavy_count") c.heavy_count = positive_int(val, "heavy_count");
        else if (key == "dilation_count") c.dilation_count = positive_int(val, "dilation_count");
        else if (key == "modulation_count") c.modulation_count = positive_int(val, "modulation_count");
        else if (key == "L") {
            if (!val.is_null()) c.L = nonneg_number(val, "L");
        } else if (key == "seed") {
            if (!val.is_number_unsigned() && !(val.is_number_integer() && val.get<long long>() >= 0))
                throw Error("config: seed must be an unsigned 64-bit integer");
            c.seed = val.get<std::uint64_t>();
        } else if (key == "timing") {
            if (!val.is_boolean()) throw Error("config: timing must be a boolean");
            c.timing = val.get<bool>();
        } else if (key == "tolerance") {
            if (!val.is_null()) c.tolerance = nonneg_number(val, "tolerance");
        } else if (key == "tolerances") {
            if (!val.is_object()) throw Error("config: tolerances must be an object");
            for (const auto& [k, v] : val.items()) c.tolerances[k] = nonneg_number(v, k);
        } else if (key == "checks") {
            if (!val.is_array()) throw Error("config: checks must be an array");
            for (const auto& v : val) {
                if (!v.is_string()) throw Error("config: check names must be strings");
                c.checks.push_back(v.get<std::string>());
            }
        } else if (key == "weights") {
            if (!val.is_object()) throw Error("config: weights must be an object");
            for (const auto& [k, v] : val.items()) {
                if (!v.is_string()) throw Error("config: weight " + k + " must be a string");
                WeightExpr test(v.get<std::string>());  // validates the expression
                c.weights[k] = v.get<std::string>();
            }
        } else {
            throw Error("config: unknown field " + key);
        }
    }
    return c;
}

SuiteConfig SuiteConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string SuiteConfig::to_json_text() const {
    json j;
    j["N"] = N;
    j["L"] = L;
    j["coarse_N"] = coarse_N;
    j["fine_N"] = fine_N;
    j["positivity_N"] = positivity_N;
    j["stability_N"] = stability_N;
    j["seed"] = seed;
    j["count"] = count;
    j["heavy_count"] = heavy_count;
    j["dilation_count"] = dilation_count;
    j["modulation_count"] = modulation_count;
    j["timing"] = timing;
    if (tolerance >= 0) j["tolerance"] = tolerance;
    j["tolerances"] = tolerances;
    j["checks"] = checks;
    j["weights"] = weights;
    return j.dump(2);
}

GridSpec SuiteConfig::grid(int n) const {
    if (n == N && L > 0) return make_grid(1, n, L);
    return default_grid(n);
}

double SuiteConfig::tol(const std::string& check, double def) const {
    if (tolerance >= 0) return tolerance;
    const auto it = tolerances.find(check);
    return it == tolerances.end() ? def : it->second;
}

bool SuiteConfig::selected(const std::string& check) const {
    return checks.empty() || std::find(checks.begin(), checks.end(), check) != checks.end();
}

std::string SuiteConfig::weight(const std::string& key, const std::string& def) const {
    const auto it = weights.find(key);
    return it == weights.end() ? def : it->second;
}

// ---- results -------------------------------------------------------------------

void CheckResult::finish() {
    // a zero tolerance cannot be met, so it fails every check
    if (status == "pending")
        status = tolerance > 0 && std::isfinite(value) && value <= tolerance ? "pass" : "fail";
}

std::string report_json(const std::vector<CheckResult>& results, bool timing) {
    json arr = json::array();
    for (const auto& r : results) {
        json j;
        j["name"] = r.name;
        j["anchor"] = r.anchor;
        j["status"] = r.status;
        j["metric"] = r.metric;
        j["value"] = std::isfinite(r.value) ? json(r.value) : json(r.value > 0 ? "inf" : "nan");
        j["tolerance"] = r.tolerance;
        j["trials"] = r.trials;
        j["seed"] = r.seed;
        if (timing) j["wall_time"] = r.wall_time;
        json d = json::object();
        for (const auto& [k, v] : r.details)
            d[k] = std::isfinite(v) ? json(v) : json(v > 0 ? "inf" : "nan");
        j["details"] = d;
        if (!r.note.empty()) j["note"] = r.note;
        arr.push_back(j);
    }
    return arr.dump(2);
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::none_of(results.begin(), results.end(),
                        [](const CheckResult& r) { return r.status == "fail"; });
}

int emit_report(const std::vector<CheckResult>& results, const std::string& path, bool timing) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("emit_report: cannot open " + path);
    out << report_json(results, timing) << "\n";
    if (!out) throw Error("emit_report: write failed for " + path);
    return all_passed(results) ? 0 : 1;
}

// ---- random ensembles ----------------------------------------------------------------

namespace {

class Draw {
public:
    Draw(std::uint64_t seed, int slot) {
        std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(slot)};
        rng_.seed(sq);
    }
    // uniform on [lo, hi), independent of the standard library's distributions
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
    cplx coeff() { return {uniform(-1, 1), uniform(-1, 1)}; }

private:
    std::mt19937_64 rng_;
};

constexpr int kModes = 2;         // trigonometric degree per axis
constexpr double kBaseFreq = 0.5; // absolute frequency step, grid independent

template <class F>
void normalize(F& f) {
    const double n = l2_norm(f);
    if (n > 0) f.v /= n;
}

}  // namespace

ConfigFn gauss_mod(std::uint64_t seed, int slot, const GridSpec& g) {
    Draw d(seed, slot);
    const double c = d.uniform(-0.5, 0.5);
    cplx coef[2 * kModes + 1];
    for (auto& z : coef) z = d.coeff();
    ConfigFn f(g);
    for (int i = 0; i < g.N; ++i) {
        const double x = g.x(i);
        cplx t = 0;
        for (int k = -kModes; k <= kModes; ++k)
            t += coef[k + kModes] * std::polar(1.0, kBaseFreq * k * x);
        f.v(i) = std::exp(-0.5 * (x - c) * (x - c)) * t;
    }
    normalize(f);
    return f;
}

PhaseFn gauss_mod_phase(std::uint64_t seed, int slot, const GridSpec& g) {
    Draw d(seed, slot);
    const double cx = d.uniform(-0.5, 0.5), cxi = d.uniform(-0.5, 0.5);
    constexpr int K = 1;
    cplx coef[2 * K + 1][2 * K + 1];
    for (auto& row : coef)
        for (auto& z : row) z = d.coeff();
    PhaseFn a(g);
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j) {
            const double x = g.x(i), xi = g.xi(j);
            cplx t = 0;
            for (int m = -K; m <= K; ++m)
                for (int n = -K; n <= K; ++n)
                    t += coef[m + K][n + K] * std::polar(1.0, kBaseFreq * (m * x + n * xi));
            a.v(i, j) = std::exp(-0.5 * ((x - cx) * (x - cx) + (xi - cxi) * (xi - cxi))) * t;
        }
    normalize(a);
    return a;
}

PhaseFn rank_one_symbol(std::uint64_t seed, int slot, const GridSpec& g) {
    PhaseFn w = wigner_t(gauss_mod(seed, 2 * slot, g), gauss_mod(seed, 2 * slot + 1, g), 0.5);
    normalize(w);
    return w;
}

namespace {
constexpr int kPosTerms = 3;
}

PhaseFn sigma_pos_symbol(std::uint64_t seed, int slot, const GridSpec& g) {
    Draw d(seed, 1000 + slot);
    CMat U = CMat::Zero(g.N, g.N);
    for (int k = 0; k < kPosTerms; ++k) {
        const ConfigFn f = gauss_mod(seed, kPosTerms * slot + k + 2000, g);
        U += d.uniform(0.5, 1.5) * f.v * f.v.adjoint();
    }
    PhaseFn a = A_inv(OperatorMatrix(g, U));
    normalize(a);
    return a;
}

PhaseFn weyl_pos_symbol(std::uint64_t seed, int slot, const GridSpec& g) {
    Draw d(seed, 3000 + slot);
    PhaseFn a(g);
    for (int k = 0; k < kPosTerms; ++k) {
        const ConfigFn f = gauss_mod(seed, kPosTerms * slot + k + 4000, g);
        a.v += d.uniform(0.5, 1.5) * wigner_t(f, f, 0.5).v;
    }
    normalize(a);
    return a;
}

std::vector<GridFunction> random_ensemble(std::uint64_t seed, const std::string& kind, int count,
                                          const GridSpec& g) {
    using Gen = GridFunction (*)(std::uint64_t, const GridSpec&);
    Gen gen = nullptr;
    if (kind == "gauss_mod")
        gen = [](std::uint64_t s, const GridSpec& gg) -> GridFunction { return gauss_mod(s, 0, gg); };
    else if (kind == "gauss_mod_phase")
        gen = [](std::uint64_t s, const GridSpec& gg) -> GridFunction {
            return gauss_mod_phase(s, 0, gg);
        };
    else if (kind == "rank_one")
        gen = [](std::uint64_t s, const GridSpec& gg) -> GridFunction {
            return rank_one_symbol(s, 0, gg);
        };
    else if (kind == "sigma_pos")
        gen = [](std::uint64_t s, const GridSpec& gg) -> GridFunction {
            return sigma_pos_symbol(s, 0, gg);
        };
    else if (kind == "weyl_pos")
        gen = [](std::uint64_t s, const GridSpec& gg) -> GridFunction {
            return weyl_pos_symbol(s, 0, gg);
        };
    else
        throw Error("random_ensemble: unknown kind " + kind);
    if (count < 0) throw Error("random_ensemble: negative count");
    std::vector<GridFunction> out(count);
    parallel_for(count, [&](int k) { out[k] = gen(seed + static_cast<std::uint64_t>(k), g); });
    return out;
}

// ---- exponent admissibility ---------------------------------------------------

namespace {

// 1/p1 + 1/p2 - 1/p0
Rational combo(const ExtExponent& p0, const ExtExponent& p1, const ExtExponent& p2) {
    return p1.recip() + p2.recip() - p0.recip();
}

bool within(const Rational& lo, const Rational& v, const Rational& hi) {
    return lo <= v && v <= hi;
}

bool pq_bounds(const Rational& lo, const Rational& hi, const ExtExponent* p,
               const ExtExponent* q) {
    if (!(Rational(0) <= lo)) return false;
    for (int j = 0; j < 3; ++j)
        if (!within(lo, p[j].recip(), hi) || !within(lo, q[j].recip(), hi)) return false;
    return true;
}

Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }

// max(1/p, 1/p')
Rational conj_bound(const ExtExponent& p) { return rmax(p.recip(), p.conj().recip()); }

// p1 <= p  <=>  1/p1 >= 1/p
bool exp_le(const ExtExponent& a, const ExtExponent& b) { return b.recip() <= a.recip(); }

}  // namespace

bool check_exponents_weyl(const ExtExponent& p0, const ExtExponent& p1, const ExtExponent& p2,
                          const ExtExponent& q0, const ExtExponent& q1, const ExtExponent& q2) {
    const Rational P = combo(p0, p1, p2), Q = combo(q0, q1, q2);
    if (P != Rational(1) - Q) return false;
    const ExtExponent p[3] = {p0, p1, p2}, q[3] = {q0, q1, q2};
    return pq_bounds(P, Q, p, q);
}

bool check_exponents_twist(const ExtExponent& p0, const ExtExponent& p1, const ExtExponent& p2,
                           const ExtExponent& q0, const ExtExponent& q1, const ExtExponent& q2) {
    const Rational P = combo(p0, p1, p2), Q = combo(q0, q1, q2);
    if (P != Rational(1) - Q) return false;
    const ExtExponent p[3] = {p0, p1, p2}, q[3] = {q0, q1, q2};
    return pq_bounds(Q, P, p, q);
}

bool check_exponents_young(const std::vector<ExtExponent>& p, const ExtExponent& r) {
    if (p.empty()) throw Error("check_exponents_young: no exponents");
    Rational s(0);
    for (const auto& e : p) s = s + e.recip();
    return s == Rational(static_cast<std::int64_t>(p.size()) - 1) + r.recip();
}

bool check_exponents_twist_lebesgue(const ExtExponent& p1, const ExtExponent& p2,
                                    const ExtExponent& p) {
    if (!exp_le(p1, p) || !exp_le(p2, p)) return false;
    const Rational m = p1.recip() + p2.recip() - p.recip();
    return within(conj_bound(p), m, Rational(1));
}

bool check_exponents_twist_mixed(const ExtExponent& p1, const ExtExponent& q1,
                                 const ExtExponent& p2, const ExtExponent& q2,
                                 const ExtExponent& p, const ExtExponent& q) {
    if (!exp_le(p1, p) || !exp_le(p2, p) || !exp_le(q1, q) || !exp_le(q2, q)) return false;
    const Rational lo = rmax(conj_bound(p), conj_bound(q));
    const Rational mp = p1.recip() + p2.recip() - p.recip();
    const Rational mq = q1.recip() + q2.recip() - q.recip();
    return within(lo, mp, Rational(1)) && within(lo, mq, Rational(1));
}

bool check_exponents_twist_corollary(const ExtExponent& p, const ExtExponent& q) {
    return exp_le(q, p) && exp_le(q, p.conj());
}

// ---- weight conditions --------------------------------------------------------------

WeightCondKind weight_cond_kind(const std::string& name) {
    if (name == "weyl4") return WeightCondKind::weyl4;
    if (name == "twist4") return WeightCondKind::twist4;
    if (name == "submult") return WeightCondKind::submult;
    if (name == "dilated") return WeightCondKind::dilated;
    if (name == "dilated_weyl") return WeightCondKind::dilated_weyl;
    throw Error("unknown weight condition " + name);
}

namespace {

struct P2 {
    double x, xi;
};
P2 operator+(P2 a, P2 b) { return {a.x + b.x, a.xi + b.xi}; }
P2 operator-(P2 a, P2 b) { return {a.x - b.x, a.xi - b.xi}; }
P2 operator*(double t, P2 a) { return {t * a.x, t * a.xi}; }

std::vector<P2> sample_points(const GridSpec& g, int per_axis) {
    const int m = std::max(2, std::min(per_axis, g.N));
    std::vector<P2> pts;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            const int i = (a * (g.N - 1)) / (m - 1), j = (b * (g.N - 1)) / (m - 1);
            pts.push_back({g.x(i), g.xi(j)});
        }
    return pts;
}

double ev(const WeightExpr& w, P2 X) { return w(X.x, X.xi); }

void need(const WeightCondition& c, std::size_t n) {
    if (c.weights.size() != n)
        throw Error("check_weight_condition: expected " + std::to_string(n) + " weights");
}

}  // namespace

WeightCondResult check_weight_condition(const WeightCondition& c, const GridSpec& g, double cap,
                                        int samples) {
    double sup = 0;
    auto upd = [&](double lhs, double rhs) { sup = std::max(sup, lhs / rhs); };
    switch (c.kind) {
    case WeightCondKind::submult: {
        need(c, 3);
        const WeightExpr w0(c.weights[0]), w1(c.weights[1]), w2(c.weights[2]);
        const auto pts = sample_points(g, samples);
        for (const P2& a : pts)
            for (const P2& b : pts) upd(ev(w0, a + b), ev(w1, a) * ev(w2, b));
        break;
    }
    case WeightCondKind::weyl4:
    case WeightCondKind::twist4: {
        need(c, 6);
        std::vector<WeightExpr> w;
        for (const auto& s : c.weights) w.emplace_back(s);
        const auto pts = sample_points(g, std::min(samples, 8));
        const bool weyl = c.kind == WeightCondKind::weyl4;
        for (const P2& X : pts)
            for (const P2& Y : pts) {
                const double lhs = ev(w[0], X) * ev(w[1], Y);
                for (const P2& Z : pts) {
                    const double r1 = ev(w[2], X - Y + Z) * ev(w[3], Z);
                    const double r2 = weyl ? ev(w[4], X + Z) * ev(w[5], Y - Z)
                                           : ev(w[4], Y - Z) * ev(w[5], X + Z);
                    upd(lhs, r1 * r2);
                }
            }
        break;
    }
    case WeightCondKind::dilated:
    case WeightCondKind::dilated_weyl: {
        const std::size_t n = c.dilations.size();
        if (n < 2 || c.signs.size() != n)
            throw Error("check_weight_condition: need matching dilations and signs, n >= 2");
        need(c, 2 + 2 * n);
        double s = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (c.signs[k] != 0 && c.signs[k] != 1)
                throw Error("check_weight_condition: signs must be 0 or 1");
            s += (c.signs[k] ? -1.0 : 1.0) / (c.dilations[k] * c.dilations[k]);
        }
        if (std::abs(s - 1.0) > 1e-12)
            throw Error("check_weight_condition: dilations violate the sign-pattern constraint");
        const WeightExpr omega(c.weights[0]), theta(c.weights[1]);
        // factor weights after the sign mapping; reflection only off the Weyl variant
        const double refl = c.kind == WeightCondKind::dilated ? -1.0 : 1.0;
        std::vector<WeightExpr> wo, wt;
        std::vector<double> so(n);
        for (std::size_t k = 0; k < n; ++k) {
            const WeightExpr ok(c.weights[2 + 2 * k]), tk(c.weights[3 + 2 * k]);
            if (c.signs[k] == 0) {
                wo.push_back(ok);
                wt.push_back(tk);
                so[k] = 1.0;
            } else {
                wo.push_back(tk);
                wt.push_back(ok);
                so[k] = refl;
            }
        }
        const int per = n == 2 ? std::min(samples, 12) : std::min(samples, 6);
        const auto pts = sample_points(g, per);
        std::vector<std::size_t> idx(n, 0);
        while (true) {
            P2 S{0, 0};
            double ro = 1, rt = 1;
            for (std::size_t k = 0; k < n; ++k) {
                const P2 X = pts[idx[k]];
                S = S + X;
                const P2 Y = (so[k] * c.dilations[k]) * X;
                ro *= ev(wo[k], Y);
                rt *= ev(wt[k], Y);
            }
            upd(ev(omega, S), ro);
            upd(ev(theta, S), rt);
            std::size_t k = 0;
            while (k < n && ++idx[k] == pts.size()) idx[k++] = 0;
            if (k == n) break;
        }
        break;
    }
    }
    return {sup <= cap, sup};
}

// ---- inf-convolution of weights -------------------------------------------------------

namespace {

void check_infconv_args(const std::vector<WeightExpr>& f, const std::vector<double>& t) {
    if (f.empty()) throw Error("weight_infconv: no factors");
    if (f.size() != t.size()) throw Error("weight_infconv: factor and dilation counts differ");
}

RMat factor_table(const WeightExpr& w, double t, const GridSpec& g) {
    RMat v(g.N, g.N);
    for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j) v(i, j) = w(t * g.x(i), t * g.xi(j));
    return v;
}

WeightFn wrap_result(const GridSpec& g, RMat v, const std::vector<WeightExpr>& f) {
    WeightFn out;
    out.grid = g;
    out.v = std::move(v);
    std::string e = "infconv(";
    for (std::size_t k = 0; k < f.size(); ++k) e += (k ? "," : "") + f[k].text();
    out.expr = e + ")";
    return out;
}

}  // namespace

// Lattice points add by index: n points with indices i_k sum to the point of
// index sum_k i_k - (n - 1) N / 2, on both axes.
WeightFn weight_infconv(const std::vector<WeightExpr>& factors, const std::vector<double>& dilations,
                        const GridSpec& g) {
    check_infconv_args(factors, dilations);
    const int N = g.N, n = static_cast<int>(factors.size());
    const double inf = std::numeric_limits<double>::infinity();
    // partial sums of m points: index range [0, m (N - 1)] per axis
    RMat acc = factor_table(factors[0], dilations[0], g).array().log().matrix();
    for (int m = 1; m < n; ++m) {
        const RMat lf = factor_table(factors[m], dilations[m], g).array().log().matrix();
        const bool last = m == n - 1;
        const int prev = static_cast<int>(acc.rows());
        const int off = last ? m * N / 2 : 0;
        const int size = last ? N : prev + N - 1;
        RMat next = RMat::Constant(size, size, inf);
        parallel_for(size, [&](int I) {
            const int si = I + off;
            for (int J = 0; J < size; ++J) {
                const int sj = J + off;
                double best = inf;
                const int i0 = std::max(0, si - prev + 1), i1 = std::min(N - 1, si);
                const int j0 = std::max(0, sj - prev + 1), j1 = std::min(N - 1, sj);
                for (int i = i0; i <= i1; ++i)
                    for (int j = j0; j <= j1; ++j) best = std::min(best, acc(si - i, sj - j) + lf(i, j));
                next(I, J) = best;
            }
        });
        acc = std::move(next);
    }
    return wrap_result(g, acc.array().exp().matrix(), factors);
}

WeightFn weight_infconv_exhaustive(const std::vector<WeightExpr>& factors,
                                   const std::vector<double>& dilations, const GridSpec& g) {
    check_infconv_args(factors, dilations);
    const int N = g.N, n = static_cast<int>(factors.size());
    if (n > 1 && std::pow(double(N), 2.0 * (n - 1)) * N * N > 4e9)
        throw Error("weight_infconv_exhaustive: grid too large for enumeration");
    std::vector<RMat> tab;
    for (int k = 0; k < n; ++k) tab.push_back(factor_table(factors[k], dilations[k], g));
    RMat out(N, N);
    parallel_for(N, [&](int I) {
        std::vector<int> ii(n - 1), jj(n - 1);
        for (int J = 0; J < N; ++J) {
            double best = std::numeric_limits<double>::infinity();
            std::fill(ii.begin(), ii.end(), 0);
            std::fill(jj.begin(), jj.end(), 0);
            while (true) {
                int si = I + (n - 1) * N / 2, sj = J + (n - 1) * N / 2;
                double prod = 1;
                for (int k = 0; k < n - 1; ++k) {
                    si -= ii[k];
                    sj -= jj[k];
                    prod *= tab[k](ii[k], jj[k]);
                }
                if (si >= 0 && si < N && sj >= 0 && sj < N)
                    best = std::min(best, prod * tab[n - 1](si, sj));
                int k = 0;
                for (; k < n - 1; ++k) {
                    if (++jj[k] < N) break;
                    jj[k] = 0;
                    if (++ii[k] < N) break;
                    ii[k] = 0;
                }
                if (k == n - 1) break;
            }
            out(I, J) = best;
        }
    });
    return wrap_result(g, out, factors);
}

}  // namespace wcalc
