#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "errors.hpp"
#include "proximate_order.hpp"
#include "quadrature.hpp"

namespace karamata {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Linear interpolation of complex samples on a ln t grid, multiplied by t^p.
struct DensityTable {
    std::vector<double> log_t;
    std::vector<cplx> values;
    double power = 0.0;
};

// A density on (0,inf). Evaluates to mult * base(scale * t); the scale/mult pair lets
// dilations compose without touching the base formula.
class Density {
public:
    enum class Kind { Power, PowerLog, Table, Function };

    // coef * t^s
    static Density power(cplx coef, cplx s) {
        Density d(Kind::Power);
        d.coef_ = coef;
        d.s_ = s;
        return d;
    }
    // coef * t^s * (ln t)^k
    static Density power_log(cplx coef, cplx s, int k) {
        if (k < 0) throw domain_error("power_log needs k >= 0");
        Density d(Kind::PowerLog);
        d.coef_ = coef;
        d.s_ = s;
        d.k_ = k;
        return d;
    }
    static Density table(DensityTable t) {
        if (t.log_t.size() < 2 || t.log_t.size() != t.values.size())
            throw domain_error("density table needs >= 2 nodes and matching sizes");
        for (std::size_t i = 1; i < t.log_t.size(); ++i)
            if (!(t.log_t[i] > t.log_t[i - 1])) throw domain_error("density table grid must increase");
        Density d(Kind::Table);
        d.table_ = std::make_shared<const DensityTable>(std::move(t));
        return d;
    }
    static Density function(std::function<cplx(double)> f, std::string label) {
        Density d(Kind::Function);
        d.fn_ = std::make_shared<const std::function<cplx(double)>>(std::move(f));
        d.label_ = std::move(label);
        return d;
    }

    Kind kind() const { return kind_; }
    const std::string& label() const { return label_; }
    const DensityTable* table_data() const { return table_.get(); }

    // x -> m * f(sc * x)
    Density transformed(double sc, cplx m) const {
        Density d = *this;
        d.scale_ *= sc;
        d.mult_ *= m;
        return d;
    }

    cplx operator()(double t) const { return mult_ * base(scale_ * t); }

private:
    explicit Density(Kind k) : kind_(k) {}

    cplx base(double t) const {
        switch (kind_) {
            case Kind::Power:
                return coef_ * std::exp(s_ * std::log(t));
            case Kind::PowerLog: {
                double l = std::log(t);
                return coef_ * std::exp(s_ * l) * std::pow(l, k_);
            }
            case Kind::Table: {
                const auto& tb = *table_;
                double l = std::log(t);
                double span = tb.log_t.back() - tb.log_t.front();
                if (l < tb.log_t.front()) {
                    if (tb.log_t.front() - l > 1e-9 * (1.0 + span))
                        throw window_error("density table evaluated below its grid");
                    l = tb.log_t.front();
                }
                if (l > tb.log_t.back()) {
                    if (l - tb.log_t.back() > 1e-9 * (1.0 + span))
                        throw window_error("density table evaluated above its grid");
                    l = tb.log_t.back();
                }
                auto it = std::upper_bound(tb.log_t.begin(), tb.log_t.end(), l);
                std::size_t i = std::min<std::size_t>(std::size_t(it - tb.log_t.begin()),
                                                      tb.log_t.size() - 1);
                if (i == 0) i = 1;
                double u = (l - tb.log_t[i - 1]) / (tb.log_t[i] - tb.log_t[i - 1]);
                cplx v = tb.values[i - 1] + u * (tb.values[i] - tb.values[i - 1]);
                return v * std::exp(tb.power * l);
            }
            case Kind::Function:
                return (*fn_)(t);
        }
        return {};
    }

    Kind kind_;
    cplx coef_{1.0}, s_{0.0};
    int k_ = 0;
    std::shared_ptr<const DensityTable> table_;
    std::shared_ptr<const std::function<cplx(double)>> fn_;
    std::string label_;
    double scale_ = 1.0;
    cplx mult_{1.0};
};

struct Atom {
    double x;
    cplx w;
};

// density f on (a,b]; b may be infinite
struct Piece {
    double a, b;
    Density f;
};

struct MeasureContent {
    std::vector<Atom> atoms;
    std::vector<Piece> pieces;
};

// How the measure continues past the explicitly given content.
struct TailRule {
    enum class Kind { None, SelfSimilar, Formula };
    Kind kind = Kind::None;
    // SelfSimilar: the explicit content is one cell [cell_start, cell_start*T) and
    // mu(T E) = T^rho mu(E)
    double T = 0.0, rho = 0.0, cell_start = 1.0;
    // Formula: extra content generated on demand for (lo,hi]
    std::function<MeasureContent(double, double)> generator;
    std::string label;

    static TailRule none() { return {}; }
    static TailRule self_similar(double T, double rho, double cell_start = 1.0) {
        TailRule r;
        r.kind = Kind::SelfSimilar;
        r.T = T;
        r.rho = rho;
        r.cell_start = cell_start;
        return r;
    }
    static TailRule formula(std::function<MeasureContent(double, double)> g, std::string label) {
        TailRule r;
        r.kind = Kind::Formula;
        r.generator = std::move(g);
        r.label = std::move(label);
        return r;
    }
};

namespace detail {

struct MeasureBase {
    MeasureContent content;
    TailRule tail;
    double lo = 0.0, hi = kInf;  // window where a tail-free representation is valid

    void clip_into(double l, double h, double T, double w, const Piece* p, const Atom* a,
                   MeasureContent& out) const {
        // copy scaled by T (location) and w (weight) into (l,h]
        if (a) {
            double x = a->x * T;
            if (x > l && x <= h) out.atoms.push_back({x, a->w * w});
        }
        if (p) {
            double pa = p->a * T, pb = p->b * T;
            double ca = std::max(pa, l), cb = std::min(pb, h);
            if (cb > ca) out.pieces.push_back({ca, cb, p->f.transformed(1.0 / T, w / T)});
        }
    }

    MeasureContent materialize(double l, double h) const {
        MeasureContent out;
        if (!(h > l)) return out;
        switch (tail.kind) {
            case TailRule::Kind::None:
                if (l < lo * (1 - 1e-12) || h > hi * (1 + 1e-12))
                    throw window_error("interval leaves the window covered by this measure");
                for (const auto& a : content.atoms) clip_into(l, h, 1.0, 1.0, nullptr, &a, out);
                for (const auto& p : content.pieces) clip_into(l, h, 1.0, 1.0, &p, nullptr, out);
                break;
            case TailRule::Kind::SelfSimilar: {
                if (!(l > 0.0) || !std::isfinite(h))
                    throw window_error("self-similar measure needs a bounded window away from 0");
                double c0 = tail.cell_start, T = tail.T;
                long k0 = long(std::floor(std::log(l / c0) / std::log(T))) - 1;
                long k1 = long(std::ceil(std::log(h / c0) / std::log(T))) + 1;
                for (long k = k0; k <= k1; ++k) {
                    double f = std::pow(T, double(k)), w = std::pow(T, double(k) * tail.rho);
                    for (const auto& a : content.atoms) clip_into(l, h, f, w, nullptr, &a, out);
                    for (const auto& p : content.pieces) clip_into(l, h, f, w, &p, nullptr, out);
                }
                break;
            }
            case TailRule::Kind::Formula: {
                if (!(l > 0.0) || !std::isfinite(h))
                    throw window_error("formula measure needs a bounded window away from 0");
                for (const auto& a : content.atoms) clip_into(l, h, 1.0, 1.0, nullptr, &a, out);
                for (const auto& p : content.pieces) clip_into(l, h, 1.0, 1.0, &p, nullptr, out);
                auto extra = tail.generator(l, h);
                for (const auto& a : extra.atoms) clip_into(l, h, 1.0, 1.0, nullptr, &a, out);
                for (const auto& p : extra.pieces) clip_into(l, h, 1.0, 1.0, &p, nullptr, out);
                break;
            }
        }
        return out;
    }
};

}  // namespace detail

// A complex Radon measure on (0,inf): a finite sum of terms c * mu_k(s * E), each mu_k
// given by atoms, density pieces and a tail rule.
class RadonMeasure {
public:
    RadonMeasure() = default;

    static RadonMeasure make(MeasureContent content, TailRule tail = {}, double lo = 0.0,
                             double hi = kInf) {
        validate(content, tail, lo, hi);
        auto b = std::make_shared<detail::MeasureBase>();
        b->content = std::move(content);
        b->tail = std::move(tail);
        b->lo = lo;
        b->hi = hi;
        RadonMeasure m;
        m.terms_.push_back({b, 1.0, 1.0});
        return m;
    }
    static RadonMeasure atoms(std::vector<Atom> a) { return make({std::move(a), {}}); }
    static RadonMeasure density(double a, double b, Density f) {
        return make({{}, {Piece{a, b, std::move(f)}}});
    }

    // mu'(E) = mult * mu(scale * E)
    RadonMeasure transformed(double scale, cplx mult) const {
        if (!(scale > 0.0) || !std::isfinite(scale)) throw domain_error("scale must be positive");
        RadonMeasure m = *this;
        for (auto& t : m.terms_) {
            t.scale *= scale;
            t.mult *= mult;
        }
        return m;
    }

    friend RadonMeasure operator+(RadonMeasure a, const RadonMeasure& b) {
        a.terms_.insert(a.terms_.end(), b.terms_.begin(), b.terms_.end());
        return a;
    }
    friend RadonMeasure operator*(cplx c, RadonMeasure a) { return a.transformed(1.0, c); }

    bool empty() const { return terms_.empty(); }

    // True when every term can be evaluated on (0,inf) without window errors.
    bool unbounded_window() const {
        for (const auto& t : terms_)
            if (t.base->tail.kind == TailRule::Kind::None && (t.base->lo > 0.0 || t.base->hi < kInf))
                return false;
        return true;
    }

    // Finite list of atoms and pieces making up the restriction to (lo,hi].
    MeasureContent materialize(double lo, double hi) const {
        MeasureContent out;
        for (const auto& t : terms_) {
            auto c = t.base->materialize(lo * t.scale, hi * t.scale);
            for (auto& a : c.atoms) out.atoms.push_back({a.x / t.scale, a.w * t.mult});
            for (auto& p : c.pieces)
                out.pieces.push_back(
                    {p.a / t.scale, p.b / t.scale, p.f.transformed(t.scale, t.mult * t.scale)});
        }
        return out;
    }

    // Locations where a piece starts or ends, or an atom sits, inside (lo,hi).
    std::vector<double> breakpoints(double lo, double hi) const {
        std::vector<double> br;
        auto c = materialize(lo, hi);
        for (auto& a : c.atoms) br.push_back(a.x);
        for (auto& p : c.pieces) {
            br.push_back(p.a);
            if (std::isfinite(p.b)) br.push_back(p.b);
        }
        std::sort(br.begin(), br.end());
        br.erase(std::unique(br.begin(), br.end()), br.end());
        return br;
    }

private:
    struct Term {
        std::shared_ptr<const detail::MeasureBase> base;
        double scale;
        cplx mult;
    };

    static void validate(const MeasureContent& c, const TailRule& tail, double lo, double hi) {
        if (!(lo >= 0.0) || !(hi > lo)) throw domain_error("measure window must satisfy 0 <= lo < hi");
        for (const auto& a : c.atoms)
            if (!(a.x > 0.0) || !std::isfinite(a.x) || !std::isfinite(a.w.real()) ||
                !std::isfinite(a.w.imag()))
                throw domain_error("atoms need a finite location x > 0 and a finite weight");
        std::vector<std::pair<double, double>> iv;
        for (const auto& p : c.pieces) {
            if (!(p.a >= 0.0) || !(p.b > p.a)) throw domain_error("density piece needs 0 <= a < b");
            iv.push_back({p.a, p.b});
        }
        std::sort(iv.begin(), iv.end());
        for (std::size_t i = 1; i < iv.size(); ++i)
            if (iv[i].first < iv[i - 1].second) throw domain_error("density pieces overlap");
        if (tail.kind == TailRule::Kind::SelfSimilar) {
            if (!(tail.T > 1.0) || !std::isfinite(tail.T) || !std::isfinite(tail.rho) ||
                !(tail.cell_start > 0.0))
                throw domain_error("self-similar tail needs T > 1, finite rho, cell_start > 0");
            double c0 = tail.cell_start, c1 = c0 * tail.T;
            for (const auto& a : c.atoms)
                if (a.x < c0 || a.x >= c1) throw domain_error("self-similar atom outside its cell");
            for (const auto& p : c.pieces)
                if (p.a < c0 || p.b > c1) throw domain_error("self-similar piece outside its cell");
        }
        if (tail.kind == TailRule::Kind::Formula && !tail.generator)
            throw domain_error("formula tail needs a generator");
    }

    std::vector<Term> terms_;
};

// ---- evaluation ----

// Integral of one piece over its (finite or improper) range.
inline QuadResult piece_integral(const Piece& p, const QuadControl& ctl, bool absolute = false) {
    auto f = [&](double t) -> cplx { return absolute ? cplx(std::abs(p.f(t))) : p.f(t); };
    if (p.a > 0.0 && std::isfinite(p.b)) return integrate_log(f, p.a, p.b, {}, ctl);
    double lo = p.a > 0.0 ? p.a : (std::isfinite(p.b) ? p.b / 4.0 : 0.25);
    double hi = std::isfinite(p.b) ? p.b : std::max(4.0 * lo, 4.0);
    return integrate_positive(f, p.a, p.b, lo, hi, {}, ctl);
}

inline cplx content_mass(const MeasureContent& c, const QuadControl& ctl, bool absolute = false) {
    cplx s{};
    for (const auto& a : c.atoms) s += absolute ? cplx(std::abs(a.w)) : a.w;
    for (const auto& p : c.pieces) s += piece_integral(p, ctl, absolute).value;
    return s;
}

namespace detail {

inline cplx mass_impl(const RadonMeasure& m, double a, double b, const QuadControl& ctl,
                      bool absolute) {
    if (!(b > a) || a < 0.0) throw domain_error("mass needs 0 <= a < b");
    bool direct = (a > 0.0 && std::isfinite(b)) || !m.unbounded_window();
    if (direct) return content_mass(m.materialize(a, b), ctl, absolute);
    auto slab = [&](double l, double h) {
        QuadResult r;
        r.value = content_mass(m.materialize(l, h), ctl, absolute);
        return r;
    };
    double lo = a > 0.0 ? a : (std::isfinite(b) ? b / 4.0 : 0.25);
    double hi = std::isfinite(b) ? b : std::max(4.0 * lo, 4.0);
    return accumulate_positive(slab, a, b, lo, hi, ctl).value;
}

}  // namespace detail

// mu((a,b]); a may be 0 and b infinite
inline cplx mass(const RadonMeasure& m, double a, double b, const QuadControl& ctl = {}) {
    return detail::mass_impl(m, a, b, ctl, false);
}

// |mu|((a,b]) computed piecewise (|w| for atoms, |f| for densities)
inline double variation_mass(const RadonMeasure& m, double a, double b,
                             const QuadControl& ctl = {}) {
    return detail::mass_impl(m, a, b, ctl, true).real();
}

// Trapezoid: 0 outside [a,b], linear ramps of width w, plateau amp.
struct TestFunction {
    double a = 1.0, b = 2.0, w = 0.25, amp = 1.0;

    static TestFunction make(double a, double b, double w, double amp = 1.0) {
        if (!(a > 0.0) || !(b > a) || !(w > 0.0) || w > 0.5 * (b - a) || !std::isfinite(b))
            throw domain_error("test function needs 0 < a < b and 0 < w <= (b-a)/2");
        return {a, b, w, amp};
    }
    double operator()(double x) const {
        double v = std::min((x - a) / w, (b - x) / w);
        return amp * std::clamp(v, 0.0, 1.0);
    }
};

inline cplx pair_content(const MeasureContent& c, const TestFunction& f, const QuadControl& ctl = {}) {
    cplx s{};
    if (f.amp == 0.0) return s;
    for (const auto& a : c.atoms) s += f(a.x) * a.w;
    for (const auto& p : c.pieces) {
        double lo = std::max(p.a, f.a), hi = std::min(p.b, f.b);
        if (!(hi > lo)) continue;
        auto g = [&](double t) { return f(t) * p.f(t); };
        s += integrate(g, lo, hi, {f.a + f.w, f.b - f.w}, ctl).value;
    }
    return s;
}

// (mu, f) = int f dmu
inline cplx pair(const RadonMeasure& m, const TestFunction& f, const QuadControl& ctl = {}) {
    return pair_content(m.materialize(f.a, f.b), f, ctl);
}

// The fixed countable family used by the weak-topology metric. See README for the order.
class MetricFamily {
public:
    static MetricFamily dyadic(int n = 64) {
        if (n < 1) throw domain_error("metric family needs at least one function");
        MetricFamily fam;
        std::vector<std::pair<double, double>> seen;
        for (int L = 1; int(fam.fns_.size()) < n; ++L) {
            struct Cand {
                double a, b;
            };
            std::vector<Cand> lvl;
            for (int j = 0; j <= L; ++j) {
                double den = std::ldexp(1.0, j);
                long pmin = long(std::ceil(std::ldexp(1.0, -L) * den));
                long qmax = long(std::ldexp(1.0, L) * den);
                for (long p = pmin; p <= qmax; ++p)
                    for (long q = p + 1; q <= qmax; ++q) {
                        if (j > 0 && p % 2 == 0 && q % 2 == 0) continue;
                        double a = p / den, b = q / den;
                        if (std::find(seen.begin(), seen.end(), std::make_pair(a, b)) != seen.end())
                            continue;
                        seen.push_back({a, b});
                        lvl.push_back({a, b});
                    }
            }
            std::stable_sort(lvl.begin(), lvl.end(), [](const Cand& x, const Cand& y) {
                double cx = std::abs(std::log(x.a * x.b)), cy = std::abs(std::log(y.a * y.b));
                if (cx != cy) return cx < cy;
                if (x.b - x.a != y.b - y.a) return x.b - x.a > y.b - y.a;
                return x.a < y.a;
            });
            for (auto& c : lvl) {
                if (int(fam.fns_.size()) >= n) break;
                fam.fns_.push_back(TestFunction::make(c.a, c.b, (c.b - c.a) / 4.0));
            }
        }
        return fam;
    }

    const std::vector<TestFunction>& functions() const { return fns_; }
    std::size_t size() const { return fns_.size(); }
    double tail_bound() const { return std::ldexp(1.0, -int(fns_.size())); }
    double window_lo() const {
        double v = kInf;
        for (auto& f : fns_) v = std::min(v, f.a);
        return v;
    }
    double window_hi() const {
        double v = 0.0;
        for (auto& f : fns_) v = std::max(v, f.b);
        return v;
    }

private:
    std::vector<TestFunction> fns_;
};

inline std::vector<cplx> pairing_vector(const RadonMeasure& m, const MetricFamily& fam,
                                        const QuadControl& ctl = {}) {
    auto c = m.materialize(fam.window_lo(), fam.window_hi());
    std::vector<cplx> out;
    out.reserve(fam.size());
    for (const auto& f : fam.functions()) out.push_back(pair_content(c, f, ctl));
    return out;
}

// sum_n |dp_n| / (2^n (1 + |dp_n|)), n starting at 1
inline double distance_from_pairings(const std::vector<cplx>& p, const std::vector<cplx>& q) {
    if (p.size() != q.size()) throw domain_error("pairing vectors differ in length");
    double d = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
        double x = std::abs(p[n] - q[n]);
        d += std::ldexp(x / (1.0 + x), -int(n + 1));
    }
    return d;
}

struct MetricValue {
    double d;
    double tail_bound;
};

inline MetricValue metric_d(const RadonMeasure& a, const RadonMeasure& b, const MetricFamily& fam,
                            const QuadControl& ctl = {}) {
    return {distance_from_pairings(pairing_vector(a, fam, ctl), pairing_vector(b, fam, ctl)),
            fam.tail_bound()};
}

// mu_t(E) = mu(tE)/V(t)
inline RadonMeasure azarin_scale(const RadonMeasure& m, const ProximateOrder& o, double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw domain_error("t must be positive and finite");
    return m.transformed(t, 1.0 / o.V(t));
}

// ---- density functions N(alpha), lower N(alpha) ----

struct DensitySample {
    double r;
    double ratio;
};

struct DensityEstimate {
    double value;                       // limsup (or liminf) over the top decade
    std::vector<DensitySample> samples;
};

namespace detail {

inline double increment_ratio(const RadonMeasure& m, const ProximateOrder& o, double alpha, double r,
                              const QuadControl& ctl) {
    if (alpha == 0.0) return 0.0;
    cplx v = alpha > 0.0 ? mass(m, r, (1.0 + alpha) * r, ctl) : -mass(m, (1.0 + alpha) * r, r, ctl);
    if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v.real())))
        throw precondition_error("density functions need a real measure");
    return v.real() / o.V(r);
}

inline DensityEstimate density_estimate(const RadonMeasure& m, const ProximateOrder& o, double alpha,
                                        const std::vector<double>& r_grid, bool upper,
                                        const QuadControl& ctl) {
    if (!(alpha > -1.0)) throw domain_error("alpha must exceed -1");
    if (r_grid.empty()) throw domain_error("empty r grid");
    DensityEstimate e;
    double rmax = *std::max_element(r_grid.begin(), r_grid.end());
    e.value = upper ? -kInf : kInf;
    for (double r : r_grid) {
        double v = increment_ratio(m, o, alpha, r, ctl);
        e.samples.push_back({r, v});
        if (r >= rmax / 10.0) e.value = upper ? std::max(e.value, v) : std::min(e.value, v);
    }
    return e;
}

}  // namespace detail

// N(alpha) = limsup (mu(r+alpha r) - mu(r))/V(r), estimated as the max over the top decade
inline DensityEstimate upper_density(const RadonMeasure& m, const ProximateOrder& o, double alpha,
                                     const std::vector<double>& r_grid, const QuadControl& ctl = {}) {
    return detail::density_estimate(m, o, alpha, r_grid, true, ctl);
}

inline DensityEstimate lower_density(const RadonMeasure& m, const ProximateOrder& o, double alpha,
                                     const std::vector<double>& r_grid, const QuadControl& ctl = {}) {
    return detail::density_estimate(m, o, alpha, r_grid, false, ctl);
}

// Violations (positive = broken) of the four splitting inequalities for N and lower N at (alpha, beta):
//   N(a+b)  <= N(a)  + (1+a)^rho N(b/(1+a))
//   Nl(a+b) >= Nl(a) + (1+a)^rho Nl(b/(1+a))
//   N(a+b)  >= N(a)  + (1+a)^rho Nl(b/(1+a))
//   Nl(a+b) <= Nl(a) + (1+a)^rho N(b/(1+a))
struct SplittingReport {
    double violation[4];
    double max_violation;
};

inline SplittingReport check_density_inequalities(const RadonMeasure& m, const ProximateOrder& o,
                                                  double alpha, double beta,
                                                  const std::vector<double>& r_grid,
                                                  const QuadControl& ctl = {}) {
    if (!(alpha > 0.0) || !(beta > 0.0)) throw domain_error("splitting check needs alpha, beta > 0");
    double k = std::pow(1.0 + alpha, o.rho());
    double b2 = beta / (1.0 + alpha);
    double Nab = upper_density(m, o, alpha + beta, r_grid, ctl).value;
    double Lab = lower_density(m, o, alpha + beta, r_grid, ctl).value;
    double Na = upper_density(m, o, alpha, r_grid, ctl).value;
    double La = lower_density(m, o, alpha, r_grid, ctl).value;
    double Nb = upper_density(m, o, b2, r_grid, ctl).value;
    double Lb = lower_density(m, o, b2, r_grid, ctl).value;
    SplittingReport rep{};
    rep.violation[0] = Nab - (Na + k * Nb);
    rep.violation[1] = (La + k * Lb) - Lab;
    rep.violation[2] = (Na + k * Lb) - Nab;
    rep.violation[3] = Lab - (La + k * Nb);
    rep.max_violation = *std::max_element(std::begin(rep.violation), std::end(rep.violation));
    return rep;
}

// ---- class membership: sup |mu|([r, e r]) / V(r) ----

enum class MeasureClass { AtInfinity, Everywhere };

struct ClassReport {
    double sup_ratio = 0.0;
    bool bounded = true;
    double top_decade_max = 0.0, prev_decade_max = 0.0;      // large-r end
    double bottom_decade_max = 0.0, next_decade_max = 0.0;   // small-r end (Everywhere only)
    std::vector<DensitySample> samples;
};

// Bounded unless the decade maxima keep growing by more than growth_tol at an end of the grid.
inline ClassReport class_membership(const RadonMeasure& m, const ProximateOrder& o, MeasureClass which,
                                    const std::vector<double>& r_grid, double growth_tol = 0.05,
                                    const QuadControl& ctl = {}) {
    if (r_grid.empty()) throw domain_error("empty r grid");
    ClassReport rep;
    double rmax = 0.0, rmin = kInf;
    for (double r : r_grid) {
        if (which == MeasureClass::AtInfinity && r < 1.0) continue;
        double v = variation_mass(m, r, std::exp(1.0) * r, ctl) / o.V(r);
        if (!std::isfinite(v)) {
            rep.bounded = false;
            v = kInf;
        }
        rep.samples.push_back({r, v});
        rep.sup_ratio = std::max(rep.sup_ratio, v);
        rmax = std::max(rmax, r);
        rmin = std::min(rmin, r);
    }
    for (auto& s : rep.samples) {
        if (s.r >= rmax / 10.0) rep.top_decade_max = std::max(rep.top_decade_max, s.ratio);
        else if (s.r >= rmax / 100.0) rep.prev_decade_max = std::max(rep.prev_decade_max, s.ratio);
        if (which == MeasureClass::Everywhere) {
            if (s.r <= rmin * 10.0) rep.bottom_decade_max = std::max(rep.bottom_decade_max, s.ratio);
            else if (s.r <= rmin * 100.0) rep.next_decade_max = std::max(rep.next_decade_max, s.ratio);
        }
    }
    auto grows = [&](double outer, double inner) {
        return outer > (1.0 + growth_tol) * inner && outer - inner > 1e-12;
    };
    if (grows(rep.top_decade_max, rep.prev_decade_max)) rep.bounded = false;
    if (which == MeasureClass::Everywhere && grows(rep.bottom_decade_max, rep.next_decade_max))
        rep.bounded = false;
    return rep;
}

}  // namespace karamata
