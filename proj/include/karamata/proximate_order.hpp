#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "errors.hpp"
#include "quadrature.hpp"

namespace karamata {

// Zero-part families. Each is stored through h(x) = ln Vhat(e^x), which is even in x,
// so that Vhat(1/r) = Vhat(r) and Vhat(1) = 1.
struct ZeroPart {};

// Vhat(r) = exp(A |ln r|^alpha), 0 < alpha < 1
struct LogPower {
    double A = 1.0;
    double alpha = 0.5;
};

// Vhat(r) = 1 + |ln r|^alpha, alpha > 1
struct LogOfLogPower {
    double alpha = 2.0;
};

// etahat sampled on x = ln r >= 0 (x[0] == 0), linear in between, extended oddly to
// x < 0 and by zero past the last node. Vhat(e^x) = exp(int_0^|x| etahat).
struct TabulatedEta {
    std::vector<double> x;
    std::vector<double> eta;

    static TabulatedEta from_function(const std::function<double(double)>& etahat_of_x,
                                      double x_max, double step) {
        TabulatedEta t;
        int n = int(std::ceil(x_max / step));
        for (int i = 0; i <= n; ++i) {
            double xi = x_max * i / n;
            t.x.push_back(xi);
            t.eta.push_back(etahat_of_x(xi));
        }
        return t;
    }
};

using ZeroPartSpec = std::variant<ZeroPart, LogPower, LogOfLogPower, TabulatedEta>;

class ProximateOrder {
public:
    explicit ProximateOrder(double rho = 0.0, ZeroPartSpec zp = ZeroPart{},
                            std::optional<bool> closed_form_gamma = std::nullopt)
        : rho_(rho), zp_(std::move(zp)) {
        if (!std::isfinite(rho_)) throw domain_error("rho must be finite");
        if (auto* lp = std::get_if<LogPower>(&zp_)) {
            if (!(lp->alpha > 0.0 && lp->alpha < 1.0) || !std::isfinite(lp->A))
                throw domain_error("log_power needs finite A and 0 < alpha < 1");
            closed_ = lp->A > 0.0;  // h concave on x > 0 and Vhat -> inf
        } else if (auto* ll = std::get_if<LogOfLogPower>(&zp_)) {
            if (!(ll->alpha > 1.0) || !std::isfinite(ll->alpha))
                throw domain_error("log_of_log_power needs alpha > 1");
        } else if (auto* te = std::get_if<TabulatedEta>(&zp_)) {
            build_table(*te);
        } else {
            closed_ = true;  // gamma == 1
        }
        if (closed_form_gamma) closed_ = *closed_form_gamma;
    }

    double rho() const { return rho_; }
    const ZeroPartSpec& zero_part() const { return zp_; }
    bool closed_form_gamma() const { return closed_; }

    // Same zero part, exponent shifted by d.
    ProximateOrder shifted(double d) const {
        ProximateOrder o = *this;
        o.rho_ += d;
        return o;
    }

    // h(x) = ln Vhat(e^x)
    double log_vhat(double x) const {
        double ax = std::abs(x);
        if (std::holds_alternative<ZeroPart>(zp_)) return 0.0;
        if (auto* lp = std::get_if<LogPower>(&zp_)) return lp->A * std::pow(ax, lp->alpha);
        if (auto* ll = std::get_if<LogOfLogPower>(&zp_)) return std::log1p(std::pow(ax, ll->alpha));
        const auto& te = std::get<TabulatedEta>(zp_);
        if (ax >= te.x.back()) return cum_.back();
        auto it = std::upper_bound(te.x.begin(), te.x.end(), ax);
        std::size_t i = std::size_t(it - te.x.begin()) - 1;
        double d = ax - te.x[i], w = te.x[i + 1] - te.x[i];
        return cum_[i] + te.eta[i] * d + (te.eta[i + 1] - te.eta[i]) * d * d / (2.0 * w);
    }

    double vhat(double r) const {
        check_r(r);
        return std::exp(log_vhat(std::log(r)));
    }

    // V(r) = r^rho Vhat(r)
    double V(double r) const {
        check_r(r);
        double x = std::log(r);
        return std::exp(rho_ * x + log_vhat(x));
    }

    // rho(r) = rho + ln Vhat(r) / ln r
    double rho_of_r(double r) const {
        check_r(r);
        double x = std::log(r);
        if (x != 0.0) return rho_ + log_vhat(x) / x;
        if (std::holds_alternative<LogPower>(zp_))
            throw singular_point_error("rho(r) is singular at r = 1 for log_power");
        if (auto* te = std::get_if<TabulatedEta>(&zp_); te && te->eta.front() != 0.0)
            throw singular_point_error("rho(r) jumps at r = 1 for this table");
        return rho_;
    }

private:
    static void check_r(double r) {
        if (!(r > 0.0) || !std::isfinite(r)) throw domain_error("r must be positive and finite");
    }

    void build_table(const TabulatedEta& te) {
        if (te.x.size() < 2 || te.x.size() != te.eta.size())
            throw domain_error("tabulated_eta needs >= 2 nodes and matching sizes");
        if (te.x.front() != 0.0) throw domain_error("tabulated_eta grid must start at ln r = 0");
        for (std::size_t i = 0; i < te.x.size(); ++i) {
            if (!std::isfinite(te.x[i]) || !std::isfinite(te.eta[i]))
                throw domain_error("tabulated_eta has a non-finite entry");
            if (i > 0 && !(te.x[i] > te.x[i - 1]))
                throw domain_error("tabulated_eta grid must be strictly increasing");
        }
        cum_.assign(te.x.size(), 0.0);
        for (std::size_t i = 1; i < te.x.size(); ++i)
            cum_[i] = cum_[i - 1] + 0.5 * (te.eta[i] + te.eta[i - 1]) * (te.x[i] - te.x[i - 1]);
    }

    double rho_;
    ZeroPartSpec zp_;
    bool closed_ = false;
    std::vector<double> cum_;
};

inline double eval_V(const ProximateOrder& o, double r) { return o.V(r); }

// eta(r) = r V'(r)/V(r) by a central difference in ln r (step 1e-5); one-sided when
// the stencil would cross the kink at r = 1.
inline double eval_eta(const ProximateOrder& o, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw domain_error("r must be positive and finite");
    constexpr double h = 1e-5;
    double x = std::log(r);
    if (x == 0.0) {
        if (std::holds_alternative<LogPower>(o.zero_part()))
            throw singular_point_error("eta is singular at r = 1 for log_power");
        if (std::holds_alternative<ZeroPart>(o.zero_part())) return o.rho();
    }
    double d;
    if (std::abs(x) < 2 * h) {
        double s = x >= 0.0 ? 1.0 : -1.0;
        d = s * (-3 * o.log_vhat(x) + 4 * o.log_vhat(x + s * h) - o.log_vhat(x + 2 * s * h)) /
            (2 * h);
    } else {
        d = (o.log_vhat(x + h) - o.log_vhat(x - h)) / (2 * h);
    }
    return o.rho() + d;
}

struct GammaSearch {
    double half_width = 40.0;  // initial ln r window [-w, w]
    int points = 4001;
    double boundary_tol = 1e-6;
    int max_widenings = 6;     // each doubles the window
};

struct GammaValue {
    double value = 1.0;
    double log_value = 0.0;
    double argmax = 0.0;  // ln r where the supremum is attained
    double window = 0.0;
    bool boundary_converged = true;
    bool closed_form = false;
};

// gamma(t) = sup_r Vhat(rt)/Vhat(r). Closed form Vhat(t) for t >= 1 when the order is
// flagged (concave h on x > 0); otherwise a grid search in ln r with Brent refinement.
inline GammaValue gamma_upper_detail(const ProximateOrder& o, double t, const GammaSearch& gs = {}) {
    if (!(t > 0.0) || !std::isfinite(t)) throw domain_error("t must be positive and finite");
    double y = std::log(t);
    GammaValue g;
    if (o.closed_form_gamma() && t >= 1.0) {
        g.log_value = o.log_vhat(y);
        g.value = std::exp(g.log_value);
        g.closed_form = true;
        return g;
    }
    auto F = [&](double x) { return o.log_vhat(x + y) - o.log_vhat(x); };

    std::vector<double> xs;
    auto add_grid = [&](double w) {
        for (int i = 0; i < gs.points; ++i) xs.push_back(-w + 2.0 * w * i / (gs.points - 1));
    };
    double w = gs.half_width;
    add_grid(w);
    // kinks of h(x+y) - h(x) sit at x = 0 and x = -y
    xs.push_back(0.0);
    xs.push_back(-y);
    int widen = 0;
    auto edge = [&](double ww) { return std::max(std::abs(F(ww)), std::abs(F(-ww))); };
    while (edge(w) > gs.boundary_tol && widen < gs.max_widenings) {
        w *= 2.0;
        add_grid(w);
        ++widen;
    }
    g.boundary_converged = edge(w) <= gs.boundary_tol;
    g.window = w;
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<double> fs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) fs[i] = F(xs[i]);
    // refine the best few local maxima
    std::vector<std::size_t> peaks;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        bool left = i == 0 || fs[i] >= fs[i - 1];
        bool right = i + 1 == xs.size() || fs[i] >= fs[i + 1];
        if (left && right) peaks.push_back(i);
    }
    std::sort(peaks.begin(), peaks.end(), [&](auto a, auto b) { return fs[a] > fs[b]; });
    if (peaks.size() > 5) peaks.resize(5);
    double best = -std::numeric_limits<double>::infinity(), arg = 0.0;
    for (auto i : peaks) {
        double lo = xs[i == 0 ? 0 : i - 1], hi = xs[i + 1 == xs.size() ? i : i + 1];
        double cand = fs[i], at = xs[i];
        if (hi > lo) {
            auto r = boost::math::tools::brent_find_minima([&](double x) { return -F(x); }, lo, hi,
                                                           52);
            if (-r.second > cand) {
                cand = -r.second;
                at = r.first;
            }
        }
        if (cand > best) {
            best = cand;
            arg = at;
        }
    }
    g.log_value = best;
    g.value = std::exp(best);
    g.argmax = arg;
    return g;
}

inline double gamma_upper(const ProximateOrder& o, double t, const GammaSearch& gs = {}) {
    return gamma_upper_detail(o, t, gs).value;
}

// gamma_(t) = 1/gamma(1/t)
inline double gamma_lower(const ProximateOrder& o, double t, const GammaSearch& gs = {}) {
    if (!(t > 0.0) || !std::isfinite(t)) throw domain_error("t must be positive and finite");
    return 1.0 / gamma_upper(o, 1.0 / t, gs);
}

struct PotterReport {
    double max_violation = 0.0;  // max of V(rt)/(t^rho gamma(t) V(r)) - 1, clipped at 0
    double worst_r = 0.0, worst_t = 0.0;
    bool pass = true;
};

// Checks V(rt) <= t^rho gamma(t) V(r) on the given (r, t) pairs.
inline PotterReport potter_check(const ProximateOrder& o,
                                 const std::vector<std::pair<double, double>>& pairs,
                                 double tol = 1e-6) {
    PotterReport rep;
    for (auto [r, t] : pairs) {
        if (!(r > 0.0) || !(t > 0.0)) throw domain_error("potter_check needs r, t > 0");
        double x = std::log(r), y = std::log(t);
        double lg = gamma_upper_detail(o, t).log_value;
        double v = std::expm1(o.log_vhat(x + y) - o.log_vhat(x) - lg);
        if (v > rep.max_violation) {
            rep.max_violation = v;
            rep.worst_r = r;
            rep.worst_t = t;
        }
    }
    rep.pass = rep.max_violation <= tol;
    return rep;
}

struct LogLimitRow {
    double t;
    double up;    // ln gamma(t) / ln t
    double down;  // ln gamma(1/t) / ln t
};

inline std::vector<LogLimitRow> gamma_loglimit_scan(const ProximateOrder& o,
                                                    const std::vector<double>& ts) {
    std::vector<LogLimitRow> rows;
    for (double t : ts) {
        if (!(t > 1.0)) throw domain_error("gamma_loglimit_scan needs t > 1");
        double lt = std::log(t);
        rows.push_back({t, gamma_upper_detail(o, t).log_value / lt,
                        gamma_upper_detail(o, 1.0 / t).log_value / lt});
    }
    return rows;
}

// V1(r) = (2r/pi) int_0^inf V(t)/(t^2+r^2) dt, written as (2/pi) int V(ru)/(1+u^2) du.
inline double poisson_smooth_V1(const ProximateOrder& o, double r, const QuadControl& ctl = {}) {
    if (!(r > 0.0) || !std::isfinite(r)) throw domain_error("r must be positive and finite");
    if (!(std::abs(o.rho()) < 1.0))
        throw precondition_error("Poisson smoothing needs |rho| < 1 for convergence");
    auto f = [&](double u) { return o.V(r * u) / (1.0 + u * u); };
    auto res = integrate_positive(f, 0.0, std::numeric_limits<double>::infinity(), 0.25, 4.0,
                                  {1.0 / r}, ctl);
    return 2.0 / std::numbers::pi * res.value.real();
}

}  // namespace karamata
