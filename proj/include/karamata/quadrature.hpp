#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "errors.hpp"

namespace karamata {

struct QuadControl {
    double rel_tol = 1e-11;
    int max_depth = 25;  // panel budget is 2^min(max_depth, 14) per segment
    double expand_factor = 4.0;  // window growth per step for improper integrals
    int max_expansions = 80;
};

struct QuadResult {
    cplx value{};
    double error = 0.0;
};

namespace detail {

inline std::vector<double> cut_points(double a, double b, const std::vector<double>& breaks) {
    std::vector<double> pts{a};
    for (double x : breaks)
        if (x > a && x < b) pts.push_back(x);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace detail

namespace detail {

struct Panel {
    double a, b;
    cplx v;
    double err, l1;
    bool operator<(const Panel& o) const { return err < o.err; }
};

// Globally adaptive G7K15 (largest error bisected first). Stops at
// err <= max(rel_tol |I|, 50 eps int|f|). A nearly converged panel whose halves do not lower
// the error estimate is roundoff-limited; its halves are not refined again.
template <class G>
QuadResult adaptive_gk(G& g, double a, double b, const QuadControl& ctl) {
    using boost::math::quadrature::gauss_kronrod;
    auto rule = [&](double l, double h) {
        Panel p{l, h, {}, 0.0, 0.0};
        p.v = gauss_kronrod<double, 15>::integrate(g, l, h, 0, 0.0, &p.err, &p.l1);
        p.err *= 0.5 * (h - l);  // boost reports the non-adaptive error on [-1,1]
        if (!std::isfinite(p.v.real()) || !std::isfinite(p.v.imag()))
            throw divergence_error("non-finite integrand value", p.v);
        return p;
    };
    const std::size_t limit = std::size_t(1) << std::min(ctl.max_depth, 14);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::priority_queue<Panel> q;
    q.push(rule(a, b));
    cplx frozen_v{};
    double frozen_err = 0.0, frozen_l1 = 0.0;
    std::size_t panels = 1;
    while (true) {
        cplx total = frozen_v;
        double err = 0.0, l1 = frozen_l1;
        for (auto c = q; !c.empty(); c.pop()) {
            total += c.top().v;
            err += c.top().err;
            l1 += c.top().l1;
        }
        if (q.empty() || err <= std::max(ctl.rel_tol * std::abs(total), 50.0 * eps * l1) ||
            panels >= limit)
            return {total, err + frozen_err};
        // refine a batch so the resummation above stays cheap
        for (std::size_t k = std::max<std::size_t>(1, q.size() / 4); k > 0 && !q.empty(); --k) {
            Panel p = q.top();
            q.pop();
            double m = 0.5 * (p.a + p.b);
            Panel L = rule(p.a, m), R = rule(m, p.b);
            ++panels;
            if (!(m > p.a && m < p.b) || (L.err + R.err >= p.err && p.err <= 1e-8 * p.l1)) {
                for (const Panel* c : {&L, &R}) {
                    frozen_v += c->v;
                    frozen_err += c->err;
                    frozen_l1 += c->l1;
                }
                continue;
            }
            q.push(L);
            q.push(R);
        }
    }
}

}  // namespace detail

// Adaptive G7K15 on a finite interval, split at the given breakpoints.
template <class F>
QuadResult integrate(F&& f, double a, double b, const std::vector<double>& breaks = {},
                     const QuadControl& ctl = {}) {
    QuadResult out;
    if (!(b > a)) return out;
    auto g = [&](double x) { return cplx(f(x)); };
    auto pts = detail::cut_points(a, b, breaks);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        auto r = detail::adaptive_gk(g, pts[i], pts[i + 1], ctl);
        out.value += r.value;
        out.error += r.error;
    }
    return out;
}

// Integral of f over [a,b] inside (0,inf) computed in the variable s = ln t.
template <class F>
QuadResult integrate_log(F&& f, double a, double b, const std::vector<double>& breaks = {},
                         const QuadControl& ctl = {}) {
    if (!(a > 0.0)) throw domain_error("integrate_log needs a > 0");
    std::vector<double> lb;
    for (double x : breaks)
        if (x > 0.0) lb.push_back(std::log(x));
    auto g = [&](double s) {
        double t = std::exp(s);
        return cplx(f(t)) * t;
    };
    return integrate(g, std::log(a), std::log(b), lb, ctl);
}

// Sum over (a,b] with 0 <= a < b <= inf of contributions slab(lo,hi) over (lo,hi].
// Open ends are approached by growing the window [lo,hi] by ctl.expand_factor until two
// consecutive increments satisfy |delta| < rel_tol*(1+|value|); divergence_error otherwise.
template <class Slab>
QuadResult accumulate_positive(Slab&& slab, double a, double b, double lo, double hi,
                               const QuadControl& ctl = {}) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    constexpr double tiny = 1e-300, huge = 1e300;
    if (a < 0.0 || !(b > a)) throw domain_error("improper range needs 0 <= a < b");
    lo = std::max(lo, a);
    hi = std::min(hi, b);
    if (!(hi > lo)) {
        lo = a > 0.0 ? a : (b < inf ? b / ctl.expand_factor : 1.0);
        hi = b < inf ? b : std::max(ctl.expand_factor * lo, 1.0);
    }
    QuadResult acc = slab(lo, hi);
    bool open_lo = lo > a, open_hi = hi < b;
    int quiet = 0;
    for (int k = 0; open_lo || open_hi; ++k) {
        if (k >= ctl.max_expansions)
            throw divergence_error("improper integral did not settle within the window budget",
                                   acc.value);
        QuadResult d;
        if (open_lo) {
            double nlo = std::max({lo / ctl.expand_factor, a, tiny});
            auto r = slab(nlo, lo);
            d.value += r.value;
            d.error += r.error;
            lo = nlo;
            if (lo <= a) open_lo = false;
            else if (lo <= tiny) throw divergence_error("window reached the underflow floor", acc.value);
        }
        if (open_hi) {
            double nhi = std::min({hi * ctl.expand_factor, b, huge});
            auto r = slab(hi, nhi);
            d.value += r.value;
            d.error += r.error;
            hi = nhi;
            if (hi >= b) open_hi = false;
            else if (hi >= huge) throw divergence_error("window reached the overflow ceiling", acc.value);
        }
        acc.value += d.value;
        acc.error += d.error;
        if (std::abs(d.value) < ctl.rel_tol * (1.0 + std::abs(acc.value))) {
            if (++quiet >= 2) break;
        } else {
            quiet = 0;
        }
    }
    return acc;
}

// Integral of f over (a,b), 0 <= a < b <= inf, seeded on [lo,hi]; see accumulate_positive.
template <class F>
QuadResult integrate_positive(F&& f, double a, double b, double lo, double hi,
                              const std::vector<double>& breaks = {}, const QuadControl& ctl = {}) {
    auto slab = [&](double l, double h) { return integrate_log(f, l, h, breaks, ctl); };
    return accumulate_positive(slab, a, b, lo, hi, ctl);
}

}  // namespace karamata
