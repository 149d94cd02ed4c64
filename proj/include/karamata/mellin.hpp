#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "kernel.hpp"
#include "limit_set.hpp"
#include "measure.hpp"
#include "proximate_order.hpp"
#include "quadrature.hpp"

namespace karamata {

namespace detail {

// int K(t/r) d mu(t) over the content of (l,h]
inline QuadResult psi_content(const Kernel& K, const MeasureContent& c, double r,
                              const QuadControl& ctl) {
    QuadResult out;
    for (const auto& a : c.atoms) out.value += K(a.x / r) * a.w;
    std::vector<double> br;
    for (double b : K.breakpoints()) br.push_back(b * r);
    for (const auto& p : c.pieces) {
        auto g = [&](double t) { return K(t / r) * p.f(t); };
        QuadResult q;
        if (p.a > 0.0 && std::isfinite(p.b)) {
            q = integrate_log(g, p.a, p.b, br, ctl);
        } else {
            double lo = p.a > 0.0 ? p.a : std::min(r, std::isfinite(p.b) ? p.b : r) / 4.0;
            double hi = std::isfinite(p.b) ? p.b : std::max(4.0 * r, 4.0 * lo);
            q = integrate_positive(g, p.a, p.b, lo, hi, br, ctl);
        }
        out.value += q.value;
        out.error += q.error;
    }
    return out;
}

}  // namespace detail

// Psi(r) = int K(t/r) d mu(t), memoised per r.
class PsiFunction {
public:
    PsiFunction(Kernel K, RadonMeasure mu, QuadControl ctl = {})
        : K_(std::move(K)), mu_(std::move(mu)), ctl_(ctl), cache_(std::make_shared<Cache>()) {}

    const Kernel& kernel() const { return K_; }
    const RadonMeasure& measure() const { return mu_; }
    const QuadControl& control() const { return ctl_; }

    cplx operator()(double r) const {
        {
            std::lock_guard<std::mutex> lk(cache_->m);
            auto it = cache_->v.find(r);
            if (it != cache_->v.end()) return it->second;
        }
        cplx v = evaluate(r);
        std::lock_guard<std::mutex> lk(cache_->m);
        cache_->v[r] = v;
        return v;
    }

    cplx evaluate(double r) const {
        if (!(r > 0.0) || !std::isfinite(r)) throw domain_error("r must be positive and finite");
        if (mu_.empty()) return {};
        double a = K_.support_lo() * r, b = K_.support_hi() * r;
        auto slab = [&](double l, double h) {
            return detail::psi_content(K_, mu_.materialize(l, h), r, ctl_);
        };
        if (a > 0.0 && std::isfinite(b)) return slab(a, b).value;
        // a term may only be defined on a bounded window; integrate it whole there
        if (!mu_.unbounded_window()) return slab(a, b).value;
        double lo = std::max(a, r / 4.0), hi = std::min(b, 4.0 * r);
        if (!(hi > lo)) {
            lo = a > 0.0 ? a : b / 4.0;
            hi = std::isfinite(b) ? b : 4.0 * a;
        }
        return accumulate_positive(slab, a, b, lo, hi, ctl_).value;
    }

private:
    struct Cache {
        std::mutex m;
        std::unordered_map<double, cplx> v;
    };
    Kernel K_;
    RadonMeasure mu_;
    QuadControl ctl_;
    std::shared_ptr<Cache> cache_;
};

inline cplx eval_psi(const PsiFunction& p, double r) { return p(r); }

// int K d nu
inline cplx kernel_integral(const Kernel& K, const RadonMeasure& nu, const QuadControl& ctl = {}) {
    return PsiFunction(K, nu, ctl).evaluate(1.0);
}

// ---- cluster values of J = Psi/V ----

struct JLimitReport {
    std::vector<double> r;
    std::vector<cplx> J;
    std::vector<std::size_t> used;
    std::vector<cplx> values;  // one per cluster (newest member)
};

// Complete-linkage clusters of complex numbers with diameter <= eps, newest first.
inline std::vector<std::vector<std::size_t>> cluster_points(const std::vector<cplx>& z,
                                                            const std::vector<std::size_t>& order,
                                                            double eps) {
    std::vector<std::vector<std::size_t>> cl;
    for (auto i : order) {
        bool placed = false;
        for (auto& c : cl) {
            bool ok = std::all_of(c.begin(), c.end(),
                                  [&](std::size_t j) { return std::abs(z[i] - z[j]) <= eps; });
            if (ok) {
                c.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) cl.push_back({i});
    }
    return cl;
}

inline JLimitReport limit_values_J(const PsiFunction& p, const ProximateOrder& o,
                                   const std::vector<double>& schedule, double eps = 1e-6,
                                   const LimitSetOptions& opt = {}) {
    if (schedule.size() < 10) throw input_error("schedule needs at least 10 points");
    JLimitReport rep;
    for (double r : schedule) {
        rep.r.push_back(r);
        rep.J.push_back(p(r) / o.V(r));
    }
    double tmax = schedule.back();
    std::size_t skip = std::size_t(std::floor(opt.transient_fraction * schedule.size()));
    for (std::size_t i = schedule.size(); i-- > skip;)
        if (schedule[i] >= tmax * std::pow(10.0, -opt.top_decades)) rep.used.push_back(i);
    if (rep.used.empty()) throw input_error("no samples left after the transient cut");
    for (auto& c : cluster_points(rep.J, rep.used, eps)) rep.values.push_back(rep.J[c.front()]);
    return rep;
}

// max over both sets of the distance to the nearest point of the other set
inline double hausdorff_distance(const std::vector<cplx>& A, const std::vector<cplx>& B) {
    if (A.empty() || B.empty()) return A.empty() && B.empty() ? 0.0 : kInf;
    auto one = [](const auto& X, const auto& Y) {
        double w = 0.0;
        for (auto x : X) {
            double b = kInf;
            for (auto y : Y) b = std::min(b, std::abs(x - y));
            w = std::max(w, b);
        }
        return w;
    };
    return std::max(one(A, B), one(B, A));
}

// ---- neutralization ----

struct NeutralizationRow {
    double cut;  // eps (zero side) or N (infinity side)
    double sup;  // top-decade sup over r of |int K d mu_r| on the cut-off part
};

struct NeutralizationReport {
    std::vector<NeutralizationRow> zero_side, inf_side;
    bool pass_zero = true, pass_inf = true;
    bool pass() const { return pass_zero && pass_inf; }
};

namespace detail {

// Non-increasing along the list within 10%, finite, and the last value at most half the
// first (or everything at the noise floor).
inline bool decays(const std::vector<NeutralizationRow>& rows) {
    if (rows.empty()) return true;
    for (auto& r : rows)
        if (!std::isfinite(r.sup)) return false;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].sup > 1.1 * rows[i - 1].sup + 1e-12) return false;
    return rows.back().sup <= 0.5 * rows.front().sup || rows.front().sup <= 1e-12;
}

}  // namespace detail

inline NeutralizationReport neutralization_check(const Kernel& K, const ProximateOrder& o,
                                                 const RadonMeasure& m,
                                                 std::vector<double> eps_grid,
                                                 std::vector<double> N_grid,
                                                 const std::vector<double>& r_grid,
                                                 const QuadControl& ctl = {}) {
    if (r_grid.empty()) throw domain_error("empty r grid");
    std::sort(eps_grid.begin(), eps_grid.end(), std::greater<>());
    std::sort(N_grid.begin(), N_grid.end());
    double rmax = *std::max_element(r_grid.begin(), r_grid.end());
    auto part = [&](double r, double a, double b) -> double {
        // |(1/V(r)) int_{(ar, br]} K(t/r) d mu(t)|
        auto slab = [&](double l, double h) {
            return detail::psi_content(K, m.materialize(l, h), r, ctl);
        };
        try {
            QuadResult q;
            if (a > 0.0 && std::isfinite(b)) q = slab(a * r, b * r);
            else q = accumulate_positive(slab, a * r, b * r, std::max(a * r, b * r / 4.0),
                                         std::isfinite(b) ? b * r : 4.0 * a * r, ctl);
            return std::abs(q.value) / o.V(r);
        } catch (const divergence_error&) {
            return kInf;
        }
    };
    NeutralizationReport rep;
    for (double e : eps_grid) {
        double s = 0.0;
        for (double r : r_grid)
            if (r >= rmax / 10.0) s = std::max(s, part(r, 0.0, e));
        rep.zero_side.push_back({e, s});
    }
    for (double N : N_grid) {
        double s = 0.0;
        for (double r : r_grid)
            if (r >= rmax / 10.0) s = std::max(s, part(r, N, kInf));
        rep.inf_side.push_back({N, s});
    }
    rep.pass_zero = detail::decays(rep.zero_side);
    rep.pass_inf = detail::decays(rep.inf_side);
    return rep;
}

// ---- integrability of t^{rho-1} gamma(t) |K(t)| ----

struct IntegrabilityReport {
    double l1 = 0.0;
    bool l1_converged = false;
    double amalgam = 0.0;  // sum e^{n rho} gamma(e^n) K_n
    bool amalgam_converged = false;
    int n_lo = 0, n_hi = 0;  // range of n summed
    bool pass() const { return l1_converged && amalgam_converged; }
};

inline IntegrabilityReport integrability_conditions(const Kernel& K, const ProximateOrder& o,
                                                    const QuadControl& ctl = {}) {
    IntegrabilityReport rep;
    double rho = o.rho();
    auto g = [&](double t) {
        double k = std::abs(K(t));
        if (k == 0.0) return 0.0;
        return std::exp((rho - 1.0) * std::log(t)) * gamma_upper(o, t) * k;
    };
    try {
        QuadControl c = ctl;
        c.max_expansions = std::min(c.max_expansions, 40);
        double a = K.support_lo(), b = K.support_hi();
        QuadResult q;
        if (a > 0.0 && std::isfinite(b)) q = integrate_log(g, a, b, K.breakpoints(), c);
        else q = integrate_positive(g, a, b, std::max(a, 0.25), std::isfinite(b) ? b : 4.0,
                                    K.breakpoints(), c);
        rep.l1 = q.value.real();
        rep.l1_converged = true;
    } catch (const divergence_error& e) {
        rep.l1 = kInf;
        rep.l1_converged = false;
    }
    // amalgam series, K_n = sup over (e^n, e^{n+1}] by a 64-point grid plus breakpoints
    auto Kn = [&](int n) {
        double lo = std::exp(double(n)), hi = std::exp(double(n + 1)), s = 0.0;
        for (int i = 1; i <= 64; ++i) s = std::max(s, std::abs(K(lo * std::pow(hi / lo, i / 64.0))));
        for (double b : K.breakpoints())
            if (b > lo && b <= hi) s = std::max(s, std::abs(K(b)));
        return s;
    };
    auto term = [&](int n) {
        double k = Kn(n);
        if (k == 0.0) return 0.0;
        return std::exp(n * rho) * gamma_upper(o, std::exp(double(n))) * k;
    };
    double sum = term(0);
    constexpr int n_max = 300;
    bool up_done = false, down_done = false;
    int quiet_up = 0, quiet_down = 0;
    for (int k = 1; k <= n_max && !(up_done && down_done); ++k) {
        if (!up_done) {
            double v = term(k);
            sum += v;
            rep.n_hi = k;
            quiet_up = v <= 1e-13 * sum ? quiet_up + 1 : 0;
            up_done = quiet_up >= 3;
        }
        if (!down_done) {
            double v = term(-k);
            sum += v;
            rep.n_lo = -k;
            quiet_down = v <= 1e-13 * sum ? quiet_down + 1 : 0;
            down_done = quiet_down >= 3;
        }
    }
    rep.amalgam = sum;
    rep.amalgam_converged = up_done && down_done && std::isfinite(sum);
    return rep;
}

// ---- the measure ds = Psi(t) dt ----

// Psi tabulated on (lo, hi] at per_efold nodes per unit of ln t; the table stores
// Psi(t)/t^power so that power-law growth is interpolated exactly.
inline RadonMeasure build_s_measure(const PsiFunction& p, double lo, double hi, int per_efold = 40,
                                    double power = 0.0) {
    if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi) || per_efold < 1)
        throw domain_error("s window needs 0 < lo < hi < inf");
    double L0 = std::log(lo), L1 = std::log(hi);
    int n = std::max(2, int(std::ceil((L1 - L0) * per_efold)));
    DensityTable tb;
    tb.power = power;
    for (int i = 0; i <= n; ++i) {
        double l = L0 + (L1 - L0) * i / n;
        tb.log_t.push_back(l);
        tb.values.push_back(p(std::exp(l)) * std::exp(-power * l));
    }
    return RadonMeasure::make({{}, {Piece{lo, hi, Density::table(std::move(tb))}}}, TailRule::none(),
                              lo, hi);
}

// density of m at u (sum over pieces whose interior contains u)
inline cplx density_at(const RadonMeasure& m, double u) {
    cplx s{};
    for (auto& p : m.materialize(u * (1 - 1e-9), u * (1 + 1e-9)).pieces) s += p.f(u);
    return s;
}

struct SLimitRow {
    std::size_t cluster;
    double t, u;
    cplx s_density, predicted;
    double rel_err;
};

struct SLimitOptions {
    LimitSetOptions limit_set;
    double rel_tol = 0.01;
    int per_efold = 40;
    int class_per_decade = 20;
};

struct SLimitReport {
    ClassReport s_class;
    bool mu_regular = false;
    RegularFitReport mu_fit;
    bool s_regular = false;
    RegularFitReport s_fit;
    std::vector<SLimitRow> rows;
    double max_rel_err = 0.0;
    bool pass = false;
};

// s-limit densities against u -> int K(t/u) d nu(t). nu is the fitted c x^{rho-1} dx when
// the mu limit set is a single cluster, otherwise the mu sample taken at the same time.
inline SLimitReport verify_s_limit(const PsiFunction& p, const ProximateOrder& o,
                                   const std::vector<double>& schedule,
                                   const std::vector<double>& u_samples, const MetricFamily& fam,
                                   const SLimitOptions& opt = {}) {
    SLimitReport rep;
    double lo = schedule.front() * fam.window_lo() / 2.0;
    double hi = schedule.back() * fam.window_hi() * 2.0;
    for (double u : u_samples) {
        lo = std::min(lo, schedule.front() * u / 2.0);
        hi = std::max(hi, schedule.back() * u * 2.0);
    }
    auto s = build_s_measure(p, lo, hi, opt.per_efold, o.rho());
    auto o1 = o.shifted(1.0);

    std::vector<double> rg;
    for (double r = lo; r * std::exp(1.0) <= hi; r *= std::pow(10.0, 1.0 / opt.class_per_decade))
        rg.push_back(r);
    rep.s_class = class_membership(s, o1, MeasureClass::Everywhere, rg, 0.05, p.control());

    auto tr_mu = sample_trajectory(p.measure(), o, schedule, fam, p.control());
    auto est_mu = estimate_limit_set(tr_mu, opt.limit_set);
    auto tr_s = sample_trajectory(s, o1, schedule, fam, p.control());
    auto est_s = estimate_limit_set(tr_s, opt.limit_set);
    rep.mu_regular = est_mu.regular;
    rep.s_regular = est_s.regular;
    if (est_mu.regular) rep.mu_fit = verify_regular_limit_form(tr_mu, est_mu, o);
    if (est_s.regular) rep.s_fit = verify_regular_limit_form(tr_s, est_s, o1);

    std::unique_ptr<PsiFunction> regular_pred;
    if (est_mu.regular)
        regular_pred = std::make_unique<PsiFunction>(
            p.kernel(),
            RadonMeasure::density(0.0, kInf, Density::power(rep.mu_fit.c, o.rho() - 1.0)),
            p.control());
    for (std::size_t k = 0; k < est_s.clusters.size(); ++k) {
        std::size_t idx = est_s.clusters[k].representative;
        const auto& smp = tr_s.samples[idx];
        PsiFunction same_time(p.kernel(), tr_mu.samples[idx].measure, p.control());
        for (double u : u_samples) {
            cplx sd = density_at(smp.measure, u);
            cplx pr = regular_pred ? (*regular_pred)(u) : same_time(u);
            double err = std::abs(sd - pr) / std::max(std::abs(pr), 1e-300);
            if (std::abs(pr) == 0.0 && std::abs(sd) == 0.0) err = 0.0;
            rep.rows.push_back({k, smp.t, u, sd, pr, err});
            rep.max_rel_err = std::max(rep.max_rel_err, err);
        }
    }
    rep.pass = rep.s_class.bounded && rep.max_rel_err <= opt.rel_tol;
    return rep;
}

// ---- canonical antiderivatives and the F_n chain ----

struct ScalarFunction {
    std::function<cplx(double)> f;
    std::vector<double> breaks;
};

enum class AntiderivativeBranch { FromInfinity, FromZero };

// F(t) = anchor + int_1^t f, with anchor = -int_1^inf f or int_0^1 f.
class CanonicalAntiderivative {
public:
    CanonicalAntiderivative(ScalarFunction f, AntiderivativeBranch b, cplx anchor, QuadControl ctl)
        : f_(std::make_shared<ScalarFunction>(std::move(f))), branch_(b), anchor_(anchor), ctl_(ctl) {}

    AntiderivativeBranch branch() const { return branch_; }
    cplx anchor() const { return anchor_; }

    cplx operator()(double t) const {
        if (!(t > 0.0)) throw domain_error("antiderivative argument must be positive");
        if (t == 1.0) return anchor_;
        if (t > 1.0) return anchor_ + integrate_log(f_->f, 1.0, t, f_->breaks, ctl_).value;
        return anchor_ - integrate_log(f_->f, t, 1.0, f_->breaks, ctl_).value;
    }

    // values on an increasing grid, accumulated interval by interval
    std::vector<cplx> on_sorted_grid(const std::vector<double>& grid) const {
        std::vector<cplx> out;
        if (grid.empty()) return out;
        cplx v = (*this)(grid.front());
        out.push_back(v);
        for (std::size_t i = 1; i < grid.size(); ++i) {
            if (!(grid[i] > grid[i - 1])) throw domain_error("grid must increase");
            v += integrate_log(f_->f, grid[i - 1], grid[i], f_->breaks, ctl_).value;
            out.push_back(v);
        }
        return out;
    }

    ScalarFunction as_function() const {
        auto self = *this;
        return {[self](double t) { return self(t); }, f_->breaks};
    }

private:
    std::shared_ptr<ScalarFunction> f_;
    AntiderivativeBranch branch_;
    cplx anchor_;
    QuadControl ctl_;
};

// Control used when probing which branch applies; oscillating tails are expensive to
// integrate far out, so the probe stops earlier than ordinary evaluations.
inline QuadControl branch_probe_control(const QuadControl& ctl) {
    QuadControl p = ctl;
    p.max_expansions = std::min(ctl.max_expansions, 24);
    p.max_depth = std::min(ctl.max_depth, 15);
    return p;
}

inline CanonicalAntiderivative canonical_antiderivative(ScalarFunction f, const QuadControl& ctl = {}) {
    auto probe = branch_probe_control(ctl);
    try {
        auto tail = integrate_positive(f.f, 1.0, kInf, 1.0, 4.0, f.breaks, probe);
        return {std::move(f), AntiderivativeBranch::FromInfinity, -tail.value, ctl};
    } catch (const divergence_error&) {
    }
    try {
        auto head = integrate_positive(f.f, 0.0, 1.0, 0.25, 1.0, f.breaks, probe);
        return {std::move(f), AntiderivativeBranch::FromZero, head.value, ctl};
    } catch (const divergence_error& e) {
        throw divergence_error("no canonical antiderivative: both int_t^inf and int_0^t diverge",
                               e.partial);
    }
}

namespace detail {

// int_{(a,b]} g d mu for 0 < a < b < inf
template <class G>
cplx integrate_against(const RadonMeasure& m, G&& g, double a, double b, const QuadControl& ctl) {
    cplx s{};
    if (!(b > a)) return s;
    auto c = m.materialize(a, b);
    for (const auto& at : c.atoms) s += g(at.x) * at.w;
    for (const auto& p : c.pieces) {
        auto h = [&](double x) { return g(x) * p.f(x); };
        s += integrate_log(h, p.a, p.b, {}, ctl).value;
    }
    return s;
}

}  // namespace detail

// F_0 = -mu((t,inf)) when finite, else mu((0,t]); F_{k+1} the canonical antiderivative of F_k.
// With A_k = F_k(1) the chain has the closed form
//   F_n(t) = sum_j A_j (t-1)^{n-j}/(n-j)! + int_1^t (t-x)^n/n! d mu(x)   (oriented integral),
// so each level costs one quadrature against mu. The anchors A_k follow the canonical rule.
struct FChain {
    std::vector<ScalarFunction> F;
    std::vector<AntiderivativeBranch> branch;
    std::vector<cplx> anchor;
};

inline FChain build_F_chain(const RadonMeasure& mu, int n, double break_lo = 1e-3,
                            double break_hi = 1e3, const QuadControl& ctl = {}) {
    if (n < 0) throw domain_error("chain length must be >= 0");
    FChain ch;
    auto probe = branch_probe_control(ctl);
    auto breaks = mu.breakpoints(break_lo, break_hi);
    breaks.push_back(1.0);
    std::sort(breaks.begin(), breaks.end());
    try {
        ch.anchor.push_back(-mass(mu, 1.0, kInf, probe));
        ch.branch.push_back(AntiderivativeBranch::FromInfinity);
    } catch (const divergence_error&) {
        try {
            ch.anchor.push_back(mass(mu, 0.0, 1.0, probe));
            ch.branch.push_back(AntiderivativeBranch::FromZero);
        } catch (const divergence_error& e) {
            throw divergence_error("F_0 undefined: mu((t,inf)) and mu((0,t]) both diverge", e.partial);
        }
    }
    auto level = [mu, ctl](int k, std::vector<cplx> A, bool tail_form) {
        return [mu, ctl, k, A = std::move(A), tail_form](double t) -> cplx {
            if (!(t > 0.0)) throw domain_error("F_n argument must be positive");
            if (tail_form) {
                // every level so far came from infinity: F_k(t) = (-1)^{k+1} int_(t,inf) (x-t)^k/k! dmu,
                // which avoids the cancellation between A_j and the integral for large t
                double kf = std::tgamma(k + 1.0);
                auto g = [t, k, kf](double x) { return std::pow(x - t, double(k)) / kf; };
                auto slab = [&](double l, double h) {
                    QuadResult q;
                    q.value = detail::integrate_against(mu, g, l, h, ctl);
                    return q;
                };
                cplx v = accumulate_positive(slab, t, kInf, t, 4.0 * t, ctl).value;
                return k % 2 ? v : -v;
            }
            cplx v{};
            double fact = 1.0;
            for (int j = k; j >= 0; --j) {
                // A_j (t-1)^{k-j}/(k-j)!
                if (k - j > 0) fact *= double(k - j);
                v += A[j] * std::pow(t - 1.0, double(k - j)) / fact;
            }
            double kf = std::tgamma(k + 1.0);
            auto g = [t, k, kf](double x) { return std::pow(t - x, double(k)) / kf; };
            if (t > 1.0) v += detail::integrate_against(mu, g, 1.0, t, ctl);
            else if (t < 1.0) v -= detail::integrate_against(mu, g, t, 1.0, ctl);
            return v;
        };
    };
    auto all_from_inf = [&] {
        return std::all_of(ch.branch.begin(), ch.branch.end(),
                           [](auto b) { return b == AntiderivativeBranch::FromInfinity; });
    };
    ch.F.push_back({level(0, ch.anchor, all_from_inf()), breaks});
    for (int k = 1; k <= n; ++k) {
        const auto& f = ch.F.back();
        try {
            auto tail = integrate_positive(f.f, 1.0, kInf, 1.0, 4.0, f.breaks, probe);
            ch.anchor.push_back(-tail.value);
            ch.branch.push_back(AntiderivativeBranch::FromInfinity);
        } catch (const divergence_error&) {
            try {
                auto head = integrate_positive(f.f, 0.0, 1.0, 0.25, 1.0, f.breaks, probe);
                ch.anchor.push_back(head.value);
                ch.branch.push_back(AntiderivativeBranch::FromZero);
            } catch (const divergence_error& e) {
                throw divergence_error("F_" + std::to_string(k) + " has no canonical antiderivative",
                                       e.partial);
            }
        }
        ch.F.push_back({level(k, ch.anchor, all_from_inf()), breaks});
    }
    return ch;
}

struct FnIdentityRow {
    int n;
    double r;
    cplx lhs, rhs;
    double rel_err;
};

struct FnIdentityReport {
    std::vector<FnIdentityRow> rows;
    std::vector<AntiderivativeBranch> branches;
    double worst = 0.0;
    bool pass = false;
};

// (-1)^{n+1} r^{n+1} Psi(r) = int K^{(n+1)}(t/r) F_n(t) dt
inline FnIdentityReport check_Fn_identity(const Kernel& K, const RadonMeasure& mu,
                                          const std::vector<int>& ns, const std::vector<double>& rs,
                                          double tol = 1e-6, const QuadControl& ctl = {}) {
    if (K.smoothness() != Kernel::Smoothness::Smooth || !K.finite())
        throw precondition_error("F_n identity needs a smooth kernel with compact support");
    int nmax = 0;
    for (int n : ns) {
        if (n < 0 || n + 1 > Kernel::max_derivative) throw domain_error("n out of range");
        nmax = std::max(nmax, n);
    }
    if (variation_mass(mu, 1e-300, 1.0, ctl) != 0.0)
        throw precondition_error("F_n identity is set up for measures carried by (1,inf)");
    FnIdentityReport rep;
    auto ch = build_F_chain(mu, nmax, 1.0, 1e3, ctl);
    rep.branches = ch.branch;
    PsiFunction psi(K, mu, ctl);
    for (int n : ns)
        for (double r : rs) {
            cplx lhs = ((n + 1) % 2 ? -1.0 : 1.0) * std::pow(r, n + 1) * psi(r);
            std::vector<double> br;
            for (double b : K.breakpoints()) br.push_back(b * r);
            for (double b : ch.F[n].breaks) br.push_back(b);
            const auto& Fn = ch.F[n].f;
            auto g = [&](double t) { return K.derivative(n + 1, t / r) * Fn(t); };
            cplx rhs = integrate(g, K.support_lo() * r, K.support_hi() * r, br, ctl).value;
            double scale = std::max(std::abs(lhs), std::abs(rhs));
            double err = scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
            rep.rows.push_back({n, r, lhs, rhs, err});
            rep.worst = std::max(rep.worst, err);
        }
    rep.pass = rep.worst <= tol;
    return rep;
}

// ---- stable proximate orders ----

struct StableOrderReport {
    AntiderivativeBranch branch;
    std::vector<DensitySample> samples;  // |F(r)|/(r V(r))
    double top_decade_max = 0.0, prev_decade_max = 0.0;
    bool stable = false;
};

// Stable when the top-decade max of |F(r)|/(rV(r)) stays above 10x the quadrature tolerance
// and does not fall below half of the previous decade's max.
inline StableOrderReport stable_order_check(const ScalarFunction& f, const ProximateOrder& o,
                                            std::vector<double> r_grid, const QuadControl& ctl = {}) {
    if (o.rho() == -1.0) throw precondition_error("stable order check needs rho != -1");
    if (r_grid.empty()) throw domain_error("empty r grid");
    std::sort(r_grid.begin(), r_grid.end());
    StableOrderReport rep;
    auto F = canonical_antiderivative(f, ctl);
    rep.branch = F.branch();
    auto vals = F.on_sorted_grid(r_grid);
    double rmax = r_grid.back();
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        double r = r_grid[i];
        double v = std::abs(vals[i]) / (r * o.V(r));
        rep.samples.push_back({r, v});
        if (r >= rmax / 10.0) rep.top_decade_max = std::max(rep.top_decade_max, v);
        else if (r >= rmax / 100.0) rep.prev_decade_max = std::max(rep.prev_decade_max, v);
    }
    rep.stable = rep.top_decade_max > 10.0 * ctl.rel_tol &&
                 rep.top_decade_max >= 0.5 * rep.prev_decade_max;
    return rep;
}

// ---- Psi as a zero-order growth scale ----

struct PsiOrderRow {
    double r;
    double log_derivative;  // r Psi'(r)/Psi(r)
    double gap;             // Psi(2r) - Psi(r)
    double gap_bound;       // m mu([r,2r])
};

struct PsiOrderReport {
    std::vector<PsiOrderRow> rows;
    double m = 0.0;  // min over [1,2] of K(u/2) - K(u)
    double top_decade_max = 0.0, prev_decade_max = 0.0;
    bool trend_to_zero = false;
    bool gap_bound_holds = true;
    bool pass() const { return trend_to_zero && gap_bound_holds; }
};

inline PsiOrderReport psi_proximate_order_diagnostic(const PsiFunction& p, std::vector<double> r_grid) {
    if (r_grid.empty()) throw domain_error("empty r grid");
    std::sort(r_grid.begin(), r_grid.end());
    PsiOrderReport rep;
    const auto& K = p.kernel();
    rep.m = kInf;
    for (int i = 0; i <= 200; ++i) {
        double u = 1.0 + i / 200.0;
        rep.m = std::min(rep.m, K(u / 2.0) - K(u));
    }
    constexpr double h = 1e-4;
    double rmax = r_grid.back();
    for (double r : r_grid) {
        cplx P = p(r);
        cplx d = (p(r * std::exp(h)) - p(r * std::exp(-h))) / (2.0 * h);
        double ld = std::abs(d / P);
        double gap = (p(2.0 * r) - P).real();
        double bound = rep.m * mass(p.measure(), r * (1 - 1e-12), 2.0 * r, p.control()).real();
        rep.rows.push_back({r, ld, gap, bound});
        if (gap < bound - 1e-9 * (1.0 + std::abs(bound))) rep.gap_bound_holds = false;
        if (r >= rmax / 10.0) rep.top_decade_max = std::max(rep.top_decade_max, ld);
        else if (r >= rmax / 100.0) rep.prev_decade_max = std::max(rep.prev_decade_max, ld);
    }
    rep.trend_to_zero = rep.top_decade_max < 0.99 * rep.prev_decade_max;
    return rep;
}

// Psi(r) = int e^{-t/r} d mu against mu((0,r]) on the same grid; both are compared with V
// and the gap |Psi(r) - mu((0,r])| with Psi(2r) - Psi(r).
struct HardyRow {
    double r, psi, mass, V;
    double gap_ratio;  // |Psi - mu((0,r])| / (Psi(2r) - Psi(r))
};

struct HardyReport {
    std::vector<HardyRow> rows;
    double psi_over_V = 0.0, mass_over_V = 0.0;  // at the largest r
    double top_gap_ratio = 0.0, prev_gap_ratio = 0.0;
    bool pass = false;
};

inline HardyReport hardy_check(const RadonMeasure& mu, const ProximateOrder& o,
                               std::vector<double> r_grid, double tol = 0.2,
                               const QuadControl& ctl = {}) {
    if (r_grid.empty()) throw domain_error("empty r grid");
    std::sort(r_grid.begin(), r_grid.end());
    PsiFunction p(Kernel::exp(), mu, ctl);
    HardyReport rep;
    double rmax = r_grid.back();
    for (double r : r_grid) {
        double P = p(r).real(), M = mass(mu, 0.0, r, ctl).real();
        double g = std::abs(P - M) / (p(2.0 * r).real() - P);
        rep.rows.push_back({r, P, M, o.V(r), g});
        if (r >= rmax / 10.0) rep.top_gap_ratio = std::max(rep.top_gap_ratio, g);
        else if (r >= rmax / 100.0) rep.prev_gap_ratio = std::max(rep.prev_gap_ratio, g);
    }
    rep.psi_over_V = rep.rows.back().psi / rep.rows.back().V;
    rep.mass_over_V = rep.rows.back().mass / rep.rows.back().V;
    rep.pass = std::abs(rep.psi_over_V - 1.0) <= tol && std::abs(rep.mass_over_V - 1.0) <= tol &&
               rep.top_gap_ratio <= 2.0 * rep.prev_gap_ratio + 1e-12;
    return rep;
}

// Pairings of phi chi_(0,xi] and phi chi_(xi,inf) against nu.
inline std::pair<cplx, cplx> split_pairing(const RadonMeasure& nu, const TestFunction& phi,
                                           double xi = 1.0, const QuadControl& ctl = {}) {
    auto c = nu.materialize(phi.a, phi.b);
    MeasureContent left, right;
    for (auto& a : c.atoms) (a.x <= xi ? left : right).atoms.push_back(a);
    for (auto& p : c.pieces) {
        if (p.a < xi) left.pieces.push_back({p.a, std::min(p.b, xi), p.f});
        if (p.b > xi) right.pieces.push_back({std::max(p.a, xi), p.b, p.f});
    }
    return {pair_content(left, phi, ctl), pair_content(right, phi, ctl)};
}

}  // namespace karamata
