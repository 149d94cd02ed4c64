#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "errors.hpp"
#include "measure.hpp"
#include "proximate_order.hpp"

namespace karamata {

// t_k = t_min * q^k with per_decade points per factor 10, ending at t_max.
inline std::vector<double> geometric_schedule(double t_min, double t_max, int per_decade) {
    if (!(t_min >= 1.0) || !(t_max > t_min) || per_decade < 1)
        throw domain_error("geometric schedule needs 1 <= t_min < t_max and per_decade >= 1");
    int n = int(std::ceil(std::log10(t_max / t_min) * per_decade));
    std::vector<double> t;
    for (int k = 0; k <= n; ++k) t.push_back(t_min * std::pow(t_max / t_min, double(k) / n));
    return t;
}

// t = tau * T^m for every tau and m_min <= m <= m_max, sorted.
inline std::vector<double> lattice_schedule(const std::vector<double>& taus, double T, int m_min,
                                            int m_max) {
    if (!(T > 1.0) || m_max < m_min || taus.empty())
        throw domain_error("lattice schedule needs T > 1, m_min <= m_max and some tau");
    std::vector<double> t;
    for (int m = m_min; m <= m_max; ++m)
        for (double tau : taus) t.push_back(tau * std::pow(T, double(m)));
    std::sort(t.begin(), t.end());
    return t;
}

struct TrajectorySample {
    double t;
    RadonMeasure measure;        // full scaled measure mu_t
    std::vector<cplx> pairings;  // (mu_t, phi_n) over the metric family
};

struct Trajectory {
    MetricFamily family;
    std::vector<TrajectorySample> samples;
};

inline Trajectory sample_trajectory(const RadonMeasure& m, const ProximateOrder& o,
                                    const std::vector<double>& schedule, const MetricFamily& fam,
                                    const QuadControl& ctl = {}) {
    if (schedule.empty()) throw input_error("empty schedule");
    if (!(schedule.front() >= 1.0)) throw domain_error("schedule must start at t >= 1");
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if (!(schedule[i] > schedule[i - 1])) throw domain_error("schedule must be increasing");
    Trajectory tr{fam, {}};
    tr.samples.reserve(schedule.size());
    for (double t : schedule) {
        auto mt = azarin_scale(m, o, t);
        tr.samples.push_back({t, mt, pairing_vector(mt, fam, ctl)});
    }
    return tr;
}

struct LimitSetOptions {
    double eps_cluster = 1e-3;
    double transient_fraction = 0.2;  // leading share of the schedule always dropped
    double top_decades = 2.0;         // only t >= t_max / 10^top_decades is clustered
    double zero_threshold = 1e-8;     // all pairings below this => the zero measure
};

struct Cluster {
    std::vector<std::size_t> members;  // indices into the trajectory
    std::size_t representative;        // newest member
    double diameter = 0.0;
    bool is_zero = false;
};

struct LimitSetEstimate {
    std::vector<Cluster> clusters;
    std::vector<std::size_t> used;  // post-transient sample indices
    double eps_cluster = 1e-3;
    double min_rep_separation = kInf;
    bool regular = false;

    const TrajectorySample& rep(const Trajectory& tr, std::size_t k) const {
        return tr.samples[clusters[k].representative];
    }
};

// Greedy complete-linkage clustering, newest sample first: a sample joins the first
// cluster whose members are all within eps of it, so every cluster has diameter <= eps.
inline LimitSetEstimate estimate_limit_set(const Trajectory& tr, const LimitSetOptions& opt = {}) {
    if (tr.samples.size() < 10) throw input_error("trajectory needs at least 10 samples");
    LimitSetEstimate est;
    est.eps_cluster = opt.eps_cluster;
    double tmax = tr.samples.back().t;
    std::size_t skip = std::size_t(std::floor(opt.transient_fraction * tr.samples.size()));
    for (std::size_t i = skip; i < tr.samples.size(); ++i)
        if (tr.samples[i].t >= tmax * std::pow(10.0, -opt.top_decades)) est.used.push_back(i);
    if (est.used.empty()) throw input_error("no samples left after the transient cut");

    auto dist = [&](std::size_t i, std::size_t j) {
        return distance_from_pairings(tr.samples[i].pairings, tr.samples[j].pairings);
    };
    for (auto it = est.used.rbegin(); it != est.used.rend(); ++it) {
        std::size_t i = *it;
        bool placed = false;
        for (auto& c : est.clusters) {
            double worst = 0.0;
            for (auto j : c.members) worst = std::max(worst, dist(i, j));
            if (worst <= opt.eps_cluster) {
                c.members.push_back(i);
                c.diameter = std::max(c.diameter, worst);
                placed = true;
                break;
            }
        }
        if (!placed) est.clusters.push_back({{i}, i, 0.0, false});
    }
    for (auto& c : est.clusters) {
        const auto& p = tr.samples[c.representative].pairings;
        c.is_zero = std::all_of(p.begin(), p.end(),
                                [&](cplx v) { return std::abs(v) < opt.zero_threshold; });
    }
    for (std::size_t a = 0; a < est.clusters.size(); ++a)
        for (std::size_t b = a + 1; b < est.clusters.size(); ++b)
            est.min_rep_separation = std::min(
                est.min_rep_separation,
                dist(est.clusters[a].representative, est.clusters[b].representative));
    est.regular = est.clusters.size() == 1;
    return est;
}

// ---- flow invariance ----

struct FlowShiftResult {
    std::size_t cluster;
    double t;
    double nearest;  // min over representatives of d(F_t nu, nu')
};

struct FlowInvarianceReport {
    std::vector<FlowShiftResult> rows;
    double worst = 0.0;
    bool pass = true;
};

// F_t nu(E) = nu(tE) / t^rho with rho = rho(inf). For a limit point nu = lim mu_{t_n},
// F_t nu = lim mu_{t_n t} because V(t_n t)/V(t_n) -> t^rho, so the check needs no
// reweighting even when the zero part is not identically zero.
inline FlowInvarianceReport check_flow_invariance(const Trajectory& tr, const LimitSetEstimate& est,
                                                  const ProximateOrder& o,
                                                  const std::vector<double>& shifts,
                                                  const QuadControl& ctl = {}) {
    FlowInvarianceReport rep;
    ProximateOrder flat(o.rho());
    for (std::size_t k = 0; k < est.clusters.size(); ++k) {
        const auto& nu = est.rep(tr, k).measure;
        for (double t : shifts) {
            auto p = pairing_vector(azarin_scale(nu, flat, t), tr.family, ctl);
            double best = kInf;
            for (std::size_t j = 0; j < est.clusters.size(); ++j)
                best = std::min(best, distance_from_pairings(p, est.rep(tr, j).pairings));
            rep.rows.push_back({k, t, best});
            rep.worst = std::max(rep.worst, best);
        }
    }
    rep.pass = rep.worst <= 2.0 * est.eps_cluster;
    return rep;
}

// ---- regular limit form c x^{rho-1} dx ----

struct RegularFitReport {
    cplx c{};
    double residual = 0.0;  // weighted relative residual of the pairings
    bool pass = false;
};

inline std::vector<cplx> power_pairings(double rho, const MetricFamily& fam,
                                        const QuadControl& ctl = {}) {
    auto nu = RadonMeasure::density(0.0, kInf, Density::power(1.0, rho - 1.0));
    return pairing_vector(nu, fam, ctl);
}

// Weighted (2^-n) least-squares fit p ~ c q; residual = |p - c q|_w / |p|_w.
inline RegularFitReport fit_power_limit(const std::vector<cplx>& p, const std::vector<cplx>& q,
                                        double tol = 1e-3) {
    RegularFitReport r;
    cplx num{};
    double den = 0.0, pn = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
        double w = std::ldexp(1.0, -int(n + 1));
        num += w * std::conj(q[n]) * p[n];
        den += w * std::norm(q[n]);
        pn += w * std::norm(p[n]);
    }
    r.c = den > 0.0 ? num / den : cplx{};
    if (pn == 0.0) {
        r.residual = 0.0;
    } else {
        double rn = 0.0;
        for (std::size_t n = 0; n < p.size(); ++n)
            rn += std::ldexp(1.0, -int(n + 1)) * std::norm(p[n] - r.c * q[n]);
        r.residual = std::sqrt(rn / pn);
    }
    r.pass = r.residual <= tol;
    return r;
}

inline RegularFitReport verify_regular_limit_form(const Trajectory& tr, const LimitSetEstimate& est,
                                                  const ProximateOrder& o, double tol = 1e-3,
                                                  const QuadControl& ctl = {}) {
    if (!est.regular) throw precondition_error("limit set has more than one cluster");
    return fit_power_limit(est.rep(tr, 0).pairings, power_pairings(o.rho(), tr.family, ctl), tol);
}

// ---- density envelope a^rho Nl(b/a - 1) <= nu([a,b]) <= a^rho N(b/a - 1) ----

struct EnvelopeRow {
    std::size_t cluster;
    double a, b, value, upper, lower;
    bool skipped;  // endpoint within 1e-6 of an atom
};

struct EnvelopeReport {
    std::vector<EnvelopeRow> rows;
    double worst = 0.0;  // largest violation
    bool pass = true;
};

inline EnvelopeReport verify_density_envelope(const Trajectory& tr, const LimitSetEstimate& est,
                                              const ProximateOrder& o,
                                              const std::function<double(double)>& N_upper,
                                              const std::function<double(double)>& N_lower,
                                              const std::vector<std::pair<double, double>>& intervals,
                                              double tol, const QuadControl& ctl = {}) {
    EnvelopeReport rep;
    for (std::size_t k = 0; k < est.clusters.size(); ++k) {
        const auto& nu = est.rep(tr, k).measure;
        for (auto [a, b] : intervals) {
            if (!(a > 0.0) || !(b > a)) throw domain_error("envelope intervals need 0 < a < b");
            EnvelopeRow row{k, a, b, 0.0, 0.0, 0.0, false};
            auto c = nu.materialize(a * (1 - 1e-3), b * (1 + 1e-3));
            for (auto& at : c.atoms)
                if (std::abs(at.x - a) < 1e-6 || std::abs(at.x - b) < 1e-6) row.skipped = true;
            if (!row.skipped) {
                cplx v = mass(nu, a * (1 - 1e-12), b, ctl);
                if (std::abs(v.imag()) > 1e-9 * (1 + std::abs(v.real())))
                    throw precondition_error("envelope check needs real measures");
                row.value = v.real();
                double s = std::pow(a, o.rho());
                row.upper = s * N_upper(b / a - 1.0);
                row.lower = s * N_lower(b / a - 1.0);
                double viol = std::max(row.value - row.upper, row.lower - row.value);
                rep.worst = std::max(rep.worst, viol);
            }
            rep.rows.push_back(row);
        }
    }
    rep.pass = rep.worst <= tol;
    return rep;
}

// ---- sigma envelope |nu|((0,r]) <= sigma r^rho, rho > 0 ----

// sigma = inf_{q>1} N1(q-1+0)/|q^rho - 1|, N1 the upper density of |mu|, over a q grid.
inline double sigma_hat(const RadonMeasure& m, const ProximateOrder& o, const std::vector<double>& q_grid,
                        const std::vector<double>& r_grid, const QuadControl& ctl = {}) {
    if (!(o.rho() > 0.0)) throw precondition_error("sigma envelope is stated for rho > 0");
    double best = kInf;
    double rmax = *std::max_element(r_grid.begin(), r_grid.end());
    for (double q : q_grid) {
        if (!(q > 1.0)) throw domain_error("q grid needs q > 1");
        double n1 = 0.0;
        for (double r : r_grid)
            if (r >= rmax / 10.0) n1 = std::max(n1, variation_mass(m, r, q * r, ctl) / o.V(r));
        best = std::min(best, n1 / std::abs(std::pow(q, o.rho()) - 1.0));
    }
    return best;
}

struct SigmaEnvelopeReport {
    double worst_ratio = 0.0;  // max |nu|((0,r]) / (sigma r^rho)
    bool pass = true;
};

inline SigmaEnvelopeReport check_sigma_envelope(const Trajectory& tr, const LimitSetEstimate& est,
                                                const ProximateOrder& o, double sigma,
                                                const std::vector<double>& r_list, double tol,
                                                const QuadControl& ctl = {}) {
    SigmaEnvelopeReport rep;
    for (std::size_t k = 0; k < est.clusters.size(); ++k)
        for (double r : r_list) {
            double v = variation_mass(est.rep(tr, k).measure, 0.0, r, ctl);
            rep.worst_ratio = std::max(rep.worst_ratio, v / (sigma * std::pow(r, o.rho())));
        }
    rep.pass = rep.worst_ratio <= 1.0 + tol;
    return rep;
}

// ---- regularity criterion for positive measures ----

struct RegularityReport {
    double c = 0.0;            // mean of the ratio over the top decade
    double oscillation = 0.0;  // (max - min)/|mean| over the top decade
    bool regular = false;
    std::vector<DensitySample> samples;
    // limit density c |rho| x^{rho-1} (rho != 0) or c x^{-1} (rho = 0)
    double density_coefficient = 0.0;
};

inline void require_positive(const RadonMeasure& m, double lo, double hi) {
    auto c = m.materialize(lo, hi);
    for (auto& a : c.atoms)
        if (a.w.imag() != 0.0 || a.w.real() < 0.0)
            throw precondition_error("regularity criterion needs a positive measure");
    for (auto& p : c.pieces) {
        double b = std::isfinite(p.b) ? p.b : std::max(4.0 * p.a, 4.0);
        double a = p.a > 0.0 ? p.a : b / 4.0;
        for (int i = 0; i <= 8; ++i) {
            cplx v = p.f(a * std::pow(b / a, i / 8.0));
            if (std::abs(v.imag()) > 1e-12 * std::abs(v) || v.real() < 0.0)
                throw precondition_error("regularity criterion needs a positive measure");
        }
    }
}

// rho > 0: mu((1,R])/V(R); rho < 0: mu([R,inf))/V(R); rho = 0: mu((aR,bR])/(V(R) ln(b/a)).
inline RegularityReport positive_regularity_criterion(const RadonMeasure& m, const ProximateOrder& o,
                                                      const std::vector<double>& r_grid,
                                                      double osc_tol = 0.01, double a = 1.0,
                                                      double b = std::exp(1.0),
                                                      const QuadControl& ctl = {}) {
    if (r_grid.empty()) throw domain_error("empty r grid");
    double rmax = *std::max_element(r_grid.begin(), r_grid.end());
    double rmin = *std::min_element(r_grid.begin(), r_grid.end());
    require_positive(m, std::min(1.0, a * rmin), std::max(rmax, b * rmax));
    RegularityReport rep;
    double rho = o.rho();
    for (double R : r_grid) {
        double v;
        if (rho > 0.0) v = mass(m, 1.0, R, ctl).real() / o.V(R);
        else if (rho < 0.0) v = mass(m, R * (1 - 1e-12), kInf, ctl).real() / o.V(R);
        else v = mass(m, a * R, b * R, ctl).real() / (o.V(R) * std::log(b / a));
        rep.samples.push_back({R, v});
    }
    double lo = kInf, hi = -kInf, sum = 0.0;
    int n = 0;
    for (auto& s : rep.samples)
        if (s.r >= rmax / 10.0) {
            lo = std::min(lo, s.ratio);
            hi = std::max(hi, s.ratio);
            sum += s.ratio;
            ++n;
        }
    rep.c = sum / n;
    rep.oscillation = rep.c != 0.0 ? (hi - lo) / std::abs(rep.c) : (hi - lo);
    rep.regular = rep.oscillation <= osc_tol;
    rep.density_coefficient = rho != 0.0 ? rep.c * std::abs(rho) : rep.c;
    return rep;
}

}  // namespace karamata
