#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include "errors.hpp"
#include "kernel.hpp"
#include "limit_set.hpp"
#include "measure.hpp"
#include "mellin.hpp"
#include "proximate_order.hpp"
#include "quadrature.hpp"

namespace karamata {

// ---- Mellin symbol int_0^inf K(t) t^{rho-1+i lambda} dt ----

struct SymbolValue {
    double lambda;
    cplx value;
    double error;
};

inline SymbolValue mellin_symbol(const Kernel& K, double rho, double lambda, const QuadControl& ctl = {}) {
    const cplx e(rho - 1.0, lambda);
    auto g = [&](double t) -> cplx {
        double k = K(t);
        if (k == 0.0) return {};
        return k * std::exp(e * std::log(t));
    };
    double a = K.support_lo(), b = K.support_hi();
    QuadResult q;
    if (a > 0.0 && std::isfinite(b)) q = integrate_log(g, a, b, K.breakpoints(), ctl);
    else q = integrate_positive(g, a, b, a > 0.0 ? a : std::min(0.25, b / 4.0),
                                std::isfinite(b) ? b : std::max(4.0, 4.0 * a), K.breakpoints(), ctl);
    return {lambda, q.value, q.error};
}

struct MellinSymbol {
    Kernel kernel = Kernel::exp();
    double rho;
    std::vector<double> lambda;
    std::vector<cplx> values;
    std::vector<double> errors;
};

namespace detail {

inline unsigned worker_count(std::size_t jobs) {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    return unsigned(std::min<std::size_t>(hw, std::max<std::size_t>(1, jobs / 16)));
}

// f(i) for i in [0,n) on a few threads; results land in index order
template <class F>
void parallel_for(std::size_t n, F&& f) {
    unsigned w = worker_count(n);
    if (w <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> th;
    std::vector<std::exception_ptr> errs(w);
    for (unsigned k = 0; k < w; ++k)
        th.emplace_back([&, k] {
            try {
                for (std::size_t i = k; i < n; i += w) f(i);
            } catch (...) {
                errs[k] = std::current_exception();
            }
        });
    for (auto& t : th) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

}  // namespace detail

inline MellinSymbol mellin_symbol_table(const Kernel& K, double rho, const std::vector<double>& grid,
                                        const QuadControl& ctl = {}) {
    MellinSymbol s{K, rho, grid, std::vector<cplx>(grid.size()), std::vector<double>(grid.size())};
    detail::parallel_for(grid.size(), [&](std::size_t i) {
        auto v = mellin_symbol(K, rho, grid[i], ctl);
        s.values[i] = v.value;
        s.errors[i] = v.error;
    });
    return s;
}

// ---- zero scan ----

struct ZeroScanOptions {
    double lambda_lo = -30.0, lambda_hi = 30.0;
    double step = 0.01;
    double tol = 1e-6;          // zero iff |S| <= tol * max |S| over [lambda-1, lambda+1]
    double local_radius = 1.0;
    double noise_factor = 10.0;  // |S| below noise_factor * (error + roundoff) is unresolved
};

struct SymbolZero {
    double lambda;
    double modulus;
    double local_max;
};

struct Interval {
    double lo, hi;
};

struct ZeroScanReport {
    enum class Verdict { Nonvanishing, Zeros, Inconclusive };
    Verdict verdict = Verdict::Nonvanishing;
    std::vector<SymbolZero> zeros;
    std::vector<Interval> unresolved;
    double min_modulus = 0.0, max_modulus = 0.0;
    double global_ratio = 0.0;  // min |S| / max |S| over the resolved grid
    MellinSymbol table;
};

inline const char* verdict_name(ZeroScanReport::Verdict v) {
    switch (v) {
        case ZeroScanReport::Verdict::Nonvanishing: return "nonvanishing";
        case ZeroScanReport::Verdict::Zeros: return "zeros";
        case ZeroScanReport::Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

// Zeros are grid local minima of |S| refined by Brent on |S|^2 and accepted when small
// relative to the nearby maximum. Grid points where |S| sits under the quadrature noise
// floor are reported as unresolved rather than counted as zeros.
inline ZeroScanReport wiener_zero_scan(const Kernel& K, double rho, const ZeroScanOptions& opt = {},
                                       const QuadControl& base_ctl = {}) {
    // symbols decay fast for smooth kernels; resolve them well below the default tolerance
    QuadControl ctl = base_ctl;
    ctl.rel_tol = std::min(ctl.rel_tol, 1e-13);
    if (!(opt.lambda_hi > opt.lambda_lo) || !(opt.step > 0.0) || !(opt.tol > 0.0))
        throw domain_error("zero scan needs lo < hi, step > 0, tol > 0");
    std::size_t n = std::size_t(std::llround((opt.lambda_hi - opt.lambda_lo) / opt.step)) + 1;
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) grid[i] = opt.lambda_lo + double(i) * opt.step;
    grid.back() = opt.lambda_hi;

    ZeroScanReport rep;
    rep.table = mellin_symbol_table(K, rho, grid, ctl);
    const auto& S = rep.table.values;
    std::vector<double> mod(n);
    for (std::size_t i = 0; i < n; ++i) mod[i] = std::abs(S[i]);

    // roundoff floor from int |K| t^{rho-1} dt
    double l1 = 0.0;
    {
        auto g = [&](double t) { return std::abs(K(t)) * std::pow(t, rho - 1.0); };
        double a = K.support_lo(), b = K.support_hi();
        if (a > 0.0 && std::isfinite(b)) l1 = integrate_log(g, a, b, K.breakpoints(), ctl).value.real();
        else l1 = integrate_positive(g, a, b, a > 0.0 ? a : std::min(0.25, b / 4.0),
                                     std::isfinite(b) ? b : std::max(4.0, 4.0 * a), K.breakpoints(), ctl)
                      .value.real();
    }
    const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * l1;
    std::vector<bool> resolved(n);
    for (std::size_t i = 0; i < n; ++i)
        resolved[i] = mod[i] > opt.noise_factor * rep.table.errors[i] + roundoff;

    rep.max_modulus = *std::max_element(mod.begin(), mod.end());
    rep.min_modulus = kInf;
    for (std::size_t i = 0; i < n; ++i)
        if (resolved[i]) rep.min_modulus = std::min(rep.min_modulus, mod[i]);
    rep.global_ratio = rep.max_modulus > 0.0 ? rep.min_modulus / rep.max_modulus : 0.0;

    auto mod2 = [&](double l) { return std::norm(mellin_symbol(K, rho, l, ctl).value); };
    const std::size_t radius = std::size_t(std::ceil(opt.local_radius / opt.step));
    auto local_max = [&](std::size_t i, std::size_t j) {
        double m = 0.0;
        for (std::size_t k = i > radius ? i - radius : 0; k <= std::min(n - 1, j + radius); ++k)
            if (resolved[k]) m = std::max(m, mod[k]);
        return m;
    };
    // refine a minimum of |S| inside [lo,hi]; accepted when tiny against the nearby maximum
    auto try_zero = [&](double lo, double hi, double lmax) {
        auto m = boost::math::tools::brent_find_minima(mod2, lo, hi, 40);
        // Newton on the analytic symbol: Brent on |S|^2 only pins the abscissa to ~sqrt(eps)
        for (int it = 0; it < 4; ++it) {
            constexpr double h = 1e-5;
            cplx s0 = mellin_symbol(K, rho, m.first, ctl).value;
            cplx d = (mellin_symbol(K, rho, m.first + h, ctl).value -
                      mellin_symbol(K, rho, m.first - h, ctl).value) / (2.0 * h);
            if (std::abs(d) == 0.0 || std::abs(s0) == 0.0) break;
            double step = -(s0 / d).real();
            if (!(std::abs(step) < opt.step)) break;
            m.first += step;
            m.second = std::norm(mellin_symbol(K, rho, m.first, ctl).value);
            if (std::abs(step) < 1e-12) break;
        }
        double ms = std::sqrt(m.second);
        if (!(ms <= opt.tol * lmax)) return false;
        bool dup = std::any_of(rep.zeros.begin(), rep.zeros.end(),
                               [&](const SymbolZero& z) { return std::abs(z.lambda - m.first) < opt.step; });
        if (!dup) rep.zeros.push_back({m.first, ms, lmax});
        return true;
    };

    for (std::size_t i = 0; i < n;) {
        if (resolved[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && !resolved[j + 1]) ++j;
        // a short dip below the noise floor between resolved points is a zero candidate
        bool isolated = i > 0 && j + 1 < n && j - i < 3;
        bool found = isolated && try_zero(grid[i - 1], grid[j + 1], local_max(i, j));
        if (!found) rep.unresolved.push_back({grid[i], grid[j]});
        i = j + 1;
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!resolved[i]) continue;
        bool left = i == 0 || mod[i] <= mod[i - 1];
        bool right = i + 1 == n || mod[i] <= mod[i + 1];
        if (!(left && right)) continue;
        double lo = grid[i == 0 ? 0 : i - 1], hi = grid[i + 1 == n ? i : i + 1];
        try_zero(lo, hi, local_max(i, i));
    }
    std::sort(rep.zeros.begin(), rep.zeros.end(),
              [](const SymbolZero& a, const SymbolZero& b) { return a.lambda < b.lambda; });
    if (!rep.zeros.empty()) rep.verdict = ZeroScanReport::Verdict::Zeros;
    else if (!rep.unresolved.empty()) rep.verdict = ZeroScanReport::Verdict::Inconclusive;
    return rep;
}

// ---- Carleman transform of a measure on the real line ----

struct LineAtom {
    double x;
    cplx w;
};

struct LinePiece {
    double a, b;  // (a,b], either end may be infinite
    std::function<cplx(double)> f;
};

// Locally finite measure on R given by atoms and densities.
struct LineMeasure {
    std::vector<LineAtom> atoms;
    std::vector<LinePiece> pieces;

    static LineMeasure lebesgue(cplx c = 1.0) {
        return {{}, {{-kInf, kInf, [c](double) { return c; }}}};
    }
    // e^{-i lambda0 x} dx
    static LineMeasure exp_density(double lambda0) {
        return {{}, {{-kInf, kInf, [lambda0](double x) { return std::exp(cplx(0.0, -lambda0 * x)); }}}};
    }
    static LineMeasure atom(double x, cplx w = 1.0) { return {{{x, w}}, {}}; }

    LineMeasure operator+(const LineMeasure& o) const {
        LineMeasure m = *this;
        m.atoms.insert(m.atoms.end(), o.atoms.begin(), o.atoms.end());
        m.pieces.insert(m.pieces.end(), o.pieces.begin(), o.pieces.end());
        return m;
    }
    LineMeasure scaled(cplx c) const {
        LineMeasure m = *this;
        for (auto& a : m.atoms) a.w *= c;
        for (auto& p : m.pieces) p.f = [f = p.f, c](double x) { return c * f(x); };
        return m;
    }
};

// x = ln t transplant of a measure on (0,inf) restricted to (lo, hi]
inline LineMeasure log_transplant(const RadonMeasure& m, double lo, double hi) {
    LineMeasure out;
    auto c = m.materialize(lo, hi);
    for (auto& a : c.atoms) out.atoms.push_back({std::log(a.x), a.w});
    for (auto& p : c.pieces) {
        auto f = p.f;
        out.pieces.push_back({std::log(p.a), std::log(p.b), [f](double x) {
                                  double t = std::exp(x);
                                  return f(t) * t;
                              }});
    }
    return out;
}

struct CarlemanTransform {
    LineMeasure mu;
    QuadControl ctl{1e-12, 20, 4.0, 80};
};

namespace detail {

// int_{[a,b]} e^{itz} f(t) dt on a finite range, one oscillation period per panel
inline cplx oscillatory_integral(const std::function<cplx(double)>& f, cplx z, double a, double b,
                                 const QuadControl& ctl) {
    if (!(b > a)) return {};
    double w = 16.0;
    if (std::abs(z.real()) > 0.0) w = std::min(w, 2.0 * std::numbers::pi / std::abs(z.real()));
    if (std::abs(z.imag()) > 0.0) w = std::min(w, 2.0 / std::abs(z.imag()));
    std::size_t np = std::size_t(std::ceil((b - a) / w));
    double h = (b - a) / double(np);
    cplx s{};
    auto g = [&](double t) { return std::exp(cplx(0.0, 1.0) * t * z) * f(t); };
    for (std::size_t k = 0; k < np; ++k) {
        double l = a + double(k) * h, r = k + 1 == np ? b : l + h;
        s += integrate(g, l, r, {}, ctl).value;
    }
    return s;
}

}  // namespace detail

// G+(z) = int_0^inf' e^{itz} d mu for Im z > 0, G-(z) = -int_-inf^0' e^{itz} d mu for Im z < 0;
// the primed integrals count an atom at 0 with half its weight.
inline cplx carleman_eval(const CarlemanTransform& ct, cplx z) {
    double y = z.imag();
    if (y == 0.0 || !std::isfinite(y) || !std::isfinite(z.real()))
        throw domain_error("Carleman transform is defined off the real axis");
    const bool upper = y > 0.0;
    const double ay = std::abs(y);
    // e^{-|y| L} below 1e-17 relative to the 1/|y| scale of the integral
    const double L = (40.0 + std::log1p(1.0 / ay)) / ay;
    cplx s{};
    for (const auto& a : ct.mu.atoms) {
        double wt = a.x == 0.0 ? 0.5 : ((a.x > 0.0) == upper ? 1.0 : 0.0);
        if (wt > 0.0) s += wt * a.w * std::exp(cplx(0.0, 1.0) * a.x * z);
    }
    for (const auto& p : ct.mu.pieces) {
        double lo = upper ? std::max(p.a, 0.0) : std::max(p.a, -L);
        double hi = upper ? std::min(p.b, L) : std::min(p.b, 0.0);
        s += detail::oscillatory_integral(p.f, z, lo, hi, ct.ctl);
    }
    return upper ? s : -s;
}

struct CarlemanBoundRow {
    cplx z;
    double modulus, bound;
};

struct CarlemanBoundReport {
    std::vector<CarlemanBoundRow> rows;
    double worst_ratio = 0.0;  // max |G| / (M (1 + 1/|y|))
    std::size_t violations = 0;
    bool pass = true;
};

inline std::vector<cplx> default_carleman_grid() {
    std::vector<cplx> g;
    for (double y : {0.05, 0.2, 1.0, 10.0})
        for (int i = -10; i <= 10; ++i)
            for (double s : {1.0, -1.0}) g.push_back({5.0 * i, s * y});
    return g;
}

// |G(z)| <= M (1 + 1/|y|)
inline CarlemanBoundReport carleman_bound_check(const CarlemanTransform& ct, double M,
                                                const std::vector<cplx>& z_grid, double rel_slack = 1e-9) {
    if (!(M > 0.0)) throw domain_error("mass bound M must be positive");
    CarlemanBoundReport rep;
    rep.rows.resize(z_grid.size());
    detail::parallel_for(z_grid.size(), [&](std::size_t i) {
        cplx z = z_grid[i];
        rep.rows[i] = {z, std::abs(carleman_eval(ct, z)), M * (1.0 + 1.0 / std::abs(z.imag()))};
    });
    for (auto& r : rep.rows) {
        rep.worst_ratio = std::max(rep.worst_ratio, r.modulus / r.bound);
        if (r.modulus > r.bound * (1.0 + rel_slack)) ++rep.violations;
    }
    rep.pass = rep.violations == 0;
    return rep;
}

struct JumpRow {
    double x;
    std::vector<double> jump;  // per height
    double slope;              // d ln jump / d ln h over the last two heights
    bool flagged;
};

struct JumpScanReport {
    std::vector<double> heights;
    std::vector<JumpRow> rows;
    std::vector<double> flagged;
};

// |G+(x+ih) - G-(x-ih)| over the heights; a jump that does not shrink at least like
// h^{1/2} between the two smallest heights marks a spectrum candidate.
inline JumpScanReport spectrum_jump_scan(const CarlemanTransform& ct, double x_lo, double x_hi, double dx,
                                         std::vector<double> heights = {0.1, 0.03, 0.01},
                                         double min_slope = 0.5, double floor = 1e-10) {
    if (!(x_hi >= x_lo) || !(dx > 0.0)) throw domain_error("jump scan needs x_lo <= x_hi, dx > 0");
    if (heights.size() < 2) throw domain_error("jump scan needs at least two heights");
    std::sort(heights.begin(), heights.end(), std::greater<>());
    if (!(heights.back() > 0.0)) throw domain_error("heights must be positive");
    JumpScanReport rep;
    rep.heights = heights;
    std::size_t n = std::size_t(std::llround((x_hi - x_lo) / dx)) + 1;
    rep.rows.resize(n);
    detail::parallel_for(n, [&](std::size_t i) {
        double x = x_lo + double(i) * dx;
        if (std::abs(x) < 1e-12 * dx) x = 0.0;
        JumpRow row{x, {}, 0.0, false};
        for (double h : heights)
            row.jump.push_back(std::abs(carleman_eval(ct, {x, h}) - carleman_eval(ct, {x, -h})));
        std::size_t k = heights.size() - 1;
        double j1 = row.jump[k - 1], j2 = row.jump[k];
        if (j2 <= floor) {
            row.slope = kInf;
        } else {
            row.slope = std::log(std::max(j1, 1e-300) / j2) / std::log(heights[k - 1] / heights[k]);
            row.flagged = row.slope < min_slope;
        }
        rep.rows[i] = std::move(row);
    });
    for (auto& r : rep.rows)
        if (r.flagged) rep.flagged.push_back(r.x);
    return rep;
}

// ---- exponential solutions d mu = (1/t) sum c_l t^{-i l} dt ----

struct ExpSolutionRow {
    double r;
    cplx psi;
};

struct ExpSolutionReport {
    std::vector<SymbolValue> symbols;  // int (1/t) K(t) t^{-i lambda} dt per lambda
    std::vector<ExpSolutionRow> rows;
    double max_residual = 0.0;
    bool pass = false;
};

inline RadonMeasure exponential_solution_measure(const std::vector<double>& lambdas,
                                                 const std::vector<cplx>& coeffs) {
    if (lambdas.size() != coeffs.size() || lambdas.empty())
        throw domain_error("need one coefficient per exponent");
    auto f = [lambdas, coeffs](double t) {
        cplx s{};
        double l = std::log(t);
        for (std::size_t k = 0; k < lambdas.size(); ++k) s += coeffs[k] * std::exp(cplx(0.0, -lambdas[k] * l));
        return s / t;
    };
    return RadonMeasure::density(0.0, kInf, Density::function(f, "exponential_solution"));
}

inline ExpSolutionReport verify_exponential_solution(const Kernel& K, const std::vector<double>& lambdas,
                                                     const std::vector<cplx>& coeffs,
                                                     const std::vector<double>& r_samples,
                                                     double tol = 1e-6, const QuadControl& ctl = {}) {
    ExpSolutionReport rep;
    for (double l : lambdas) {
        auto s = mellin_symbol(K, 0.0, -l, ctl);
        rep.symbols.push_back({l, s.value, s.error});
    }
    PsiFunction p(K, exponential_solution_measure(lambdas, coeffs), ctl);
    for (double r : r_samples) {
        cplx v = p(r);
        rep.rows.push_back({r, v});
        rep.max_residual = std::max(rep.max_residual, std::abs(v));
    }
    rep.pass = rep.max_residual <= tol;
    return rep;
}

// ---- affine family (c0 + sum c_l t^{-i l}) t^{rho-1} fitted to pairings ----

struct FamilyFitReport {
    std::vector<cplx> coeffs;  // c0 then one per lambda
    double residual = 0.0;
    bool pass = false;
};

inline FamilyFitReport fit_exponential_family(const std::vector<cplx>& p, double rho,
                                              const std::vector<double>& lambdas, const MetricFamily& fam,
                                              double tol = 0.01, const QuadControl& ctl = {}) {
    std::vector<std::vector<cplx>> basis{power_pairings(rho, fam, ctl)};
    for (double l : lambdas)
        basis.push_back(pairing_vector(
            RadonMeasure::density(0.0, kInf, Density::power(1.0, cplx(rho - 1.0, -l))), fam, ctl));
    const auto n = Eigen::Index(p.size()), m = Eigen::Index(basis.size());
    Eigen::MatrixXcd A(n, m);
    Eigen::VectorXcd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double w = std::sqrt(std::ldexp(1.0, -int(i + 1)));
        b(i) = w * p[std::size_t(i)];
        for (Eigen::Index j = 0; j < m; ++j) A(i, j) = w * basis[std::size_t(j)][std::size_t(i)];
    }
    Eigen::VectorXcd c = A.colPivHouseholderQr().solve(b);
    FamilyFitReport rep;
    for (Eigen::Index j = 0; j < m; ++j) rep.coeffs.push_back(c(j));
    double bn = b.norm();
    rep.residual = bn == 0.0 ? 0.0 : (A * c - b).norm() / bn;
    rep.pass = rep.residual <= tol;
    return rep;
}

// ---- round trip: s regular => mu regular with density (c/c1) t^{rho-1} ----

struct RoundtripOptions {
    LimitSetOptions limit_set;
    double ratio_tol = 0.02;
    double fit_tol = 1e-3;
    int per_efold = 40;
    bool run_zero_scan = true;
    ZeroScanOptions zero_scan{-20.0, 20.0, 0.01, 1e-6, 1.0, 10.0};
};

struct RoundtripReport {
    IntegrabilityReport integrability;
    ZeroScanReport::Verdict zero_scan = ZeroScanReport::Verdict::Nonvanishing;
    std::size_t zero_count = 0;
    cplx c1{};
    // stage (i): s with order rho(r)+1
    std::size_t s_clusters = 0;
    bool s_regular = false;
    RegularFitReport s_fit;
    // stage (ii): mu with order rho(r)
    std::size_t mu_clusters = 0;
    bool mu_regular = false;
    RegularFitReport mu_fit;
    cplx predicted{};  // c / c1
    double ratio_error = kInf;
    std::string failed_stage;  // empty on success
    bool pass = false;
};

inline RoundtripReport tauberian_roundtrip(const Kernel& K, const ProximateOrder& o, const RadonMeasure& mu,
                                           const std::vector<double>& schedule, const MetricFamily& fam,
                                           const RoundtripOptions& opt = {}, const QuadControl& ctl = {}) {
    RoundtripReport rep;
    rep.integrability = integrability_conditions(K, o, ctl);
    if (!rep.integrability.pass()) {
        // the symbol and Psi need not exist; nothing further is meaningful
        rep.failed_stage = "integrability";
        return rep;
    }
    if (opt.run_zero_scan) {
        auto zs = wiener_zero_scan(K, o.rho(), opt.zero_scan, ctl);
        rep.zero_scan = zs.verdict;
        rep.zero_count = zs.zeros.size();
    }
    rep.c1 = mellin_symbol(K, o.rho(), 0.0, ctl).value;

    PsiFunction psi(K, mu, ctl);
    double lo = schedule.front() * fam.window_lo() / 2.0, hi = schedule.back() * fam.window_hi() * 2.0;
    auto s = build_s_measure(psi, lo, hi, opt.per_efold, o.rho());
    auto o1 = o.shifted(1.0);
    auto tr_s = sample_trajectory(s, o1, schedule, fam, ctl);
    auto est_s = estimate_limit_set(tr_s, opt.limit_set);
    rep.s_clusters = est_s.clusters.size();
    rep.s_regular = est_s.regular;
    if (rep.s_regular) rep.s_fit = verify_regular_limit_form(tr_s, est_s, o1, opt.fit_tol, ctl);

    auto tr_mu = sample_trajectory(mu, o, schedule, fam, ctl);
    auto est_mu = estimate_limit_set(tr_mu, opt.limit_set);
    rep.mu_clusters = est_mu.clusters.size();
    rep.mu_regular = est_mu.regular;
    if (rep.mu_regular) rep.mu_fit = verify_regular_limit_form(tr_mu, est_mu, o, opt.fit_tol, ctl);

    if (rep.s_regular && std::abs(rep.c1) > 0.0) {
        rep.predicted = rep.s_fit.c / rep.c1;
        if (rep.mu_regular) rep.ratio_error = std::abs(rep.mu_fit.c / rep.predicted - 1.0);
    }
    if (rep.zero_count > 0) rep.failed_stage = "wiener";
    else if (!rep.s_regular || !rep.s_fit.pass) rep.failed_stage = "stage_i";
    else if (!rep.mu_regular || !rep.mu_fit.pass) rep.failed_stage = "stage_ii";
    else if (!(rep.ratio_error <= opt.ratio_tol)) rep.failed_stage = "ratio";
    rep.pass = rep.failed_stage.empty();
    return rep;
}

}  // namespace karamata
