#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "errors.hpp"
#include "taylor.hpp"

namespace karamata {

// A real kernel K on (0,inf) with declared support, breakpoints and (where available)
// exact derivatives.
class Kernel {
public:
    enum class Kind { Exp, PiecewisePower, Trapezoid, SmoothBump, LogSingular, Table };
    enum class Smoothness { Borel, Continuous, Smooth };

    // c * t^s on (a,b]
    struct PowerPiece {
        double a, b, c, s;
    };

    static constexpr int max_derivative = 4;

    // e^{-t}
    static Kernel exp() {
        Kernel k(Kind::Exp, "exp");
        k.lo_ = 0.0;
        k.hi_ = inf();
        k.smooth_ = Smoothness::Smooth;
        return k;
    }

    // sum of c t^s chi_(a,b]; pieces may overlap
    static Kernel piecewise_power(std::vector<PowerPiece> pieces, std::string label) {
        if (pieces.empty()) throw domain_error("piecewise kernel needs a piece");
        Kernel k(Kind::PiecewisePower, std::move(label));
        k.lo_ = inf();
        k.hi_ = 0.0;
        for (auto& p : pieces) {
            if (!(p.a >= 0.0) || !(p.b > p.a) || !std::isfinite(p.c) || !std::isfinite(p.s))
                throw domain_error("kernel piece needs 0 <= a < b and finite c, s");
            k.lo_ = std::min(k.lo_, p.a);
            k.hi_ = std::max(k.hi_, p.b);
            k.breaks_.push_back(p.a);
            if (std::isfinite(p.b)) k.breaks_.push_back(p.b);
        }
        k.pieces_ = std::move(pieces);
        k.smooth_ = Smoothness::Borel;
        k.finish_breaks();
        return k;
    }
    static Kernel indicator(double a, double b) {
        return piecewise_power({{a, b, 1.0, 0.0}}, "indicator");
    }
    // sum of c chi_(a,b]
    static Kernel step_combo(const std::vector<std::array<double, 3>>& abc) {
        std::vector<PowerPiece> p;
        for (auto& v : abc) p.push_back({v[0], v[1], v[2], 0.0});
        return piecewise_power(std::move(p), "step_combo");
    }
    // t^s chi_(a,b]
    static Kernel power_cut(double s, double a = 0.0, double b = 1.0) {
        return piecewise_power({{a, b, 1.0, s}}, "power_cut");
    }

    // continuous: ramps of width w up to 1 on [a+w, b-w]
    static Kernel trapezoid(double a, double b, double w) {
        if (!(a > 0.0) || !(b > a) || !(w > 0.0) || w > 0.5 * (b - a) || !std::isfinite(b))
            throw domain_error("trapezoid kernel needs 0 < a < b and 0 < w <= (b-a)/2");
        Kernel k(Kind::Trapezoid, "trapezoid");
        k.lo_ = a;
        k.hi_ = b;
        k.w_ = w;
        k.breaks_ = {a, a + w, b - w, b};
        k.smooth_ = Smoothness::Continuous;
        return k;
    }

    // exp(-1/(1-v^2)) with v = (2t-a-b)/(b-a) on (a,b)
    static Kernel smooth_bump(double a, double b) {
        if (!(a > 0.0) || !(b > a) || !std::isfinite(b))
            throw domain_error("smooth bump needs 0 < a < b < inf");
        Kernel k(Kind::SmoothBump, "smooth_bump");
        k.lo_ = a;
        k.hi_ = b;
        k.breaks_ = {a, b};
        k.smooth_ = Smoothness::Smooth;
        return k;
    }

    // ln|1 - 1/t|, singular at t = 1
    static Kernel log_singular() {
        Kernel k(Kind::LogSingular, "log_singular");
        k.lo_ = 0.0;
        k.hi_ = inf();
        k.breaks_ = {1.0};
        k.singular_ = {1.0};
        k.smooth_ = Smoothness::Borel;
        return k;
    }

    // linear interpolation in ln t; zero outside the grid
    static Kernel table(std::vector<double> log_t, std::vector<double> values) {
        if (log_t.size() < 2 || log_t.size() != values.size())
            throw domain_error("kernel table needs >= 2 nodes and matching sizes");
        for (std::size_t i = 1; i < log_t.size(); ++i)
            if (!(log_t[i] > log_t[i - 1])) throw domain_error("kernel table grid must increase");
        Kernel k(Kind::Table, "table");
        k.lo_ = std::exp(log_t.front());
        k.hi_ = std::exp(log_t.back());
        for (double l : log_t) k.breaks_.push_back(std::exp(l));
        k.tab_ = std::make_shared<const std::pair<std::vector<double>, std::vector<double>>>(
            std::move(log_t), std::move(values));
        k.smooth_ = Smoothness::Borel;
        return k;
    }

    Kind kind() const { return kind_; }
    const std::string& label() const { return label_; }
    Smoothness smoothness() const { return smooth_; }
    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }
    // compact support inside (0,inf)
    bool finite() const { return lo_ > 0.0 && std::isfinite(hi_); }
    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<double>& singular_points() const { return singular_; }
    const std::vector<PowerPiece>& pieces() const { return pieces_; }

    double operator()(double t) const {
        if (!(t > 0.0)) throw domain_error("kernel argument must be positive");
        switch (kind_) {
            case Kind::Exp:
                return std::exp(-t);
            case Kind::PiecewisePower: {
                double v = 0.0;
                for (auto& p : pieces_)
                    if (t > p.a && t <= p.b) v += p.c * (p.s == 0.0 ? 1.0 : std::pow(t, p.s));
                return v;
            }
            case Kind::Trapezoid:
                return std::clamp(std::min((t - lo_) / w_, (hi_ - t) / w_), 0.0, 1.0);
            case Kind::SmoothBump:
                return (t <= lo_ || t >= hi_) ? 0.0 : bump<0>(t).c[0];
            case Kind::LogSingular:
                if (t == 1.0) throw singular_point_error("log kernel is singular at t = 1");
                return std::log(std::abs(1.0 - 1.0 / t));
            case Kind::Table: {
                const auto& [lt, v] = *tab_;
                double l = std::log(t);
                if (l < lt.front() || l > lt.back()) return 0.0;
                auto it = std::upper_bound(lt.begin(), lt.end(), l);
                std::size_t i = std::min<std::size_t>(std::size_t(it - lt.begin()), lt.size() - 1);
                if (i == 0) i = 1;
                double u = (l - lt[i - 1]) / (lt[i] - lt[i - 1]);
                return v[i - 1] + u * (v[i] - v[i - 1]);
            }
        }
        return 0.0;
    }

    // K^{(j)}(t), available for the smooth kinds
    double derivative(int j, double t) const {
        if (j == 0) return (*this)(t);
        if (j < 0 || j > max_derivative) throw domain_error("derivative order out of range");
        switch (kind_) {
            case Kind::Exp:
                return (j % 2 ? -1.0 : 1.0) * std::exp(-t);
            case Kind::SmoothBump:
                if (t <= lo_ || t >= hi_) return 0.0;
                return bump<max_derivative>(t).derivative(j);
            default:
                throw precondition_error("kernel '" + label_ + "' has no derivative evaluator");
        }
    }

private:
    Kernel(Kind k, std::string label) : kind_(k), label_(std::move(label)) {}
    static constexpr double inf() { return std::numeric_limits<double>::infinity(); }

    template <int N>
    Taylor<N> bump(double t) const {
        auto x = Taylor<N>::variable(t);
        auto v = (2.0 / (hi_ - lo_)) * x + Taylor<N>::constant(-(hi_ + lo_) / (hi_ - lo_));
        auto d = 1.0 + (-1.0) * (v * v);
        return taylor_exp((-1.0) * reciprocal(d));
    }

    void finish_breaks() {
        std::vector<double> b;
        for (double x : breaks_)
            if (x > 0.0 && std::isfinite(x)) b.push_back(x);
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        breaks_ = std::move(b);
    }

    Kind kind_;
    std::string label_;
    double lo_ = 0.0, hi_ = inf(), w_ = 0.0;
    std::vector<PowerPiece> pieces_;
    std::vector<double> breaks_, singular_;
    std::shared_ptr<const std::pair<std::vector<double>, std::vector<double>>> tab_;
    Smoothness smooth_ = Smoothness::Borel;
};

}  // namespace karamata
