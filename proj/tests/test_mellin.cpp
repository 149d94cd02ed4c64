#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <karamata/mellin.hpp>

using namespace karamata;

namespace {

RadonMeasure power_density(double rho, cplx c = 1.0) {
    return RadonMeasure::density(0.0, kInf, Density::power(c, rho - 1.0));
}

RadonMeasure periodic_atoms() {
    return RadonMeasure::make({{{1.0, 1.0}, {1.5, 2.0}}, {}}, TailRule::self_similar(2.0, 0.5));
}

// 2 ln t / t on (1,inf): mu((0,r]) = ln^2 r
RadonMeasure log_square_measure() {
    return RadonMeasure::density(1.0, kInf, Density::power_log(2.0, -1.0, 1));
}

double trapezoid(double a, double b, double w, double x) {
    return std::clamp(std::min((x - a) / w, (b - x) / w), 0.0, 1.0);
}

}  // namespace

TEST(Psi, ExpKernelOnPowerMeasure) {
    // int e^{-t/r} t^{rho-1} dt = Gamma(rho) r^rho
    double rho = 0.7;
    PsiFunction p(Kernel::exp(), power_density(rho));
    for (double r : {0.5, 10.0, 1e4}) {
        double want = std::tgamma(rho) * std::pow(r, rho);
        EXPECT_NEAR(p(r).real() / want, 1.0, 1e-10) << r;
        EXPECT_EQ(eval_psi(p, r), p(r));
    }
    EXPECT_NEAR(kernel_integral(Kernel::exp(), RadonMeasure::atoms({{1.0, 2.0}})).real(), 2.0 * std::exp(-1.0),
                1e-15);
}

TEST(Psi, JClustersMatchDirectAtomSums) {
    // J(r) = Psi(r)/r^{1/2} is 2-periodic in ln r; its cluster values are the sums at each tau
    auto K = Kernel::trapezoid(0.5, 3.0, 0.5);
    PsiFunction p(K, periodic_atoms());
    ProximateOrder o(0.5);
    std::vector<double> taus;
    for (int i = 0; i < 8; ++i) taus.push_back(std::pow(2.0, i / 8.0));
    auto rep = limit_values_J(p, o, lattice_schedule(taus, 2.0, 2, 14), 1e-9);
    std::vector<cplx> oracle;
    for (double tau : taus) {
        double s = 0.0;
        for (int k = -3; k <= 4; ++k)
            for (auto [x, w] : {std::pair{1.0, 1.0}, std::pair{1.5, 2.0}})
                s += trapezoid(0.5, 3.0, 0.5, x * std::exp2(k) / tau) * w * std::pow(2.0, 0.5 * k);
        oracle.push_back(s / std::sqrt(tau));
    }
    EXPECT_EQ(rep.values.size(), 8u);
    EXPECT_LT(hausdorff_distance(rep.values, oracle), 1e-12);
}

TEST(Psi, HausdorffDistance) {
    std::vector<cplx> a{0.0, 1.0}, b{0.0, 1.5};
    EXPECT_EQ(hausdorff_distance(a, b), 0.5);
    EXPECT_EQ(hausdorff_distance(a, a), 0.0);
    EXPECT_EQ(hausdorff_distance({}, {}), 0.0);
    EXPECT_EQ(hausdorff_distance(a, {}), kInf);
}

TEST(SLimit, RegularPowerMeasure) {
    // ds = Psi(t) dt = c Gamma(rho) t^rho dt, so the s-limit density at u is c Gamma(rho) u^rho
    double rho = 0.5, c = 2.0;
    PsiFunction p(Kernel::exp(), power_density(rho, c));
    auto rep = verify_s_limit(p, ProximateOrder(rho), geometric_schedule(100.0, 1e5, 5), {0.5, 1.0, 3.0},
                              MetricFamily::dyadic());
    EXPECT_TRUE(rep.mu_regular);
    EXPECT_TRUE(rep.s_regular);
    EXPECT_TRUE(rep.pass);
    ASSERT_FALSE(rep.rows.empty());
    for (auto& row : rep.rows) {
        double want = c * std::tgamma(rho) * std::pow(row.u, rho);
        EXPECT_NEAR(row.s_density.real() / want, 1.0, 1e-6) << row.u;
    }
}

TEST(FChain, CanonicalBranches) {
    auto F = canonical_antiderivative({[](double t) { return cplx(std::exp(-t)); }, {}});
    EXPECT_EQ(F.branch(), AntiderivativeBranch::FromInfinity);
    EXPECT_NEAR(F(2.0).real(), -std::exp(-2.0), 1e-12);
    auto G = canonical_antiderivative({[](double t) { return cplx(t); }, {}});
    EXPECT_EQ(G.branch(), AntiderivativeBranch::FromZero);
    EXPECT_NEAR(G(3.0).real(), 4.5, 1e-12);
    auto v = G.on_sorted_grid({0.5, 1.0, 2.0});
    EXPECT_NEAR(v[0].real(), 0.125, 1e-13);
    EXPECT_NEAR(v[2].real(), 2.0, 1e-13);
    QuadControl quick;
    quick.max_expansions = 20;
    EXPECT_THROW(canonical_antiderivative({[](double t) { return cplx(1.0 / t); }, {}}, quick),
                 divergence_error);
}

TEST(FChain, IdentityForAtomsPlusDensity) {
    // t^{-1/2} dt on (1,inf) plus an atom at 3: F_0 starts from zero, later levels too
    auto mu = RadonMeasure::density(1.0, kInf, Density::power(1.0, -0.5)) + RadonMeasure::atoms({{3.0, 1.0}});
    auto rep = check_Fn_identity(Kernel::smooth_bump(0.5, 2.0), mu, {0, 1, 2}, {2.0, 5.0}, 1e-6);
    EXPECT_TRUE(rep.pass) << rep.worst;
    EXPECT_EQ(rep.branches.front(), AntiderivativeBranch::FromZero);
    // F_0(t) = mu((0,t]) = 2(sqrt t - 1) + [t >= 3]
    auto ch = build_F_chain(mu, 0);
    EXPECT_NEAR(ch.F[0].f(4.0).real(), 2.0 + 1.0, 1e-10);
    EXPECT_THROW(check_Fn_identity(Kernel::exp(), mu, {0}, {2.0}), precondition_error);
}

TEST(FChain, DecayingMeasureStartsFromInfinity) {
    // t^{-3} dt on (1,inf): F_0(t) = -mu((t,inf)) = -t^{-2}/2 for t > 1
    auto mu = RadonMeasure::density(1.0, kInf, Density::power(1.0, -3.0));
    auto ch = build_F_chain(mu, 1);
    EXPECT_EQ(ch.branch[0], AntiderivativeBranch::FromInfinity);
    EXPECT_NEAR(ch.F[0].f(2.0).real(), -0.125, 1e-10);
    // F_1 = -int_t^inf F_0 = 1/(2t)
    EXPECT_EQ(ch.branch[1], AntiderivativeBranch::FromInfinity);
    EXPECT_NEAR(ch.F[1].f(2.0).real(), 0.25, 1e-9);
    // tail windows stop at |delta| < rel_tol (1 + |v|), an absolute 1e-11 for values this small
    EXPECT_NEAR(ch.F[1].f(1e6).real(), 0.5e-6, 1e-11);
    auto rep = check_Fn_identity(Kernel::smooth_bump(0.5, 2.0), mu, {0, 1}, {3.0, 50.0}, 1e-6);
    EXPECT_TRUE(rep.pass) << rep.worst;
}

TEST(Integrability, ExpKernelL1IsGamma) {
    auto rep = integrability_conditions(Kernel::exp(), ProximateOrder(0.7));
    EXPECT_TRUE(rep.pass());
    EXPECT_NEAR(rep.l1, std::tgamma(0.7), 1e-9);
}

TEST(Neutralization, PowerMeasureCutoffsShrink) {
    auto rep = neutralization_check(Kernel::exp(), ProximateOrder(0.5), power_density(0.5), {1e-1, 1e-2, 1e-3},
                                    {10.0, 30.0, 100.0}, geometric_schedule(10.0, 1e4, 4));
    EXPECT_TRUE(rep.pass_zero);
    EXPECT_TRUE(rep.pass_inf);
    // zero side: int_0^{eps r} e^{-t/r} t^{-1/2} dt / r^{1/2} ~ 2 sqrt(eps)
    EXPECT_NEAR(rep.zero_side[0].sup, 2 * std::sqrt(0.1), 0.05);
}

TEST(Hardy, LogSquareMeasure) {
    ProximateOrder o(0.0, LogOfLogPower{2.0});
    auto rep = hardy_check(log_square_measure(), o, geometric_schedule(10.0, 1e8, 4));
    EXPECT_TRUE(rep.pass);
    for (auto& row : rep.rows) EXPECT_NEAR(row.mass, std::pow(std::log(row.r), 2), 1e-8 * (1 + row.mass));
    EXPECT_NEAR(rep.mass_over_V, 1.0, 0.01);
}

TEST(Hardy, PsiIsAZeroOrderScale) {
    PsiFunction p(Kernel::exp(), log_square_measure());
    auto rep = psi_proximate_order_diagnostic(p, geometric_schedule(10.0, 1e8, 4));
    EXPECT_TRUE(rep.pass());
    EXPECT_NEAR(rep.m, std::exp(-1.0) - std::exp(-2.0), 1e-3);
}

TEST(SplitPairing, PartsAddUp) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> x(0.3, 3.0);
    std::vector<Atom> at;
    for (int i = 0; i < 6; ++i) at.push_back({x(rng), x(rng)});
    auto nu = RadonMeasure::atoms(at) + power_density(0.4);
    auto f = TestFunction::make(0.5, 2.0, 0.25);
    auto [l, r] = split_pairing(nu, f, 1.0);
    EXPECT_NEAR(std::abs(l + r - pair(nu, f)), 0.0, 1e-13);
    // left part of the density alone: int_0.5^1 f(t) t^{-0.6} dt
    auto [dl, dr] = split_pairing(power_density(0.4), f, 1.0);
    auto want = integrate([&](double t) { return f(t) * std::pow(t, -0.6); }, 0.5, 1.0, {0.75}).value;
    EXPECT_NEAR(std::abs(dl - want), 0.0, 1e-13);
}
