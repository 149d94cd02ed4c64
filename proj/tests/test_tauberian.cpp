#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include <karamata/tauberian.hpp>

using namespace karamata;

namespace {

constexpr double pi = std::numbers::pi;

// chi(0,1] - 3 chi(0,1/3]
Kernel lattice_kernel() { return Kernel::step_combo({{0.0, 1.0, 1.0}, {0.0, 1.0 / 3.0, -3.0}}); }

// t K(t) for K = chi(0,1] - 2 chi(0,1/2]
Kernel t_times_halving_kernel() {
    return Kernel::piecewise_power({{0.0, 1.0, 1.0, 1.0}, {0.0, 0.5, -2.0, 1.0}}, "t_halving");
}

}  // namespace

TEST(Symbol, ExpKernelModulus) {
    // |Gamma(1+iy)|^2 = pi y/sinh(pi y), |Gamma(1/2+iy)|^2 = pi/cosh(pi y)
    for (double y : {0.5, 2.0, 5.0}) {
        double m1 = std::abs(mellin_symbol(Kernel::exp(), 1.0, y).value);
        EXPECT_NEAR(m1 * m1 / (pi * y / std::sinh(pi * y)), 1.0, 1e-9) << y;
        // t^{-1/2} at 0: the window stop is absolute at rel_tol, so compare absolutely
        double mh = std::abs(mellin_symbol(Kernel::exp(), 0.5, y).value);
        EXPECT_NEAR(mh, std::sqrt(pi / std::cosh(pi * y)), 1e-10) << y;
    }
    EXPECT_NEAR(mellin_symbol(Kernel::exp(), 0.7, 0.0).value.real(), std::tgamma(0.7), 1e-10);
}

TEST(Symbol, ConjugateSymmetryAndLinearity) {
    auto K = lattice_kernel();
    for (double l : {0.3, 2.0, 7.5}) {
        cplx a = mellin_symbol(K, 1.0, l).value, b = mellin_symbol(K, 1.0, -l).value;
        EXPECT_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-13);
        // int_0^b t^{rho-1+il} dt = b^{rho+il}/(rho+il)
        cplx s(1.0, l);
        cplx want = (1.0 - 3.0 * std::pow(cplx(1.0 / 3.0), s)) / s;
        EXPECT_NEAR(std::abs(a - want), 0.0, 1e-12) << l;
        cplx parts = mellin_symbol(Kernel::indicator(0.0, 1.0), 1.0, l).value -
                     3.0 * mellin_symbol(Kernel::indicator(0.0, 1.0 / 3.0), 1.0, l).value;
        EXPECT_NEAR(std::abs(a - parts), 0.0, 2e-12);
    }
}

TEST(ZeroScan, LatticeKernelZerosAtMultiplesOfTwoPiOverLog3) {
    ZeroScanOptions opt;
    opt.lambda_lo = -10.0;
    opt.lambda_hi = 10.0;
    auto rep = wiener_zero_scan(lattice_kernel(), 1.0, opt);
    EXPECT_EQ(rep.verdict, ZeroScanReport::Verdict::Zeros);
    ASSERT_EQ(rep.zeros.size(), 3u);
    double base = 2 * pi / std::log(3.0);
    for (auto& z : rep.zeros) {
        double k = std::round(z.lambda / base);
        EXPECT_NEAR(z.lambda, k * base, 1e-7);
    }
    EXPECT_STREQ(verdict_name(rep.verdict), "zeros");
}

TEST(ZeroScan, ExpKernelIsNonvanishing) {
    ZeroScanOptions opt;
    opt.lambda_lo = -5.0;
    opt.lambda_hi = 5.0;
    opt.step = 0.05;
    auto rep = wiener_zero_scan(Kernel::exp(), 1.0, opt);
    EXPECT_EQ(rep.verdict, ZeroScanReport::Verdict::Nonvanishing);
    EXPECT_TRUE(rep.zeros.empty());
}

TEST(Carleman, AtomsAndLebesgue) {
    cplx z(0.7, 0.4), zl(0.7, -0.4);
    CarlemanTransform at{LineMeasure::atom(2.0)};
    EXPECT_NEAR(std::abs(carleman_eval(at, z) - std::exp(cplx(0, 2.0) * z)), 0.0, 1e-15);
    EXPECT_EQ(carleman_eval(at, zl), cplx(0.0));
    CarlemanTransform zero{LineMeasure::atom(0.0, 3.0)};
    EXPECT_NEAR(std::abs(carleman_eval(zero, z) - 1.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(carleman_eval(zero, zl) + 1.5), 0.0, 1e-15);
    CarlemanTransform neg{LineMeasure::atom(-1.0)};
    EXPECT_NEAR(std::abs(carleman_eval(neg, zl) + std::exp(cplx(0, -1.0) * zl)), 0.0, 1e-15);
    // e^{-i l0 x} dx transforms to i/(z - l0) on both sides
    CarlemanTransform leb{LineMeasure::exp_density(3.0)};
    for (cplx w : {cplx(1.0, 0.5), cplx(-2.0, -0.2), cplx(3.0, 2.0)})
        EXPECT_NEAR(std::abs(carleman_eval(leb, w) - cplx(0, 1) / (w - 3.0)), 0.0, 1e-10) << w;
    EXPECT_THROW(carleman_eval(leb, cplx(1.0, 0.0)), domain_error);
}

TEST(Carleman, LinearityAndBound) {
    auto m = LineMeasure::atom(1.0) + LineMeasure::atom(-2.0).scaled(2.0);
    CarlemanTransform ct{m}, a{LineMeasure::atom(1.0)}, b{LineMeasure::atom(-2.0)};
    for (cplx z : {cplx(0.3, 0.5), cplx(-1.0, -0.1)})
        EXPECT_NEAR(std::abs(carleman_eval(ct, z) - carleman_eval(a, z) - 2.0 * carleman_eval(b, z)), 0.0,
                    1e-15);
    // |G| <= 2 for these atoms, far above M = 0.1 (1 + 1/|y|) at |y| = 10
    EXPECT_TRUE(carleman_bound_check(ct, 2.0, default_carleman_grid()).pass);
    auto bad = carleman_bound_check(ct, 0.1, default_carleman_grid());
    EXPECT_FALSE(bad.pass);
    EXPECT_GT(bad.violations, 0u);
}

TEST(Carleman, JumpScanFindsTheFrequency) {
    CarlemanTransform ct{LineMeasure::exp_density(3.0)};
    auto rep = spectrum_jump_scan(ct, 2.0, 4.0, 0.5);
    ASSERT_EQ(rep.flagged.size(), 1u);
    EXPECT_EQ(rep.flagged[0], 3.0);
}

TEST(ExponentialSolution, TwoLatticeExponents) {
    // (1/t)-symbol of t K vanishes at 2 pi k/ln 2, so Psi of the sum is identically zero
    double l = 2 * pi / std::log(2.0);
    auto rep = verify_exponential_solution(t_times_halving_kernel(), {l, 2 * l}, {1.0, cplx(0, 0.5)},
                                           {1.0, std::exp(1.0), std::exp(2.0)}, 1e-9);
    EXPECT_TRUE(rep.pass) << rep.max_residual;
    for (auto& s : rep.symbols) EXPECT_LT(std::abs(s.value), 1e-12);
    auto ctl = verify_exponential_solution(t_times_halving_kernel(), {1.0}, {1.0}, {1.0}, 1e-9);
    EXPECT_FALSE(ctl.pass);
    // |1 - 2^{i}|/|1 - i| for the control exponent
    EXPECT_NEAR(ctl.max_residual, std::abs(1.0 - std::pow(cplx(2.0), cplx(0, 1))) / std::sqrt(2.0), 1e-9);
}

TEST(ExponentialFamily, RecoversCoefficients) {
    auto fam = MetricFamily::dyadic();
    double rho = 0.5, l = 3.0;
    auto nu = RadonMeasure::density(0.0, kInf, Density::power(2.0, rho - 1.0)) +
              RadonMeasure::density(0.0, kInf, Density::power(cplx(0.5, -0.25), cplx(rho - 1.0, -l)));
    auto fit = fit_exponential_family(pairing_vector(nu, fam), rho, {l}, fam);
    ASSERT_EQ(fit.coeffs.size(), 2u);
    EXPECT_NEAR(std::abs(fit.coeffs[0] - 2.0), 0.0, 1e-8);
    EXPECT_NEAR(std::abs(fit.coeffs[1] - cplx(0.5, -0.25)), 0.0, 1e-8);
    EXPECT_LT(fit.residual, 1e-10);
}

TEST(Roundtrip, PowerMeasureWithExpKernel) {
    // mu = t^{-0.3} dt: s = Gamma(0.7) t^{0.7} dt, c1 = Gamma(0.7), so c/c1 = 1
    auto mu = RadonMeasure::density(0.0, kInf, Density::power(1.0, -0.3));
    RoundtripOptions opt;
    opt.run_zero_scan = false;
    auto rep = tauberian_roundtrip(Kernel::exp(), ProximateOrder(0.7), mu, geometric_schedule(1e3, 1e6, 5),
                                   MetricFamily::dyadic(), opt);
    EXPECT_TRUE(rep.pass) << rep.failed_stage;
    EXPECT_NEAR(rep.c1.real(), std::tgamma(0.7), 1e-9);
    EXPECT_NEAR(rep.s_fit.c.real(), std::tgamma(0.7), 1e-4);
    EXPECT_NEAR(rep.predicted.real(), 1.0, 1e-4);
}

TEST(Roundtrip, NonIntegrableKernelFailsFirst) {
    // K = chi(0,1] with rho = -0.5: t^{-3/2} is not integrable at 0
    auto mu = RadonMeasure::density(0.0, kInf, Density::power(1.0, -1.5));
    RoundtripOptions opt;
    opt.run_zero_scan = false;
    QuadControl quick;
    quick.max_expansions = 20;
    auto rep = tauberian_roundtrip(Kernel::indicator(0.0, 1.0), ProximateOrder(-0.5), mu,
                                   geometric_schedule(1e3, 1e5, 5), MetricFamily::dyadic(), opt, quick);
    EXPECT_FALSE(rep.pass);
    EXPECT_EQ(rep.failed_stage, "integrability");
}
