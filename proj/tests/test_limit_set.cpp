#include <cmath>

#include <gtest/gtest.h>

#include <karamata/limit_set.hpp>

using namespace karamata;

namespace {

RadonMeasure periodic_atoms() {
    return RadonMeasure::make({{{1.0, 1.0}, {1.5, 2.0}}, {}}, TailRule::self_similar(2.0, 0.5));
}

std::vector<double> sixteen_taus() {
    std::vector<double> t;
    for (int i = 0; i < 16; ++i) t.push_back(std::pow(2.0, i / 16.0));
    return t;
}

// atoms at e^{n^2} with weight e^{rho n^2}
RadonMeasure sparse_atoms(double rho) {
    auto gen = [rho](double lo, double hi) {
        MeasureContent c;
        for (int n = 1; n * n <= std::log(hi) + 1; ++n) {
            double x = std::exp(double(n * n));
            if (x > lo && x <= hi) c.atoms.push_back({x, std::exp(rho * n * n)});
        }
        return c;
    };
    return RadonMeasure::make({}, TailRule::formula(gen, "sparse"));
}

}  // namespace

TEST(Schedule, GeometricAndLattice) {
    auto g = geometric_schedule(10.0, 1e4, 5);
    ASSERT_EQ(g.size(), 16u);
    EXPECT_EQ(g.front(), 10.0);
    EXPECT_NEAR(g.back(), 1e4, 1e-9);
    for (std::size_t i = 1; i < g.size(); ++i) EXPECT_NEAR(g[i] / g[i - 1], std::pow(10.0, 0.2), 1e-12);
    auto l = lattice_schedule({1.5, 1.0}, 2.0, 3, 4);
    EXPECT_EQ(l, (std::vector<double>{8.0, 12.0, 16.0, 24.0}));
    EXPECT_THROW(geometric_schedule(0.5, 10.0, 3), domain_error);
    EXPECT_THROW(lattice_schedule({1.0}, 1.0, 0, 1), domain_error);
}

TEST(LimitSet, RegularPowerDensity) {
    // 3 t^{-1/2} dt is invariant under mu -> mu(t.)/t^{1/2}
    auto m = RadonMeasure::density(0.0, kInf, Density::power(3.0, -0.5));
    ProximateOrder o(0.5);
    auto fam = MetricFamily::dyadic();
    auto tr = sample_trajectory(m, o, geometric_schedule(100.0, 1e6, 5), fam);
    auto est = estimate_limit_set(tr);
    ASSERT_TRUE(est.regular);
    EXPECT_FALSE(est.clusters[0].is_zero);
    auto fit = verify_regular_limit_form(tr, est, o);
    EXPECT_TRUE(fit.pass);
    EXPECT_NEAR(fit.c.real(), 3.0, 1e-9);
    EXPECT_NEAR(fit.c.imag(), 0.0, 1e-9);
    // transient cut: first 20% and everything below the top two decades
    for (auto i : est.used) EXPECT_GE(tr.samples[i].t, 1e4 * (1 - 1e-12));
}

TEST(LimitSet, DensityEnvelopeIsSharpForPowerMeasure) {
    double rho = 0.5;
    auto m = RadonMeasure::density(0.0, kInf, Density::power(1.0, rho - 1.0));
    ProximateOrder o(rho);
    auto fam = MetricFamily::dyadic();
    auto tr = sample_trajectory(m, o, geometric_schedule(10.0, 1e4, 4), fam);
    auto est = estimate_limit_set(tr);
    auto N = [&](double a) { return (std::pow(1 + a, rho) - 1) / rho; };
    auto rep = verify_density_envelope(tr, est, o, N, N, {{0.5, 1.0}, {1.0, 3.0}, {2.0, 2.5}}, 1e-9);
    EXPECT_TRUE(rep.pass) << rep.worst;
    EXPECT_NEAR(rep.rows[1].value, 2.0 * (std::sqrt(3.0) - 1.0), 1e-10);
}

TEST(LimitSet, PeriodicAtomsGiveOrbit) {
    ProximateOrder o(0.5);
    auto fam = MetricFamily::dyadic();
    auto tr = sample_trajectory(periodic_atoms(), o, lattice_schedule(sixteen_taus(), 2.0, 4, 20), fam);
    auto est = estimate_limit_set(tr);
    EXPECT_EQ(est.clusters.size(), 16u);
    EXPECT_FALSE(est.regular);
    EXPECT_GT(est.min_rep_separation, est.eps_cluster);
    // every cluster collects exactly the samples sharing a tau
    for (const auto& c : est.clusters) {
        EXPECT_LE(c.diameter, 1e-12);
        double tau0 = tr.samples[c.members[0]].t / std::exp2(std::floor(std::log2(tr.samples[c.members[0]].t)));
        for (auto i : c.members) {
            double t = tr.samples[i].t;
            EXPECT_NEAR(t / std::exp2(std::floor(std::log2(t))), tau0, 1e-9);
        }
    }
    // the orbit is flow invariant for shifts on the tau lattice
    auto flow = check_flow_invariance(tr, est, o, {std::pow(2.0, 1 / 16.0), std::pow(2.0, 5 / 16.0), 2.0});
    EXPECT_TRUE(flow.pass);
    EXPECT_LT(flow.worst, 1e-12);
}

TEST(LimitSet, ClusterCountIsMonotoneInEps) {
    ProximateOrder o(0.5);
    auto fam = MetricFamily::dyadic();
    auto tr = sample_trajectory(periodic_atoms(), o, lattice_schedule(sixteen_taus(), 2.0, 4, 20), fam);
    std::size_t prev = 1000;
    for (double eps : {1e-8, 1e-4, 1e-3, 1e-2, 0.05, 0.1, 0.3, 1.0}) {
        LimitSetOptions opt;
        opt.eps_cluster = eps;
        auto n = estimate_limit_set(tr, opt).clusters.size();
        EXPECT_LE(n, prev) << eps;
        prev = n;
        if (eps <= 1e-3) EXPECT_EQ(n, 16u);
        if (eps >= 1.0) EXPECT_EQ(n, 1u);
    }
}

TEST(LimitSet, SparseAtomsHaveZeroLimit) {
    ProximateOrder o(0.5);
    auto fam = MetricFamily::dyadic();
    auto tr = sample_trajectory(sparse_atoms(0.5), o, geometric_schedule(1e3, 1e30, 6), fam);
    auto est = estimate_limit_set(tr);
    int zeros = 0, nonzero = 0;
    for (auto& c : est.clusters) (c.is_zero ? zeros : nonzero)++;
    EXPECT_EQ(zeros, 1);
    EXPECT_GE(nonzero, 1);
}

TEST(LimitSet, RejectsShortTrajectories) {
    auto m = RadonMeasure::density(0.0, kInf, Density::power(1.0, -0.5));
    auto fam = MetricFamily::dyadic(8);
    auto tr = sample_trajectory(m, ProximateOrder(0.5), {1.0, 2.0, 3.0}, fam);
    EXPECT_THROW(estimate_limit_set(tr), input_error);
    EXPECT_THROW(sample_trajectory(m, ProximateOrder(0.5), {2.0, 1.5}, fam), domain_error);
    EXPECT_THROW(sample_trajectory(m, ProximateOrder(0.5), {}, fam), input_error);
}
