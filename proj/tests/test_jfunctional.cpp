#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "displab/data_gen.hpp"
#include "displab/error.hpp"
#include "displab/jfunctional.hpp"
#include "support.hpp"

using namespace displab;

namespace {

std::vector<double> dyadic_h(int k0, int k1) {
    std::vector<double> h;
    for (int k = k0; k <= k1; ++k) h.push_back(std::ldexp(1.0, -k));
    return h;
}

const SpectralProfile& rough() {
    static const SpectralProfile p = make_rough_profile(0.25, 0.05);
    return p;
}

}  // namespace

TEST(MinJ, ZeroDataGivesHalfH) {
    SpectralProfile zero = make_gaussian(1.0);
    zero.fourier = [](double) { return cplx(0.0); };
    const MinJResult r = min_J(JProblem(zero, 1e-3, 0.25));
    EXPECT_EQ(r.ch.c, 0.0);
    EXPECT_NEAR(r.value, 0.5e-3, 1e-18);
}

// Independent scipy evaluation of the same reduced formula.
TEST(MinJ, FrozenReferenceValue) {
    const MinJResult r = min_J(JProblem(rough(), 1e-3, 0.25));
    EXPECT_NEAR(r.value, 0.816600667428508, 1e-9);
    EXPECT_NEAR(r.direct, r.value, 1e-8);
}

TEST(SolveCh, ResidualAndBisectionCertificate) {
    for (double h : dyadic_h(8, 20)) {
        const ChSolution c = solve_ch(JProblem(rough(), h, 0.25));
        EXPECT_LT(c.residual, 1e-10) << "h=" << h;
        EXPECT_LE(c.g_lo, 0.0);
        EXPECT_GE(c.g_hi, 0.0);
        EXPECT_LE(c.bracket_lo, c.x);
        EXPECT_GE(c.bracket_hi, c.x);
        EXPECT_NEAR(c.c * c.c, c.x, 1e-12 * std::max(1.0, c.x));
    }
}

TEST(SolveCh, GrowsAsHShrinksWithBoundedOffset) {
    double prev = 0.0;
    std::vector<double> offsets;
    for (double h : dyadic_h(8, 20)) {
        const JProblem P(rough(), h, 0.25);
        const double x = solve_ch(P).x;
        EXPECT_GT(x, prev);
        prev = x;
        // x - log(1/h) against the constant-offset law x ~ log(1/h) + a
        offsets.push_back(x - std::abs(std::log(h)) + std::log(std::abs(std::log(h))));
    }
    const auto [lo, hi] = std::minmax_element(offsets.begin(), offsets.end());
    EXPECT_LT(*hi - *lo, 1.0);
}

TEST(QRoot, ExactRootAndUnitWindow) {
    for (double h : {1e-6, 1e-9}) {
        const double x = q_root(h, 2.0, 1.0);
        EXPECT_NEAR(h * x * x * std::exp(x), 1.0, 1e-10);
        const double L = std::abs(std::log(h));
        EXPECT_GT(x, L - 2 * std::log(L) - 1.0) << "h=" << h;
        EXPECT_LT(x, L - 2 * std::log(L) + 1.0) << "h=" << h;
    }
    EXPECT_THROW(q_root(0.0, 2.0, 1.0), DomainError);
}

// J restricted to a line through the minimizer stays above min J.
TEST(EvaluateJ, MinimizerBeatsRandomPerturbationsSeed501) {
    auto rng = support::rng(501);
    std::uniform_real_distribution<double> amp(-0.3, 0.3);
    const JProblem P(rough(), 1e-3, 0.25);
    const MinJResult r = min_J(P);
    const double y = P.h * std::exp(r.ch.x);
    for (int trial = 0; trial < 10; ++trial) {
        const double a = amp(rng), b = amp(rng);
        const auto m = [=](double xi) {
            const double w = 1.0 + xi * xi;
            return 1.0 / (1.0 + y * w) + a * std::exp(-xi * xi) + b / (1.0 + w);
        };
        EXPECT_GE(evaluate_J(P, m), r.value - 1e-9);
        const auto mid = [=](double xi) { return 0.5 * (m(xi) + 1.0 / (1.0 + y * (1.0 + xi * xi))); };
        EXPECT_LE(evaluate_J(P, mid), 0.5 * (evaluate_J(P, m) + r.value) + 1e-9);
    }
}

TEST(LogRate, ExponentInBandAndFlatNormalizedProduct) {
    const LogRateReport rep = log_rate_study(0.25, 0.05, dyadic_h(8, 20));
    EXPECT_GE(rep.alpha, 0.18);
    EXPECT_LE(rep.alpha, 0.55);
    EXPECT_LT(rep.band_ratio, 5.0);
    EXPECT_GT(rep.r_squared, 0.9);
    for (std::size_t i = 1; i < rep.min_j.size(); ++i) EXPECT_LT(rep.min_j[i], rep.min_j[i - 1]);
    EXPECT_THROW(log_rate_study(0.6, 0.05, {1e-3, 1e-4}), DomainError);
}

// For lambda >= 1, J_phi(g/lambda) <= J_{lambda phi}(g), so min J grows with the amplitude;
// g = 0 bounds it by ||lambda phi||^2 / 2 + h / 2.
TEST(MinJ, MonotoneInAmplitudeAndBoundedByZeroCompetitor) {
    // int (1+xi^2)^{-0.8} d xi = sqrt(pi) Gamma(0.3) / Gamma(0.8)
    const double phi2 = std::sqrt(std::numbers::pi) * std::tgamma(0.3) / std::tgamma(0.8);
    for (double h : {1e-3, 1e-6}) {
        double prev = 0.0;
        for (double lam : {1.0, 1.5, 2.0}) {
            SpectralProfile p = rough();
            p.fourier = [lam](double xi) { return lam * rough().fourier(xi); };
            const double v = min_J(JProblem(p, h, 0.25)).value;
            EXPECT_GT(v, prev);
            EXPECT_LE(v, 0.5 * lam * lam * phi2 + 0.5 * h);
            prev = v;
        }
    }
}

TEST(BruteForce, DiscreteSpectrumAgreesWithReduction) {
    for (double h : {1e-2, 1e-3}) {
        auto mu = std::make_shared<DiscreteMeasure>(DiscreteMeasure::uniform(64, 0.5));
        const JProblem P(rough(), h, 0.25, mu);
        const MinJResult r = min_J(P);
        const BruteForceResult b = brute_force_min_J(P, 2 * std::abs(std::log(h)), 1e-3);
        EXPECT_NEAR(b.value, r.value, 1e-6) << "h=" << h;
        EXPECT_NEAR(r.direct, r.value, 1e-10);
        EXPECT_NEAR(b.X, r.ch.x, 1e-2);
    }
}

TEST(JProblem, RejectsBadStep) {
    EXPECT_THROW(JProblem(rough(), 0.0, 0.25), DomainError);
    EXPECT_THROW(JProblem(rough(), 1.5, 0.25), DomainError);
}
