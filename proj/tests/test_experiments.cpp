#include <gtest/gtest.h>

#include <cmath>

#include "displab/data_gen.hpp"
#include "displab/error.hpp"
#include "displab/experiments.hpp"
#include "displab/rate_fit.hpp"

using namespace displab;

TEST(FitRate, ExactPowerLaw) {
    const std::vector<double> h{0.2, 0.1, 0.05, 0.025};
    std::vector<double> e;
    for (double x : h) e.push_back(3.0 * std::pow(x, 1.5));
    const RateFit f = fit_rate(h, e);
    EXPECT_NEAR(f.slope, 1.5, 1e-12);
    EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
    EXPECT_TRUE(f.clean);
}

TEST(FitRate, LogarithmicDecayIsNotClean) {
    std::vector<double> h, e;
    // power-law R^2 is 0.98 here, so only the comparison with the log law rejects it
    for (int k = 8; k <= 20; ++k) {
        h.push_back(std::ldexp(1.0, -k));
        e.push_back(std::pow(std::abs(std::log(h.back())), -0.5));
    }
    const RateFit f = fit_rate(h, e);
    EXPECT_GT(f.r_squared, 0.9);
    EXPECT_FALSE(f.clean);
    EXPECT_NE(f.note.find("logarithmic"), std::string::npos);
}

TEST(FitRate, NoisyDataIsNotClean) {
    const RateFit f = fit_rate({0.2, 0.1, 0.05, 0.025}, {1.0, 0.1, 1.0, 0.1});
    EXPECT_FALSE(f.clean);
    EXPECT_LT(f.r_squared, 0.9);
    EXPECT_THROW(fit_rate({0.1, 0.05}, {1.0, 0.5}), DomainError);
}

TEST(LseError, ExactSchemeHasNoError) {
    const GridSpec g(0.1, 512);
    EXPECT_LT(lse_error(SchemeSymbol::exact(0.1), make_gaussian(1.0), 1.0, Exponent::infinity(), Exponent::of(2), g), 1e-14);
}

TEST(LseError, RejectsInadmissiblePair) {
    const GridSpec g(0.1, 512);
    EXPECT_THROW(lse_error(SchemeSymbol::fd3(0.1), make_gaussian(1.0), 1.0, Exponent::of(4), Exponent::of(4), g),
                 DomainError);
}

TEST(LseRateStudy, ExactSchemeIsDegenerate) {
    LseStudyOptions opt;
    opt.run_checks = false;
    const RateReport r = lse_rate_study(SchemeSymbol::exact(0.1), make_gaussian(1.0), opt);
    EXPECT_TRUE(r.degenerate);
    for (const auto& s : r.series)
        for (double e : s.errors) EXPECT_LT(e, 1e-14);
}

TEST(LseRateStudy, HyperviscousSmoothDataSecondOrderOnFineGrids) {
    LseStudyOptions opt;
    opt.h_list = {0.05, 0.025, 0.0125, 0.00625};
    opt.length = 25.6;
    const RateReport r = lse_rate_study(SchemeSymbol::hyperviscous(0.05, 2), make_gaussian(1.0), opt);
    for (const auto& s : r.series) {
        EXPECT_NEAR(s.fit.slope, 2.0, 0.2) << s.norm_id;
        EXPECT_TRUE(s.fit.clean) << s.norm_id;
    }
    EXPECT_TRUE(r.valid());
}

TEST(LseRateStudy, Deterministic) {
    LseStudyOptions opt;
    opt.h_list = {0.2, 0.1, 0.05};
    opt.run_checks = false;
    const auto scheme = SchemeSymbol::fd3(0.1);
    const auto phi = make_rough_profile(1.0, 0.05);
    opt.jobs = 1;
    const RateReport a = lse_rate_study(scheme, phi, opt);
    opt.jobs = 4;
    const RateReport b = lse_rate_study(scheme, phi, opt);
    for (std::size_t i = 0; i < a.series.size(); ++i) EXPECT_EQ(a.series[i].errors, b.series[i].errors);
}

TEST(LseRateStudy, ZeroDataGivesZeroErrors) {
    SpectralProfile zero = make_gaussian(1.0);
    zero.fourier = [](double) { return cplx(0.0); };
    zero.space = [](double) { return cplx(0.0); };
    LseStudyOptions opt;
    opt.h_list = {0.2, 0.1, 0.05};
    opt.run_checks = false;
    const RateReport r = lse_rate_study(SchemeSymbol::fd3(0.1), zero, opt);
    for (const auto& s : r.series)
        for (double e : s.errors) EXPECT_EQ(e, 0.0);
}

// Both admissible pairs measure the same two-grid error rate.
TEST(TwoGridLse, AdmissiblePairsAgreeOnRate) {
    std::vector<double> hs{0.1, 0.05, 0.025, 0.0125};
    std::vector<double> e66, einf;
    for (double h : hs) {
        const GridSpec g(h, static_cast<std::size_t>(std::llround(51.2 / h)));
        e66.push_back(twogrid_lse_error(make_gaussian(1.0), 1.0, Exponent::of(6), Exponent::of(6), g));
        einf.push_back(twogrid_lse_error(make_gaussian(1.0), 1.0, Exponent::infinity(), Exponent::of(2), g));
    }
    EXPECT_NEAR(fit_rate(hs, e66).slope, fit_rate(hs, einf).slope, 0.2);
}

TEST(H1Baseline, DoublingTimeGrowsErrorModerately) {
    NseStudyOptions opt;
    opt.h_list = {0.2, 0.1, 0.05};
    opt.run_checks = false;
    const RateReport a = h1_baseline(make_gaussian(1.0), opt);
    opt.T = 2.0;
    const RateReport b = h1_baseline(make_gaussian(1.0), opt);
    const auto& ea = a.series.front().errors;
    const auto& eb = b.series.front().errors;
    for (std::size_t i = 0; i < ea.size(); ++i) {
        EXPECT_GE(eb[i], ea[i]);
        EXPECT_LE(eb[i], 4.5 * ea[i]);
    }
}

TEST(NseRateStudy, ZeroDataGivesZeroErrors) {
    SpectralProfile zero = make_gaussian(1.0);
    zero.fourier = [](double) { return cplx(0.0); };
    zero.space = [](double) { return cplx(0.0); };
    NseStudyOptions opt;
    opt.h_list = {0.4, 0.2, 0.1};
    opt.ref_divisor = 4;
    opt.T = 0.2;
    opt.run_checks = false;
    const RateReport r = nse_rate_study(SchemeSymbol::fd3(0.1), zero, opt);
    for (const auto& s : r.series)
        for (double e : s.errors) EXPECT_EQ(e, 0.0);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
    for (int h : hits) EXPECT_EQ(h, 1);
}
