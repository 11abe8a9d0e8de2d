#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "displab/data_gen.hpp"
#include "displab/error.hpp"
#include "displab/fourier.hpp"
#include "displab/norms.hpp"
#include "displab/projectors.hpp"
#include "displab/propagators.hpp"
#include "support.hpp"

using namespace displab;
using std::numbers::pi;

namespace {

FieldState gaussian_on(const GridSpec& g) { return project_Th(make_gaussian(1.0), g); }

FieldState twogrid_gaussian(const GridSpec& g) {
    const TwoGridPair pr(g);
    return twogrid_interpolate(project_Th(make_gaussian(1.0), pr.coarse), g);
}

}  // namespace

TEST(LinearPropagator, IdentityAtTimeZeroSeed401) {
    auto rng = support::rng(401);
    const GridSpec g(0.1, 128);
    const FieldState u(g, support::random_cvec(rng, g.n()));
    for (const auto& s : {SchemeSymbol::fd3(0.1), SchemeSymbol::hyperviscous(0.1, 2), SchemeSymbol::viscous(0.1)})
        EXPECT_LT(support::rel_diff(LinearPropagator(s, g).evolve(u, 0.0).values, u.values), 1e-14);
}

// exp(-x^2) under u_t = i u_xx is (1+4it)^{-1/2} exp(-x^2/(1+4it)).
TEST(LinearPropagator, ExactSymbolMatchesGaussianClosedForm) {
    const GridSpec g(80.0 / 4096, 4096);
    const FieldState u = evolve_linear(LinearPropagator(SchemeSymbol::exact(g.h()), g), gaussian_on(g), 1.0);
    const cplx w(1.0, 4.0);
    double worst = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j) {
        const double x = g.node(j);
        worst = std::max(worst, std::abs(u.values[j] - std::exp(-x * x / w) / std::sqrt(w)));
    }
    EXPECT_LT(worst, 1e-8);
}

TEST(LinearPropagator, ConservativeSchemesKeepL2Seed402) {
    auto rng = support::rng(402);
    const GridSpec g(0.1, 256);
    const FieldState u(g, support::random_cvec(rng, g.n()));
    const double n0 = norm_lr(u, 2.0);
    for (const auto& s : {SchemeSymbol::fd3(0.1), SchemeSymbol::exact(0.1)}) {
        const LinearPropagator P(s, g);
        for (double t : {0.1, 1.0, 10.0}) EXPECT_NEAR(norm_lr(P.evolve(u, t), 2.0) / n0, 1.0, 1e-12) << s.id();
    }
}

TEST(LinearPropagator, GroupPropertySeed403) {
    auto rng = support::rng(403);
    const GridSpec g(0.1, 128);
    const FieldState u(g, support::random_cvec(rng, g.n()));
    for (const auto& s : {SchemeSymbol::fd3(0.1), SchemeSymbol::hyperviscous(0.1, 3)}) {
        const LinearPropagator P(s, g);
        EXPECT_LT(support::rel_diff(P.evolve(P.evolve(u, 0.3), 0.45).values, P.evolve(u, 0.75).values), 1e-12);
    }
}

TEST(LinearPropagator, DissipativeSchemesContractSeed404) {
    auto rng = support::rng(404);
    const GridSpec g(0.1, 128);
    const FieldState u(g, support::random_cvec(rng, g.n()));
    for (const auto& s : {SchemeSymbol::hyperviscous(0.1, 2), SchemeSymbol::hyperviscous(0.1, 3), SchemeSymbol::viscous(0.1)}) {
        const LinearPropagator P(s, g);
        double prev = norm_lr(u, 2.0);
        for (int k = 1; k <= 20; ++k) {
            const double n = norm_lr(P.evolve(u, 0.05 * k), 2.0);
            EXPECT_LE(n, prev * (1 + 1e-14)) << s.id();
            prev = n;
        }
        EXPECT_LT(prev, norm_lr(u, 2.0));
    }
}

TEST(LinearPropagator, CommutesWithLittlewoodPaleySeed405) {
    auto rng = support::rng(405);
    const GridSpec g(0.05, 256);
    const FieldState u(g, support::random_cvec(rng, g.n()));
    const LinearPropagator P(SchemeSymbol::hyperviscous(0.05, 2), g);
    for (int j : {0, 2, 5})
        EXPECT_LT(support::max_diff(P.evolve(littlewood_paley(u, j), 0.4).values, littlewood_paley(P.evolve(u, 0.4), j).values),
                  1e-12);
}

TEST(SemigroupDifference, VanishesForEqualSymbols) {
    const GridSpec g(0.2, 256);
    const auto s = SchemeSymbol::fd3(0.2);
    EXPECT_LT(semigroup_difference_check(s, s, gaussian_on(g), 1.0, 8), 1e-14);
}

TEST(SemigroupDifference, ConvergesWithNodes) {
    const GridSpec g(0.2, 256);
    const auto A = SchemeSymbol::fd3(0.2), B = SchemeSymbol::exact(0.2);
    const double r16 = semigroup_difference_check(A, B, gaussian_on(g), 1.0, 16);
    const double r64 = semigroup_difference_check(A, B, gaussian_on(g), 1.0, 64);
    EXPECT_LT(r64, 1e-8);
    EXPECT_LE(r64, r16 + 1e-15);
}

// One Fourier mode: the identity reduces to e^{ta} - e^{tb} = int e^{(t-s)b} e^{sa} (a - b) ds.
TEST(SemigroupDifference, SingleModeIsExact) {
    const GridSpec g(0.5, 32);
    SpectrumState c = SpectrumState::zeros(g);
    c.coeffs[3] = 1.0;
    const FieldState mode = inverse_dft(c);
    EXPECT_LT(semigroup_difference_check(SchemeSymbol::hyperviscous(0.5, 2), SchemeSymbol::exact(0.5), mode, 2.0, 32), 1e-12);
}

TEST(Nse, ZeroDataStaysZero) {
    const GridSpec g(0.1, 128);
    for (const auto& s : {SchemeSymbol::fd3(0.1), SchemeSymbol::hyperviscous(0.1, 2), SchemeSymbol::filtered(0.1)})
        EXPECT_EQ(support::max_abs(integrate_nse(NseProblem(s, FieldState::zeros(g), 2.0, 0.5, 1e-2)).values), 0.0);
}

TEST(Nse, ConstantDataRotatesInPhase) {
    const GridSpec g(0.1, 64);
    const cplx c0(0.6, -0.3);
    for (double p : {1.0, 2.0, 3.0}) {
        const FieldState u = integrate_nse(NseProblem(SchemeSymbol::fd3(0.1), FieldState(g, cvec(g.n(), c0)), p, 1.0, 1e-2));
        const cplx expect = c0 * std::exp(cplx(0.0, -std::pow(std::abs(c0), p)));
        for (const auto& z : u.values) EXPECT_NEAR(std::abs(z - expect), 0.0, 1e-10) << "p=" << p;
    }
}

TEST(Nse, RejectsExponentOutsideRange) {
    const GridSpec g(0.1, 64);
    EXPECT_THROW(integrate_nse(NseProblem(SchemeSymbol::fd3(0.1), FieldState::zeros(g), 4.0)), DomainError);
    EXPECT_THROW(integrate_nse(NseProblem(SchemeSymbol::fd3(0.1), FieldState::zeros(g), 0.0)), DomainError);
    EXPECT_THROW(integrate_nse(NseProblem(SchemeSymbol::fd3(0.1), FieldState::zeros(g), 2.0, 1.0, -1e-3)), DomainError);
    EXPECT_THROW(integrate_nse_twogrid(NseProblem(SchemeSymbol::twogrid(0.1), FieldState::zeros(g), 4.0),
                                       RestartSchedule::never()),
                 DomainError);
}

TEST(Nse, StrangSplittingIsSecondOrder) {
    const GridSpec g(0.02, 4096);
    const FieldState phi = gaussian_on(g);
    std::vector<FieldState> runs;
    for (int k = 0; k < 4; ++k)
        runs.push_back(integrate_nse(NseProblem(SchemeSymbol::exact(0.02), phi, 2.0, 1.0, 0.02 / std::pow(2.0, k))));
    const double e1 = support::l2_diff(runs[1], runs[0]);
    const double e2 = support::l2_diff(runs[2], runs[1]);
    const double e3 = support::l2_diff(runs[3], runs[2]);
    EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.2);
    EXPECT_NEAR(std::log2(e2 / e3), 2.0, 0.2);
}

TEST(Nse, ConservativeSchemeKeepsMass) {
    const GridSpec g(0.05, 512);
    const SpaceTimeTrace tr = evolve_nse(NseProblem(SchemeSymbol::fd3(0.05), gaussian_on(g), 2.0, 1.0, 1e-3));
    const double n0 = norm_lr(tr.states.front(), 2.0);
    for (const auto& u : tr.states) EXPECT_NEAR(norm_lr(u, 2.0) / n0, 1.0, 1e-8);
}

TEST(Nse, DissipativeSchemeMassNonincreasing) {
    const GridSpec g(0.05, 512);
    const SpaceTimeTrace tr = evolve_nse(NseProblem(SchemeSymbol::hyperviscous(0.05, 2), gaussian_on(g), 2.0, 1.0, 1e-3));
    for (std::size_t i = 1; i < tr.size(); ++i)
        EXPECT_LE(norm_lr(tr.states[i], 2.0), norm_lr(tr.states[i - 1], 2.0) * (1 + 1e-13));
}

// Duhamel fixed point u = S(t) phi - i int_0^t S(t-s) |u|^2 u ds, iterated in the
// interaction picture with trapezoid quadrature on a fine time grid.
TEST(Nse, AgreesWithPicardIterationOracle) {
    const double h = 0.5, T = 0.5;
    const GridSpec g(h, 32);
    const auto scheme = SchemeSymbol::fd3(h);
    const FieldState phi = project_Th(make_gaussian(2.0), g);
    const cvec gen = semigroup_generator(scheme, g);
    const std::size_t M = 4000;
    const double dt = T / M;
    const cvec c0 = forward_dft(phi).coeffs;

    std::vector<FieldState> u(M + 1, phi);
    for (std::size_t m = 0; m <= M; ++m) u[m] = LinearPropagator(scheme, g).evolve(phi, m * dt);
    for (int it = 0; it < 30; ++it) {
        std::vector<cvec> w(M + 1);  // e^{-g s} F[f(u(s))]
        for (std::size_t m = 0; m <= M; ++m) {
            FieldState f = u[m];
            for (auto& z : f.values) z *= std::norm(z);
            w[m] = forward_dft(f).coeffs;
            for (std::size_t k = 0; k < g.n(); ++k) w[m][k] *= std::exp(-gen[k] * (m * dt));
        }
        cvec acc(g.n(), 0.0);
        for (std::size_t m = 0; m <= M; ++m) {
            if (m > 0)
                for (std::size_t k = 0; k < g.n(); ++k) acc[k] += 0.5 * dt * (w[m - 1][k] + w[m][k]);
            cvec c(g.n());
            for (std::size_t k = 0; k < g.n(); ++k) c[k] = std::exp(gen[k] * (m * dt)) * (c0[k] - cplx(0, 1) * acc[k]);
            u[m] = inverse_dft(SpectrumState(g, c));
        }
    }
    const FieldState v = integrate_nse(NseProblem(scheme, phi, 2.0, T, 1e-3));
    EXPECT_LT(support::l2_diff(v, u[M]) / norm_lr(phi, 2.0), 1e-5);
}

TEST(TwoGridNse, UncoupledRunMatchesLinearEvolution) {
    const double h = 0.05;
    const GridSpec g(h, 512);
    const FieldState d = twogrid_gaussian(g);
    NseProblem P(SchemeSymbol::twogrid(h), d, 2.0, 1.0, 1e-2);
    P.coupling = false;
    const FieldState u = integrate_nse_twogrid(P, RestartSchedule::never());
    const FieldState lin = LinearPropagator(SchemeSymbol::fd3(h), g).evolve(d, 1.0);
    EXPECT_LT(support::l2_diff(u, lin), 1e-12);
}

TEST(TwoGridNse, RestartsDoNotIncreaseMass) {
    const double h = 0.05;
    const GridSpec g(h, 512);
    NseProblem P(SchemeSymbol::twogrid(h), twogrid_gaussian(g), 2.0, 1.0, 1e-3);
    P.sample_every = 10;
    const SpaceTimeTrace tr = evolve_nse_twogrid(P, RestartSchedule{0.2, 1.0});
    for (std::size_t i = 1; i < tr.size(); ++i)
        EXPECT_LE(norm_lr(tr.states[i], 2.0), norm_lr(tr.states[i - 1], 2.0) * (1 + 1e-13));
}

// Restart perturbations shrink like h^2; at h = 0.0125 they are below 1e-3 in L^inf l2.
TEST(TwoGridNse, WindowedRunTracksUnwindowedRun) {
    const double h = 0.0125;
    const GridSpec g(h, 2048);
    const FieldState d = twogrid_gaussian(g);
    NseProblem P(SchemeSymbol::twogrid(h), d, 2.0, 1.0, 1e-3);
    P.sample_every = 10;
    const auto a = evolve_nse_twogrid(P, RestartSchedule::for_data(2.0, norm_lr(d, 2.0)));
    const auto b = evolve_nse_twogrid(P, RestartSchedule::never());
    ASSERT_EQ(a.size(), b.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, support::l2_diff(a.states[i], b.states[i]));
    EXPECT_LT(worst, 1e-3);
}

TEST(TwoGridNse, ProjectionIsIdempotentAndFixesTheClass) {
    auto rng = support::rng(406);
    const GridSpec g(0.1, 128);
    const FieldState u(g, support::random_cvec(rng, g.n()));
    const FieldState p = twogrid_project(u);
    EXPECT_LT(support::rel_diff(twogrid_project(p).values, p.values), 1e-10);
    const FieldState d = twogrid_gaussian(g);
    EXPECT_LT(support::rel_diff(twogrid_project(d).values, d.values), 1e-10);
    EXPECT_LE(norm_lr(p, 2.0), norm_lr(u, 2.0));
}

TEST(RestartSchedule, FormulaAndNever) {
    EXPECT_DOUBLE_EQ(RestartSchedule::for_data(2.0, 2.0).T0, std::pow(2.0, -4.0));
    EXPECT_NEAR(RestartSchedule::for_data(3.0, 0.5, 2.0).T0, 2.0 * std::pow(0.5, -12.0), 1e-9);
    EXPECT_NEAR(RestartSchedule::for_data(1.0, 4.0).T0, std::pow(4.0, -4.0 / 3.0), 1e-15);
    EXPECT_TRUE(std::isinf(RestartSchedule::never().T0));
}
