#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "displab/data_gen.hpp"
#include "displab/error.hpp"
#include "displab/fourier.hpp"
#include "displab/norms.hpp"
#include "displab/quadrature.hpp"
#include "support.hpp"

using namespace displab;
using std::numbers::pi;

namespace {

// (1/2pi) int e^{i x xi} phi^(xi) d xi by brute quadrature.
cplx inverse_transform(const SpectralProfile& p, double x) {
    const double re =
        integrate_line([&](double xi) { return (std::polar(1.0, x * xi) * p.fourier(xi)).real(); }, p.center_frequency,
                       {p.spectral_scale, 4 * p.spectral_scale, 16 * p.spectral_scale}, 1e-12)
            .value;
    const double im =
        integrate_line([&](double xi) { return (std::polar(1.0, x * xi) * p.fourier(xi)).imag(); }, p.center_frequency,
                       {p.spectral_scale, 4 * p.spectral_scale, 16 * p.spectral_scale}, 1e-12)
            .value;
    return cplx(re, im) / (2 * pi);
}

}  // namespace

TEST(Profiles, ClosedFormsMatchInverseTransform) {
    for (const auto& p : {make_gaussian(1.3), make_packet_profile(2.0, 0.8), make_bandlimited(3.0)}) {
        for (double x : {0.0, 0.4, -1.1, 2.5}) EXPECT_LT(std::abs(p.space(x) - inverse_transform(p, x)), 1e-9) << p.name << " x=" << x;
    }
}

// (1+xi^2)^{-1} and (1+xi^2)^{-2} invert to e^{-|x|}/2 and (1+|x|) e^{-|x|}/4.
TEST(Profiles, RoughClosedFormMatchesElementaryInverses) {
    EXPECT_FALSE(make_rough_profile(0.25, 0.05).has_closed_form());
    EXPECT_FALSE(make_rough_profile(0.45, 0.05).has_closed_form());
    const SpectralProfile p1 = make_rough_profile(1.45, 0.05);
    const SpectralProfile p2 = make_rough_profile(3.45, 0.05);
    ASSERT_TRUE(p1.has_closed_form());
    for (double x : {0.0, 0.3, -1.7, 5.0}) {
        const double r = std::abs(x);
        EXPECT_NEAR(p1.space(x).real(), 0.5 * std::exp(-r), 1e-10) << "x=" << x;
        EXPECT_NEAR(p2.space(x).real(), 0.25 * (1 + r) * std::exp(-r), 1e-10) << "x=" << x;
    }
    // value at the origin for a non-elementary order: (1/pi) int_0^inf (1+xi^2)^{-a/2} = Gamma((a-1)/2) / (2 sqrt(pi) Gamma(a/2))
    const double a = 0.9 + 0.5 + 0.05;
    EXPECT_NEAR(make_rough_profile(0.9, 0.05).space(0.0).real(),
                std::tgamma(0.5 * (a - 1)) / (2 * std::sqrt(pi) * std::tgamma(0.5 * a)), 1e-12);
}

TEST(Profiles, RoughDeclaresRegularityAndDecay) {
    const SpectralProfile p = make_rough_profile(0.3, 0.1);
    EXPECT_DOUBLE_EQ(p.regularity, 0.3);
    EXPECT_DOUBLE_EQ(p.decay, 0.9);
    EXPECT_NEAR(p.fourier(0.0).real(), 1.0, 1e-15);
    EXPECT_NEAR(p.fourier(10.0).real(), std::pow(101.0, -0.45), 1e-15);
    EXPECT_NO_THROW(norm_profile_sobolev(p, 0.39));
    EXPECT_THROW(norm_profile_sobolev(p, 0.4), NotInSpaceError);
}

TEST(Profiles, RejectBadParameters) {
    EXPECT_THROW(make_gaussian(0.0), DomainError);
    EXPECT_THROW(make_rough_profile(-0.1, 0.05), DomainError);
    EXPECT_THROW(make_rough_profile(0.3, 0.0), DomainError);
    EXPECT_THROW(make_packet_profile(1.0, -1.0), DomainError);
    EXPECT_THROW(make_bandlimited(0.0), DomainError);
}

TEST(ParseProfile, AllKindsAndErrors) {
    EXPECT_EQ(parse_profile("gaussian:2").name, make_gaussian(2.0).name);
    EXPECT_EQ(parse_profile("rough:0.25,0.05").name, "rough:0.25,0.05");
    EXPECT_DOUBLE_EQ(parse_profile("packet:3,0.5").center_frequency, 3.0);
    EXPECT_EQ(parse_profile("bandlimited:4").band_limit.value(), 4.0);
    EXPECT_EQ(parse_profile("rough:0.4").decay, 0.4 + 0.5 + 0.05);
    EXPECT_THROW(parse_profile("square"), DomainError);
    EXPECT_THROW(parse_profile("rough"), DomainError);
    EXPECT_THROW(parse_profile("gaussian:abc"), DomainError);
    EXPECT_THROW(parse_profile("gaussian:1x"), DomainError);
}

TEST(MakePacket, UnitNormCenteredAndBandChecked) {
    const GridSpec g(0.05, 1024);
    const FieldState u = make_packet(10.0, 0.4, g);
    EXPECT_NEAR(norm_lr(u, 2.0), 1.0, 1e-14);
    std::size_t peak = 0;
    for (std::size_t j = 0; j < g.n(); ++j)
        if (std::abs(u.values[j]) > std::abs(u.values[peak])) peak = j;
    EXPECT_NEAR(g.node(peak), 0.0, 1e-12);
    EXPECT_THROW(make_packet(1.01 * pi / 0.05, 0.4, g), DomainError);
    EXPECT_NO_THROW(make_packet(pi / 0.05, 0.4, g));
}

TEST(MakePacket, ContinuousNormMatchesGrid) {
    // ||exp(-x^2/(2 sigma^2))||_{L2}^2 = sigma sqrt(pi); the packet is that profile scaled
    const double sigma = 0.7;
    const GridSpec g(0.02, 2048);
    const FieldState u = make_packet(3.0, sigma, g);
    const double scale = std::abs(u.values[g.n() / 2]);
    EXPECT_NEAR(1.0 / (scale * scale), sigma * std::sqrt(pi), 1e-10);
}
