#include "fmkdv/cutoff.hpp"
#include "fmkdv/errors.hpp"
#include "fmkdv/spectral.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace fmkdv;

TEST(Grid, SmallestSmoothSizeMeetsDealiasRule)
{
    for (int M : {1, 7, 8, 16, 64, 256}) {
        const auto g = GridSpec::make(M);
        EXPECT_GE(g.phys_points, 3 * (2 * M + 1));
        EXPECT_GE(g.max_alias_free_factors(), 5);
        int p = g.phys_points;
        for (int f : {2, 3, 5})
            while (p % f == 0) p /= f;
        EXPECT_EQ(p, 1);
    }
}

TEST(Grid, RejectsTooFewPoints)
{
    EXPECT_THROW(GridSpec::with_points(16, 40), ConfigurationError);
    EXPECT_NO_THROW(GridSpec::with_points(16, 120));
}

TEST(Field, ReadsOutsideBandAreZero)
{
    SpectralField f(GridSpec::make(4));
    EXPECT_EQ(f[7], Complex{});
    EXPECT_THROW(f.at(5), std::out_of_range);
}

TEST(Field, RoundTripThroughSamples)
{
    std::mt19937_64 rng(3);
    const auto g = GridSpec::make(8);
    const auto f = oracle::random_real_field(g, rng);
    const auto back = analyze(synthesize(f), g);
    EXPECT_LT(oracle::rel_diff(back, f), 1e-14);
}

TEST(Field, SynthesizeRejectsNonHermitian)
{
    SpectralField f(GridSpec::make(4));
    f.at(2) = {1.0, 0.0};
    EXPECT_THROW(synthesize(f), SymmetryError);
}

TEST(Field, DerivativeMatchesSampledDerivative)
{
    std::mt19937_64 rng(4);
    const auto g = GridSpec::make(8);
    const auto f = oracle::random_real_field(g, rng);
    for (int order : {1, 2, 3, 5}) {
        const auto a = synthesize_derivative(f, order);
        const auto b = synthesize(derivative(f, order));
        for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-9 * std::pow(8.0, order));
    }
}

TEST(Field, ProductOfCosines)
{
    // cos x * cos 2x = (cos x + cos 3x) / 2
    const auto g = GridSpec::make(4);
    SpectralField a(g), b(g);
    a.at(1) = a.at(-1) = 0.5;
    b.at(2) = b.at(-2) = 0.5;
    const auto sa = synthesize(a), sb = synthesize(b);
    std::vector<double> p(sa.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = sa[i] * sb[i];
    const auto c = analyze(p, g);
    EXPECT_NEAR(c[1].real(), 0.25, 1e-15);
    EXPECT_NEAR(c[3].real(), 0.25, 1e-15);
    EXPECT_NEAR(std::abs(c[2]), 0.0, 1e-15);
}

TEST(Field, SobolevNormUsesJapaneseBracket)
{
    SpectralField f(GridSpec::make(4));
    f.at(3) = f.at(-3) = 1.0;
    EXPECT_NEAR(sobolev_norm(f, 1.0), std::sqrt(2.0 * 10.0), 1e-14);
    EXPECT_NEAR(sobolev_norm(f, 0.0), std::sqrt(2.0), 1e-14);
}

TEST(Cutoff, BumpShape)
{
    EXPECT_EQ(eta0(0.0), 1.0);
    EXPECT_EQ(eta0(1.0), 1.0);
    EXPECT_EQ(eta0(2.0), 0.0);
    EXPECT_EQ(eta0(-2.5), 0.0);
    EXPECT_NEAR(eta0(1.5), 0.5, 1e-15);
    for (double x = -2.0; x <= 2.0; x += 0.01) EXPECT_NEAR(eta0(x), eta0(-x), 1e-15);
}

TEST(Cutoff, DerivativeMatchesDifferenceQuotient)
{
    const double h = 1e-6;
    for (double x : {1.1, 1.3, 1.5, 1.7, 1.9, -1.4})
        EXPECT_NEAR(eta0_derivative(x), (eta0(x + h) - eta0(x - h)) / (2 * h), 1e-6);
}

TEST(Cutoff, PartitionOfUnity)
{
    for (int n = -300; n <= 300; ++n) {
        double s = 0.0;
        for (int k = 0; k <= 10; ++k) s += chi(k, n);
        EXPECT_NEAR(s, 1.0, 1e-14) << n;
    }
}

TEST(Cutoff, SupportInsideDyadicBand)
{
    for (int k = 0; k <= 8; ++k) {
        const auto b = dyadic_band(k);
        for (int n = 0; n <= 1200; ++n) {
            if (n < b.lo || n > b.hi) {
                EXPECT_EQ(chi(k, n), 0.0) << k << ' ' << n;
            }
        }
    }
    EXPECT_EQ(dyadic_band(0).hi, 2);
    EXPECT_EQ(dyadic_band(3).lo, 4);
    EXPECT_EQ(dyadic_band(3).hi, 16);
}

TEST(Cutoff, PsiIsNTimesChiPrime)
{
    const double h = 1e-5;
    for (int k = 1; k <= 5; ++k)
        for (double n : {1.5, 3.0, 5.0, 11.0, 23.0}) {
            const double d = (chi(k, n + h) - chi(k, n - h)) / (2 * h);
            EXPECT_NEAR(psi(k, n), n * d, 1e-5);
        }
}

TEST(Projection, PiecesSumToField)
{
    std::mt19937_64 rng(5);
    const auto g = GridSpec::make(40);
    const auto f = oracle::random_real_field(g, rng);
    SpectralField sum(g);
    for (int k = 0; k <= 7; ++k) sum += project_pk(f, k);
    EXPECT_LT(oracle::rel_diff(sum, f), 1e-14);
}

TEST(Resample, PadAndTruncate)
{
    std::mt19937_64 rng(6);
    const auto f = oracle::random_real_field(GridSpec::make(6), rng);
    const auto wide = resample(f, GridSpec::make(12));
    EXPECT_EQ(wide[6], f[6]);
    EXPECT_EQ(wide[9], Complex{});
    const auto narrow = resample(f, GridSpec::make(3));
    EXPECT_EQ(narrow[3], f[3]);
    EXPECT_EQ(narrow[4], Complex{});
}
