#include "fmkdv/cutoff.hpp"
#include "fmkdv/errors.hpp"
#include "fmkdv/invariants.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace fmkdv;

namespace {

SpectralField cosine(int M, double a)
{
    SpectralField u(GridSpec::make(M));
    u.at(1) = u.at(-1) = 0.5 * a;
    return u;
}

} // namespace

TEST(Hamiltonians, CosineClosedForms)
{
    const double a = 0.7, c1 = 40.0;
    const auto u = cosine(8, a);
    const double pi = M_PI;
    // int cos^2 = pi, int cos^4 = 3pi/4, int cos^6 = 5pi/8, int sin^2 cos^2 = pi/4
    EXPECT_NEAR(hamiltonian_h0(u), 0.5 * a * a * pi, 1e-14);
    EXPECT_NEAR(hamiltonian_h1(u, c1), 0.5 * a * a * pi + c1 / 80.0 * std::pow(a, 4) * 0.75 * pi, 1e-13);
    const double h2 = 0.5 * a * a * pi + c1 / 8.0 * std::pow(a, 4) * 0.25 * pi +
                      c1 * c1 / 1600.0 * std::pow(a, 6) * 0.625 * pi;
    EXPECT_NEAR(hamiltonian_h2(u, c1), h2, 1e-13);
}

TEST(Hamiltonians, QuadratureIsExactOnCoarseGrids)
{
    // The sextic term of H2 needs P > 6M; the coarse grid is widened internally.
    std::mt19937_64 rng(2);
    const auto f = oracle::random_real_field(GridSpec::with_points(8, 51), rng, 0.3);
    const auto g = resample(f, GridSpec::make(8, 4, 1));
    EXPECT_NEAR(hamiltonian_h2(f, 40.0), hamiltonian_h2(g, 40.0), 1e-12);
}

TEST(Hamiltonians, ConservedOnShortRun)
{
    SpectralField u(GridSpec::make(32));
    u.at(1) = u.at(-1) = 0.05;
    u.at(2) = u.at(-2) = 0.025;
    const auto tr = evolve(u, 0.01, EquationParams::constrained(40), EquationTag::physical_5mkdv, StepControl{});
    const auto r = drift_report(tr, 40.0);
    for (double d : r.relative_drift) EXPECT_LT(d, 1e-9);
    std::ostringstream os;
    write_csv(os, r);
    EXPECT_EQ(os.str().substr(0, 15), "time,H0,H1,H2\n0");
}

TEST(ModifiedEnergy, RequiresPositiveLevel)
{
    const auto u = cosine(8, 0.1);
    EXPECT_THROW(modified_energy_ek(u, u, u, 0), ParameterError);
}

TEST(ModifiedEnergy, ZeroCorrectionsGiveProjectedMass)
{
    std::mt19937_64 rng(3);
    const auto w = oracle::random_real_field(GridSpec::make(16), rng, 0.2);
    ModifiedEnergyParams none{0.0, 0.0};
    for (int k = 1; k <= 4; ++k) {
        const auto pk = project_pk(w, k);
        EXPECT_NEAR(modified_energy_ek(w, w, w, k, none), pk.l2_squared(), 1e-14);
    }
}

TEST(ModifiedEnergy, CorrectionMatchesBruteForce)
{
    // kappa-only energy minus the mass is the psi-weighted quartic sum.
    std::mt19937_64 rng(4);
    const auto g = GridSpec::make(6);
    const auto w = oracle::random_real_field(g, rng, 0.5);
    const int k = 2;
    ModifiedEnergyParams only_kappa{1.0, 0.0};
    const double got = modified_energy_ek(w, w, w, k, only_kappa) - project_pk(w, k).l2_squared();
    Complex ref{};
    for (int n = -6; n <= 6; ++n)
        for (int n3 = -6; n3 <= 6; ++n3)
            for (int n1 = -6; n1 <= 6; ++n1) {
                const int n2 = -n - n3 - n1;
                if (n2 < -6 || n2 > 6 || n == 0 || n3 == 0) continue;
                if (n1 + n2 == 0 || n1 + n3 == 0 || n2 + n3 == 0) continue;
                ref += w[n1] * w[n2] * (psi(k, n3) / n3) * w[n3] * (chi(k, n) / n) * w[n];
            }
    EXPECT_NEAR(got, 3.0 * ref.real(), 1e-12);
}

TEST(ModifiedEnergy, ComparableToEnergyNormForSmallData)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        const auto w = oracle::random_real_field(GridSpec::make(32), rng, 0.01, 2.0);
        const double es = modified_energy_es(w, w, w, 2.0);
        const double norm = es_norm_squared(w, 2.0);
        EXPECT_NEAR(es / norm, 1.0, 0.1);
    }
}

TEST(Energy, TrajectorySupOverTime)
{
    const auto u = cosine(16, 0.1);
    const auto tr = evolve(u, 0.001, EquationParams::constrained(40), EquationTag::physical_5mkdv, StepControl{});
    EXPECT_NEAR(es_energy(tr, 1.0, 0.001), std::sqrt(es_norm_squared(u, 1.0)), 1e-6);
    EXPECT_EQ(max_dyadic_index(16), 5);
    EXPECT_EQ(max_dyadic_index(1), 1);
}
