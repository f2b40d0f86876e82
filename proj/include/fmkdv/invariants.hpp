#pragma once

#include "fmkdv/integrator.hpp"
#include "fmkdv/spectral.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace fmkdv {

/// Integrals are plain quadratures over [0, 2pi].
double hamiltonian_h0(const SpectralField& u);
double hamiltonian_h1(const SpectralField& u, double c1);
double hamiltonian_h2(const SpectralField& u, double c1);

struct HamiltonianReport {
    std::vector<double> times;
    std::vector<double> h0, h1, h2;
    std::array<double, 3> relative_drift{};
};

/// max_t |H(t) - H(0)| / |H(0)|, or the absolute drift when H(0) = 0.
HamiltonianReport drift_report(const Trajectory& traj, double c1);

/// CSV with columns time,H0,H1,H2.
void write_csv(std::ostream& os, const HamiltonianReport& report);

struct ModifiedEnergyParams {
    double kappa = -4.0 / 3.0;
    double epsilon = -2.0 / 3.0;
};

/// Localised modified energy E_k(w) for k >= 1: ||P_k w||^2 plus the kappa and
/// epsilon corrections over the pairs (v1,v1), (v1,v2), (v2,v2) and
/// n1 + n2 + n3 + n = 0 with non-vanishing pair sums.
double modified_energy_ek(const SpectralField& v1, const SpectralField& v2, const SpectralField& w,
                          int k, const ModifiedEnergyParams& mp = {});

/// ||P_0 w||^2 + sum_{k>=1} 2^{2sk} E_k(w), one snapshot.
double modified_energy_es(const SpectralField& v1, const SpectralField& v2, const SpectralField& w,
                          double s, const ModifiedEnergyParams& mp = {});

/// Same sum with E_k replaced by ||P_k w||^2 (the E^s norm squared of a snapshot).
double es_norm_squared(const SpectralField& w, double s);

/// E^s energy of a trajectory on [0, T]: sqrt(||P_0 u(0)||^2 + sum_k 2^{2sk}
/// sup_t ||P_k u(t)||^2), sup over recorded times t <= T.
double es_energy(const Trajectory& traj, double s, double T);

/// Largest k whose band I_k meets |n| <= max_mode.
int max_dyadic_index(int max_mode);

} // namespace fmkdv
