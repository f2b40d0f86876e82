#pragma once

#include "fmkdv/integrator.hpp"
#include "fmkdv/spectral.hpp"

#include <vector>

namespace fmkdv {

/// Running integral of the quartic norm along a trajectory.
///
/// cumulative_l4[i] = int_0^{t_i} ||u(s)||_{L^4}^4 ds (plain integral over
/// [0, 2pi]).  With u = sum c_n e^{inx} the gauge phase per unit frequency is
/// 20 * cumulative_l4 / (2 pi).
struct GaugePhaseAccumulator {
    std::vector<double> times;
    std::vector<double> cumulative_l4;

    double phase(std::size_t i) const;
};

double l4_norm_pow4(const SpectralField& u);

/// Composite trapezoid over the recorded times.
GaugePhaseAccumulator accumulate_gauge_phase(const Trajectory& traj);

/// v(t, n) = exp(-20 i n Phi(t)) u(t, n), Phi from u.
Trajectory gauge_forward(const Trajectory& traj_u);

/// Inverse of gauge_forward; Phi is re-derived from the reconstructed u by
/// fixed-point iteration until its increment is below 1e-12.
Trajectory gauge_inverse(const Trajectory& traj_v);

/// Applies exp(i sign 20 n phi) to every coefficient.
SpectralField apply_gauge_phase(const SpectralField& u, double phi, int sign);

/// u = v_x + v^2
SpectralField miura(const SpectralField& v);

/// u_t + u_xxx - 6 u u_x for a given time derivative u_t.
SpectralField kdv_residual(const SpectralField& u, const SpectralField& ut);

/// v_t + v_xxx - 6 v^2 v_x for a given time derivative v_t.
SpectralField mkdv_residual(const SpectralField& v, const SpectralField& vt);

struct ChainIdentity {
    SpectralField lhs;  // KdV residual of miura(v) with u_t = (2v + d/dx) v_t
    SpectralField rhs;  // (2v + d/dx) applied to the mKdV residual of v
};

/// Both sides of the Miura chain identity for arbitrary v and v_t, evaluated on
/// a grid wide enough to hold every product exactly.
ChainIdentity miura_chain_identity(const SpectralField& v, const SpectralField& vt);

/// L^2 norm (plain integral) of the KdV residual of miura(v(t)), with v_t taken
/// from the mKdV right-hand side; one value per recorded time.
std::vector<double> miura_residual(const Trajectory& traj_v);

/// (int_0^{2pi} |f|^2)^{1/2}
double l2_norm(const SpectralField& f);

} // namespace fmkdv
