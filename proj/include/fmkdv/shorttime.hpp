#pragma once

#include "fmkdv/integrator.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

namespace fmkdv {

/// beta_{j,k} = 1 for k = 0, 1 + 2^{gamma (j - 5k)} otherwise.  Throws
/// ParameterError unless 0 < gamma <= 1/4.
double beta_weight(int j, int k, double gamma = 0.25);

struct WeightTable {
    double gamma_exponent = 0.25;
    // When set, shells above j = 5k + clamp_offset use the weight at 5k + clamp_offset.
    std::optional<int> clamp_offset;

    double beta(int j, int k) const;
};

/// Windowed space-time transform of one dyadic block, binned by modulation.
///
/// Shell j holds |tau - mu(n)| in [0, 2) for j = 0 and [2^j, 2^{j+1}) for
/// j >= 1.  Masses use int |f|^2 dt = (1/2pi) int |f^|^2 dtau, so
/// sum_j shells[j]^2 equals windowed_mass_sq up to rounding.
struct ModulationShellSet {
    int k = 0;
    double window_center = 0.0;
    std::map<int, double> shells;
    double windowed_mass_sq = 0.0;  // sum_n h sum_i |eta0 c_n|^2 in the time domain
    double sample_dt = 0.0;
    int samples = 0;
    bool extended = false;          // window reached past the recorded span
};

/// Restricts to n in I_k, windows with eta0(2^{2k}(t - t_k)), removes the
/// free phase e^{it omega(n)} and bins the zero-padded temporal DFT.  Outside
/// the recorded span the trajectory is continued by its free flow.  Throws
/// ResolutionError if the window holds fewer than 64 recorded samples.
ModulationShellSet modulation_decompose(const Trajectory& traj, int k, double t_k);

/// Same, with every bin multiplied by |sigma + i 2^{2k}|^{-1}.
ModulationShellSet modulation_decompose_resolvent(const Trajectory& traj, int k, double t_k);

double xk_norm(const ModulationShellSet& shells, const WeightTable& wt = {});

struct WindowSup {
    double value = 0.0;
    double argmax_t = 0.0;
    std::vector<ModulationShellSet> windows;
};

/// Sup of xk_norm over t_k in [-T, T] with spacing 2^{-2k}/4.
WindowSup fk_scan(const Trajectory& traj, int k, double T, const WeightTable& wt = {},
                  bool resolvent = false);

double fk_norm(const Trajectory& traj, int k, double T, const WeightTable& wt = {});
double nk_norm(const Trajectory& traj, int k, double T, const WeightTable& wt = {});

/// Applies P_k to every state.
Trajectory project_trajectory(const Trajectory& traj, int k);

/// (sum_k 2^{2sk} fk_norm(P_k traj)^2)^{1/2} over k = 0..max_dyadic_index.
double fs_norm(const Trajectory& traj, double s, double T, const WeightTable& wt = {});

/// Recorded dt needed so that a level-k window holds 64 samples.
double required_dt(int k);

struct NormSummaryRow {
    int k = 0;
    double fk = 0.0;
    double nk = 0.0;
};

/// CSV k,t_k,j,shell_mass
void write_csv(std::ostream& os, const std::vector<ModulationShellSet>& sets);
/// CSV k,fk,nk
void write_csv(std::ostream& os, const std::vector<NormSummaryRow>& rows);

} // namespace fmkdv
