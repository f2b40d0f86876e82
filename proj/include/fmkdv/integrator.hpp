#pragma once

#include "fmkdv/equations.hpp"
#include "fmkdv/spectral.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace fmkdv {

enum class Splitting { integrating_factor_rk4, etd_rk4 };

struct StepControl {
    double dt = 0.0;  // 0: default_dt for ETDRK4, stable_dt for the integrating factor
    int record_stride = 1;
    Splitting splitting = Splitting::etd_rk4;
};

/// 0.5 * min(1e-2, (2 max_mode)^-2)
double default_dt(int max_mode);

/// RK4 keeps |dt * lambda| below this on the imaginary axis (the bound is 2.83).
inline constexpr double kStabilityLimit = 2.0;

/// Largest response of the nonlinear part to a top-mode perturbation of u,
/// i.e. the combined frequency the stages have to resolve.
double nonlinear_frequency(const SplitFlow& flow, const SpectralField& u);

/// min(default_dt, kStabilityLimit / nonlinear_frequency(flow, u0))
double stable_dt(const SplitFlow& flow, const SpectralField& u0);

struct Trajectory {
    std::vector<double> times;
    std::vector<SpectralField> states;
    EquationParams params;
    EquationTag equation_tag = EquationTag::linear;
    double dt = 0.0;
    int record_stride = 1;

    std::size_t size() const { return times.size(); }
    const SpectralField& back() const { return states.back(); }
};

/// Checks times strictly increasing from 0 and matching state grids.
void validate_trajectory(const Trajectory& traj);

class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, SpectralField last_good, double time)
        : std::runtime_error(what), last_good_(std::move(last_good)), time_(time)
    {
    }
    const SpectralField& last_good() const { return last_good_; }
    double time() const { return time_; }

private:
    SpectralField last_good_;
    double time_;
};

inline constexpr double kBlowupThreshold = 1e6;

/// Integrates du/dt = i omega u + N(u) on [0, T].  The linear part is applied
/// exactly; dt is shrunk so that an integer number of steps lands on T.
Trajectory evolve(const SpectralField& u0, double T, const EquationParams& p, EquationTag tag,
                  const StepControl& ctrl);

/// Same, for an already assembled flow.
Trajectory evolve(const SpectralField& u0, double T, const SplitFlow& flow, const StepControl& ctrl);

/// Dealiased pointwise product of 2..5 band-limited real fields.
SpectralField nonlinear_product(std::span<const SpectralField> factors);

} // namespace fmkdv
