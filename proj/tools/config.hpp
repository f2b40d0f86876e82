#pragma once

#include "fmkdv/equations.hpp"
#include "fmkdv/illposedness.hpp"
#include "fmkdv/integrator.hpp"
#include "fmkdv/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fmkdv::cli {

struct ExperimentConfig {
    // grid and flow
    std::optional<int> max_mode;
    std::string equation = "physical_5mkdv";
    double T = 0.01;
    double dt = 0.0;
    int record_stride = 1;
    std::string splitting = "etd_rk4";
    double c1 = 40.0;
    std::optional<double> c2, c3, c4;
    double c4_scale = 1.0;
    bool exact_quintic = false;

    // initial data
    std::string preset = "cosine";
    double amp = 0.1;
    double amp2 = 0.0;
    std::uint64_t seed = 1;
    long long N = 64;

    // norms and lab
    double s = 1.0;
    double gamma = 0.25;
    double t = 1e-4;
    std::vector<long long> Ns = {64, 128, 256, 512, 1024, 2048, 4096};
    std::string filter = "full_support";
    std::string variant = "C5";
    std::vector<double> deltas;
    int k = 3;

    // resonance
    long long n = 5;
    int radius = 12;
    std::string kind = "n3";
    long long samples = 10000;

    // checks and output
    double tol = 0.0;  // 0 selects the subcommand default
    std::string out = "out";
    int threads = 1;
};

/// Registers the options shared by every subcommand on the top-level app.
void add_options(CLI::App& app, ExperimentConfig& cfg);

/// Field-level validation; throws ParameterError naming the field.
void validate(const ExperimentConfig& cfg, bool needs_grid);

int require_max_mode(const ExperimentConfig& cfg);
EquationParams make_params(const ExperimentConfig& cfg);
StepControl make_step_control(const ExperimentConfig& cfg);
TupleFilter parse_filter(const std::string& name);
CounterexampleVariant parse_variant(const std::string& name);

/// Initial datum for the preset on the given grid (always real).
SpectralField make_initial_data(const ExperimentConfig& cfg, const GridSpec& grid);

nlohmann::json to_json(const ExperimentConfig& cfg);

} // namespace fmkdv::cli
