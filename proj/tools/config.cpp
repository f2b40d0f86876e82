#include "config.hpp"

#include "fmkdv/errors.hpp"

#include <cmath>
#include <random>

namespace fmkdv::cli {

void add_options(CLI::App& app, ExperimentConfig& cfg)
{
    app.add_option("--max-mode,--max_mode", cfg.max_mode, "Retained modes |n| <= max_mode");
    app.add_option("--equation", cfg.equation,
                   "physical_5mkdv | renormalized_5mkdv | fifth_kdv | kdv3 | mkdv3 | linear");
    app.add_option("--T", cfg.T, "Final time");
    app.add_option("--dt", cfg.dt, "Time step (0 = default)");
    app.add_option("--record-stride,--record_stride", cfg.record_stride);
    app.add_option("--splitting", cfg.splitting, "etd_rk4 | integrating_factor_rk4");
    app.add_option("--c1", cfg.c1);
    app.add_option("--c2", cfg.c2);
    app.add_option("--c3", cfg.c3);
    app.add_option("--c4", cfg.c4);
    app.add_option("--c4-scale,--c4_scale", cfg.c4_scale, "Multiplies c4 (negative controls)");
    app.add_flag("--exact-quintic,--exact_quintic", cfg.exact_quintic,
                 "Keep the multi-coincidence quintic terms in the renormalised flow");

    app.add_option("--preset", cfg.preset, "cosine | counterexample_C5 | counterexample_C3 | random_smooth");
    app.add_option("--amp", cfg.amp, "cos x amplitude / random amplitude");
    app.add_option("--amp2", cfg.amp2, "cos 2x amplitude");
    app.add_option("--seed", cfg.seed);
    app.add_option("--N", cfg.N, "Counterexample high frequency");

    app.add_option("--s", cfg.s, "Sobolev index");
    app.add_option("--gamma", cfg.gamma, "Weight exponent in (0, 1/4]");
    app.add_option("--t", cfg.t, "Lab time");
    app.add_option("--Ns", cfg.Ns, "Sweep of N values")->delimiter(',');
    app.add_option("--filter", cfg.filter, "full_support | unit_or_N");
    app.add_option("--variant", cfg.variant, "C5 | C3");
    app.add_option("--deltas", cfg.deltas, "Amplitudes for the fifth-derivative fit")->delimiter(',');
    app.add_option("--k", cfg.k, "Dyadic level");

    app.add_option("--n", cfg.n, "Output frequency");
    app.add_option("--radius", cfg.radius);
    app.add_option("--kind", cfg.kind, "n3 | n5");
    app.add_option("--samples", cfg.samples);

    app.add_option("--tol", cfg.tol, "Check tolerance (0 = default)");
    app.add_option("--out", cfg.out, "Output directory");
    app.add_option("--threads", cfg.threads, "Workers for sweeps");
}

namespace {

void need(bool ok, const std::string& field, const std::string& what)
{
    if (!ok) throw ParameterError(field + ": " + what);
}

} // namespace

void validate(const ExperimentConfig& cfg, bool needs_grid)
{
    if (needs_grid) {
        need(cfg.max_mode.has_value(), "max_mode", "missing (set --max-mode or max_mode= in the config)");
        need(*cfg.max_mode >= 1, "max_mode", "must be >= 1");
    }
    need(cfg.T > 0.0, "T", "must be positive");
    need(cfg.dt >= 0.0, "dt", "must be non-negative");
    need(cfg.record_stride >= 1, "record_stride", "must be >= 1");
    need(cfg.splitting == "etd_rk4" || cfg.splitting == "integrating_factor_rk4", "splitting",
         "unknown value '" + cfg.splitting + "'");
    need(cfg.c4_scale > 0.0, "c4_scale", "must be positive");
    need(cfg.amp >= 0.0 && cfg.amp2 >= 0.0, "amp", "amplitudes must be non-negative");
    need(cfg.N >= 8, "N", "must be >= 8");
    need(cfg.s > 0.0, "s", "must be positive");
    need(cfg.gamma > 0.0 && cfg.gamma <= 0.25, "gamma", "must lie in (0, 1/4]");
    need(cfg.t > 0.0 && cfg.t < 1.0, "t", "must lie in (0, 1)");
    for (long long v : cfg.Ns) need(v >= 8, "Ns", "every entry must be >= 8");
    need(cfg.k >= 0, "k", "must be >= 0");
    need(cfg.radius >= 0, "radius", "must be >= 0");
    need(cfg.kind == "n3" || cfg.kind == "n5", "kind", "must be n3 or n5");
    need(cfg.samples >= 1, "samples", "must be >= 1");
    need(cfg.tol >= 0.0, "tol", "must be non-negative");
    need(cfg.threads >= 1, "threads", "must be >= 1");
    parse_equation_tag(cfg.equation);
    parse_filter(cfg.filter);
    parse_variant(cfg.variant);
}

int require_max_mode(const ExperimentConfig& cfg)
{
    need(cfg.max_mode.has_value(), "max_mode", "missing (set --max-mode or max_mode= in the config)");
    return *cfg.max_mode;
}

EquationParams make_params(const ExperimentConfig& cfg)
{
    EquationParams p = EquationParams::constrained(cfg.c1);
    if (cfg.c2) p.c2 = *cfg.c2;
    if (cfg.c3) p.c3 = *cfg.c3;
    if (cfg.c4) p.c4 = *cfg.c4;
    p.c4 *= cfg.c4_scale;
    p.terms.exact_quintic_resonances = cfg.exact_quintic;
    return p;
}

StepControl make_step_control(const ExperimentConfig& cfg)
{
    StepControl c;
    c.dt = cfg.dt;
    c.record_stride = cfg.record_stride;
    c.splitting = cfg.splitting == "etd_rk4" ? Splitting::etd_rk4 : Splitting::integrating_factor_rk4;
    return c;
}

TupleFilter parse_filter(const std::string& name)
{
    if (name == "full_support") return TupleFilter::full_support;
    if (name == "unit_or_N") return TupleFilter::unit_or_N;
    throw ParameterError("filter: unknown value '" + name + "'");
}

CounterexampleVariant parse_variant(const std::string& name)
{
    if (name == "C5") return CounterexampleVariant::C5;
    if (name == "C3") return CounterexampleVariant::C3;
    throw ParameterError("variant: unknown value '" + name + "'");
}

SpectralField make_initial_data(const ExperimentConfig& cfg, const GridSpec& grid)
{
    if (cfg.preset == "cosine") {
        SpectralField u(grid);
        u.at(1) = u.at(-1) = 0.5 * cfg.amp;
        if (cfg.amp2 != 0.0) {
            need(grid.max_mode >= 2, "max_mode", "cos 2x needs max_mode >= 2");
            u.at(2) = u.at(-2) = 0.5 * cfg.amp2;
        }
        return u;
    }
    if (cfg.preset == "counterexample_C5" || cfg.preset == "counterexample_C3") {
        CounterexampleSpec spec;
        spec.N = cfg.N;
        spec.s = cfg.s;
        spec.t = cfg.t;
        spec.variant = cfg.preset == "counterexample_C5" ? CounterexampleVariant::C5 : CounterexampleVariant::C3;
        return to_field(symmetrize(counterexample_coefficients(spec)), grid);
    }
    if (cfg.preset == "random_smooth") {
        std::mt19937_64 rng(cfg.seed);
        std::normal_distribution<double> gauss;
        SpectralField u(grid);
        for (int n = 1; n <= grid.max_mode; ++n) {
            const double re = gauss(rng), im = gauss(rng);
            const Complex z = cfg.amp * std::pow(1.0 + double(n) * n, -1.5) * Complex{re, im};
            u.at(n) = z;
            u.at(-n) = std::conj(z);
        }
        return u;
    }
    throw ParameterError("preset: unknown value '" + cfg.preset + "'");
}

nlohmann::json to_json(const ExperimentConfig& cfg)
{
    nlohmann::json j;
    j["max_mode"] = cfg.max_mode ? nlohmann::json(*cfg.max_mode) : nlohmann::json(nullptr);
    j["equation"] = cfg.equation;
    j["T"] = cfg.T;
    j["dt"] = cfg.dt;
    j["record_stride"] = cfg.record_stride;
    j["splitting"] = cfg.splitting;
    const EquationParams p = make_params(cfg);
    j["coefficients"] = {{"c1", p.c1}, {"c2", p.c2}, {"c3", p.c3}, {"c4", p.c4}};
    j["exact_quintic"] = cfg.exact_quintic;
    j["preset"] = cfg.preset;
    j["amp"] = cfg.amp;
    j["amp2"] = cfg.amp2;
    j["seed"] = cfg.seed;
    j["N"] = cfg.N;
    j["s"] = cfg.s;
    j["gamma"] = cfg.gamma;
    j["t"] = cfg.t;
    j["Ns"] = cfg.Ns;
    j["filter"] = cfg.filter;
    j["variant"] = cfg.variant;
    j["deltas"] = cfg.deltas;
    j["k"] = cfg.k;
    j["n"] = cfg.n;
    j["radius"] = cfg.radius;
    j["kind"] = cfg.kind;
    j["samples"] = cfg.samples;
    j["tol"] = cfg.tol;
    j["threads"] = cfg.threads;
    return j;
}

} // namespace fmkdv::cli
