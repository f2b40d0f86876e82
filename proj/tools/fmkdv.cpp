#include "config.hpp"

#include "fmkdv/csv.hpp"
#include "fmkdv/errors.hpp"
#include "fmkdv/illposedness.hpp"
#include "fmkdv/invariants.hpp"
#include "fmkdv/resonance.hpp"
#include "fmkdv/shorttime.hpp"
#include "fmkdv/transforms.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <random>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fmkdv;
using namespace fmkdv::cli;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kValidation = 2, kDivergence = 3, kTolerance = 4 };

struct Outcome {
    json summary = json::object();
    json tolerances = json::object();
    bool passed = true;
};

std::ofstream open_csv(const ExperimentConfig& cfg, const std::string& name)
{
    std::ofstream os(fs::path(cfg.out) / name);
    if (!os) throw InputError("cannot write " + (fs::path(cfg.out) / name).string());
    return os;
}

double tol_or(const ExperimentConfig& cfg, double fallback) { return cfg.tol > 0.0 ? cfg.tol : fallback; }

GridSpec grid_of(const ExperimentConfig& cfg) { return GridSpec::make(require_max_mode(cfg)); }

Trajectory run_flow(const ExperimentConfig& cfg, const SpectralField& u0, EquationTag tag, const EquationParams& p)
{
    return evolve(u0, cfg.T, p, tag, make_step_control(cfg));
}

// Sweep helper: one task per entry, results kept in input order.
template <class R>
std::vector<R> parallel_map(std::size_t count, int threads, const std::function<R(std::size_t)>& fn)
{
    std::vector<R> out(count);
    for (std::size_t start = 0; start < count; start += threads) {
        std::vector<std::future<R>> jobs;
        const std::size_t stop = std::min(count, start + static_cast<std::size_t>(threads));
        for (std::size_t i = start; i < stop; ++i) jobs.push_back(std::async(std::launch::async, fn, i));
        for (std::size_t i = start; i < stop; ++i) out[i] = jobs[i - start].get();
    }
    return out;
}

Outcome cmd_evolve(const ExperimentConfig& cfg)
{
    const GridSpec grid = grid_of(cfg);
    const auto u0 = make_initial_data(cfg, grid);
    const auto tag = parse_equation_tag(cfg.equation);
    EquationParams p = make_params(cfg);
    if (tag == EquationTag::renormalized_5mkdv) {
        const auto g = derive_gauge_params(u0, cfg.c1);
        p.d1 = g.d1;
        p.d2 = g.d2;
        p.gamma1 = g.gamma1;
        p.gamma2 = g.gamma2;
    }
    const auto traj = run_flow(cfg, u0, tag, p);
    auto os = open_csv(cfg, "trajectory.csv");
    CsvWriter csv(os, {"time", "n", "re", "im"});
    for (std::size_t i = 0; i < traj.size(); ++i)
        for (int n = 0; n <= grid.max_mode; ++n)
            csv.row(traj.times[i], n, traj.states[i][n].real(), traj.states[i][n].imag());
    Outcome o;
    o.summary = {{"steps_recorded", traj.size()},
                 {"dt", traj.dt},
                 {"final_l2", l2_norm(traj.back())},
                 {"final_h2", sobolev_norm(traj.back(), 2.0)}};
    return o;
}

Outcome cmd_conserve(const ExperimentConfig& cfg)
{
    const GridSpec grid = grid_of(cfg);
    const auto traj = run_flow(cfg, make_initial_data(cfg, grid), EquationTag::physical_5mkdv, make_params(cfg));
    const auto r = drift_report(traj, cfg.c1);
    auto os = open_csv(cfg, "hamiltonians.csv");
    write_csv(os, r);
    const double tol = tol_or(cfg, 1e-7);
    Outcome o;
    o.tolerances = {{"relative_drift", tol}};
    o.summary = {{"drift_H0", r.relative_drift[0]},
                 {"drift_H1", r.relative_drift[1]},
                 {"drift_H2", r.relative_drift[2]},
                 {"dt", traj.dt}};
    for (double d : r.relative_drift) o.passed = o.passed && d < tol;
    return o;
}

Outcome cmd_gauge_check(const ExperimentConfig& cfg)
{
    const GridSpec grid = grid_of(cfg);
    const auto u0 = make_initial_data(cfg, grid);
    const auto tu = run_flow(cfg, u0, EquationTag::physical_5mkdv, make_params(cfg));
    EquationParams q = derive_gauge_params(u0, cfg.c1);
    q.terms.exact_quintic_resonances = cfg.exact_quintic;
    const auto tv = run_flow(cfg, u0, EquationTag::renormalized_5mkdv, q);
    const auto nt = gauge_forward(tu);
    auto os = open_csv(cfg, "gauge.csv");
    CsvWriter csv(os, {"time", "h2_difference"});
    double worst = 0.0;
    for (std::size_t i = 0; i < tv.size(); ++i) {
        const double d = sobolev_norm(nt.states[i] - tv.states[i], 2.0);
        worst = std::max(worst, d);
        csv.row(tv.times[i], d);
    }
    const double tol = tol_or(cfg, 1e-5);
    Outcome o;
    o.tolerances = {{"h2_difference", tol}};
    o.summary = {{"max_h2_difference", worst}, {"d1", q.d1}, {"d2", q.d2}};
    o.passed = worst < tol;
    return o;
}

Outcome cmd_miura_check(const ExperimentConfig& cfg)
{
    const GridSpec grid = grid_of(cfg);
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss;
    auto random_field = [&] {
        SpectralField f(grid);
        f.at(0) = gauss(rng);
        for (int n = 1; n <= grid.max_mode; ++n) {
            const double re = gauss(rng), im = gauss(rng);
            f.at(n) = Complex{re, im};
            f.at(-n) = std::conj(f[n]);
        }
        return f;
    };
    double worst_static = 0.0;
    for (long long i = 0; i < cfg.samples; ++i) {
        const auto v = random_field();
        const auto vt = random_field();
        const auto id = miura_chain_identity(v, vt);
        const double scale = std::max(l2_norm(id.lhs), l2_norm(id.rhs));
        worst_static = std::max(worst_static, scale > 0.0 ? l2_norm(id.lhs - id.rhs) / scale : 0.0);
    }
    const auto traj = run_flow(cfg, make_initial_data(cfg, grid), EquationTag::mkdv3, make_params(cfg));
    const auto res = miura_residual(traj);
    auto os = open_csv(cfg, "miura.csv");
    CsvWriter csv(os, {"time", "residual"});
    double worst_dynamic = 0.0;
    for (std::size_t i = 0; i < res.size(); ++i) {
        csv.row(traj.times[i], res[i]);
        worst_dynamic = std::max(worst_dynamic, res[i]);
    }
    Outcome o;
    o.tolerances = {{"chain_identity_relative", 1e-10}, {"dynamic_residual", tol_or(cfg, 1e-6)}};
    o.summary = {{"chain_identity_worst", worst_static},
                 {"fields", cfg.samples},
                 {"dynamic_residual_worst", worst_dynamic}};
    o.passed = worst_static < 1e-10 && worst_dynamic < tol_or(cfg, 1e-6);
    return o;
}

Outcome cmd_resonance_enum(const ExperimentConfig& cfg)
{
    Outcome o;
    auto os = open_csv(cfg, "resonance_" + cfg.kind + ".csv");
    if (cfg.kind == "n3") {
        const auto v = enumerate_n3(cfg.n, cfg.radius);
        write_csv(os, cfg.n, v);
        o.summary = {{"count", v.size()}};
    } else {
        const auto v = enumerate_n5(cfg.n, cfg.radius);
        write_csv(os, cfg.n, v);
        o.summary = {{"count", v.size()}};
    }
    return o;
}

Outcome cmd_resonance_identity(const ExperimentConfig& cfg)
{
    const long long h_bad = count_h_factorization_mismatches(cfg.radius);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<long long> freq(-10000, 10000), num(-1000, 1000), den(1, 97);
    long long g_bad = 0;
    for (long long i = 0; i < cfg.samples; ++i) {
        const long long a = freq(rng), b = freq(rng), c = freq(rng);
        const long long p1 = num(rng), q1 = den(rng), p2 = num(rng), q2 = den(rng);
        if (!g_identity_holds(a, b, c, Rational(p1, q1), Rational(p2, q2))) ++g_bad;
    }
    auto os = open_csv(cfg, "resonance_identity.csv");
    CsvWriter csv(os, {"check", "evaluated", "failures"});
    const long long side = 2LL * cfg.radius + 1;
    csv.row("H_direct_vs_factored", side * side * side, h_bad);
    csv.row("G_minus_mu_rational", cfg.samples, g_bad);
    Outcome o;
    o.tolerances = {{"failures", 0}};
    o.summary = {{"h_mismatches", h_bad}, {"g_failures", g_bad}};
    o.passed = h_bad == 0 && g_bad == 0;
    return o;
}

Outcome cmd_illposed_growth(const ExperimentConfig& cfg)
{
    const auto res = growth_experiment(cfg.Ns, cfg.s, cfg.t, parse_filter(cfg.filter), parse_variant(cfg.variant));
    auto os = open_csv(cfg, "growth.csv");
    write_csv(os, res);
    const long long Nmax = cfg.Ns.back();
    Outcome o;
    o.summary = {{"slope", res.slope},
                 {"ratio_tN2_at_max_N", res.rows.back().ratio_tN2},
                 {"phi_ratio_at_max_N", phase(Nmax, {2, -1, Nmax - 1}, 0.0, 0.0) / std::pow(double(Nmax), 4)}};
    return o;
}

Outcome cmd_appendix_b(const ExperimentConfig& cfg)
{
    const auto filter = parse_filter(cfg.filter);
    const auto reports = parallel_map<NormalFormTermReport>(cfg.Ns.size(), cfg.threads, [&](std::size_t i) {
        CounterexampleSpec spec;
        spec.N = cfg.Ns[i];
        spec.s = cfg.s;
        spec.t = cfg.t;
        return eval_appendix_terms(spec, filter);
    });
    auto os = open_csv(cfg, "appendix_b.csv");
    CsvWriter csv(os, {"N", "s", "t", "tN2", "d0", "d_full", "b1", "b2", "c1", "c2", "d1"});
    double worst = 0.0;
    for (const auto& r : reports) {
        const double tN2 = r.t * double(r.N) * double(r.N);
        csv.row(r.N, r.s, r.t, tN2, r.d0_hsnorm, r.d_full_hsnorm, r.b1, r.b2, r.c1, r.c2, r.d1_norm);
        worst = std::max({worst, r.b1 / tN2, r.b2 / tN2, r.c1 / tN2, r.c2 / tN2, r.d1_norm / tN2});
    }
    Outcome o;
    o.summary = {{"max_term_over_tN2", worst}, {"filter", cfg.filter}};
    return o;
}

Outcome cmd_norms(const ExperimentConfig& cfg)
{
    const GridSpec grid = grid_of(cfg);
    const int K = max_dyadic_index(grid.max_mode);
    ExperimentConfig run = cfg;
    if (run.dt == 0.0 || run.dt > required_dt(K) / 2) run.dt = required_dt(K) / 2;
    const auto traj = run_flow(run, make_initial_data(cfg, grid), parse_equation_tag(cfg.equation), make_params(cfg));
    WeightTable wt;
    wt.gamma_exponent = cfg.gamma;
    std::vector<NormSummaryRow> rows;
    std::vector<ModulationShellSet> shells;
    double fs_sq = 0.0;
    for (int k = 0; k <= K; ++k) {
        const auto pk = project_trajectory(traj, k);
        const auto f = fk_scan(pk, k, cfg.T, wt, false);
        rows.push_back({k, f.value, nk_norm(pk, k, cfg.T, wt)});
        for (const auto& w : f.windows)
            if (w.window_center == f.argmax_t) shells.push_back(w);
        fs_sq += std::exp2(2.0 * cfg.s * k) * f.value * f.value;
    }
    double sup_hs = 0.0;
    for (const auto& st : traj.states) sup_hs = std::max(sup_hs, sobolev_norm(st, cfg.s));
    auto os = open_csv(cfg, "norms.csv");
    write_csv(os, rows);
    auto os2 = open_csv(cfg, "shells.csv");
    write_csv(os2, shells);
    Outcome o;
    o.summary = {{"fs_norm", std::sqrt(fs_sq)},
                 {"sup_hs", sup_hs},
                 {"embedding_constant", fs_sq > 0.0 ? sup_hs / std::sqrt(fs_sq) : 0.0},
                 {"extension", "trajectory continued by its free flow outside [0, T]"}};
    return o;
}

Outcome cmd_fifth_derivative(const ExperimentConfig& cfg)
{
    const GridSpec grid = grid_of(cfg);
    CounterexampleSpec spec;
    spec.N = cfg.N;
    spec.s = cfg.s;
    spec.t = cfg.t;
    spec.variant = parse_variant(cfg.variant);
    const auto a = symmetrize(counterexample_coefficients(spec));
    std::vector<double> deltas = cfg.deltas;
    if (deltas.empty())
        for (int i = 1; i <= 6; ++i) {
            deltas.push_back(0.2 * i / 6.0);
            deltas.push_back(-0.2 * i / 6.0);
        }
    StepControl ctrl = make_step_control(cfg);
    if (ctrl.dt == 0.0) ctrl.dt = 5e-8;
    ctrl.record_stride = 1 << 30;
    const auto num = numeric_fifth_derivative(to_field(a, grid), cfg.t, deltas, cubic_model_flow(grid), ctrl);
    const auto ana = normal_form_assembly(a, cfg.t, grid);
    auto os = open_csv(cfg, "fifth_derivative.csv");
    CsvWriter csv(os, {"n", "numeric_re", "numeric_im", "assembly_re", "assembly_im"});
    double diff = 0.0, ref = 0.0;
    for (int n = -grid.max_mode; n <= grid.max_mode; ++n) {
        csv.row(n, num.fifth[n].real(), num.fifth[n].imag(), ana[n].real(), ana[n].imag());
        diff += std::norm(num.fifth[n] - ana[n]);
        ref += std::norm(ana[n]);
    }
    const double rel = ref > 0.0 ? std::sqrt(diff / ref) : std::sqrt(diff);
    const double tol = tol_or(cfg, 1e-3);
    Outcome o;
    o.tolerances = {{"relative_l2", tol}};
    o.summary = {{"relative_l2", rel}, {"vandermonde_condition", num.condition}};
    o.passed = rel < tol;
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fifth-order mKdV simulation and verification driver"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "INI/TOML file with key = value settings; flags override it");
    app.require_subcommand(1);
    ExperimentConfig cfg;
    add_options(app, cfg);

    struct Command {
        const char* help;
        bool needs_grid;
        Outcome (*run)(const ExperimentConfig&);
    };
    const std::map<std::string, Command> commands = {
        {"evolve", {"Integrate a flow and write the trajectory", true, cmd_evolve}},
        {"conserve", {"Hamiltonian drift of the physical flow", true, cmd_conserve}},
        {"gauge-check", {"Gauge transform of the physical flow vs the renormalised flow", true, cmd_gauge_check}},
        {"miura-check", {"Miura chain identity and dynamic residual", true, cmd_miura_check}},
        {"resonance-enum", {"Enumerate N3,n or N5,n", false, cmd_resonance_enum}},
        {"resonance-identity", {"Exact H and G identities", false, cmd_resonance_identity}},
        {"illposed-growth", {"Growth of the resonant quintic term against N", false, cmd_illposed_growth}},
        {"appendix-b", {"Normal-form remainder terms against tN^2", false, cmd_appendix_b}},
        {"norms", {"Short-time norms of a trajectory", true, cmd_norms}},
        {"fifth-derivative", {"Numeric fifth derivative vs the normal-form assembly", true, cmd_fifth_derivative}},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, c] : commands) subs[name] = app.add_subcommand(name, c.help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kValidation;
    }

    std::string name;
    for (const auto& [n, sub] : subs)
        if (sub->parsed()) name = n;
    const Command& cmd = commands.at(name);

    const auto start = std::chrono::steady_clock::now();
    try {
        validate(cfg, cmd.needs_grid);
        fs::create_directories(cfg.out);
        Outcome o = cmd.run(cfg);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        json manifest;
        manifest["config"] = to_json(cfg);
        manifest["config"]["subcommand"] = name;
        manifest["config"]["code_version"] = kVersion;
        manifest["tolerances"] = o.tolerances;
        manifest["results_summary"] = o.summary;
        manifest["results_summary"]["passed"] = o.passed;
        manifest["wall_time_s"] = wall;
        std::ofstream(fs::path(cfg.out) / "manifest.json") << manifest.dump(2) << '\n';
        std::cout << name << ": " << o.summary.dump() << '\n';
        if (!o.passed) {
            std::cerr << name << ": tolerance check failed\n";
            return kTolerance;
        }
        return kOk;
    } catch (const DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << '\n';
        return kDivergence;
    } catch (const ParameterError& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return kValidation;
    } catch (const ConfigurationError& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return kValidation;
    } catch (const InputError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kValidation;
    } catch (const SymmetryError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kValidation;
    } catch (const ResolutionError& e) {
        std::cerr << "insufficient resolution: " << e.what() << '\n';
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
