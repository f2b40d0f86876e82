// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "fmkdv/equations.hpp"
#include "fmkdv/illposedness.hpp"
#include "fmkdv/integrator.hpp"
#include "fmkdv/invariants.hpp"
#include "fmkdv/resonance.hpp"
#include "fmkdv/shorttime.hpp"
#include "fmkdv/transforms.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace fmkdv;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

SpectralField two_mode(int M, double a1, double a2)
{
    SpectralField u(GridSpec::make(M));
    u.at(1) = u.at(-1) = 0.5 * a1;
    if (a2 != 0.0) u.at(2) = u.at(-2) = 0.5 * a2;
    return u;
}

HamiltonianReport conservation_run(double c4_factor)
{
    auto p = EquationParams::constrained(40.0);
    p.c4 *= c4_factor;
    StepControl c;
    c.record_stride = 50;
    const auto tr = evolve(two_mode(256, 0.1, 0.05), 0.05, p, EquationTag::physical_5mkdv, c);
    return drift_report(tr, 40.0);
}

Outcome conservation()
{
    const auto r = conservation_run(1.0);
    const double worst = *std::max_element(r.relative_drift.begin(), r.relative_drift.end());
    return {worst < 1e-7, fmt("drift H0 %.2e H1 %.2e H2 %.2e (tol 1e-7)", r.relative_drift[0],
                              r.relative_drift[1], r.relative_drift[2])};
}

Outcome negative_control()
{
    const auto r = conservation_run(1.01);
    return {r.relative_drift[2] > 1e-4 && r.relative_drift[0] < 1e-7,
            fmt("c4 x1.01: H2 drift %.2e (need > 1e-4), H0 drift %.2e (need < 1e-7)", r.relative_drift[2],
                r.relative_drift[0])};
}

Outcome gauge_equivalence()
{
    const auto u0 = two_mode(64, 0.1, 0.0);
    StepControl c;
    c.record_stride = 10;
    const auto tu = evolve(u0, 0.01, EquationParams::constrained(40.0), EquationTag::physical_5mkdv, c);
    const auto tv = evolve(u0, 0.01, derive_gauge_params(u0, 40.0), EquationTag::renormalized_5mkdv, c);
    const auto nt = gauge_forward(tu);
    double worst = 0.0;
    for (std::size_t i = 0; i < tv.size(); ++i)
        worst = std::max(worst, sobolev_norm(nt.states[i] - tv.states[i], 2.0));
    return {worst < 1e-5 && tu.size() == tv.size(),
            fmt("max H2 distance %.2e over %zu records (tol 1e-5)", worst, tv.size())};
}

Outcome miura_identity()
{
    std::mt19937_64 rng(2024);
    const auto g = GridSpec::make(16);
    double chain = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto v = oracle::random_real_field(g, rng, 1.0, 1.5);
        const auto vt = oracle::random_real_field(g, rng, 1.0, 1.5);
        const auto id = miura_chain_identity(v, vt);
        chain = std::max(chain, oracle::rel_diff(id.lhs, id.rhs));
    }
    SpectralField v(GridSpec::make(32));
    v.at(1) = v.at(-1) = 0.2;
    v.at(2) = Complex{0.05, 0.02};
    v.at(-2) = std::conj(v[2]);
    const auto tr = evolve(v, 0.05, EquationParams{}, EquationTag::mkdv3, StepControl{});
    double dyn = 0.0;
    for (double r : miura_residual(tr)) dyn = std::max(dyn, r);
    return {chain < 1e-10 && dyn < 1e-6,
            fmt("chain identity %.2e (tol 1e-10), dynamic residual %.2e (tol 1e-6)", chain, dyn)};
}

Outcome resonance_exactness()
{
    const long long mismatches = count_h_factorization_mismatches(100);
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long long> f(-100000, 100000), p(-1000, 1000), q(1, 97);
    int g_fail = 0;
    for (int i = 0; i < 10000; ++i) {
        const Rational d1(p(rng), q(rng)), d2(p(rng), q(rng));
        if (!g_identity_holds(f(rng), f(rng), f(rng), d1, d2)) ++g_fail;
    }
    const int R = 12;
    int enum_fail = 0;
    for (long long n : {-3LL, 0LL, 4LL}) {
        std::size_t ref = 0;
        for (long long a = -R; a <= R; ++a)
            for (long long b = -R; b <= R; ++b) {
                const long long c = n - a - b;
                if (c >= -R && c <= R && (a + b) * (a + c) * (b + c) != 0) ++ref;
            }
        const auto got = enumerate_n3(n, R);
        if (got.size() != ref) ++enum_fail;
        for (const auto& t : got)
            if (t.n1 + t.n2 + t.n3 != n || (t.n1 + t.n2) * (t.n1 + t.n3) * (t.n2 + t.n3) == 0) ++enum_fail;
    }
    {
        const long long n = 2;
        std::size_t ref = 0;
        for (long long a = -R; a <= R; ++a)
            for (long long b = -R; b <= R; ++b)
                for (long long c = -R; c <= R; ++c)
                    for (long long d = -R; d <= R; ++d) {
                        const long long e = n - a - b - c - d;
                        if (e < -R || e > R) continue;
                        if (n - a != 0 && n - b != 0 && n - c != 0 && n - d != 0 && n - e != 0) ++ref;
                    }
        const auto got = enumerate_n5(n, R);
        if (got.size() != ref) ++enum_fail;
        for (const auto& q5 : got)
            if (q5.excluded()) ++enum_fail;
    }
    return {mismatches == 0 && g_fail == 0 && enum_fail == 0,
            fmt("H mismatches %lld on |n_i|<=100, G identity failures %d/10000, enumeration failures %d",
                mismatches, g_fail, enum_fail)};
}

Outcome growth()
{
    std::vector<long long> Ns;
    for (int e = 6; e <= 12; ++e) Ns.push_back(1LL << e);
    const auto r = growth_experiment(Ns, 1.0, 1e-4);
    const auto m = resonant_sextuple(4096);
    const double phi_m0 = phase(m[0], {m[1], m[2], m[3], m[4], m[5]}, 0.0, 0.0);
    const double N = 4096.0;
    const double lead = phase(4096, {2, -1, 4095}, 0.0, 0.0) / (N * N * N * N);
    const bool ok = std::abs(r.slope - 2.0) <= 0.1 && phi_m0 == 0.0 && std::abs(std::abs(lead) / 5.0 - 1.0) <= 0.05;
    return {ok, fmt("slope %.4f (2 +- 0.1), phi(m0) = %g, phi(N,2,-1,N-1)/N^4 = %.4f at N=4096 (|.| within 5%% of 5)",
                    r.slope, phi_m0, lead)};
}

Outcome appendix_separation()
{
    const double t = 1e-4;
    double worst = 0.0;
    double b_lo = 1e300, b_hi = 0.0, d_lo = 1e300, d_hi = 0.0;
    for (int e = 6; e <= 12; ++e) {
        CounterexampleSpec sp;
        sp.N = 1LL << e;
        sp.s = 1.0;
        sp.t = t;
        const auto r = eval_appendix_terms(sp, TupleFilter::full_support);
        const double N = static_cast<double>(sp.N);
        if (e == 10) worst = std::max({r.b1, r.b2, r.c1, r.c2, r.d1_norm}) / (t * N * N);
        const double b = r.b1 / (t * std::max(std::pow(N, 1.0 - sp.s), 1.0));
        const double d = r.d1_norm / (t * std::max(std::pow(N, 2.0 - sp.s), 1.0));
        b_lo = std::min(b_lo, b);
        b_hi = std::max(b_hi, b);
        d_lo = std::min(d_lo, d);
        d_hi = std::max(d_hi, d);
    }
    const bool ok = worst < 0.1 && b_hi / b_lo <= 8.0 && d_hi / d_lo <= 8.0;
    return {ok, fmt("max term/tN^2 %.2e at N=1024 (tol 0.1); B1/t in [%.3f, %.3f], D1/(tN) in [%.3f, %.3f] "
                    "over N=2^6..2^12 (spread tol 8)",
                    worst, b_lo, b_hi, d_lo, d_hi)};
}

Outcome cross_validation()
{
    CounterexampleSpec sp;
    sp.N = 8;
    sp.s = 1.0;
    const auto a = symmetrize(counterexample_coefficients(sp));
    const auto grid = GridSpec::make(64);
    const double t = 1e-4;
    const auto ref = normal_form_assembly(a, t, grid, AssemblyForm::normal_form);
    std::vector<double> deltas;
    for (int i = 1; i <= 6; ++i) {
        deltas.push_back(0.2 * i / 6.0);
        deltas.push_back(-0.2 * i / 6.0);
    }
    StepControl c;
    c.dt = 5e-8;
    c.record_stride = 1 << 30;
    const auto r = numeric_fifth_derivative(to_field(a, grid), t, deltas, cubic_model_flow(grid), c);
    const double rel = std::sqrt((r.fifth - ref).l2_squared() / ref.l2_squared());
    return {rel < 1e-3, fmt("relative difference %.2e (tol 1e-3), Vandermonde condition %.2e", rel, r.condition)};
}

Outcome norm_diagnostics()
{
    // beta table against its closed form
    bool beta_ok = true;
    for (int k = 0; k <= 6; ++k)
        for (int j = 0; j <= 40; ++j) {
            const double want = k == 0 ? 1.0 : 1.0 + std::pow(2.0, 0.25 * (j - 5 * k));
            if (std::abs(beta_weight(j, k) - want) > 1e-15 * want) beta_ok = false;
        }

    double parseval = 0.0, concentration = 1.0;
    for (int k = 3; k <= 7; ++k) {
        const int n0 = 1 << k;
        SpectralField u(GridSpec::make(n0));
        u.at(n0) = u.at(-n0) = 0.5;
        StepControl c;
        c.dt = required_dt(k) / 2;
        const double T = 3 * std::ldexp(1.0, -2 * k);
        const auto tr = evolve(u, T, make_split_flow(u.grid(), EquationTag::linear, EquationParams{}), c);
        const auto set = modulation_decompose(tr, k, T / 2);
        double m2 = 0.0, tot = 0.0, low = 0.0;
        for (const auto& [j, m] : set.shells) {
            m2 += m * m;
            const double x = std::sqrt(std::ldexp(1.0, j)) * beta_weight(j, k) * m;
            tot += x;
            if (std::ldexp(1.0, j) <= 16.0 * std::ldexp(1.0, 2 * k)) low += x;
        }
        parseval = std::max(parseval, std::abs(m2 - set.windowed_mass_sq) / set.windowed_mass_sq);
        concentration = std::min(concentration, low / tot);
    }

    const int M = 16;
    const auto grid = GridSpec::make(M);
    const double T = 0.01, s = 1.0;
    StepControl c;
    c.dt = required_dt(max_dyadic_index(M)) / 2;
    const auto flow = make_split_flow(grid, EquationTag::renormalized_5mkdv, EquationParams::constrained(40.0));
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    double cmin = 1e300, cmax = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        SpectralField u(grid);
        for (int n = 1; n <= M; ++n) {
            const Complex z = Complex{nd(rng), nd(rng)} * (0.05 / (1.0 + n * n));
            u.at(n) = z;
            u.at(-n) = std::conj(z);
        }
        const auto tr = evolve(u, T, flow, c);
        double sup = 0.0;
        for (const auto& st : tr.states) sup = std::max(sup, sobolev_norm(st, s));
        const double C = sup / fs_norm(tr, s, T);
        cmin = std::min(cmin, C);
        cmax = std::max(cmax, C);
    }
    const bool ok = beta_ok && parseval < 1e-8 && concentration >= 0.95 && cmax / cmin <= 4.0;
    return {ok, fmt("beta exact %s, Parseval %.1e (tol 1e-8), min concentration %.4f (need 0.95), "
                    "C in [%.3f, %.3f] ratio %.2f (tol 4)",
                    beta_ok ? "yes" : "no", parseval, concentration, cmin, cmax, cmax / cmin)};
}

double observed_order(Splitting split)
{
    const auto u0 = two_mode(8, 0.6, 0.3);
    const double T = 0.002;
    std::vector<SpectralField> finals;
    for (int steps : {40, 80, 160}) {
        StepControl c;
        c.dt = T / steps;
        c.record_stride = 1 << 20;
        c.splitting = split;
        finals.push_back(evolve(u0, T, EquationParams::constrained(40.0), EquationTag::physical_5mkdv, c).back());
    }
    return std::log2(std::sqrt((finals[0] - finals[1]).l2_squared() / (finals[1] - finals[2]).l2_squared()));
}

Outcome oracle_equivalence()
{
    std::mt19937_64 rng(11);
    double worst = 0.0;
    for (int M : {2, 5, 8}) {
        const auto g = GridSpec::make(M);
        auto u = oracle::random_real_field(g, rng, 0.5, 1.0);
        auto p = EquationParams::constrained(40.0);
        worst = std::max(worst, oracle::rel_diff(rhs_physical(u, p), oracle::physical(u, p)));
        auto q = derive_gauge_params(u, 40.0);
        worst = std::max(worst, oracle::rel_diff(rhs_renormalized(u, q), oracle::renormalized(u, q)));
        q.terms.exact_quintic_resonances = true;
        worst = std::max(worst, oracle::rel_diff(rhs_renormalized(u, q), oracle::renormalized(u, q)));
    }
    const double etd = observed_order(Splitting::etd_rk4);
    const double ifr = observed_order(Splitting::integrating_factor_rk4);
    return {worst < 1e-12 && etd >= 3.8 && ifr >= 3.8,
            fmt("max oracle difference %.2e (tol 1e-12), order ETDRK4 %.2f, IF-RK4 %.2f (need 3.8)", worst, etd,
                ifr)};
}

} // namespace

int main()
{
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"conservation", conservation},
        {"negative control", negative_control},
        {"gauge equivalence", gauge_equivalence},
        {"miura identity", miura_identity},
        {"resonance exactness", resonance_exactness},
        {"ill-posedness growth", growth},
        {"appendix separation", appendix_separation},
        {"fifth derivative cross-check", cross_validation},
        {"norm diagnostics", norm_diagnostics},
        {"oracle equivalence", oracle_equivalence},
    };
    int failed = 0, id = 0;
    for (const auto& [name, run] : criteria) {
        ++id;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %2d %-28s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d of %d criteria passed\n", id - failed, id);
    return failed == 0 ? 0 : 1;
}
