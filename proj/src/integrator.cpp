#include "fmkdv/integrator.hpp"

#include "fmkdv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fmkdv {

namespace {

// Per-mode stage coefficients.  Only n >= 0 is computed; n < 0 takes the
// conjugate so that real data stay exactly real.
struct ModeCoeffs {
    std::vector<Complex> e_half, e_full;
    std::vector<Complex> q, f1, f2, f3;  // ETD-RK4 only
};

Complex contour_mean(Complex z, int kind)
{
    // Mean of phi-type functions over a circle of radius 1 around z.
    constexpr int points = 32;
    Complex acc{};
    for (int j = 0; j < points; ++j) {
        const double th = 2.0 * std::numbers::pi * (j + 0.5) / points;
        const Complex r = z + Complex{std::cos(th), std::sin(th)};
        const Complex e = std::exp(r);
        const Complex r3 = r * r * r;
        switch (kind) {
        case 0: acc += (std::exp(0.5 * r) - 1.0) / r; break;
        case 1: acc += (-4.0 - r + e * (4.0 - 3.0 * r + r * r)) / r3; break;
        case 2: acc += (2.0 + r + e * (-2.0 + r)) / r3; break;
        default: acc += (-4.0 - 3.0 * r - r * r + e * (4.0 - r)) / r3; break;
        }
    }
    return acc / static_cast<double>(points);
}

ModeCoeffs make_coeffs(const SplitFlow& flow, int M, double dt, Splitting split)
{
    ModeCoeffs c;
    const std::size_t size = 2 * static_cast<std::size_t>(M) + 1;
    c.e_half.resize(size);
    c.e_full.resize(size);
    const bool etd = split == Splitting::etd_rk4;
    if (etd) {
        c.q.resize(size);
        c.f1.resize(size);
        c.f2.resize(size);
        c.f3.resize(size);
    }
    for (int n = 0; n <= M; ++n) {
        const double w = flow.omega[n + M];
        const std::size_t ip = n + M, im = M - n;
        c.e_half[ip] = std::exp(Complex{0.0, 0.5 * w * dt});
        c.e_full[ip] = std::exp(Complex{0.0, w * dt});
        if (etd) {
            const Complex z{0.0, w * dt};
            c.q[ip] = dt * contour_mean(z, 0);
            c.f1[ip] = dt * contour_mean(z, 1);
            c.f2[ip] = dt * contour_mean(z, 2);
            c.f3[ip] = dt * contour_mean(z, 3);
        }
        if (n > 0) {
            c.e_half[im] = std::conj(c.e_half[ip]);
            c.e_full[im] = std::conj(c.e_full[ip]);
            if (etd) {
                c.q[im] = std::conj(c.q[ip]);
                c.f1[im] = std::conj(c.f1[ip]);
                c.f2[im] = std::conj(c.f2[ip]);
                c.f3[im] = std::conj(c.f3[ip]);
            }
        }
    }
    return c;
}

void if_rk4_step(SpectralField& u, const SplitFlow& flow, const ModeCoeffs& mc, double dt)
{
    const auto& grid = u.grid();
    const std::size_t size = mc.e_half.size();
    const auto k1 = flow.nonlinear(u);
    SpectralField a(grid);
    for (std::size_t i = 0; i < size; ++i)
        a.coeffs()[i] = mc.e_half[i] * (u.coeffs()[i] + 0.5 * dt * k1.coeffs()[i]);
    const auto k2 = flow.nonlinear(a);
    SpectralField b(grid);
    for (std::size_t i = 0; i < size; ++i)
        b.coeffs()[i] = mc.e_half[i] * u.coeffs()[i] + 0.5 * dt * k2.coeffs()[i];
    const auto k3 = flow.nonlinear(b);
    SpectralField c(grid);
    for (std::size_t i = 0; i < size; ++i)
        c.coeffs()[i] = mc.e_full[i] * u.coeffs()[i] + dt * mc.e_half[i] * k3.coeffs()[i];
    const auto k4 = flow.nonlinear(c);
    for (std::size_t i = 0; i < size; ++i) {
        const Complex e = mc.e_half[i], e2 = mc.e_full[i];
        u.coeffs()[i] = e2 * u.coeffs()[i] +
                        dt / 6.0 * (e2 * k1.coeffs()[i] + 2.0 * e * (k2.coeffs()[i] + k3.coeffs()[i]) +
                                    k4.coeffs()[i]);
    }
}

void etd_rk4_step(SpectralField& u, const SplitFlow& flow, const ModeCoeffs& mc)
{
    const auto& grid = u.grid();
    const std::size_t size = mc.e_half.size();
    const auto nu = flow.nonlinear(u);
    SpectralField a(grid);
    for (std::size_t i = 0; i < size; ++i)
        a.coeffs()[i] = mc.e_half[i] * u.coeffs()[i] + mc.q[i] * nu.coeffs()[i];
    const auto na = flow.nonlinear(a);
    SpectralField b(grid);
    for (std::size_t i = 0; i < size; ++i)
        b.coeffs()[i] = mc.e_half[i] * u.coeffs()[i] + mc.q[i] * na.coeffs()[i];
    const auto nb = flow.nonlinear(b);
    SpectralField c(grid);
    for (std::size_t i = 0; i < size; ++i)
        c.coeffs()[i] = mc.e_half[i] * a.coeffs()[i] + mc.q[i] * (2.0 * nb.coeffs()[i] - nu.coeffs()[i]);
    const auto nc = flow.nonlinear(c);
    for (std::size_t i = 0; i < size; ++i)
        u.coeffs()[i] = mc.e_full[i] * u.coeffs()[i] + mc.f1[i] * nu.coeffs()[i] +
                        2.0 * mc.f2[i] * (na.coeffs()[i] + nb.coeffs()[i]) + mc.f3[i] * nc.coeffs()[i];
}

bool diverged(const SpectralField& u)
{
    double bound = 0.0;
    for (const auto& c : u.coeffs()) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return true;
        bound += std::abs(c);
    }
    if (bound <= kBlowupThreshold) return false;
    // The coefficient sum only bounds the sup norm; look at the samples.
    const auto s = synthesize(u);
    double sup = 0.0;
    for (double x : s) sup = std::max(sup, std::abs(x));
    return sup > kBlowupThreshold;
}

} // namespace

double default_dt(int max_mode)
{
    const double m = 2.0 * max_mode;
    return 0.5 * std::min(1e-2, 1.0 / (m * m));
}

double nonlinear_frequency(const SplitFlow& flow, const SpectralField& u)
{
    const int M = u.max_mode();
    if (M < 1) return 0.0;
    const double eps = 1e-6 * std::max(1.0, u.max_abs());
    SpectralField plus = u, minus = u;
    plus.at(M) += 0.5 * eps;
    plus.at(-M) += 0.5 * eps;
    minus.at(M) -= 0.5 * eps;
    minus.at(-M) -= 0.5 * eps;
    const SpectralField d = flow.nonlinear(plus) - flow.nonlinear(minus);
    // l1 over the response bounds the frozen-coefficient symbol from above.
    double l1 = 0.0;
    for (const Complex& c : d.coeffs()) l1 += std::abs(c);
    return l1 / eps;
}

double stable_dt(const SplitFlow& flow, const SpectralField& u0)
{
    const double dt = default_dt(u0.max_mode());
    const double lam = nonlinear_frequency(flow, u0);
    return lam > 0.0 ? std::min(dt, kStabilityLimit / lam) : dt;
}

void validate_trajectory(const Trajectory& traj)
{
    if (traj.times.size() != traj.states.size())
        throw InputError("trajectory has " + std::to_string(traj.times.size()) + " times but " +
                         std::to_string(traj.states.size()) + " states");
    if (traj.times.empty()) throw InputError("empty trajectory");
    if (traj.times.front() != 0.0) throw InputError("trajectory must start at t = 0");
    for (std::size_t i = 1; i < traj.times.size(); ++i) {
        if (!(traj.times[i] > traj.times[i - 1]))
            throw InputError("trajectory times are not strictly increasing at index " +
                             std::to_string(i));
        if (!(traj.states[i].grid() == traj.states[0].grid()))
            throw InputError("trajectory states live on different grids");
    }
}

Trajectory evolve(const SpectralField& u0, double T, const EquationParams& p, EquationTag tag,
                  const StepControl& ctrl)
{
    return evolve(u0, T, make_split_flow(u0.grid(), tag, p), ctrl);
}

Trajectory evolve(const SpectralField& u0, double T, const SplitFlow& flow, const StepControl& ctrl)
{
    if (!(T > 0.0)) throw ParameterError("final time T must be positive");
    if (ctrl.dt < 0.0) throw ParameterError("dt must be positive");
    if (ctrl.record_stride < 1) throw ParameterError("record_stride must be >= 1");
    u0.require_hermitian("evolve");

    const int M = u0.max_mode();
    // ETDRK4 damps the non-resonant couplings through its phi-functions and runs
    // at the default step; the integrating factor version needs the stage bound.
    const double dt_max = ctrl.dt > 0.0                                  ? ctrl.dt
                          : ctrl.splitting == Splitting::etd_rk4 ? default_dt(M)
                                                                 : stable_dt(flow, u0);
    const long long steps = std::max(1LL, static_cast<long long>(std::ceil(T / dt_max - 1e-9)));
    const double dt = T / static_cast<double>(steps);
    const ModeCoeffs mc = make_coeffs(flow, M, dt, ctrl.splitting);

    Trajectory traj;
    traj.params = flow.params;
    traj.equation_tag = flow.tag;
    traj.dt = dt;
    traj.record_stride = ctrl.record_stride;
    traj.times.push_back(0.0);
    traj.states.push_back(u0);

    SpectralField u = u0;
    for (long long s = 1; s <= steps; ++s) {
        SpectralField prev = u;
        if (ctrl.splitting == Splitting::etd_rk4)
            etd_rk4_step(u, flow, mc);
        else
            if_rk4_step(u, flow, mc, dt);
        if (diverged(u))
            throw DivergenceError("solution exceeded sup-norm " + std::to_string(kBlowupThreshold) +
                                      " or became non-finite at t = " + std::to_string(s * dt),
                                  std::move(prev), (s - 1) * dt);
        if (s % ctrl.record_stride == 0 || s == steps) {
            traj.times.push_back(s == steps ? T : s * dt);
            traj.states.push_back(u);
        }
    }
    return traj;
}

SpectralField nonlinear_product(std::span<const SpectralField> factors)
{
    if (factors.size() < 2 || factors.size() > 5)
        throw ConfigurationError("nonlinear_product takes 2 to 5 factors, got " +
                                 std::to_string(factors.size()));
    const GridSpec& grid = factors[0].grid();
    for (const auto& f : factors)
        if (!(f.grid() == grid)) throw ConfigurationError("nonlinear_product: grid mismatch");
    require_alias_free(grid, static_cast<int>(factors.size()));
    std::vector<double> prod = synthesize(factors[0]);
    for (std::size_t k = 1; k < factors.size(); ++k) {
        const auto s = synthesize(factors[k]);
        for (std::size_t i = 0; i < prod.size(); ++i) prod[i] *= s[i];
    }
    return analyze(prod, grid);
}

} // namespace fmkdv
