#include "fmkdv/transforms.hpp"

#include "fmkdv/equations.hpp"
#include "fmkdv/errors.hpp"

#include <algorithm>
#include <cmath>

namespace fmkdv {

namespace {

SpectralField times(const SpectralField& a, const SpectralField& b)
{
    const auto sa = synthesize(a);
    const auto sb = synthesize(b);
    std::vector<double> p(sa.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = sa[i] * sb[i];
    return analyze(p, a.grid());
}

std::vector<double> cumulative_trapezoid(const std::vector<double>& t, const std::vector<double>& f)
{
    std::vector<double> out(t.size(), 0.0);
    for (std::size_t i = 1; i < t.size(); ++i)
        out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
    return out;
}

std::vector<double> l4_series(const std::vector<SpectralField>& states)
{
    std::vector<double> q;
    q.reserve(states.size());
    for (const auto& s : states) q.push_back(l4_norm_pow4(s));
    return q;
}

constexpr double kGaugeRate = 20.0;

} // namespace

double GaugePhaseAccumulator::phase(std::size_t i) const
{
    return cumulative_l4.at(i) / kTwoPi;
}

double l4_norm_pow4(const SpectralField& u)
{
    require_alias_free(u.grid(), 4);
    const auto s = synthesize(u);
    std::vector<double> q(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) q[i] = s[i] * s[i] * s[i] * s[i];
    return integrate(q);
}

GaugePhaseAccumulator accumulate_gauge_phase(const Trajectory& traj)
{
    validate_trajectory(traj);
    GaugePhaseAccumulator acc;
    acc.times = traj.times;
    acc.cumulative_l4 = cumulative_trapezoid(traj.times, l4_series(traj.states));
    return acc;
}

SpectralField apply_gauge_phase(const SpectralField& u, double phi, int sign)
{
    SpectralField out(u.grid());
    for (int n = 0; n <= u.max_mode(); ++n) {
        const Complex e = std::exp(Complex{0.0, sign * kGaugeRate * n * phi});
        out.at(n) = e * u[n];
        if (n > 0) out.at(-n) = std::conj(e) * u[-n];
    }
    return out;
}

Trajectory gauge_forward(const Trajectory& traj_u)
{
    const auto acc = accumulate_gauge_phase(traj_u);
    Trajectory v = traj_u;
    v.equation_tag = EquationTag::renormalized_5mkdv;
    for (std::size_t i = 0; i < v.size(); ++i)
        v.states[i] = apply_gauge_phase(traj_u.states[i], acc.phase(i), -1);
    return v;
}

Trajectory gauge_inverse(const Trajectory& traj_v)
{
    validate_trajectory(traj_v);
    Trajectory u = traj_v;
    u.equation_tag = EquationTag::physical_5mkdv;
    // ||u||_{L^4} is recomputed from each reconstruction of u.
    std::vector<double> phi = cumulative_trapezoid(traj_v.times, l4_series(traj_v.states));
    for (int iter = 0; iter < 50; ++iter) {
        for (std::size_t i = 0; i < u.size(); ++i)
            u.states[i] = apply_gauge_phase(traj_v.states[i], phi[i] / kTwoPi, +1);
        const auto next = cumulative_trapezoid(u.times, l4_series(u.states));
        double step = 0.0;
        for (std::size_t i = 0; i < phi.size(); ++i) step = std::max(step, std::abs(next[i] - phi[i]));
        phi = next;
        if (step < 1e-12) break;
    }
    for (std::size_t i = 0; i < u.size(); ++i)
        u.states[i] = apply_gauge_phase(traj_v.states[i], phi[i] / kTwoPi, +1);
    return u;
}

SpectralField miura(const SpectralField& v)
{
    require_alias_free(v.grid(), 2);
    return derivative(v, 1) + times(v, v);
}

SpectralField kdv_residual(const SpectralField& u, const SpectralField& ut)
{
    return ut + derivative(u, 3) - Complex{6.0} * times(u, derivative(u, 1));
}

SpectralField mkdv_residual(const SpectralField& v, const SpectralField& vt)
{
    return vt + derivative(v, 3) - Complex{6.0} * times(times(v, v), derivative(v, 1));
}

ChainIdentity miura_chain_identity(const SpectralField& v, const SpectralField& vt)
{
    const int M = std::max(v.max_mode(), vt.max_mode());
    const GridSpec wide = GridSpec::make(4 * M);
    const auto ve = resample(v, wide);
    const auto vte = resample(vt, wide);
    ChainIdentity id;
    const auto u = miura(ve);
    const auto ut = Complex{2.0} * times(ve, vte) + derivative(vte, 1);
    id.lhs = kdv_residual(u, ut);
    const auto r = mkdv_residual(ve, vte);
    id.rhs = Complex{2.0} * times(ve, r) + derivative(r, 1);
    return id;
}

std::vector<double> miura_residual(const Trajectory& traj_v)
{
    validate_trajectory(traj_v);
    std::vector<double> out;
    out.reserve(traj_v.size());
    for (const auto& v : traj_v.states) {
        const auto vt = rhs_third_order(v, ThirdOrder::mkdv_defocusing);
        out.push_back(l2_norm(miura_chain_identity(v, vt).lhs));
    }
    return out;
}

double l2_norm(const SpectralField& f)
{
    return std::sqrt(kTwoPi * f.l2_squared());
}

} // namespace fmkdv
