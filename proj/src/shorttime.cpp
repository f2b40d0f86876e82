#include "fmkdv/shorttime.hpp"

#include "fft.hpp"
#include "fmkdv/csv.hpp"
#include "fmkdv/cutoff.hpp"
#include "fmkdv/errors.hpp"
#include "fmkdv/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace fmkdv {

namespace {

constexpr int kMinSamples = 64;
constexpr int kTargetSamples = 128;

double window_width(int k) { return std::ldexp(4.0, -2 * k); }

int shell_index(double sigma)
{
    const double a = std::abs(sigma);
    if (a < 2.0) return 0;
    int j = std::ilogb(a);
    // ilogb is exact for powers of two; guard the boundary anyway.
    while (std::ldexp(1.0, j + 1) <= a) ++j;
    while (std::ldexp(1.0, j) > a) --j;
    return j;
}

// Length of the leading run of equally spaced samples.
std::size_t uniform_prefix(const Trajectory& traj, double h)
{
    std::size_t n = 1;
    while (n < traj.size() && std::abs(traj.times[n] - n * h) <= 1e-9 * std::max(1.0, n * h)) ++n;
    return n;
}

ModulationShellSet decompose(const Trajectory& traj, int k, double t_k, bool resolvent)
{
    validate_trajectory(traj);
    if (k < 0) throw ParameterError("dyadic index must be non-negative");
    if (traj.size() < 2) throw ResolutionError("trajectory needs at least two samples");
    const double h_rec = traj.times[1] - traj.times[0];
    const double width = window_width(k);
    if (h_rec > width / kMinSamples)
        throw ResolutionError("level " + std::to_string(k) + " window needs recorded dt <= " +
                              std::to_string(required_dt(k)) + ", got " + std::to_string(h_rec));
    const std::size_t last = uniform_prefix(traj, h_rec) - 1;

    const int stride = std::max(1, static_cast<int>(std::floor(width / kTargetSamples / h_rec)));
    const double h = stride * h_rec;
    // Snap the centre to the recorded lattice.
    const long long centre = std::llround(t_k / h_rec);
    const int half = static_cast<int>(std::ceil(0.5 * width / h));
    const int count = 2 * half + 1;

    const GridSpec& grid = traj.states.front().grid();
    const SplitFlow flow = make_split_flow(grid, traj.equation_tag, traj.params);
    const DyadicBand band = dyadic_band(k);
    const int M = grid.max_mode;
    const double scale = std::ldexp(1.0, 2 * k);

    int L = 1;
    while (L < 4 * count) L *= 2;
    auto& fft = detail::complex_fft(L);

    ModulationShellSet out;
    out.k = k;
    out.window_center = static_cast<double>(centre) * h_rec;
    out.sample_dt = h;
    out.samples = count;

    std::vector<double> win(count);
    std::vector<long long> idx(count);
    for (int i = 0; i < count; ++i) {
        const long long r = centre + static_cast<long long>(i - half) * stride;
        idx[i] = r;
        win[i] = eta0(scale * (static_cast<double>(r - centre) * h_rec));
        if (r < 0 || r > static_cast<long long>(last)) out.extended = true;
    }

    std::vector<Complex> g(count), spec(L);
    std::map<int, double> energy;
    for (int n = -M; n <= M; ++n) {
        const long long an = std::llabs(n);
        if (an < band.lo || an > band.hi) continue;
        const double w = flow.omega[n + M];
        double direct = 0.0;
        for (int i = 0; i < count; ++i) {
            const long long r = std::clamp<long long>(idx[i], 0, static_cast<long long>(last));
            const double tr = traj.times[r];
            g[i] = win[i] * std::exp(Complex{0.0, -w * tr}) * traj.states[r][n];
            direct += h * std::norm(g[i]);
        }
        if (direct == 0.0) continue;
        fft.forward(g, spec);
        for (int q = 0; q < L; ++q) {
            const int qs = q <= L / 2 ? q : q - L;
            const double sigma = kTwoPi * qs / (L * h);
            double e = h / L * std::norm(spec[q]);
            if (resolvent) {
                const double rw = 1.0 / std::hypot(sigma, scale);
                const int j = shell_index(sigma);
                const double bound = 1.0 / std::max(std::ldexp(1.0, j), scale);
                if (rw > bound * (1.0 + 1e-12)) throw std::logic_error("resolvent weight exceeds its shell bound");
                e *= rw * rw;
            }
            energy[shell_index(sigma)] += e;
        }
        if (!resolvent) out.windowed_mass_sq += direct;
    }
    for (const auto& [j, e] : energy)
        if (e > 0.0) out.shells[j] = std::sqrt(e);
    if (resolvent)
        for (const auto& [j, m] : out.shells) out.windowed_mass_sq += m * m;
    return out;
}

} // namespace

double beta_weight(int j, int k, double gamma)
{
    if (!(gamma > 0.0) || gamma > 0.25) throw ParameterError("weight exponent gamma must lie in (0, 1/4]");
    if (k < 0 || j < 0) throw ParameterError("dyadic indices must be non-negative");
    if (k == 0) return 1.0;
    return 1.0 + std::exp2(gamma * (j - 5 * k));
}

double WeightTable::beta(int j, int k) const
{
    if (clamp_offset && k > 0) j = std::min(j, 5 * k + *clamp_offset);
    return beta_weight(j, k, gamma_exponent);
}

double required_dt(int k) { return window_width(k) / kMinSamples; }

ModulationShellSet modulation_decompose(const Trajectory& traj, int k, double t_k)
{
    return decompose(traj, k, t_k, false);
}

ModulationShellSet modulation_decompose_resolvent(const Trajectory& traj, int k, double t_k)
{
    return decompose(traj, k, t_k, true);
}

double xk_norm(const ModulationShellSet& shells, const WeightTable& wt)
{
    double s = 0.0;
    for (const auto& [j, m] : shells.shells) s += std::sqrt(std::ldexp(1.0, j)) * wt.beta(j, shells.k) * m;
    return s;
}

WindowSup fk_scan(const Trajectory& traj, int k, double T, const WeightTable& wt, bool resolvent)
{
    const double step = std::ldexp(0.25, -2 * k);
    const long long m = static_cast<long long>(std::floor(T / step + 1e-9));
    WindowSup sup;
    sup.argmax_t = -static_cast<double>(m) * step;
    for (long long i = -m; i <= m; ++i) {
        auto set = decompose(traj, k, static_cast<double>(i) * step, resolvent);
        const double x = xk_norm(set, wt);
        if (x > sup.value) {
            sup.value = x;
            sup.argmax_t = set.window_center;
        }
        sup.windows.push_back(std::move(set));
    }
    return sup;
}

double fk_norm(const Trajectory& traj, int k, double T, const WeightTable& wt)
{
    return fk_scan(traj, k, T, wt, false).value;
}

double nk_norm(const Trajectory& traj, int k, double T, const WeightTable& wt)
{
    return fk_scan(traj, k, T, wt, true).value;
}

Trajectory project_trajectory(const Trajectory& traj, int k)
{
    Trajectory out = traj;
    for (auto& s : out.states) s = project_pk(s, k);
    return out;
}

double fs_norm(const Trajectory& traj, double s, double T, const WeightTable& wt)
{
    validate_trajectory(traj);
    const int K = max_dyadic_index(traj.states.front().max_mode());
    double sum = 0.0;
    for (int k = 0; k <= K; ++k) {
        const double f = fk_norm(project_trajectory(traj, k), k, T, wt);
        sum += std::exp2(2.0 * s * k) * f * f;
    }
    return std::sqrt(sum);
}

void write_csv(std::ostream& os, const std::vector<ModulationShellSet>& sets)
{
    CsvWriter csv(os, {"k", "t_k", "j", "shell_mass"});
    for (const auto& set : sets)
        for (const auto& [j, m] : set.shells) csv.row(set.k, set.window_center, j, m);
}

void write_csv(std::ostream& os, const std::vector<NormSummaryRow>& rows)
{
    CsvWriter csv(os, {"k", "fk", "nk"});
    for (const auto& r : rows) csv.row(r.k, r.fk, r.nk);
}

} // namespace fmkdv
