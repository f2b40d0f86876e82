#include "fmkdv/invariants.hpp"

#include "fmkdv/cutoff.hpp"
#include "fmkdv/errors.hpp"
#include "fmkdv/csv.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace fmkdv {

namespace {

double quadrature(const SpectralField& field, int power_u, int power_ux, int power_uxx)
{
    // The mean of a p-fold product is exact once P > p M.
    const int p = power_u + power_ux + power_uxx;
    const int M = field.max_mode();
    const SpectralField u =
        field.grid().phys_points > p * M ? field : resample(field, GridSpec::make(M, p, 2));
    const auto a = synthesize(u);
    std::vector<double> b, c;
    if (power_ux) b = synthesize_derivative(u, 1);
    if (power_uxx) c = synthesize_derivative(u, 2);
    std::vector<double> f(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        double v = 1.0;
        for (int q = 0; q < power_u; ++q) v *= a[i];
        for (int q = 0; q < power_ux; ++q) v *= b[i];
        for (int q = 0; q < power_uxx; ++q) v *= c[i];
        f[i] = v;
    }
    return integrate(f);
}

double pk_mass(const SpectralField& w, int k)
{
    const auto band = dyadic_band(k);
    const long long hi = std::min<long long>(band.hi, w.max_mode());
    double s = 0.0;
    for (long long n = -hi; n <= hi; ++n) {
        const double x = chi(k, static_cast<double>(n));
        s += x * x * std::norm(w[static_cast<int>(n)]);
    }
    return s;
}

// sum over n1 + n2 + n3 + n = 0, pair sums of (n1,n2,n3) non-zero, of
// a(n1) b(n2) m3(n3) w(n3)/n3 * chi_k(n) w(n)/n.
Complex correction_sum(const SpectralField& a, const SpectralField& b, const SpectralField& w,
                       int k, bool use_psi)
{
    const int M = w.max_mode();
    const auto band = dyadic_band(k);
    const int hi = static_cast<int>(std::min<long long>(band.hi, M));
    const int lo = static_cast<int>(std::max<long long>(band.lo, 1));
    std::vector<int> active;
    for (int n = lo; n <= hi; ++n) {
        active.push_back(n);
        active.push_back(-n);
    }
    Complex total{};
    for (int n : active) {
        const double wn = chi(k, n) / n;
        if (wn == 0.0 || w[n] == Complex{}) continue;
        const Complex outer = wn * w[n];
        for (int n3 : active) {
            const auto cp = eval_chi_psi(k, n3);
            const double m3 = (use_psi ? cp.psi : cp.chi) / n3;
            if (m3 == 0.0) continue;
            const Complex inner = outer * m3 * w[n3];
            Complex acc{};
            for (int n1 = -M; n1 <= M; ++n1) {
                const int n2 = -n - n3 - n1;
                if (n2 < -M || n2 > M) continue;
                if (n1 + n2 == 0 || n1 + n3 == 0 || n2 + n3 == 0) continue;
                acc += a[n1] * b[n2];
            }
            total += inner * acc;
        }
    }
    return total;
}

} // namespace

double hamiltonian_h0(const SpectralField& u)
{
    return 0.5 * quadrature(u, 2, 0, 0);
}

double hamiltonian_h1(const SpectralField& u, double c1)
{
    double h = 0.5 * quadrature(u, 0, 2, 0);
    if (c1 != 0.0) h += c1 / 80.0 * quadrature(u, 4, 0, 0);
    return h;
}

double hamiltonian_h2(const SpectralField& u, double c1)
{
    double h = 0.5 * quadrature(u, 0, 0, 2);
    if (c1 != 0.0) h += c1 / 8.0 * quadrature(u, 2, 2, 0) + c1 * c1 / 1600.0 * quadrature(u, 6, 0, 0);
    return h;
}

HamiltonianReport drift_report(const Trajectory& traj, double c1)
{
    validate_trajectory(traj);
    HamiltonianReport r;
    r.times = traj.times;
    for (const auto& s : traj.states) {
        r.h0.push_back(hamiltonian_h0(s));
        r.h1.push_back(hamiltonian_h1(s, c1));
        r.h2.push_back(hamiltonian_h2(s, c1));
    }
    auto drift = [](const std::vector<double>& h) {
        const double ref = std::abs(h.front());
        double worst = 0.0;
        for (double x : h) worst = std::max(worst, std::abs(x - h.front()));
        return ref > 0.0 ? worst / ref : worst;
    };
    r.relative_drift = {drift(r.h0), drift(r.h1), drift(r.h2)};
    return r;
}

void write_csv(std::ostream& os, const HamiltonianReport& report)
{
    CsvWriter csv(os, {"time", "H0", "H1", "H2"});
    for (std::size_t i = 0; i < report.times.size(); ++i)
        csv.row(report.times[i], report.h0[i], report.h1[i], report.h2[i]);
}

double modified_energy_ek(const SpectralField& v1, const SpectralField& v2, const SpectralField& w,
                          int k, const ModifiedEnergyParams& mp)
{
    if (k < 1) throw ParameterError("modified energy E_k is defined for k >= 1");
    if (!(v1.grid() == w.grid()) || !(v2.grid() == w.grid()))
        throw ConfigurationError("modified energy: snapshots on different grids");
    double e = pk_mass(w, k);
    const SpectralField* pairs[3][2] = {{&v1, &v1}, {&v1, &v2}, {&v2, &v2}};
    for (auto& pr : pairs) {
        if (mp.kappa != 0.0) e += (mp.kappa * correction_sum(*pr[0], *pr[1], w, k, true)).real();
        if (mp.epsilon != 0.0) e += (mp.epsilon * correction_sum(*pr[0], *pr[1], w, k, false)).real();
    }
    return e;
}

int max_dyadic_index(int max_mode)
{
    int k = 0;
    while (dyadic_band(k + 1).lo <= max_mode) ++k;
    return k;
}

double modified_energy_es(const SpectralField& v1, const SpectralField& v2, const SpectralField& w,
                          double s, const ModifiedEnergyParams& mp)
{
    double e = pk_mass(w, 0);
    for (int k = 1; k <= max_dyadic_index(w.max_mode()); ++k)
        e += std::pow(2.0, 2.0 * s * k) * modified_energy_ek(v1, v2, w, k, mp);
    return e;
}

double es_norm_squared(const SpectralField& w, double s)
{
    double e = pk_mass(w, 0);
    for (int k = 1; k <= max_dyadic_index(w.max_mode()); ++k)
        e += std::pow(2.0, 2.0 * s * k) * pk_mass(w, k);
    return e;
}

double es_energy(const Trajectory& traj, double s, double T)
{
    validate_trajectory(traj);
    double e = pk_mass(traj.states.front(), 0);
    const int K = max_dyadic_index(traj.states.front().max_mode());
    for (int k = 1; k <= K; ++k) {
        double sup = 0.0;
        for (std::size_t i = 0; i < traj.size() && traj.times[i] <= T; ++i)
            sup = std::max(sup, pk_mass(traj.states[i], k));
        e += std::pow(2.0, 2.0 * s * k) * sup;
    }
    return std::sqrt(e);
}

} // namespace fmkdv
