#include "fmkdv/illposedness.hpp"

#include "fmkdv/csv.hpp"
#include "fmkdv/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>

#include <cmath>
#include <limits>
#include <ostream>

namespace fmkdv {

namespace {

bool integral_d(double d1, double d2)
{
    return std::floor(d1) == d1 && std::floor(d2) == d2 && std::abs(d1) < 1e12 && std::abs(d2) < 1e12;
}

__int128 mu_int(long long n, long long d1, long long d2)
{
    const __int128 x = n;
    return x * x * x * x * x + static_cast<__int128>(d1) * x * x * x + static_cast<__int128>(d2) * x;
}

long double mu_real(long long n, double d1, double d2)
{
    const long double x = n;
    return x * x * x * x * x + d1 * x * x * x + d2 * x;
}

bool pair_sums_nonzero(long long a, long long b, long long c)
{
    return a + b != 0 && a + c != 0 && b + c != 0;
}

double bracket(long long n, double s)
{
    return std::pow(1.0 + static_cast<double>(n) * static_cast<double>(n), 0.5 * s);
}

// Leaves n_i drawn from the support, in fixed order.
std::vector<long long> support_points(const SparseField& a)
{
    std::vector<long long> pts;
    for (const auto& [n, v] : a)
        if (v != Complex{}) pts.push_back(n);
    return pts;
}

template <class Fn>
void for_each_five(const std::vector<long long>& pts, Fn&& fn)
{
    std::array<long long, 5> l{};
    for (long long a : pts) {
        l[0] = a;
        for (long long b : pts) {
            l[1] = b;
            for (long long c : pts) {
                l[2] = c;
                for (long long d : pts) {
                    l[3] = d;
                    for (long long e : pts) {
                        l[4] = e;
                        fn(l);
                    }
                }
            }
        }
    }
}

Complex coeff(const SparseField& a, long long n)
{
    const auto it = a.find(n);
    return it == a.end() ? Complex{} : it->second;
}

// Which inner triple a quintic term expands, and its symbol.
enum class Branch { B1, B2, C1, C2, D, D1 };

// Evaluates one quintic term with leaves l; the inner triple replaces the
// outer slot 0 (B), 1 (C) or 2 (D).  Returns false if the tuple is not in the
// double set; sets zero_phase when the outer phase vanishes.
bool quintic_term(const CounterexampleSpec& spec, const SparseField& a, Branch br,
                  const std::array<long long, 5>& l, long long& n_out, Complex& value, bool& zero_phase)
{
    zero_phase = false;
    const int slot = (br == Branch::B1 || br == Branch::B2) ? 0 : (br == Branch::C1 || br == Branch::C2) ? 1 : 2;
    // Leaves in order: outer slots with the inner triple spliced in at `slot`.
    long long inner[3] = {0, 0, 0}, outer[3] = {0, 0, 0};
    {
        int k = 0;
        for (int j = 0; j < 3; ++j) {
            if (j == slot) {
                inner[0] = l[k];
                inner[1] = l[k + 1];
                inner[2] = l[k + 2];
                outer[j] = inner[0] + inner[1] + inner[2];
                k += 3;
            } else {
                outer[j] = l[k++];
            }
        }
    }
    if (!pair_sums_nonzero(inner[0], inner[1], inner[2])) return false;
    if (!pair_sums_nonzero(outer[0], outer[1], outer[2])) return false;
    const long long n = outer[0] + outer[1] + outer[2];
    const double phi_outer = phase(n, {outer[0], outer[1], outer[2]}, spec.d1, spec.d2);
    if (phi_outer == 0.0) {
        zero_phase = true;
        return false;
    }
    const double phi_total = phase(n, {l[0], l[1], l[2], l[3], l[4]}, spec.d1, spec.d2);
    const double on = static_cast<double>(n);
    const double o1 = static_cast<double>(outer[0]), o2 = static_cast<double>(outer[1]),
                 o3 = static_cast<double>(outer[2]);
    const double i2 = static_cast<double>(inner[1]), i3 = static_cast<double>(inner[2]);
    double w = 0.0;
    switch (br) {
    case Branch::B1: w = o1 * i3 * i3 * o3 * o3; break;
    case Branch::B2: w = o1 * i2 * i3 * o3 * o3; break;
    case Branch::C1: w = o2 * i3 * i3 * o3 * o3; break;
    case Branch::C2: w = o2 * i2 * i3 * o3 * o3; break;
    case Branch::D: w = o3 * o3 * o3 * i3 * i3; break;
    case Branch::D1: w = o3 * o3 * o3 * i2 * i3; break;
    }
    Complex prod{1.0, 0.0};
    for (long long x : l) prod *= coeff(a, x);
    n_out = n;
    value = oscillatory_integral(phi_total, spec.t) * (on / phi_outer) * w * prod;
    return true;
}

bool unit_or_N(const std::array<long long, 5>& l, long long N)
{
    for (long long x : l)
        if (x != 1 && x != N) return false;
    return true;
}

} // namespace

void validate(const CounterexampleSpec& spec)
{
    if (spec.N < 8) throw ParameterError("counterexample N must be >= 8");
    if (!(spec.s > 0.0)) throw ParameterError("regularity s must be > 0");
    if (!(spec.t > 0.0) || !(spec.t < 1.0)) throw ParameterError("time t must lie in (0, 1)");
}

SparseField counterexample_coefficients(const CounterexampleSpec& spec)
{
    validate(spec);
    const double high = std::pow(static_cast<double>(spec.N), -spec.s);
    SparseField a;
    if (spec.variant == CounterexampleVariant::C5) {
        for (long long n : {-2LL, -1LL, 1LL, 2LL}) a[n] = 1.0;
        a[spec.N - 1] = high;
        a[spec.N] = high;
    } else {
        a[-1] = 1.0;
        a[1] = 1.0;
        a[spec.N] = high;
    }
    return a;
}

SpectralField to_field(const SparseField& a, const GridSpec& grid)
{
    SpectralField f(grid);
    for (const auto& [n, v] : a) {
        if (std::llabs(n) > grid.max_mode)
            throw ConfigurationError("mode " + std::to_string(n) + " exceeds max_mode " +
                                     std::to_string(grid.max_mode));
        f.at(static_cast<int>(n)) = v;
    }
    return f;
}

SpectralField build_counterexample_data(const CounterexampleSpec& spec, const GridSpec& grid)
{
    return to_field(counterexample_coefficients(spec), grid);
}

SparseField symmetrize(const SparseField& a)
{
    SparseField out = a;
    for (const auto& [n, v] : a)
        if (!out.count(-n)) out[-n] = std::conj(v);
    return out;
}

Complex oscillatory_integral(double phi, double t)
{
    const double x = t * phi;
    if (x == 0.0) return {t, 0.0};
    const double h = std::sin(0.5 * x);
    Complex e{std::sin(x) / x, 2.0 * h * h / x};
    e *= t;
    // |E| <= min(t, 2/|phi|)
    const double bound = std::min(t, 2.0 / std::abs(phi));
    if (std::abs(e) > bound * (1.0 + 1e-12))
        throw std::logic_error("oscillatory integral exceeds its a priori bound");
    return e;
}

Complex double_oscillatory_integral(double A, double B, double t)
{
    const Complex i{0.0, 1.0};
    if (B != 0.0) return (oscillatory_integral(A + B, t) - oscillatory_integral(A, t)) / (i * B);
    if (A == 0.0) return {0.5 * t * t, 0.0};
    return (t * std::exp(i * (A * t)) - oscillatory_integral(A, t)) / (i * A);
}

double phase(long long n, std::initializer_list<long long> leaves, double d1, double d2)
{
    if (integral_d(d1, d2)) {
        const auto i1 = static_cast<long long>(d1), i2 = static_cast<long long>(d2);
        __int128 p = -mu_int(n, i1, i2);
        for (long long x : leaves) p += mu_int(x, i1, i2);
        return static_cast<double>(p);
    }
    long double p = -mu_real(n, d1, d2);
    for (long long x : leaves) p += mu_real(x, d1, d2);
    return static_cast<double>(p);
}

std::array<long long, 6> resonant_sextuple(long long N) { return {N, 2, -1, -2, 1, N}; }

bool d_term(const CounterexampleSpec& spec, const std::array<long long, 5>& leaves, long long& n,
            Complex& value)
{
    bool zero = false;
    return quintic_term(spec, counterexample_coefficients(spec), Branch::D, leaves, n, value, zero);
}

Complex eval_d0(const CounterexampleSpec& spec)
{
    if (spec.variant != CounterexampleVariant::C5) throw ParameterError("eval_d0 needs the C5 data");
    const auto m0 = resonant_sextuple(spec.N);
    long long n = 0;
    Complex v{};
    if (!d_term(spec, {m0[1], m0[2], m0[3], m0[4], m0[5]}, n, v) || n != spec.N)
        throw std::logic_error("m0 is not in the double resonance set");
    return v;
}

double d0_norm(const CounterexampleSpec& spec)
{
    return bracket(spec.N, spec.s) * std::abs(eval_d0(spec));
}

SparseField eval_d_full(const CounterexampleSpec& spec)
{
    const auto a = counterexample_coefficients(spec);
    SparseField out;
    for_each_five(support_points(a), [&](const std::array<long long, 5>& l) {
        long long n = 0;
        Complex v{};
        bool zero = false;
        if (quintic_term(spec, a, Branch::D, l, n, v, zero)) out[n] += v;
    });
    return out;
}

double hs_norm(const SparseField& f, double s)
{
    double acc = 0.0;
    for (const auto& [n, v] : f) {
        const double w = bracket(n, s);
        acc += w * w * std::norm(v);
    }
    return std::sqrt(acc);
}

NormalFormTermReport eval_appendix_terms(const CounterexampleSpec& spec, TupleFilter filter)
{
    if (spec.variant != CounterexampleVariant::C5)
        throw ParameterError("appendix terms need the C5 data");
    const auto a = counterexample_coefficients(spec);
    const auto pts = support_points(a);
    NormalFormTermReport r;
    r.N = spec.N;
    r.s = spec.s;
    r.t = spec.t;
    r.d0_hsnorm = d0_norm(spec);
    r.d_full_hsnorm = hs_norm(eval_d_full(spec), spec.s);

    const Branch branches[] = {Branch::B1, Branch::B2, Branch::C1, Branch::C2, Branch::D1};
    double* slots[] = {&r.b1, &r.b2, &r.c1, &r.c2, &r.d1_norm};
    for (int b = 0; b < 5; ++b) {
        SparseField acc;
        for_each_five(pts, [&](const std::array<long long, 5>& l) {
            if (filter == TupleFilter::unit_or_N && !unit_or_N(l, spec.N)) return;
            long long n = 0;
            Complex v{};
            bool zero = false;
            if (quintic_term(spec, a, branches[b], l, n, v, zero))
                acc[n] += v;
            else if (zero)
                ++r.skipped_zero_phase;
        });
        *slots[b] = hs_norm(acc, spec.s);
    }
    return r;
}

double c3_resonant_norm(const CounterexampleSpec& spec)
{
    CounterexampleSpec c = spec;
    c.variant = CounterexampleVariant::C3;
    const auto a = counterexample_coefficients(c);
    const long long N = c.N;
    const double phi = phase(N, {1, -1, N}, 0.0, 0.0);
    const double n3 = static_cast<double>(N) * N * N;
    const Complex sym{0.0, -n3};  // (iN)^3
    const Complex v = oscillatory_integral(phi, c.t) * sym * a.at(1) * a.at(-1) * a.at(N);
    return bracket(N, c.s) * std::abs(v);
}

double cubic_resonance_scale(long long N, double s, double t)
{
    return t * t * std::pow(static_cast<double>(N), 6.0 - 4.0 * s);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    double mx = 0.0, my = 0.0;
    const double k = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= k;
    my /= k;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

GrowthResult growth_experiment(const std::vector<long long>& Ns, double s, double t,
                               TupleFilter filter, CounterexampleVariant variant)
{
    GrowthResult res;
    std::vector<double> xs, ys;
    for (long long N : Ns) {
        CounterexampleSpec spec;
        spec.N = N;
        spec.s = s;
        spec.t = t;
        spec.variant = variant;
        validate(spec);
        GrowthRow row;
        row.N = N;
        row.s = s;
        row.t = t;
        const double tn2 = t * static_cast<double>(N) * static_cast<double>(N);
        if (variant == CounterexampleVariant::C5) {
            const auto rep = eval_appendix_terms(spec, filter);
            row.d0_norm = rep.d0_hsnorm;
            row.b1 = rep.b1;
            row.b2 = rep.b2;
            row.c1 = rep.c1;
            row.c2 = rep.c2;
            row.d1 = rep.d1_norm;
        } else {
            row.d0_norm = c3_resonant_norm(spec);
        }
        row.ratio_tN2 = row.d0_norm / tn2;
        xs.push_back(static_cast<double>(N));
        ys.push_back(row.d0_norm);
        row.slope_running = loglog_slope(xs, ys);
        res.rows.push_back(row);
    }
    res.slope = loglog_slope(xs, ys);
    return res;
}

void write_csv(std::ostream& os, const GrowthResult& result)
{
    CsvWriter csv(os, {"N", "s", "t", "d0_norm", "ratio_tN2", "b1", "b2", "c1", "c2", "d1",
                       "slope_running"});
    for (const auto& r : result.rows)
        csv.row(r.N, r.s, r.t, r.d0_norm, r.ratio_tN2, r.b1, r.b2, r.c1, r.c2, r.d1, r.slope_running);
}

SplitFlow cubic_model_flow(const GridSpec& grid)
{
    EquationParams p = EquationParams::constrained(40.0);
    p.d1 = 0.0;
    p.d2 = 0.0;
    p.terms.cubic_resonance = false;
    p.terms.cubic = true;
    p.terms.quintic = false;
    return make_split_flow(grid, EquationTag::renormalized_5mkdv, p);
}

FifthDerivativeResult numeric_fifth_derivative(const SpectralField& u0, double t,
                                               const std::vector<double>& deltas,
                                               const SplitFlow& flow, const StepControl& ctrl)
{
    if (deltas.size() < 6) throw ParameterError("numeric_fifth_derivative needs at least 6 deltas");
    double dmax = 0.0;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        dmax = std::max(dmax, std::abs(deltas[i]));
        for (std::size_t j = 0; j < i; ++j)
            if (deltas[i] == deltas[j]) throw ParameterError("deltas must be distinct");
    }
    if (!(dmax > 0.0)) throw ParameterError("deltas must not all vanish");
    const int degree = static_cast<int>(std::min<std::size_t>(deltas.size() - 1, 11));
    const int K = static_cast<int>(deltas.size());
    const int modes = 2 * u0.max_mode() + 1;

    Eigen::MatrixXd V(K, degree + 1);
    Eigen::MatrixXd Y(K, 2 * modes);
    StepControl c = ctrl;
    c.record_stride = std::numeric_limits<int>::max();
    for (int r = 0; r < K; ++r) {
        const double x = deltas[r] / dmax;
        for (int p = 0; p <= degree; ++p) V(r, p) = std::pow(x, p);
        const auto traj = evolve(Complex{deltas[r]} * u0, t, flow, c);
        const auto& v = traj.back();
        for (int m = 0; m < modes; ++m) {
            Y(r, 2 * m) = v.coeffs()[m].real();
            Y(r, 2 * m + 1) = v.coeffs()[m].imag();
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(V);
    const auto& sv = svd.singularValues();
    FifthDerivativeResult res;
    res.condition = sv(0) / sv(sv.size() - 1);
    if (res.condition > 1e10)
        throw ParameterError("delta spread too small: Vandermonde condition number " +
                             std::to_string(res.condition));
    const Eigen::MatrixXd C = V.colPivHouseholderQr().solve(Y);
    for (int p = 0; p <= degree; ++p) {
        SpectralField f(u0.grid());
        const double scale = std::pow(dmax, -p);
        for (int m = 0; m < modes; ++m) f.coeffs()[m] = scale * Complex{C(p, 2 * m), C(p, 2 * m + 1)};
        res.coefficients.push_back(std::move(f));
    }
    res.fifth = degree >= 5 ? Complex{120.0} * res.coefficients[5] : SpectralField(u0.grid());
    return res;
}

SpectralField normal_form_assembly(const SparseField& a, double t, const GridSpec& grid,
                                   AssemblyForm form)
{
    const Complex i{0.0, 1.0};
    const auto pts = support_points(a);
    SpectralField out(grid);
    for_each_five(pts, [&](const std::array<long long, 5>& l) {
        Complex prod{1.0, 0.0};
        for (long long x : l) prod *= coeff(a, x);
        // inner triple (l0,l1,l2) placed in outer slot `slot`, others l3,l4
        const long long m = l[0] + l[1] + l[2];
        if (!pair_sums_nonzero(l[0], l[1], l[2])) return;
        const double B = phase(m, {l[0], l[1], l[2]}, 0.0, 0.0);
        const double dm = static_cast<double>(m);
        const double w_in = static_cast<double>(l[2]) * l[2] + static_cast<double>(l[1]) * l[2];
        const Complex c_in = i * (10.0 * dm * w_in);
        for (int slot = 0; slot < 3; ++slot) {
            long long o[3];
            int k = 3;
            for (int j = 0; j < 3; ++j) o[j] = (j == slot) ? m : l[k++];
            if (!pair_sums_nonzero(o[0], o[1], o[2])) continue;
            const long long n = o[0] + o[1] + o[2];
            if (std::llabs(n) > grid.max_mode) continue;
            const double A = phase(n, {o[0], o[1], o[2]}, 0.0, 0.0);
            const double w_out = static_cast<double>(o[2]) * o[2] + static_cast<double>(o[1]) * o[2];
            const Complex c_out = i * (10.0 * static_cast<double>(n) * w_out);
            Complex I;
            if (form == AssemblyForm::direct) {
                I = double_oscillatory_integral(A, B, t);
            } else {
                // boundary term + integrated-by-parts piece
                const Complex boundary = std::exp(i * (A * t)) * oscillatory_integral(B, t) / (i * A);
                const Complex ibp = -oscillatory_integral(A + B, t) / (i * A);
                I = boundary + ibp;
            }
            const double mu_n = phase(0, {n}, 0.0, 0.0);
            out.at(static_cast<int>(n)) += 120.0 * std::exp(i * (mu_n * t)) * c_out * c_in * prod * I;
        }
    });
    return out;
}

} // namespace fmkdv
