#include "fmkdv/equations.hpp"

#include "fmkdv/errors.hpp"

#include <algorithm>
#include <cmath>

namespace fmkdv {

namespace {

// Pointwise values of u and its first derivatives on the collocation grid.
struct Jet {
    std::vector<double> u, ux, uxx, uxxx;
};

Jet make_jet(const SpectralField& f, int order)
{
    Jet j;
    j.u = synthesize(f);
    if (order >= 1) j.ux = synthesize_derivative(f, 1);
    if (order >= 2) j.uxx = synthesize_derivative(f, 2);
    if (order >= 3) j.uxxx = synthesize_derivative(f, 3);
    return j;
}

template <class Fn>
std::vector<double> pointwise(std::size_t size, Fn&& fn)
{
    std::vector<double> out(size);
    for (std::size_t i = 0; i < size; ++i) out[i] = fn(i);
    return out;
}

double mean(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// sum_m m^power c_m c_{-m}
double pair_moment(const SpectralField& f, int power)
{
    Complex s{};
    for (int m = -f.max_mode(); m <= f.max_mode(); ++m) {
        const double w = power == 0 ? 1.0 : std::pow(static_cast<double>(m), power);
        s += w * f[m] * f[-m];
    }
    return s.real();
}

void add_linear(SpectralField& out, const SpectralField& u, int power)
{
    for (int n = -u.max_mode(); n <= u.max_mode(); ++n) {
        const double w = std::pow(static_cast<double>(n), power);
        out.at(n) += Complex{0.0, w} * u[n];
    }
}

SpectralField physical_nonlinear(const SpectralField& u, const EquationParams& p)
{
    require_alias_free(u.grid(), 5);
    const Jet j = make_jet(u, 3);
    const auto prod = pointwise(j.u.size(), [&](std::size_t i) {
        const double a = j.u[i], b = j.ux[i], c = j.uxx[i], d = j.uxxx[i];
        const double a2 = a * a;
        return -p.c1 * a * b * c - p.c2 * a2 * d - p.c3 * b * b * b - p.c4 * a2 * a2 * b;
    });
    return analyze(prod, u.grid());
}

SpectralField fifth_kdv_nonlinear(const SpectralField& u, double a1, double a2, double a3)
{
    require_alias_free(u.grid(), 3);
    const Jet j = make_jet(u, 3);
    const auto prod = pointwise(j.u.size(), [&](std::size_t i) {
        const double a = j.u[i], b = j.ux[i], c = j.uxx[i], d = j.uxxx[i];
        return -a1 * b * c - a2 * a * d - a3 * a * a * b;
    });
    return analyze(prod, u.grid());
}

SpectralField third_order_nonlinear(const SpectralField& u, ThirdOrder which)
{
    require_alias_free(u.grid(), which == ThirdOrder::kdv ? 2 : 3);
    const Jet j = make_jet(u, 1);
    const auto prod = pointwise(j.u.size(), [&](std::size_t i) {
        const double a = j.u[i], b = j.ux[i];
        return which == ThirdOrder::kdv ? 6.0 * a * b : 6.0 * a * a * b;
    });
    return analyze(prod, u.grid());
}

} // namespace

const char* to_string(EquationTag tag)
{
    switch (tag) {
    case EquationTag::physical_5mkdv: return "physical_5mkdv";
    case EquationTag::renormalized_5mkdv: return "renormalized_5mkdv";
    case EquationTag::fifth_kdv: return "fifth_kdv";
    case EquationTag::kdv3: return "kdv3";
    case EquationTag::mkdv3: return "mkdv3";
    case EquationTag::linear: return "linear";
    }
    return "unknown";
}

EquationTag parse_equation_tag(const std::string& name)
{
    for (auto t : {EquationTag::physical_5mkdv, EquationTag::renormalized_5mkdv,
                   EquationTag::fifth_kdv, EquationTag::kdv3, EquationTag::mkdv3,
                   EquationTag::linear})
        if (name == to_string(t)) return t;
    throw ParameterError("unknown equation '" + name + "'");
}

EquationParams EquationParams::constrained(double c1)
{
    EquationParams p;
    p.c1 = c1;
    p.c2 = c1 / 4.0;
    p.c3 = c1 / 4.0;
    p.c4 = -3.0 * c1 * c1 / 160.0;
    p.a1 = c1 / 2.0;
    p.a2 = c1 / 4.0;
    p.a3 = p.c4;
    return p;
}

bool check_constraints(double c1, double c2, double c3, double c4)
{
    auto close = [](double a, double b) {
        return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    };
    return close(c2, c1 / 4.0) && close(c3, c1 / 4.0) && close(c4, -3.0 * c1 * c1 / 160.0);
}

EquationParams derive_gauge_params(const SpectralField& u0, double c1)
{
    if (c1 != 40.0)
        throw ParameterError("gauge constants are only known for c1 = 40 (got " +
                             std::to_string(c1) + ")");
    u0.require_hermitian("derive_gauge_params");
    require_alias_free(u0.grid(), 4);
    EquationParams p = EquationParams::constrained(c1);
    const auto u = synthesize(u0);
    const auto ux = synthesize_derivative(u0, 1);
    const auto sq = pointwise(u.size(), [&](std::size_t i) { return u[i] * u[i]; });
    const auto lvl = pointwise(u.size(), [&](std::size_t i) {
        const double a2 = u[i] * u[i];
        return ux[i] * ux[i] + a2 * a2;
    });
    p.gamma1 = integrate(sq);
    p.gamma2 = integrate(lvl);
    // With u = sum c_n e^{inx}: d1 = 10 sum|c_n|^2, d2 = 10 (sum n^2|c_n|^2 + mean u^4).
    p.d1 = 10.0 * p.gamma1 / kTwoPi;
    p.d2 = 10.0 * p.gamma2 / kTwoPi;
    p.d3 = 20.0;
    return p;
}

double dispersion_mu(long long n, double d1, double d2)
{
    const __int128 m = n;
    const __int128 m3 = m * m * m;
    const __int128 m5 = m3 * m * m;
    const bool integral = std::floor(d1) == d1 && std::floor(d2) == d2 &&
                          std::abs(d1) < 1e15 && std::abs(d2) < 1e15 && std::llabs(n) < 6000000;
    if (integral) {
        const __int128 r = m5 + static_cast<__int128>(d1) * m3 + static_cast<__int128>(d2) * m;
        return static_cast<double>(r);
    }
    return static_cast<double>(m5) + d1 * static_cast<double>(m3) + d2 * static_cast<double>(n);
}

void require_alias_free(const GridSpec& grid, int factors)
{
    if (grid.max_alias_free_factors() < factors)
        throw ConfigurationError("grid with " + std::to_string(grid.phys_points) +
                                 " points cannot resolve a " + std::to_string(factors) +
                                 "-fold product of modes up to " + std::to_string(grid.max_mode));
}

SpectralField rhs_physical(const SpectralField& u, const EquationParams& p)
{
    SpectralField out = physical_nonlinear(u, p);
    add_linear(out, u, 5);
    return out;
}

SpectralField rhs_renormalized(const SpectralField& v, const EquationParams& p)
{
    const auto& grid = v.grid();
    const int M = grid.max_mode;
    const auto& terms = p.terms;
    SpectralField out(grid);
    if (!terms.cubic_resonance && !terms.cubic && !terms.quintic) return out;
    require_alias_free(grid, terms.quintic ? 5 : 3);

    if (terms.cubic_resonance) {
        for (int n = -M; n <= M; ++n) {
            const double n3 = static_cast<double>(n) * n * n;
            out.at(n) += Complex{0.0, -20.0 * n3} * v[n] * v[n] * v[-n];
        }
    }
    if (!terms.cubic && !terms.quintic) return out;

    const auto u = synthesize(v);
    if (terms.cubic) {
        const auto ux = synthesize_derivative(v, 1);
        const auto uxx = synthesize_derivative(v, 2);
        // sum_{n1+n2+n3=n} c c n3^2 c = FT(-u^2 u_xx), sum c n2 c n3 c = FT(-u u_x^2)
        const auto f2 = analyze(pointwise(u.size(), [&](std::size_t i) { return -u[i] * u[i] * uxx[i]; }), grid);
        const auto f3 = analyze(pointwise(u.size(), [&](std::size_t i) { return -u[i] * ux[i] * ux[i]; }), grid);
        const double P0 = pair_moment(v, 0);
        const double P2 = pair_moment(v, 2);
        for (int n = -M; n <= M; ++n) {
            const double nn = static_cast<double>(n) * n;
            const Complex c = v[n];
            const Complex ccc = c * c * v[-n];
            // Triples with a vanishing pair sum, by inclusion-exclusion.
            const Complex r2 = (2.0 * P2 + nn * P0) * c - 3.0 * nn * ccc;
            const Complex r3 = -P2 * c + nn * ccc;
            out.at(n) += Complex{0.0, 10.0 * n} * ((f2[n] - r2) + (f3[n] - r3));
        }
    }
    if (terms.quintic) {
        const auto u2 = pointwise(u.size(), [&](std::size_t i) { return u[i] * u[i]; });
        const auto u3 = pointwise(u.size(), [&](std::size_t i) { return u2[i] * u[i]; });
        const auto u5 = pointwise(u.size(), [&](std::size_t i) { return u3[i] * u2[i]; });
        const double Q = mean(pointwise(u.size(), [&](std::size_t i) { return u2[i] * u2[i]; }));
        const auto f5 = analyze(u5, grid);
        std::vector<Complex> t3, t2;
        if (!terms.exact_quintic_resonances) {
            t3 = analyze_band(u3, M);
            t2 = analyze_band(u2, 2 * M);
        }
        for (int n = -M; n <= M; ++n) {
            if (n == 0) continue;
            const Complex c = v[n];
            Complex excluded = 5.0 * Q * c;
            if (!terms.exact_quintic_resonances) {
                // Quintuples with k >= 2 entries equal to n.
                const Complex c2 = c * c;
                excluded += -10.0 * c2 * t3[M - n] + 10.0 * c2 * c * t2[2 * M - 2 * n] -
                            5.0 * c2 * c2 * v[-3 * n];
            }
            out.at(n) += Complex{0.0, 6.0 * n} * (f5[n] - excluded);
        }
    }
    return out;
}

SpectralField rhs_fifth_kdv(const SpectralField& u, double a1, double a2, double a3)
{
    SpectralField out = fifth_kdv_nonlinear(u, a1, a2, a3);
    add_linear(out, u, 5);
    return out;
}

SpectralField rhs_third_order(const SpectralField& u, ThirdOrder which)
{
    // -u_xxx = -(in)^3 c = i n^3 c
    SpectralField out = third_order_nonlinear(u, which);
    add_linear(out, u, 3);
    return out;
}

SplitFlow make_split_flow(const GridSpec& grid, EquationTag tag, const EquationParams& p)
{
    SplitFlow f;
    f.tag = tag;
    f.params = p;
    f.omega.resize(2 * static_cast<std::size_t>(grid.max_mode) + 1);
    for (int n = -grid.max_mode; n <= grid.max_mode; ++n) {
        double w = 0.0;
        switch (tag) {
        case EquationTag::physical_5mkdv:
        case EquationTag::fifth_kdv: w = dispersion_mu(n, 0.0, 0.0); break;
        case EquationTag::renormalized_5mkdv:
        case EquationTag::linear: w = dispersion_mu(n, p.d1, p.d2); break;
        case EquationTag::kdv3:
        case EquationTag::mkdv3: w = static_cast<double>(n) * n * n; break;
        }
        f.omega[n + grid.max_mode] = w;
    }
    return f;
}

SpectralField SplitFlow::nonlinear(const SpectralField& u) const
{
    switch (tag) {
    case EquationTag::physical_5mkdv: return physical_nonlinear(u, params);
    case EquationTag::renormalized_5mkdv: return rhs_renormalized(u, params);
    case EquationTag::fifth_kdv: return fifth_kdv_nonlinear(u, params.a1, params.a2, params.a3);
    case EquationTag::kdv3: return third_order_nonlinear(u, ThirdOrder::kdv);
    case EquationTag::mkdv3: return third_order_nonlinear(u, ThirdOrder::mkdv_defocusing);
    case EquationTag::linear: return SpectralField(u.grid());
    }
    return SpectralField(u.grid());
}

SpectralField SplitFlow::full_rhs(const SpectralField& u) const
{
    SpectralField out = nonlinear(u);
    const int M = u.max_mode();
    for (int n = -M; n <= M; ++n) out.at(n) += Complex{0.0, omega[n + M]} * u[n];
    return out;
}

} // namespace fmkdv
