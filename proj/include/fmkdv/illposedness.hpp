#pragma once

#include "fmkdv/integrator.hpp"
#include "fmkdv/spectral.hpp"

#include <array>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <vector>

namespace fmkdv {

enum class CounterexampleVariant { C5, C3 };

/// Dispersion of the lab flow is mu(n) = n^5 + d1 n^3 + d2 n; the experiments
/// use d1 = d2 = 0.
struct CounterexampleSpec {
    long long N = 64;
    double s = 1.0;
    CounterexampleVariant variant = CounterexampleVariant::C5;
    double t = 1e-4;
    double d1 = 0.0;
    double d2 = 0.0;
};

void validate(const CounterexampleSpec& spec);

/// Sparse Fourier data n -> a_n.
using SparseField = std::map<long long, Complex>;

/// C5: a_n = N^-s at n = N-1, N and 1 at n = +-1, +-2.  C3: N^-s at N, 1 at +-1.
SparseField counterexample_coefficients(const CounterexampleSpec& spec);

/// Same data on a grid (not Hermitian).  Throws ConfigurationError if N > max_mode.
SpectralField build_counterexample_data(const CounterexampleSpec& spec, const GridSpec& grid);

/// Adds the mirror conj(a_n) at -n wherever it is missing, giving real data.
SparseField symmetrize(const SparseField& a);
SpectralField to_field(const SparseField& a, const GridSpec& grid);

/// int_0^t e^{i t' phi} dt'
Complex oscillatory_integral(double phi, double t);

/// int_0^t e^{i t' A} int_0^{t'} e^{i t'' B} dt'' dt'
Complex double_oscillatory_integral(double A, double B, double t);

/// -mu(n) + sum mu(leaves), exact integer arithmetic when d1, d2 are integers.
double phase(long long n, std::initializer_list<long long> leaves, double d1, double d2);

/// (N, 2, -1, -2, 1, N)
std::array<long long, 6> resonant_sextuple(long long N);

/// The m0 term of D at output frequency N.
Complex eval_d0(const CounterexampleSpec& spec);

/// ||D_0||_{H^s} = <N>^s |eval_d0|
double d0_norm(const CounterexampleSpec& spec);

/// One term of D: leaves (n1, n2, n31, n32, n33).  Returns false if the
/// tuple is outside the double resonance set or has vanishing outer phase.
bool d_term(const CounterexampleSpec& spec, const std::array<long long, 5>& leaves, long long& n,
            Complex& value);

/// D(v0)(t) over all tuples supported on the data.
SparseField eval_d_full(const CounterexampleSpec& spec);

double hs_norm(const SparseField& f, double s);

enum class TupleFilter {
    unit_or_N,     // leaves restricted to {1, N}
    full_support,  // every point of the data support
};

struct NormalFormTermReport {
    long long N = 0;
    double s = 0.0;
    double t = 0.0;
    double d0_hsnorm = 0.0;
    double d_full_hsnorm = 0.0;
    double b1 = 0.0, b2 = 0.0, c1 = 0.0, c2 = 0.0, d1_norm = 0.0;
    long long skipped_zero_phase = 0;
};

NormalFormTermReport eval_appendix_terms(const CounterexampleSpec& spec,
                                         TupleFilter filter = TupleFilter::unit_or_N);

/// Single resonant C3 term at (N, 1, -1, N) for u^2 u_xxx with mu(n) = n^5:
/// <N>^s |int_0^t (iN)^3 a_1 a_{-1} a_N dt'|.
double c3_resonant_norm(const CounterexampleSpec& spec);

/// t^2 N^{6-4s}: scale of the fifth derivative of the dropped cubic resonance.
double cubic_resonance_scale(long long N, double s, double t);

struct GrowthRow {
    long long N = 0;
    double s = 0.0, t = 0.0;
    double d0_norm = 0.0;
    double ratio_tN2 = 0.0;
    double b1 = 0.0, b2 = 0.0, c1 = 0.0, c2 = 0.0, d1 = 0.0;
    double slope_running = 0.0;  // NaN for the first row
};

struct GrowthResult {
    std::vector<GrowthRow> rows;
    double slope = 0.0;
};

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

GrowthResult growth_experiment(const std::vector<long long>& Ns, double s, double t,
                               TupleFilter filter = TupleFilter::unit_or_N,
                               CounterexampleVariant variant = CounterexampleVariant::C5);

void write_csv(std::ostream& os, const GrowthResult& result);

/// Cubic-only renormalised flow: du/dt = i n^5 u + N2(u) + N3(u).
SplitFlow cubic_model_flow(const GridSpec& grid);

struct FifthDerivativeResult {
    SpectralField fifth;                       // d^5/d delta^5 at delta = 0
    std::vector<SpectralField> coefficients;   // polynomial coefficients in delta
    double condition = 0.0;                    // of the scaled Vandermonde matrix
};

/// Fits v(delta, t) over the given deltas by a polynomial of degree
/// min(#deltas - 1, 11) and returns 5! times the delta^5 coefficient.
FifthDerivativeResult numeric_fifth_derivative(const SpectralField& u0, double t,
                                               const std::vector<double>& deltas,
                                               const SplitFlow& flow, const StepControl& ctrl);

enum class AssemblyForm {
    normal_form,  // boundary terms plus the integrated-by-parts pieces
    direct,       // exact double time integrals
};

/// d^5 v / d delta^5 at delta = 0 for the cubic model flow with datum delta*a,
/// summed over every tuple on the support of a.
SpectralField normal_form_assembly(const SparseField& a, double t, const GridSpec& grid,
                                   AssemblyForm form = AssemblyForm::normal_form);

} // namespace fmkdv
