#pragma once

#include "fmkdv/spectral.hpp"

#include <string>
#include <vector>

namespace fmkdv {

enum class EquationTag { physical_5mkdv, renormalized_5mkdv, fifth_kdv, kdv3, mkdv3, linear };

const char* to_string(EquationTag tag);
EquationTag parse_equation_tag(const std::string& name);

/// Which pieces of the renormalised nonlinearity are switched on.
struct RenormalizedTerms {
    bool cubic_resonance = true;  // -20 i n^3 |v(n)|^2 v(n)
    bool cubic = true;            // the two sums over N_{3,n}
    bool quintic = true;          // the sum over N_{5,n}
    // Replace the N_{5,n} sum by FT(v^5) - 5 mean(v^4) v(n), i.e. keep the
    // multi-coincidence quintuples the printed equation drops.
    bool exact_quintic_resonances = false;
};

struct EquationParams {
    double c1 = 40.0;
    double c2 = 10.0;
    double c3 = 10.0;
    double c4 = -30.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 20.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    // fifth-order KdV coefficients
    double a1 = 20.0;
    double a2 = 10.0;
    double a3 = -30.0;
    RenormalizedTerms terms;

    /// c2 = c3 = c1/4, c4 = -3 c1^2 / 160, a-coefficients from the same c1.
    static EquationParams constrained(double c1);
};

bool check_constraints(double c1, double c2, double c3, double c4);

/// Level-set values and gauge constants from initial data.  Only c1 = 40 is
/// supported; other values throw ParameterError.
EquationParams derive_gauge_params(const SpectralField& u0, double c1 = 40.0);

/// n^5 + d1 n^3 + d2 n.  Exact 128-bit evaluation when d1, d2 are integers.
double dispersion_mu(long long n, double d1, double d2);

/// du/dt = u_xxxxx - c1 u u_x u_xx - c2 u^2 u_xxx - c3 u_x^3 - c4 u^4 u_x.
SpectralField rhs_physical(const SpectralField& u, const EquationParams& p);

/// Nonlinear part N1 + N2 + N3 + N4 of the renormalised equation (the linear
/// term i mu(n) v(n) is not included).
SpectralField rhs_renormalized(const SpectralField& v, const EquationParams& p);

/// du/dt = u_xxxxx - a1 u_x u_xx - a2 u u_xxx - a3 u^2 u_x.
SpectralField rhs_fifth_kdv(const SpectralField& u, double a1, double a2, double a3);

enum class ThirdOrder { kdv, mkdv_defocusing };

/// KdV: u_t = -u_xxx + 6 u u_x.  mKdV: v_t = -v_xxx + 6 v^2 v_x.
SpectralField rhs_third_order(const SpectralField& u, ThirdOrder which);

/// A flow split as du/dt = i omega(n) u + nonlinear(u).
struct SplitFlow {
    std::vector<double> omega;  // indexed n + max_mode
    EquationTag tag;
    EquationParams params;

    SpectralField nonlinear(const SpectralField& u) const;
    SpectralField full_rhs(const SpectralField& u) const;
};

SplitFlow make_split_flow(const GridSpec& grid, EquationTag tag, const EquationParams& p);

/// Smallest grid check used by every nonlinear evaluation.
void require_alias_free(const GridSpec& grid, int factors);

} // namespace fmkdv
