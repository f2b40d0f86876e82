#pragma once

#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace fmkdv {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Collocation grid on T = R/2piZ.
///
/// Coefficients are kept for |n| <= max_mode.  The physical grid has
/// phys_points >= dealias_factor * (2*max_mode + 1) points so that products of
/// up to five band-limited factors are alias free on the retained band.
struct GridSpec {
    int max_mode = 0;
    int phys_points = 0;
    int dealias_num = 3;
    int dealias_den = 1;

    static constexpr double domain_length = kTwoPi;

    /// Smallest 2^a 3^b 5^c collocation size meeting the dealiasing rule.
    static GridSpec make(int max_mode, int dealias_num = 3, int dealias_den = 1);

    /// Explicit size; throws ConfigurationError if the dealiasing rule fails.
    static GridSpec with_points(int max_mode, int phys_points, int dealias_num = 3,
                                int dealias_den = 1);

    int min_points() const;
    double spacing() const { return domain_length / phys_points; }
    double node(int j) const { return j * spacing(); }

    /// Largest number of band-limited factors whose product is exact on the band.
    int max_alias_free_factors() const;

    bool operator==(const GridSpec&) const = default;
};

/// Fourier coefficients of a 2pi-periodic function, u(x) = sum_n c_n e^{inx}.
///
/// Dense storage over |n| <= max_mode; reads outside the band return zero.
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(const GridSpec& grid);
    SpectralField(const GridSpec& grid, std::vector<Complex> coeffs);

    const GridSpec& grid() const { return grid_; }
    int max_mode() const { return grid_.max_mode; }

    Complex operator[](int n) const
    {
        return (n < -grid_.max_mode || n > grid_.max_mode) ? Complex{} : coeff_[n + grid_.max_mode];
    }
    Complex& at(int n);

    std::span<const Complex> coeffs() const { return coeff_; }
    std::span<Complex> coeffs() { return coeff_; }

    bool is_hermitian(double tol = 1e-12) const;
    void require_hermitian(const char* what) const;

    /// Largest |c_n - conj(c_{-n})|.
    double hermitian_defect() const;

    /// sum |c_n|^2
    double l2_squared() const;
    double max_abs() const;

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(Complex s);

private:
    GridSpec grid_;
    std::vector<Complex> coeff_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(Complex s, SpectralField a);

/// Truncated Fourier coefficients of real samples on the collocation grid.
SpectralField analyze(std::span<const double> samples, const GridSpec& grid);

/// Coefficients c_{-band..band} of real samples (band < phys_points/2).
std::vector<Complex> analyze_band(std::span<const double> samples, int band);

/// Point values on the collocation grid; throws SymmetryError if not Hermitian.
std::vector<double> synthesize(const SpectralField& field);

/// Point values of the order-th derivative.
std::vector<double> synthesize_derivative(const SpectralField& field, int order);

/// d^order/dx^order in coefficient space.
SpectralField derivative(const SpectralField& field, int order);

/// Same coefficients on another grid, truncated or zero-padded.
SpectralField resample(const SpectralField& field, const GridSpec& grid);

/// (sum <n>^{2s} |c_n|^2)^{1/2} with <n> = sqrt(1 + n^2).
double sobolev_norm(const SpectralField& field, double s);

/// Littlewood-Paley piece P_k f, coefficient-wise chi_k(n) c_n.
SpectralField project_pk(const SpectralField& field, int k);

/// Mean of the samples times 2pi, i.e. trapezoid quadrature over T.
double integrate(std::span<const double> samples);

/// Trigonometric polynomial from a coefficient generator n -> c_n.
template <class Fn>
SpectralField make_field(const GridSpec& grid, Fn&& fn)
{
    SpectralField f(grid);
    for (int n = -grid.max_mode; n <= grid.max_mode; ++n) f.at(n) = fn(n);
    return f;
}

} // namespace fmkdv
