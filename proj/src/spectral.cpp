#include "fmkdv/spectral.hpp"

#include "fmkdv/cutoff.hpp"
#include "fmkdv/errors.hpp"
#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fmkdv {

namespace {

bool is_smooth_size(int n)
{
    for (int p : {2, 3, 5})
        while (n % p == 0) n /= p;
    return n == 1;
}

Complex ipow(int n, int order)
{
    // (i n)^order
    Complex r{1.0, 0.0};
    const Complex in{0.0, static_cast<double>(n)};
    for (int q = 0; q < order; ++q) r *= in;
    return r;
}

void check_dealias(int dealias_num, int dealias_den)
{
    if (dealias_den <= 0 || dealias_num < 3 * dealias_den)
        throw ConfigurationError("dealias_factor must be a rational >= 3");
}

} // namespace

GridSpec GridSpec::make(int max_mode, int dealias_num, int dealias_den)
{
    if (max_mode < 1) throw ConfigurationError("max_mode must be a positive integer");
    check_dealias(dealias_num, dealias_den);
    GridSpec g;
    g.max_mode = max_mode;
    g.dealias_num = dealias_num;
    g.dealias_den = dealias_den;
    int p = g.min_points();
    while (!is_smooth_size(p)) ++p;
    g.phys_points = p;
    return g;
}

GridSpec GridSpec::with_points(int max_mode, int phys_points, int dealias_num, int dealias_den)
{
    if (max_mode < 1) throw ConfigurationError("max_mode must be a positive integer");
    check_dealias(dealias_num, dealias_den);
    GridSpec g;
    g.max_mode = max_mode;
    g.dealias_num = dealias_num;
    g.dealias_den = dealias_den;
    if (phys_points < g.min_points())
        throw ConfigurationError("phys_points = " + std::to_string(phys_points) +
                                 " is below dealias_factor*(2*max_mode+1) = " +
                                 std::to_string(g.min_points()));
    g.phys_points = phys_points;
    return g;
}

int GridSpec::min_points() const
{
    const long long band = 2LL * max_mode + 1;
    return static_cast<int>((band * dealias_num + dealias_den - 1) / dealias_den);
}

int GridSpec::max_alias_free_factors() const
{
    // p-fold products alias onto |n| <= M iff P < (p+1)M + 1.
    return (phys_points - 1) / max_mode - 1;
}

SpectralField::SpectralField(const GridSpec& grid)
    : grid_(grid), coeff_(2 * static_cast<std::size_t>(grid.max_mode) + 1)
{
}

SpectralField::SpectralField(const GridSpec& grid, std::vector<Complex> coeffs)
    : grid_(grid), coeff_(std::move(coeffs))
{
    if (coeff_.size() != 2 * static_cast<std::size_t>(grid.max_mode) + 1)
        throw ConfigurationError("coefficient vector does not match grid band");
}

Complex& SpectralField::at(int n)
{
    if (n < -grid_.max_mode || n > grid_.max_mode)
        throw std::out_of_range("mode " + std::to_string(n) + " outside retained band");
    return coeff_[n + grid_.max_mode];
}

double SpectralField::hermitian_defect() const
{
    double worst = 0.0;
    for (int n = 0; n <= grid_.max_mode; ++n)
        worst = std::max(worst, std::abs((*this)[n] - std::conj((*this)[-n])));
    return worst;
}

bool SpectralField::is_hermitian(double tol) const
{
    const double scale = std::max(1.0, max_abs());
    return hermitian_defect() <= tol * scale;
}

void SpectralField::require_hermitian(const char* what) const
{
    if (!is_hermitian())
        throw SymmetryError(std::string(what) + ": field is not Hermitian-symmetric (defect " +
                            std::to_string(hermitian_defect()) + ")");
}

double SpectralField::l2_squared() const
{
    double s = 0.0;
    for (const auto& c : coeff_) s += std::norm(c);
    return s;
}

double SpectralField::max_abs() const
{
    double m = 0.0;
    for (const auto& c : coeff_) m = std::max(m, std::abs(c));
    return m;
}

SpectralField& SpectralField::operator+=(const SpectralField& other)
{
    if (!(grid_ == other.grid_)) throw ConfigurationError("grid mismatch in field sum");
    for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += other.coeff_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other)
{
    if (!(grid_ == other.grid_)) throw ConfigurationError("grid mismatch in field difference");
    for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] -= other.coeff_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(Complex s)
{
    for (auto& c : coeff_) c *= s;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(Complex s, SpectralField a) { return a *= s; }

std::vector<Complex> analyze_band(std::span<const double> samples, int band)
{
    const int p = static_cast<int>(samples.size());
    if (band < 0 || 2 * band >= p)
        throw ConfigurationError("band " + std::to_string(band) + " not resolved by " +
                                 std::to_string(p) + " samples");
    std::vector<Complex> half(p / 2 + 1);
    detail::real_fft(p).forward(samples, half);
    std::vector<Complex> out(2 * static_cast<std::size_t>(band) + 1);
    const double inv = 1.0 / p;
    for (int n = 0; n <= band; ++n) {
        out[band + n] = half[n] * inv;
        out[band - n] = std::conj(half[n]) * inv;
    }
    return out;
}

SpectralField analyze(std::span<const double> samples, const GridSpec& grid)
{
    if (static_cast<int>(samples.size()) != grid.phys_points)
        throw ConfigurationError("analyze: expected " + std::to_string(grid.phys_points) +
                                 " samples, got " + std::to_string(samples.size()));
    return SpectralField(grid, analyze_band(samples, grid.max_mode));
}

namespace {

std::vector<double> synthesize_scaled(const SpectralField& field, int order)
{
    field.require_hermitian("synthesize");
    const auto& g = field.grid();
    std::vector<Complex> half(g.phys_points / 2 + 1);
    for (int n = 0; n <= g.max_mode; ++n) {
        // Average the pair so the c2r input is exactly Hermitian.
        const Complex c = 0.5 * (field[n] + std::conj(field[-n]));
        half[n] = (order == 0) ? c : ipow(n, order) * c;
    }
    std::vector<double> out(g.phys_points);
    detail::real_fft(g.phys_points).backward(half, out);
    return out;
}

} // namespace

std::vector<double> synthesize(const SpectralField& field) { return synthesize_scaled(field, 0); }

std::vector<double> synthesize_derivative(const SpectralField& field, int order)
{
    if (order < 0) throw ParameterError("derivative order must be >= 0");
    return synthesize_scaled(field, order);
}

SpectralField derivative(const SpectralField& field, int order)
{
    SpectralField out(field.grid());
    for (int n = -field.max_mode(); n <= field.max_mode(); ++n)
        out.at(n) = ipow(n, order) * field[n];
    return out;
}

SpectralField resample(const SpectralField& field, const GridSpec& grid)
{
    SpectralField out(grid);
    const int m = std::min(grid.max_mode, field.max_mode());
    for (int n = -m; n <= m; ++n) out.at(n) = field[n];
    return out;
}

double sobolev_norm(const SpectralField& field, double s)
{
    double acc = 0.0;
    for (int n = -field.max_mode(); n <= field.max_mode(); ++n) {
        const double w = std::pow(1.0 + static_cast<double>(n) * n, s);
        acc += w * std::norm(field[n]);
    }
    return std::sqrt(acc);
}

SpectralField project_pk(const SpectralField& field, int k)
{
    SpectralField out(field.grid());
    const auto band = dyadic_band(k);
    const long long hi = std::min<long long>(band.hi, field.max_mode());
    for (long long n = -hi; n <= hi; ++n) {
        const double w = chi(k, static_cast<double>(n));
        if (w != 0.0) out.at(static_cast<int>(n)) = w * field[static_cast<int>(n)];
    }
    return out;
}

double integrate(std::span<const double> samples)
{
    double s = 0.0;
    for (double v : samples) s += v;
    return kTwoPi * s / static_cast<double>(samples.size());
}

} // namespace fmkdv
