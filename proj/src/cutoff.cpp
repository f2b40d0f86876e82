#include "fmkdv/cutoff.hpp"

#include "fmkdv/errors.hpp"

#include <cmath>

namespace fmkdv {

namespace {

// eta0 on the transition 1 < |x| < 2 is the logistic 1/(1+e^z) with
// z = 1/(2-|x|) - 1/(|x|-1).
double transition_exponent(double ax)
{
    return 1.0 / (2.0 - ax) - 1.0 / (ax - 1.0);
}

double logistic(double z)
{
    if (z > 700.0) return 0.0;
    if (z < -700.0) return 1.0;
    return 1.0 / (1.0 + std::exp(z));
}

void require_index(int k)
{
    if (k < 0) throw ParameterError("dyadic index k must be >= 0");
}

} // namespace

double eta0(double x)
{
    const double ax = std::abs(x);
    if (ax <= 1.0) return 1.0;
    if (ax >= 2.0) return 0.0;
    return logistic(transition_exponent(ax));
}

double eta0_derivative(double x)
{
    const double ax = std::abs(x);
    if (ax <= 1.0 || ax >= 2.0) return 0.0;
    const double a = 2.0 - ax;
    const double b = ax - 1.0;
    const double eta = logistic(transition_exponent(ax));
    const double d = -eta * (1.0 - eta) * (1.0 / (a * a) + 1.0 / (b * b));
    return x < 0 ? -d : d;
}

double chi(int k, double n)
{
    require_index(k);
    if (k == 0) return eta0(n);
    const double scale = std::ldexp(1.0, k);
    return eta0(n / scale) - eta0(2.0 * n / scale);
}

double psi(int k, double n)
{
    require_index(k);
    if (k == 0) return n * eta0_derivative(n);
    const double x = n / std::ldexp(1.0, k);
    const double y = 2.0 * x;
    return x * eta0_derivative(x) - y * eta0_derivative(y);
}

CutoffValue eval_chi_psi(int k, long long n)
{
    const auto x = static_cast<double>(n);
    return {chi(k, x), psi(k, x)};
}

DyadicBand dyadic_band(int k)
{
    require_index(k);
    if (k == 0) return {0, 2};
    return {1LL << (k - 1), 1LL << (k + 1)};
}

} // namespace fmkdv
