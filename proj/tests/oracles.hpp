#pragma once

// Nested-loop convolution sums used as references for the FFT code paths.
// Only meant for max_mode <= 8.

#include "fmkdv/equations.hpp"
#include "fmkdv/spectral.hpp"

#include <array>
#include <cmath>
#include <random>

namespace fmkdv::oracle {

inline const Complex I{0.0, 1.0};

// sum over n1 + n2 + n3 = n of w(n1, n2, n3) c1 c2 c3, all |n_i| <= M.
template <class W>
Complex triple(const SpectralField& v, int n, W&& w)
{
    const int M = v.max_mode();
    Complex s{};
    for (int a = -M; a <= M; ++a)
        for (int b = -M; b <= M; ++b) {
            const int c = n - a - b;
            if (c < -M || c > M) continue;
            s += w(a, b, c) * v[a] * v[b] * v[c];
        }
    return s;
}

template <class W>
Complex quintuple(const SpectralField& v, int n, W&& w)
{
    const int M = v.max_mode();
    Complex s{};
    for (int a = -M; a <= M; ++a)
        for (int b = -M; b <= M; ++b)
            for (int c = -M; c <= M; ++c)
                for (int d = -M; d <= M; ++d) {
                    const int e = n - a - b - c - d;
                    if (e < -M || e > M) continue;
                    const Complex p = v[a] * v[b] * v[c] * v[d] * v[e];
                    if (p == Complex{}) continue;
                    s += w(std::array<int, 5>{a, b, c, d, e}) * p;
                }
    return s;
}

inline SpectralField physical(const SpectralField& u, const EquationParams& p)
{
    SpectralField out(u.grid());
    const int M = u.max_mode();
    for (int n = -M; n <= M; ++n) {
        Complex r = I * std::pow(double(n), 5) * u[n];
        r -= p.c1 * triple(u, n, [](int, int b, int c) { return I * double(b) * (-double(c) * c); });
        r -= p.c2 * triple(u, n, [](int, int, int c) { return -I * (double(c) * c * c); });
        r -= p.c3 * triple(u, n, [](int a, int b, int c) { return -I * (double(a) * b * c); });
        r -= p.c4 * quintuple(u, n, [](const std::array<int, 5>& k) { return I * double(k[4]); });
        out.at(n) = r;
    }
    return out;
}

// Renormalised nonlinearity straight from its set definitions.  With
// exact_quintic a quintuple with h entries equal to n carries weight 1 - h,
// which is FT(u^5) - 5 mean(u^4) c_n written out term by term.
inline SpectralField renormalized(const SpectralField& v, const EquationParams& p)
{
    SpectralField out(v.grid());
    const int M = v.max_mode();
    for (int n = -M; n <= M; ++n) {
        Complex r{};
        if (p.terms.cubic_resonance) r += -20.0 * I * std::pow(double(n), 3) * v[n] * v[n] * v[-n];
        if (p.terms.cubic)
            r += 10.0 * I * double(n) * triple(v, n, [](int a, int b, int c) {
                     const bool in = a + b != 0 && a + c != 0 && b + c != 0;
                     return in ? Complex(double(c) * c + double(b) * c) : Complex{};
                 });
        if (p.terms.quintic && n != 0)
            r += 6.0 * I * double(n) * quintuple(v, n, [&](const std::array<int, 5>& k) {
                     int hits = 0;
                     for (int x : k) hits += x == n;
                     if (p.terms.exact_quintic_resonances) return 1.0 - hits;
                     return hits == 0 ? 1.0 : 0.0;
                 });
        out.at(n) = r;
    }
    return out;
}

inline SpectralField random_real_field(const GridSpec& grid, std::mt19937_64& rng, double amp = 1.0,
                                       double decay = 0.0)
{
    std::normal_distribution<double> g;
    SpectralField f(grid);
    f.at(0) = amp * g(rng);
    for (int n = 1; n <= grid.max_mode; ++n) {
        const double re = g(rng), im = g(rng);
        f.at(n) = amp * std::pow(1.0 + double(n) * n, -0.5 * decay) * Complex{re, im};
        f.at(-n) = std::conj(f[n]);
    }
    return f;
}

inline double rel_diff(const SpectralField& a, const SpectralField& b)
{
    double d = 0.0, r = 0.0;
    for (int n = -a.max_mode(); n <= a.max_mode(); ++n) {
        d += std::norm(a[n] - b[n]);
        r += std::norm(b[n]);
    }
    return r > 0.0 ? std::sqrt(d / r) : std::sqrt(d);
}

} // namespace fmkdv::oracle
