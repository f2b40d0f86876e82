#include "fmkdv/resonance.hpp"

#include "fmkdv/csv.hpp"
#include "fmkdv/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

namespace fmkdv {

namespace {

// |n_i| below this keeps every intermediate of H inside 127 bits:
// (3 * 2^22)^5 ~ 2^118.
constexpr long long kFastLimit = 1LL << 22;

bool fast_ok(long long a, long long b, long long c)
{
    return std::llabs(a) < kFastLimit && std::llabs(b) < kFastLimit && std::llabs(c) < kFastLimit;
}

__int128 p5(__int128 x) { return x * x * x * x * x; }

__int128 h_direct_fast(long long n1, long long n2, long long n3)
{
    const __int128 s = static_cast<__int128>(n1) + n2 + n3;
    return p5(s) - p5(n1) - p5(n2) - p5(n3);
}

__int128 h_factored_fast(long long n1, long long n2, long long n3)
{
    const __int128 a = n1, b = n2, c = n3, s = a + b + c;
    // (n1+n2)(n1+n3)(n2+n3) * sum of squares is always even.
    const __int128 q = (a + b) * (a + c) * (b + c) * (a * a + b * b + c * c + s * s);
    return 5 * q / 2;
}

WideInt pow5(const WideInt& x) { return x * x * x * x * x; }

} // namespace

std::string to_string(const WideInt& v) { return v.str(); }

WideInt to_wide(__int128 v)
{
    const bool neg = v < 0;
    unsigned __int128 m = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    WideInt hi = static_cast<unsigned long long>(m >> 64);
    WideInt lo = static_cast<unsigned long long>(m);
    WideInt r = (hi << 64) + lo;
    return neg ? WideInt(-r) : r;
}

WideInt resonance_h_direct(long long n1, long long n2, long long n3)
{
    const WideInt a = n1, b = n2, c = n3;
    return pow5(a + b + c) - pow5(a) - pow5(b) - pow5(c);
}

WideInt resonance_h_factored(long long n1, long long n2, long long n3)
{
    const WideInt a = n1, b = n2, c = n3, s = a + b + c;
    const WideInt q = 5 * (a + b) * (a + c) * (b + c) * (a * a + b * b + c * c + s * s);
    if (q % 2 != 0) throw std::logic_error("factored resonance function is not an integer");
    return q / 2;
}

WideInt resonance_h(long long n1, long long n2, long long n3)
{
    if (fast_ok(n1, n2, n3)) {
        const __int128 d = h_direct_fast(n1, n2, n3);
        if (d != h_factored_fast(n1, n2, n3))
            throw std::logic_error("resonance function: direct and factored forms differ");
        return to_wide(d);
    }
    WideInt d = resonance_h_direct(n1, n2, n3);
    if (d != resonance_h_factored(n1, n2, n3))
        throw std::logic_error("resonance function: direct and factored forms differ");
    return d;
}

long long count_h_factorization_mismatches(int radius)
{
    long long bad = 0;
    for (long long a = -radius; a <= radius; ++a)
        for (long long b = -radius; b <= radius; ++b)
            for (long long c = -radius; c <= radius; ++c)
                if (h_direct_fast(a, b, c) != h_factored_fast(a, b, c)) ++bad;
    return bad;
}

double resonance_g(long long n1, long long n2, long long n3, double d1)
{
    const double a = static_cast<double>(n1), b = static_cast<double>(n2), c = static_cast<double>(n3);
    const double s = a + b + c;
    return 2.5 * (a + b) * (b + c) * (c + a) * (a * a + b * b + c * c + s * s + 1.2 * d1);
}

Rational resonance_g_exact(long long n1, long long n2, long long n3, const Rational& d1)
{
    const WideInt a = n1, b = n2, c = n3, s = a + b + c;
    const Rational sq = Rational(a * a + b * b + c * c + s * s) + Rational(6, 5) * d1;
    return Rational(5, 2) * Rational((a + b) * (b + c) * (c + a)) * sq;
}

Rational mu_exact(long long n, const Rational& d1, const Rational& d2)
{
    const WideInt m = n;
    return Rational(pow5(m)) + d1 * Rational(m * m * m) + d2 * Rational(m);
}

bool g_identity_holds(long long n1, long long n2, long long n3, const Rational& d1, const Rational& d2)
{
    const Rational lhs = mu_exact(n1 + n2 + n3, d1, d2) - mu_exact(n1, d1, d2) - mu_exact(n2, d1, d2) -
                         mu_exact(n3, d1, d2);
    return lhs == resonance_g_exact(n1, n2, n3, d1);
}

double phi_cubic(long long n, long long n1, long long n2, long long n3, double d1, double d2)
{
    const bool integral = std::floor(d1) == d1 && std::floor(d2) == d2 && std::abs(d1) < 1e15 &&
                          std::abs(d2) < 1e15;
    if (integral && fast_ok(n, n1, n2) && std::llabs(n3) < kFastLimit) {
        auto mu = [&](long long k) {
            const __int128 x = k;
            return p5(x) + static_cast<__int128>(d1) * x * x * x + static_cast<__int128>(d2) * x;
        };
        return static_cast<double>(-mu(n) + mu(n1) + mu(n2) + mu(n3));
    }
    const Rational r1 = integral ? Rational(static_cast<long long>(d1)) : Rational(d1);
    const Rational r2 = integral ? Rational(static_cast<long long>(d2)) : Rational(d2);
    const Rational v = -mu_exact(n, r1, r2) + mu_exact(n1, r1, r2) + mu_exact(n2, r1, r2) +
                       mu_exact(n3, r1, r2);
    return v.convert_to<double>();
}

bool ResonanceQuintuple::excluded() const
{
    for (bool z : foursum_zero)
        if (z) return true;
    return false;
}

bool in_n3(long long n1, long long n2, long long n3)
{
    return n1 + n2 != 0 && n1 + n3 != 0 && n2 + n3 != 0;
}

ResonanceQuintuple classify_quintuple(const std::array<long long, 5>& n)
{
    ResonanceQuintuple q;
    q.n = n;
    const long long total = n[0] + n[1] + n[2] + n[3] + n[4];
    for (int i = 0; i < 5; ++i) q.foursum_zero[i] = (total - n[i] == 0);
    return q;
}

std::vector<ResonanceTriple> enumerate_n3(long long n, int radius, double d1)
{
    if (radius < 0 || radius > 10000) throw ParameterError("enumerate_n3: radius must be in [0, 10^4]");
    std::vector<ResonanceTriple> out;
    for (long long a = -radius; a <= radius; ++a)
        for (long long b = -radius; b <= radius; ++b) {
            const long long c = n - a - b;
            if (c < -radius || c > radius || !in_n3(a, b, c)) continue;
            out.push_back({a, b, c, resonance_h(a, b, c), resonance_g(a, b, c, d1)});
        }
    return out;
}

std::vector<ResonanceQuintuple> enumerate_n5(long long n, int radius)
{
    if (radius < 0 || radius > 30) throw ParameterError("enumerate_n5: radius must be in [0, 30]");
    std::vector<ResonanceQuintuple> out;
    std::array<long long, 5> t{};
    for (t[0] = -radius; t[0] <= radius; ++t[0])
        for (t[1] = -radius; t[1] <= radius; ++t[1])
            for (t[2] = -radius; t[2] <= radius; ++t[2])
                for (t[3] = -radius; t[3] <= radius; ++t[3]) {
                    t[4] = n - t[0] - t[1] - t[2] - t[3];
                    if (t[4] < -radius || t[4] > radius) continue;
                    // A four-sum vanishes exactly when the remaining entry equals n.
                    bool member = true;
                    for (long long x : t)
                        if (x == n) member = false;
                    if (member) out.push_back(classify_quintuple(t));
                }
    return out;
}

void write_csv(std::ostream& os, long long n, const std::vector<ResonanceTriple>& triples)
{
    CsvWriter csv(os, {"n", "n1", "n2", "n3", "H", "G"});
    for (const auto& t : triples) csv.row(n, t.n1, t.n2, t.n3, to_string(t.h_value), t.g_value);
}

void write_csv(std::ostream& os, long long n, const std::vector<ResonanceQuintuple>& quintuples)
{
    CsvWriter csv(os, {"n", "n1", "n2", "n3", "n4", "n5"});
    for (const auto& q : quintuples) csv.row(n, q.n[0], q.n[1], q.n[2], q.n[3], q.n[4]);
}

} // namespace fmkdv
