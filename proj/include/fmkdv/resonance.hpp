#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fmkdv {

using WideInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const WideInt& v);
WideInt to_wide(__int128 v);

/// H = (n1+n2+n3)^5 - n1^5 - n2^5 - n3^5, evaluated both directly and in the
/// factored form (5/2)(n1+n2)(n1+n3)(n2+n3)(n1^2+n2^2+n3^2+n^2).  Throws
/// std::logic_error if the two disagree.  128-bit arithmetic is used while it
/// cannot overflow, arbitrary precision beyond.
WideInt resonance_h(long long n1, long long n2, long long n3);

/// Direct form only, arbitrary precision.
WideInt resonance_h_direct(long long n1, long long n2, long long n3);
/// Factored form only, arbitrary precision.
WideInt resonance_h_factored(long long n1, long long n2, long long n3);

/// Counts mismatches between the direct and factored H over |n_i| <= radius
/// (128-bit path); the result should be zero.
long long count_h_factorization_mismatches(int radius);

/// (5/2)(n1+n2)(n2+n3)(n3+n1)(n1^2+n2^2+n3^2+(n1+n2+n3)^2 + 6 d1/5)
double resonance_g(long long n1, long long n2, long long n3, double d1);
Rational resonance_g_exact(long long n1, long long n2, long long n3, const Rational& d1);

/// n^5 + d1 n^3 + d2 n in rational arithmetic.
Rational mu_exact(long long n, const Rational& d1, const Rational& d2);

/// mu(n1+n2+n3) - mu(n1) - mu(n2) - mu(n3) == G(n1, n2, n3), exactly.
bool g_identity_holds(long long n1, long long n2, long long n3, const Rational& d1, const Rational& d2);

/// -mu(n) + mu(n1) + mu(n2) + mu(n3); exact integer arithmetic when d1, d2
/// are integers.
double phi_cubic(long long n, long long n1, long long n2, long long n3, double d1, double d2);

struct ResonanceTriple {
    long long n1 = 0, n2 = 0, n3 = 0;
    WideInt h_value;
    double g_value = 0.0;
};

struct ResonanceQuintuple {
    std::array<long long, 5> n{};
    // foursum_zero[i]: the four entries other than n[i] sum to zero.
    std::array<bool, 5> foursum_zero{};

    bool excluded() const;
};

bool in_n3(long long n1, long long n2, long long n3);
ResonanceQuintuple classify_quintuple(const std::array<long long, 5>& n);

/// Triples with |n_i| <= radius, sum n, and (n1+n2)(n1+n3)(n2+n3) != 0.
std::vector<ResonanceTriple> enumerate_n3(long long n, int radius, double d1 = 0.0);

/// Quintuples with |n_i| <= radius, sum n, and every four-sum non-zero.
std::vector<ResonanceQuintuple> enumerate_n5(long long n, int radius);

/// CSV n,n1,n2,n3,H,G and n,n1,n2,n3,n4,n5.
void write_csv(std::ostream& os, long long n, const std::vector<ResonanceTriple>& triples);
void write_csv(std::ostream& os, long long n, const std::vector<ResonanceQuintuple>& quintuples);

} // namespace fmkdv
