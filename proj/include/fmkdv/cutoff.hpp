#pragma once

namespace fmkdv {

/// Smooth bump: 1 on [-1,1], 0 outside (-2,2),
/// eta0(x) = g(2-|x|) / (g(2-|x|) + g(|x|-1)),  g(t) = exp(-1/t) for t > 0.
double eta0(double x);
double eta0_derivative(double x);

/// chi_0 = eta0, chi_k(n) = eta0(n/2^k) - eta0(n/2^{k-1}); supported in I_k.
double chi(int k, double n);

/// psi_k(n) = n chi_k'(n).
double psi(int k, double n);

struct CutoffValue {
    double chi = 0.0;
    double psi = 0.0;
};

CutoffValue eval_chi_psi(int k, long long n);

/// Inclusive bounds of I_k = {2^{k-1} <= |n| <= 2^{k+1}} (I_0 = {|n| <= 2}).
struct DyadicBand {
    long long lo = 0;
    long long hi = 0;
};
DyadicBand dyadic_band(int k);

} // namespace fmkdv
