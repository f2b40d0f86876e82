#pragma once

#include <complex>
#include <span>

#include <fftw3.h>

namespace fmkdv::detail {

// Real <-> half-complex transform of one size.  forward() returns the
// unnormalised sum_j u_j e^{-2 pi i jk/P}; backward() the unnormalised inverse.
class RealFft {
public:
    explicit RealFft(int size);
    ~RealFft();
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    int size() const { return size_; }
    void forward(std::span<const double> in, std::span<std::complex<double>> out);
    void backward(std::span<const std::complex<double>> in, std::span<double> out);

private:
    int size_;
    double* real_;
    fftw_complex* spec_;
    fftw_plan r2c_;
    fftw_plan c2r_;
};

// Unnormalised forward complex DFT, sum_j x_j e^{-2 pi i jk/L}.
class ComplexFft {
public:
    explicit ComplexFft(int size);
    ~ComplexFft();
    ComplexFft(const ComplexFft&) = delete;
    ComplexFft& operator=(const ComplexFft&) = delete;

    int size() const { return size_; }
    void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

private:
    int size_;
    fftw_complex* buf_;
    fftw_plan plan_;
};

// Per-thread cached transforms for a given size.
RealFft& real_fft(int size);
ComplexFft& complex_fft(int size);

} // namespace fmkdv::detail
