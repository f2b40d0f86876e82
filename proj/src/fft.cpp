#include "fft.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace fmkdv::detail {

namespace {
// FFTW planning is not thread safe.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}
} // namespace

RealFft::RealFft(int size) : size_(size)
{
    std::lock_guard lock(planner_mutex());
    real_ = fftw_alloc_real(size);
    spec_ = fftw_alloc_complex(size / 2 + 1);
    r2c_ = fftw_plan_dft_r2c_1d(size, real_, spec_, FFTW_ESTIMATE);
    c2r_ = fftw_plan_dft_c2r_1d(size, spec_, real_, FFTW_ESTIMATE);
}

RealFft::~RealFft()
{
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(c2r_);
    fftw_destroy_plan(r2c_);
    fftw_free(spec_);
    fftw_free(real_);
}

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out)
{
    std::copy(in.begin(), in.end(), real_);
    fftw_execute(r2c_);
    const auto* s = reinterpret_cast<const std::complex<double>*>(spec_);
    std::copy(s, s + size_ / 2 + 1, out.begin());
}

void RealFft::backward(std::span<const std::complex<double>> in, std::span<double> out)
{
    std::copy(in.begin(), in.end(), reinterpret_cast<std::complex<double>*>(spec_));
    // c2r destroys its input; spec_ is scratch.
    fftw_execute(c2r_);
    std::copy(real_, real_ + size_, out.begin());
}

ComplexFft::ComplexFft(int size) : size_(size)
{
    std::lock_guard lock(planner_mutex());
    buf_ = fftw_alloc_complex(size);
    plan_ = fftw_plan_dft_1d(size, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
}

ComplexFft::~ComplexFft()
{
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(buf_);
}

void ComplexFft::forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out)
{
    auto* b = reinterpret_cast<std::complex<double>*>(buf_);
    std::fill(b, b + size_, std::complex<double>{});
    std::copy(in.begin(), in.end(), b);
    fftw_execute(plan_);
    std::copy(b, b + size_, out.begin());
}

ComplexFft& complex_fft(int size)
{
    thread_local std::map<int, std::unique_ptr<ComplexFft>> cache;
    auto& slot = cache[size];
    if (!slot) slot = std::make_unique<ComplexFft>(size);
    return *slot;
}

RealFft& real_fft(int size)
{
    thread_local std::map<int, std::unique_ptr<RealFft>> cache;
    auto& slot = cache[size];
    if (!slot) slot = std::make_unique<RealFft>(size);
    return *slot;
}

} // namespace fmkdv::detail
