#include "fmkdv/errors.hpp"
#include "fmkdv/illposedness.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace fmkdv;

namespace {

// Composite Simpson on [0, t] with n (even) panels.
template <class F>
Complex simpson(F f, double t, int n)
{
    const double h = t / n;
    Complex acc = f(0.0) + f(t);
    for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return acc * (h / 3.0);
}

CounterexampleSpec spec(long long N)
{
    CounterexampleSpec s;
    s.N = N;
    s.s = 1.0;
    s.t = 1e-4;
    return s;
}

} // namespace

TEST(Oscillatory, MatchesQuadratureAndBound)
{
    const double t = 0.3;
    for (double phi : {0.0, 1e-9, 0.5, 7.0, -40.0, 1e6}) {
        const auto got = oscillatory_integral(phi, t);
        const auto ref = simpson([&](double s) { return std::exp(Complex{0.0, phi * s}); }, t, 20000);
        if (std::abs(phi) < 1e4) {
            EXPECT_LT(std::abs(got - ref), 1e-10) << phi;
        }
        EXPECT_LE(std::abs(got), std::min(t, 2.0 / std::abs(phi)) * (1 + 1e-12)) << phi;
    }
}

TEST(Oscillatory, DoubleIntegralMatchesNestedQuadrature)
{
    const double t = 0.2;
    for (auto [A, B] : {std::pair{3.0, -2.0}, {0.0, 5.0}, {4.0, -4.0}, {0.0, 0.0}}) {
        auto inner = [&](double s) {
            return std::exp(Complex{0.0, A * s}) *
                   simpson([&](double r) { return std::exp(Complex{0.0, B * r}); }, s, 200);
        };
        EXPECT_LT(std::abs(double_oscillatory_integral(A, B, t) - simpson(inner, t, 400)), 1e-10)
            << A << " " << B;
    }
}

TEST(Phase, ResonantSextupleVanishes)
{
    for (long long N : {8LL, 64LL, 4096LL}) {
        const auto m = resonant_sextuple(N);
        EXPECT_EQ(phase(m[0], {m[1], m[2], m[3], m[4], m[5]}, 0, 0), 0.0);
    }
}

TEST(Phase, InnerPhaseScalesLikeFifthPower)
{
    for (long long N : {64LL, 1024LL, 4096LL}) {
        const double p = phase(N, {2, -1, N - 1}, 0, 0);
        EXPECT_NEAR(p / std::pow(double(N), 4), -5.0, 0.2) << N;
    }
}

TEST(D0, RatioApproachesOneFifth)
{
    // Frozen from the exact time integrals at t = 1e-4.
    EXPECT_NEAR(eval_d0(spec(1024)).real(), -2.045998046888e-02, 1e-14);
    EXPECT_EQ(eval_d0(spec(1024)).imag(), 0.0);
    for (long long N : {256LL, 1024LL, 4096LL})
        EXPECT_NEAR(d0_norm(spec(N)) / (1e-4 * N * N), 0.2, 0.01) << N;
    auto c3 = spec(64);
    c3.variant = CounterexampleVariant::C3;
    EXPECT_THROW(eval_d0(c3), ParameterError);
}

TEST(Growth, SlopeIsTwo)
{
    const auto r = growth_experiment({64, 128, 256, 512, 1024}, 1.0, 1e-4);
    EXPECT_NEAR(r.slope, 2.0, 0.05);
    EXPECT_TRUE(std::isnan(r.rows.front().slope_running));
    std::ostringstream os;
    write_csv(os, r);
    EXPECT_EQ(os.str().substr(0, 12), "N,s,t,d0_nor");
}

TEST(Appendix, FrozenFullSupportTerms)
{
    const auto r = eval_appendix_terms(spec(1024), TupleFilter::full_support);
    EXPECT_NEAR(r.d0_hsnorm, 2.0951029990e+01, 1e-7);
    EXPECT_NEAR(r.b1, 8.3666784145e-04, 1e-12);
    EXPECT_NEAR(r.b2, 4.3428401848e-04, 1e-12);
    EXPECT_NEAR(r.c1, r.b1, 1e-15);
    EXPECT_NEAR(r.d1_norm, 5.7871152313e-01, 1e-9);
    EXPECT_NEAR(r.d_full_hsnorm, 5.7872447910e-01, 1e-9);
    const double tN2 = 1e-4 * 1024 * 1024;
    for (double x : {r.b1, r.b2, r.c1, r.c2, r.d1_norm}) {
        EXPECT_LT(x, 0.1 * tN2);
        EXPECT_GT(r.d0_hsnorm, 10.0 * x);
    }
}

TEST(Appendix, UnitOrNTerms)
{
    const auto r = eval_appendix_terms(spec(1024), TupleFilter::unit_or_N);
    EXPECT_NEAR(r.b1, 2.6449807507e-06, 1e-15);
    EXPECT_NEAR(r.d1_norm, 2.3804826756e-05, 1e-14);
}

TEST(CubicResonance, SingleTermScale)
{
    EXPECT_NEAR(c3_resonant_norm(spec(1024)), 1.0737423360e+05, 1e-3);
    EXPECT_DOUBLE_EQ(cubic_resonance_scale(1024, 1, 1e-4), 1e-8 * 1024.0 * 1024.0);
}

TEST(Data, SymmetrizeAndValidate)
{
    const auto a = counterexample_coefficients(spec(16));
    EXPECT_EQ(a.size(), 6u);
    EXPECT_EQ(a.at(16), Complex(1.0 / 16.0));
    const auto b = symmetrize(a);
    EXPECT_EQ(b.size(), 8u);
    EXPECT_TRUE(to_field(b, GridSpec::make(16)).is_hermitian());
    EXPECT_THROW(to_field(b, GridSpec::make(8)), ConfigurationError);
    auto bad = spec(4);
    EXPECT_THROW(validate(bad), ParameterError);
    bad = spec(64);
    bad.t = 1.5;
    EXPECT_THROW(validate(bad), ParameterError);
}

TEST(FifthDerivative, AssemblyFormsAgree)
{
    const auto a = symmetrize(counterexample_coefficients(spec(8)));
    const auto g = GridSpec::make(64);
    const auto nf = normal_form_assembly(a, 1e-4, g, AssemblyForm::normal_form);
    const auto dir = normal_form_assembly(a, 1e-4, g, AssemblyForm::direct);
    EXPECT_LT(std::sqrt((nf - dir).l2_squared() / dir.l2_squared()), 1e-12);
}

TEST(FifthDerivative, RejectsBadDeltas)
{
    const auto g = GridSpec::make(16);
    const auto u = to_field(symmetrize(counterexample_coefficients(spec(8))), g);
    const auto f = cubic_model_flow(g);
    EXPECT_THROW(numeric_fifth_derivative(u, 1e-4, {0.1, 0.2}, f, StepControl{}), ParameterError);
    EXPECT_THROW(numeric_fifth_derivative(u, 1e-4, {0.1, 0.1, 0.2, 0.3, 0.4, 0.5}, f, StepControl{}),
                 ParameterError);
}
