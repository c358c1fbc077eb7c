#include "oracles.hpp"

#include "gabornc/errors.hpp"
#include "gabornc/operators.hpp"
#include "gabornc/windows.hpp"

#include <gtest/gtest.h>

using namespace gabornc;

namespace
{

const double pi = std::numbers::pi;

Signal gaussian(const GridSpec& grid) { return make_window({WindowKind::gaussian, 0}, grid); }

}  // namespace

TEST(Rational, NormalizesAndParses)
{
    const Rational r(6, -8);
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 4);
    EXPECT_EQ(Rational::parse("19/20"), Rational(19, 20));
    EXPECT_EQ(Rational::parse("3"), Rational(3));
    EXPECT_EQ(Rational::parse("2/4").to_string(), "1/2");
    EXPECT_TRUE(Rational(4, 2).is_integer());
    EXPECT_TRUE(Rational(1, 2) < Rational(3, 5));
    EXPECT_THROW(Rational(1, 0), ParameterError);
    EXPECT_THROW(Rational::parse("abc"), ParameterError);
    EXPECT_THROW(Rational::parse("1/"), ParameterError);
}

TEST(Grid, SmallestGrid)
{
    const GridSpec grid(1, 1);
    EXPECT_EQ(grid.size(), 1U);
    EXPECT_DOUBLE_EQ(grid.point(0), -0.5);
}

TEST(Grid, DefaultGridEndpoints)
{
    const GridSpec grid(32, 32);
    EXPECT_EQ(grid.size(), 1024U);
    EXPECT_DOUBLE_EQ(grid.point(0), -16.0);
    EXPECT_DOUBLE_EQ(grid.point(1023), 16.0 - 1.0 / 32.0);
    EXPECT_DOUBLE_EQ(grid.weight(), 1.0 / 32.0);
}

TEST(Grid, RejectsInvalidSizes)
{
    EXPECT_THROW(GridSpec(0, 4), ParameterError);
    EXPECT_THROW(GridSpec(4, -1), ParameterError);
    EXPECT_THROW(GridSpec(1 << 13, 1 << 12), SizeError);
}

TEST(Signal, ShapeMismatchAndGridMismatch)
{
    const GridSpec grid(4, 2);
    EXPECT_THROW(Signal(grid, std::vector<Complex>(7)), ShapeError);
    const Signal a(grid);
    const Signal b(GridSpec(2, 4));
    EXPECT_THROW(inner(a, b), ShapeError);
}

TEST(Signal, WeightedInnerProduct)
{
    const GridSpec grid(2, 2);
    const Signal f(grid, {1.0, Complex(0, 1), 2.0, 0.0});
    const Signal g(grid, {1.0, 1.0, 1.0, 1.0});
    const Complex ip = inner(f, g);
    EXPECT_NEAR(ip.real(), 1.5, 1e-15);
    EXPECT_NEAR(ip.imag(), 0.5, 1e-15);
    EXPECT_NEAR(norm_sq(f), 3.0, 1e-15);
}

TEST(Lattice, RequiresCompatibleGrid)
{
    const GridSpec grid(32, 32);
    const LatticeSpec half(Rational(1, 2), grid);
    EXPECT_EQ(half.shift_step(), 16U);
    EXPECT_EQ(half.time_shifts(), 64U);
    EXPECT_EQ(half.freq_shifts(), 32U);
    EXPECT_THROW(LatticeSpec(Rational(3, 4), grid), ParameterError);    // 3 does not divide 32
    EXPECT_THROW(LatticeSpec(Rational(1, 3), grid), ParameterError);    // theta*s not integral
    EXPECT_THROW(LatticeSpec(Rational(3, 2), grid), ParameterError);    // theta > 1
    EXPECT_THROW(LatticeSpec(Rational(0), grid), ParameterError);
    EXPECT_NO_THROW(LatticeSpec(Rational(19, 20), GridSpec(20, 171)));
}

TEST(Windows, ParseSpecs)
{
    EXPECT_EQ(WindowSpec::parse("hermite(3)").order, 3);
    EXPECT_EQ(WindowSpec::parse("hermite:2").kind, WindowKind::hermite);
    EXPECT_EQ(WindowSpec::parse("bspline(4)").to_string(), "bspline(4)");
    EXPECT_TRUE(WindowSpec::parse("indicator").is_rough());
    EXPECT_FALSE(WindowSpec::parse("gaussian").is_rough());
    EXPECT_THROW(WindowSpec::parse("boxcar"), ParameterError);
    EXPECT_THROW(WindowSpec::parse("hermite(-1)"), ParameterError);
}

TEST(Windows, GaussianHasUnitNorm)
{
    EXPECT_NEAR(norm_sq(gaussian(GridSpec(32, 32))), 1.0, 1e-10);
}

TEST(Windows, IndicatorHasUnitNormExactly)
{
    const Signal chi = make_window({WindowKind::indicator, 0}, GridSpec(32, 32));
    EXPECT_EQ(norm_sq(chi), 1.0);
}

TEST(Windows, HermiteFunctionsAreOrthonormal)
{
    const GridSpec grid(32, 32);
    for (int a = 0; a <= 4; ++a)
    {
        for (int b = 0; b <= 4; ++b)
        {
            const Complex ip =
                inner(make_window({WindowKind::hermite, a}, grid), make_window({WindowKind::hermite, b}, grid));
            EXPECT_NEAR(std::abs(ip), a == b ? 1.0 : 0.0, 1e-10) << a << "," << b;
        }
    }
}

TEST(Windows, HermiteZeroIsTheGaussian)
{
    const GridSpec grid(16, 16);
    EXPECT_LT(max_abs_diff(make_window({WindowKind::hermite, 0}, grid), gaussian(grid)), 1e-14);
}

TEST(Windows, BsplineIsNormalizedAndSymmetric)
{
    const GridSpec grid(16, 16);
    const Signal b = make_window({WindowKind::bspline, 3}, grid);
    EXPECT_NEAR(norm_sq(b), 1.0, 1e-12);
    for (std::size_t j = 1; j < grid.size(); ++j) EXPECT_NEAR(std::abs(b[j] - b[grid.size() - j]), 0.0, 1e-14);
}

TEST(TfShift, ZeroShiftIsIdentity)
{
    std::mt19937_64 rng(1);
    const LatticeSpec lat(Rational(1, 2), GridSpec(8, 8));
    const Signal f = oracle::random_signal(lat.grid(), rng);
    EXPECT_EQ(max_abs_diff(tf_shift(f, 0, 0, lat), f), 0.0);
}

TEST(TfShift, IsUnitary)
{
    std::mt19937_64 rng(2);
    const LatticeSpec lat(Rational(1, 2), GridSpec(8, 8));
    const Signal f = oracle::random_signal(lat.grid(), rng);
    EXPECT_NEAR(norm(tf_shift(f, 3, -2, lat)), norm(f), 1e-12);
}

TEST(TfShift, CommutationRelation)
{
    std::mt19937_64 rng(3);
    for (const Rational theta : {Rational(1, 2), Rational(3, 4), Rational(1)})
    {
        const LatticeSpec lat(theta, GridSpec(8, 12));
        const Signal f = oracle::random_signal(lat.grid(), rng);
        const Signal lhs = tf_shift(tf_shift(f, 1, 0, lat), 0, 1, lat);
        const Signal rhs = std::polar(1.0, 2.0 * pi * theta.value()) * tf_shift(tf_shift(f, 0, 1, lat), 1, 0, lat);
        EXPECT_LT(max_abs_diff(lhs, rhs), 1e-12) << theta.to_string();
    }
}

TEST(TfShift, MatchesDenseMatrix)
{
    std::mt19937_64 rng(4);
    const LatticeSpec lat(Rational(3, 4), GridSpec(8, 12));
    const Signal f = oracle::random_signal(lat.grid(), rng);
    for (long long k : {-3, 0, 2, 17})
    {
        for (long long l : {-5, 0, 1, 7})
        {
            const Eigen::VectorXcd expected = oracle::shifted(f, lat, k, l);
            EXPECT_LT(max_abs_diff(tf_shift(f, k, l, lat), oracle::to_signal(lat.grid(), expected)), 1e-12);
        }
    }
}

TEST(TfShift, SampleShiftRequiresPeriodicModulation)
{
    const Signal f(GridSpec(4, 4));
    EXPECT_THROW(tf_shift_samples(f, 1, Rational(1, 3)), ParameterError);
    EXPECT_NO_THROW(tf_shift_samples(f, 1, Rational(1, 4)));
}

TEST(Nabla1, GaussianEnergyAtCriticalDensity)
{
    const Signal g = gaussian(GridSpec(32, 32));
    EXPECT_NEAR(norm_sq(nabla1(g, Rational(1))), pi, 1e-6);
}

TEST(Nabla1, EnergyScalesWithInverseThetaSquared)
{
    const Signal g = gaussian(GridSpec(32, 32));
    EXPECT_NEAR(norm_sq(nabla1(g, Rational(1, 2))), 4.0 * pi, 1e-5);
}

TEST(Nabla1, SecondMomentMatchesQuadrature)
{
    // ||t phi||^2 on a fine Simpson rule over the same period.
    const double moment = oracle::simpson(
        [](double t) { return t * t * std::sqrt(2.0) * std::exp(-2.0 * pi * t * t); }, -16.0, 16.0, 20000);
    const Signal g = gaussian(GridSpec(32, 32));
    EXPECT_NEAR(norm_sq(nabla1(g, Rational(1))), 4.0 * pi * pi * moment, 1e-9);
}

TEST(Nabla1, ZeroAndInvalidTheta)
{
    const Signal zero(GridSpec(8, 4));
    EXPECT_EQ(norm(nabla1(zero, Rational(1))), 0.0);
    EXPECT_THROW(nabla1(zero, Rational(0)), ParameterError);
    EXPECT_THROW(nabla1(zero, Rational(-1, 2)), ParameterError);
}

TEST(Nabla2, GaussianEnergy)
{
    const Signal g = gaussian(GridSpec(32, 32));
    EXPECT_NEAR(norm_sq(nabla2(g)), pi, 1e-6);
}

TEST(Nabla2, ConstantHasZeroDerivative)
{
    const GridSpec grid(8, 4);
    const Signal one(grid, std::vector<Complex>(grid.size(), 1.0));
    EXPECT_LT(norm(nabla2(one)), 1e-13);
}

TEST(Nabla2, ExactOnPeriodicExponentials)
{
    const GridSpec grid(32, 32);
    std::vector<Complex> values(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) values[j] = std::polar(1.0, 2.0 * pi * grid.point(j));
    const Signal f(grid, values);
    EXPECT_LT(max_abs_diff(nabla2(f), Complex(0, 2.0 * pi) * f), 1e-10);
}

TEST(Nabla2, MatchesAnalyticDerivativeOfGaussian)
{
    const GridSpec grid(32, 32);
    const Signal g = gaussian(grid);
    std::vector<Complex> expected(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) expected[j] = -2.0 * pi * grid.point(j) * g[j];
    EXPECT_LT(max_abs_diff(nabla2(g), Signal(grid, expected)), 1e-10);
}

TEST(Uncertainty, GaussianAtCriticalDensity)
{
    EXPECT_NEAR(uncertainty_product(gaussian(GridSpec(32, 32)), Rational(1)), pi * pi, 1e-4);
}

TEST(Uncertainty, ZeroSignal)
{
    EXPECT_EQ(uncertainty_product(Signal(GridSpec(8, 4)), Rational(1)), 0.0);
}
