#include "oracles.hpp"

#include "gabornc/connection.hpp"
#include "gabornc/errors.hpp"
#include "gabornc/operators.hpp"
#include "gabornc/windows.hpp"

#include <gtest/gtest.h>

using namespace gabornc;

namespace
{

const double pi = std::numbers::pi;

Signal gaussian(const GridSpec& grid) { return make_window({WindowKind::gaussian, 0}, grid); }
Signal indicator(const GridSpec& grid) { return make_window({WindowKind::indicator, 0}, grid); }

}  // namespace

TEST(CovariantDerivative, Directions)
{
    const GridSpec grid(16, 16);
    const Signal g = gaussian(grid);
    EXPECT_EQ(max_abs_diff(covariant_derivative(g, Rational(1, 2), Direction::time), nabla1(g, Rational(1, 2))),
              0.0);
    EXPECT_EQ(max_abs_diff(covariant_derivative(g, Rational(1, 2), Direction::frequency), nabla2(g)), 0.0);
    EXPECT_EQ(direction_from_index(2), Direction::frequency);
    EXPECT_THROW(direction_from_index(0), ParameterError);
}

TEST(Leibniz, DeltaIsExactForTimeDirection)
{
    const LatticeSpec lat(Rational(1, 2), GridSpec(32, 32));
    const Signal g = gaussian(lat.grid());
    for (auto [k, l] : {std::pair{1LL, 0LL}, {0LL, 1LL}, {2LL, -3LL}})
        EXPECT_LT(leibniz_residual(AlgebraElement::delta(lat.theta(), k, l), g, lat, Direction::time), 1e-10);
}

TEST(Leibniz, ZeroElement)
{
    const LatticeSpec lat(Rational(1, 2), GridSpec(16, 16));
    EXPECT_EQ(leibniz_residual(AlgebraElement(lat.theta()), gaussian(lat.grid()), lat, Direction::frequency), 0.0);
}

TEST(Leibniz, RandomElementFrequencyDirection)
{
    std::mt19937_64 rng(41);
    const LatticeSpec lat(Rational(1, 2), GridSpec(32, 32));
    const AlgebraElement a = oracle::random_element(lat.theta(), 2, rng);
    EXPECT_LT(leibniz_residual(a, gaussian(lat.grid()), lat, Direction::frequency), 1e-8);
}

TEST(Leibniz, DirectOracle)
{
    // nabla(pi(theta k, l) g) - pi(theta k, l) nabla g = 2 pi i (k or l) pi(theta k, l) g
    const LatticeSpec lat(Rational(1, 2), GridSpec(32, 32));
    const Signal g = gaussian(lat.grid());
    const long long k = 1;
    const long long l = 2;
    const Signal shifted = tf_shift(g, k, l, lat);
    const Signal d1 = nabla1(shifted, lat.theta()) - tf_shift(nabla1(g, lat.theta()), k, l, lat);
    EXPECT_LT(max_abs_diff(d1, Complex(0, 2.0 * pi * k) * shifted), 1e-9);
    const Signal d2 = nabla2(shifted) - tf_shift(nabla2(g), k, l, lat);
    EXPECT_LT(max_abs_diff(d2, Complex(0, 2.0 * pi * l) * shifted), 1e-9);
}

TEST(Hermitian, GaussianBothDirections)
{
    const LatticeSpec lat(Rational(1, 2), GridSpec(32, 32));
    const Signal g = gaussian(lat.grid());
    EXPECT_LT(hermitian_residual(g, g, lat, Direction::time, 15), 1e-8);
    EXPECT_LT(hermitian_residual(g, g, lat, Direction::frequency, 15), 1e-7);
    EXPECT_EQ(hermitian_residual(Signal(lat.grid()), g, lat, Direction::time, 15), 0.0);
}

TEST(Curvature, GaussianAtSeveralDensities)
{
    const Signal g = gaussian(GridSpec(32, 32));
    for (const Rational theta : {Rational(1), Rational(1, 2), Rational(3, 4)})
    {
        EXPECT_LT(curvature_residual(g, theta), 1e-6) << theta.to_string();
        EXPECT_LT(std::abs(curvature_constant(g, theta) - Complex(0, -2.0 * pi / theta.value())), 1e-6);
    }
}

TEST(Curvature, HermiteThree)
{
    EXPECT_LT(curvature_residual(make_window({WindowKind::hermite, 3}, GridSpec(32, 32)), Rational(1)), 1e-5);
}

TEST(Curvature, DirectCommutator)
{
    const GridSpec grid(32, 32);
    const Signal g = make_window({WindowKind::hermite, 2}, grid);
    const Rational theta(1, 2);
    const Signal commutator = nabla1(nabla2(g), theta) - nabla2(nabla1(g, theta));
    EXPECT_LT(max_abs_diff(commutator, Complex(0, -2.0 * pi / theta.value()) * g), 1e-6);
}

TEST(Curvature, IndicatorIsRough)
{
    EXPECT_GT(curvature_residual(indicator(GridSpec(32, 32)), Rational(1)), 1e-2);
}

TEST(Battle, TimeDirectionHoldsForOrthonormalBasis)
{
    const LatticeSpec lat(Rational(1), GridSpec(32, 32));
    const Signal chi = indicator(lat.grid());
    EXPECT_LT(battle_identity_check(chi, chi, lat, 2, 1, Direction::time).mismatch(), 1e-8);
    EXPECT_LT(battle_identity_check(chi, chi, lat, 0, 0, Direction::time).mismatch(), 1e-10);
}

TEST(Battle, ExchangeAgreesWithDirectInnerProducts)
{
    const LatticeSpec lat(Rational(1), GridSpec(16, 16));
    const Signal chi = indicator(lat.grid());
    const ExchangePair pair = battle_identity_check(chi, chi, lat, 1, -1, Direction::time);
    const Complex lhs = inner(nabla1(chi, lat.theta()), tf_shift(chi, 1, -1, lat));
    EXPECT_LT(std::abs(pair.lhs - lhs), 1e-12);
}

TEST(Battle, RequiresBiorthogonalPairAtCriticalDensity)
{
    const LatticeSpec half(Rational(1, 2), GridSpec(16, 16));
    const Signal g = gaussian(half.grid());
    EXPECT_THROW(battle_identity_check(g, g, half, 0, 0, Direction::time), PreconditionError);
    const LatticeSpec one(Rational(1), GridSpec(16, 16));
    const Signal chi = indicator(one.grid());
    EXPECT_THROW(battle_identity_check(chi, gaussian(one.grid()), one, 0, 0, Direction::time), PreconditionError);
}

TEST(Battle, FrequencyDirectionDoesNotConverge)
{
    const DiagnosticsTable t =
        battle_refinement({WindowKind::indicator, 0}, {32, 64, 128}, 32, 3, Direction::frequency);
    ASSERT_EQ(t.rows.size(), 3U);
    EXPECT_GT(t.residual(2, "h_nabla_sq"), 1.7 * t.residual(1, "h_nabla_sq"));
    EXPECT_EQ(t.summary_value("nonconvergent"), 1.0);
    const DiagnosticsTable time = battle_refinement({WindowKind::indicator, 0}, {32, 64}, 32, 3, Direction::time);
    EXPECT_LT(time.summary_value("max_mismatch"), 1e-8);
}

TEST(BltSweep, SingleThetaMatchesClosedForm)
{
    const DiagnosticsTable t = blt_sweep({WindowKind::gaussian, 0}, {Rational(1, 2)}, GridSpec(32, 32));
    ASSERT_EQ(t.rows.size(), 1U);
    EXPECT_NEAR(t.rows[0].u_g, pi * pi * 4.0, 1e-3);
    EXPECT_EQ(t.rows[0].status, "ok");
    EXPECT_LT(t.residual(0, "wexler_raz"), 1e-8);
}

TEST(BltSweep, CriticalDensityRowIsFlagged)
{
    const DiagnosticsTable t =
        blt_sweep({WindowKind::gaussian, 0}, {Rational(1), Rational(1, 2), Rational(3, 4)}, GridSpec(32, 32));
    ASSERT_EQ(t.rows.size(), 3U);
    EXPECT_EQ(t.rows[0].key_label, "1/2");
    EXPECT_EQ(t.rows[1].status, "invalid_lattice");  // 3 does not divide 32
    EXPECT_EQ(t.rows[2].status, "not_a_frame");
    EXPECT_LT(t.rows[2].lower, 1e-6);
    EXPECT_TRUE(std::isnan(t.rows[2].u_h));
}

TEST(BltSweep, ParallelMatchesSequential)
{
    SolverOptions parallel;
    parallel.execution = Execution::parallel;
    const std::vector<Rational> thetas = {Rational(1, 2), Rational(3, 4)};
    const DiagnosticsTable a = blt_sweep({WindowKind::gaussian, 0}, thetas, GridSpec(16, 24));
    const DiagnosticsTable b = blt_sweep({WindowKind::gaussian, 0}, thetas, GridSpec(16, 24), parallel);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i)
    {
        EXPECT_NEAR(a.rows[i].u_h, b.rows[i].u_h, 1e-9 * a.rows[i].u_h);
        EXPECT_EQ(a.rows[i].status, b.rows[i].status);
    }
}

TEST(GridDivergence, IndicatorFrequencyEnergyDoubles)
{
    const DiagnosticsTable t = grid_divergence_study({WindowKind::indicator, 0}, {32, 64, 128}, 32, Rational(1));
    ASSERT_EQ(t.rows.size(), 3U);
    for (std::size_t i = 1; i < 3; ++i)
    {
        const double ratio = t.residual(i, "nabla2_ratio");
        EXPECT_GE(ratio, 1.7);
        EXPECT_LE(ratio, 2.3);
    }
}

TEST(GridDivergence, IndicatorTimeEnergyConvergesAtFirstOrder)
{
    // The left-endpoint sum of t^2 over [0,1) has error ~ 1/(2s): successive
    // differences halve, and the limit is (2 pi)^2 / 3.
    const DiagnosticsTable t =
        grid_divergence_study({WindowKind::indicator, 0}, {32, 64, 128, 256}, 32, Rational(1));
    const double limit = 4.0 * pi * pi / 3.0;
    double previous = std::abs(t.residual(0, "nabla1_sq") - limit);
    for (std::size_t i = 1; i < t.rows.size(); ++i)
    {
        const double err = std::abs(t.residual(i, "nabla1_sq") - limit);
        EXPECT_NEAR(err / previous, 0.5, 0.02);
        previous = err;
    }
}

TEST(GridDivergence, GaussianControlsAreStable)
{
    const DiagnosticsTable t = grid_divergence_study({WindowKind::gaussian, 0}, {32, 64, 128}, 32, Rational(1));
    EXPECT_LT(t.summary_value("nabla1_max_relative_change"), 1e-8);
    EXPECT_LT(t.summary_value("nabla2_max_relative_change"), 1e-8);
}
