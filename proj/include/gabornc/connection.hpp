#pragma once

#include "gabornc/frame.hpp"
#include "gabornc/torus.hpp"
#include "gabornc/windows.hpp"

#include <limits>
#include <string>
#include <vector>

namespace gabornc
{

/// Which covariant derivative an identity is tested with.
enum class Direction
{
    time = 1,       // nabla_1
    frequency = 2,  // nabla_2
};

Direction direction_from_index(int index);

/// nabla_1 (with theta) or nabla_2.
Signal covariant_derivative(const Signal& f, const Rational& theta, Direction direction);

/// ||nabla_i(a.g) - (d_i a).g - a.(nabla_i g)|| / ||g||.
double leibniz_residual(const AlgebraElement& a, const Signal& g, const LatticeSpec& lat, Direction direction);

/// l1 norm over |k|,|l| <= radius of d_i<f,g> - <nabla_i f, g> - <f, nabla_i g>,
/// divided by ||f|| ||g||.
double hermitian_residual(const Signal& f, const Signal& g, const LatticeSpec& lat, Direction direction,
                          long long radius);

/// ||[nabla_1, nabla_2] g + 2 pi i theta^{-1} g|| / ||g||.
double curvature_residual(const Signal& g, const Rational& theta);

/// <[nabla_1, nabla_2] g, g> / ||g||^2, which should equal -2 pi i / theta.
Complex curvature_constant(const Signal& g, const Rational& theta);

/// Two sides of an exchange identity from Battle's argument.
///
/// time:      lhs = <nabla_1 g, pi(theta k, l) h>,
///            rhs = -exp(-2 pi i theta k l) <pi(-theta k, -l) g, nabla_1 h>
/// frequency: lhs = <pi(theta k, l) g, nabla_2 h>,
///            rhs = -exp(2 pi i theta k l) <nabla_2 g, pi(-theta k, -l) h>
///
/// The sign and phase make each pair literally equal for a biorthogonal pair:
/// both derivatives are skew-adjoint and pi(z)* = exp(-2 pi i x w) pi(-z).
struct ExchangePair
{
    Complex lhs;
    Complex rhs;

    double mismatch() const { return std::abs(lhs - rhs); }
};

/// Requires theta = 1 and a Wexler-Raz defect <= 1e-8, otherwise throws
/// PreconditionError.
ExchangePair battle_identity_check(const Signal& g, const Signal& h, const LatticeSpec& lat, long long k,
                                   long long l, Direction direction);

/// One sweep row. Unavailable quantities are NaN.
struct DiagnosticsRow
{
    double key = 0.0;
    std::string key_label;
    double lower = std::numeric_limits<double>::quiet_NaN();
    double upper = std::numeric_limits<double>::quiet_NaN();
    double u_g = std::numeric_limits<double>::quiet_NaN();
    double u_h = std::numeric_limits<double>::quiet_NaN();
    double u_prod = std::numeric_limits<double>::quiet_NaN();
    /// aligned with DiagnosticsTable::residual_names
    std::vector<double> residuals;
    std::string status = "ok";
};

struct DiagnosticsTable
{
    std::string key_name;
    std::vector<std::string> residual_names;
    std::vector<DiagnosticsRow> rows;
    /// Named scalar conclusions drawn from the rows (monotonicity, growth).
    std::vector<std::pair<std::string, double>> summary;

    double residual(std::size_t row, const std::string& name) const;
    double summary_value(const std::string& name) const;
};

/// Frame bounds, uncertainty products and dual-window diagnostics per theta.
///
/// Rows whose lattice does not fit the grid or whose window is not a frame
/// are kept with a status flag. Summary entries: u_h_strictly_increasing
/// (1/0), u_h_growth (last/first finite U(h)).
DiagnosticsTable blt_sweep(const WindowSpec& window, const std::vector<Rational>& thetas, const GridSpec& grid,
                           const SolverOptions& options = {});

/// ||nabla_1 g||^2 and ||nabla_2 g||^2 under grid refinement with P fixed.
///
/// Residual columns: nabla1_sq, nabla2_sq, nabla1_ratio, nabla2_ratio (ratio
/// to the previous row, NaN on the first). Summary: min/max nabla2 ratio and
/// the largest relative change of nabla1_sq and nabla2_sq between rows.
DiagnosticsTable grid_divergence_study(const WindowSpec& window, const std::vector<int>& samples_per_unit,
                                       int period_units, const Rational& theta, const SolverOptions& options = {});

/// Battle exchange identities over |k|,|l| <= radius at theta = 1 on refined
/// grids, with h the canonical dual of the window.
///
/// Residual columns: max_mismatch, g_nabla_sq, h_nabla_sq, growth_ratio.
/// A row is flagged "nonconvergent" when the derivative energies grow by more
/// than 1.5x between refinements. Summary: max_mismatch, nonconvergent (1/0).
DiagnosticsTable battle_refinement(const WindowSpec& window, const std::vector<int>& samples_per_unit,
                                   int period_units, long long radius, Direction direction,
                                   const SolverOptions& options = {});

}  // namespace gabornc
