#include "gabornc/connection.hpp"

#include "detail/phase.hpp"
#include "gabornc/errors.hpp"
#include "gabornc/operators.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>

namespace gabornc
{

namespace
{

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::size_t column(const std::vector<std::string>& names, const std::string& name)
{
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ParameterError("unknown diagnostics column '" + name + "'");
    return static_cast<std::size_t>(it - names.begin());
}

DiagnosticsRow sweep_row(const WindowSpec& window, const Rational& theta, const GridSpec& grid,
                         const SolverOptions& options)
{
    DiagnosticsRow row;
    row.key = theta.value();
    row.key_label = theta.to_string();
    row.residuals.assign(2, nan);
    try
    {
        const LatticeSpec lat(theta, grid);
        const Signal g = make_window(window, grid);
        const FrameBounds bounds = frame_bounds(g, lat, options);
        row.lower = bounds.lower;
        row.upper = bounds.upper;
        row.u_g = uncertainty_product(g, theta);
        if (!is_frame(bounds, options))
        {
            row.status = "not_a_frame";
            return row;
        }
        const Signal h = dual_window(g, lat, options);
        row.u_h = uncertainty_product(h, theta);
        row.u_prod = row.u_g * row.u_h;
        row.residuals[0] = wexler_raz_check(g, h, lat);
        row.residuals[1] = norm(frame_operator_apply(h, g, lat, options.execution) - g) / norm(g);
    }
    catch (const NotAFrameError&)
    {
        row.status = "not_a_frame";
    }
    catch (const ParameterError&)
    {
        row.status = "invalid_lattice";
    }
    catch (const NumericalError&)
    {
        row.status = "solver_failed";
    }
    return row;
}

}  // namespace

Direction direction_from_index(int index)
{
    if (index == 1) return Direction::time;
    if (index == 2) return Direction::frequency;
    throw ParameterError("direction must be 1 or 2, got " + std::to_string(index));
}

Signal covariant_derivative(const Signal& f, const Rational& theta, Direction direction)
{
    return direction == Direction::time ? nabla1(f, theta) : nabla2(f);
}

double leibniz_residual(const AlgebraElement& a, const Signal& g, const LatticeSpec& lat, Direction direction)
{
    const double gn = norm(g);
    if (gn == 0.0) return 0.0;
    const Rational& theta = lat.theta();
    const Signal lhs = covariant_derivative(act(a, g, lat), theta, direction);
    const Signal rhs = act(derivation(a, static_cast<int>(direction)), g, lat) +
                       act(a, covariant_derivative(g, theta, direction), lat);
    return norm(lhs - rhs) / gn;
}

double hermitian_residual(const Signal& f, const Signal& g, const LatticeSpec& lat, Direction direction,
                          long long radius)
{
    const double scale = norm(f) * norm(g);
    if (scale == 0.0) return 0.0;
    const Rational& theta = lat.theta();
    const AlgebraElement lhs = derivation(module_ip(f, g, lat, radius).value, static_cast<int>(direction));
    const AlgebraElement rhs = module_ip(covariant_derivative(f, theta, direction), g, lat, radius).value +
                               module_ip(f, covariant_derivative(g, theta, direction), lat, radius).value;
    return l1_distance(lhs, rhs) / scale;
}

namespace
{
Signal curvature_apply(const Signal& g, const Rational& theta)
{
    return nabla1(nabla2(g), theta) - nabla2(nabla1(g, theta));
}
}  // namespace

double curvature_residual(const Signal& g, const Rational& theta)
{
    const double gn = norm(g);
    if (gn == 0.0) return 0.0;
    const Complex constant(0.0, -2.0 * std::numbers::pi / theta.value());
    return norm(curvature_apply(g, theta) - constant * g) / gn;
}

Complex curvature_constant(const Signal& g, const Rational& theta)
{
    const double energy = norm_sq(g);
    if (energy == 0.0) throw ParameterError("curvature constant of the zero signal is undefined");
    return inner(curvature_apply(g, theta), g) / energy;
}

namespace
{
ExchangePair exchange_pair(const Signal& g, const Signal& h, const LatticeSpec& lat, long long k, long long l,
                           Direction direction)
{
    const Rational& theta = lat.theta();
    // theta k l with theta = p/q
    const std::int64_t num = theta.num() * k * l;
    const std::int64_t den = theta.den();
    if (direction == Direction::time)
    {
        const Complex lhs = inner(nabla1(g, theta), tf_shift(h, k, l, lat));
        const Complex rhs =
            -detail::unit_phase(-num, den) * inner(tf_shift(g, -k, -l, lat), nabla1(h, theta));
        return {lhs, rhs};
    }
    const Complex lhs = inner(tf_shift(g, k, l, lat), nabla2(h));
    const Complex rhs = -detail::unit_phase(num, den) * inner(nabla2(g), tf_shift(h, -k, -l, lat));
    return {lhs, rhs};
}

void certify_biorthogonal(const Signal& g, const Signal& h, const LatticeSpec& lat)
{
    if (!(lat.theta() == Rational(1)))
    {
        throw PreconditionError("exchange identities need a Riesz basis, i.e. theta = 1; got theta=" +
                                lat.theta().to_string());
    }
    const double defect = wexler_raz_check(g, h, lat);
    if (defect > 1e-8)
    {
        throw PreconditionError("window pair is not biorthogonal: Wexler-Raz defect " + std::to_string(defect));
    }
}
}  // namespace

ExchangePair battle_identity_check(const Signal& g, const Signal& h, const LatticeSpec& lat, long long k,
                                   long long l, Direction direction)
{
    certify_biorthogonal(g, h, lat);
    return exchange_pair(g, h, lat, k, l, direction);
}

double DiagnosticsTable::residual(std::size_t row, const std::string& name) const
{
    return rows.at(row).residuals.at(column(residual_names, name));
}

double DiagnosticsTable::summary_value(const std::string& name) const
{
    for (const auto& [key, value] : summary)
        if (key == name) return value;
    throw ParameterError("no summary entry '" + name + "'");
}

DiagnosticsTable blt_sweep(const WindowSpec& window, const std::vector<Rational>& thetas, const GridSpec& grid,
                           const SolverOptions& options)
{
    if (thetas.empty()) throw ParameterError("blt_sweep needs at least one theta");
    std::vector<Rational> sorted = thetas;
    std::sort(sorted.begin(), sorted.end());

    DiagnosticsTable table;
    table.key_name = "theta";
    table.residual_names = {"wexler_raz", "reconstruction"};
    table.rows.resize(sorted.size());

    if (options.execution == Execution::parallel)
    {
        SolverOptions row_options = options;
        row_options.execution = Execution::sequential;
        std::vector<std::future<DiagnosticsRow>> jobs;
        for (const auto& theta : sorted)
            jobs.push_back(std::async(std::launch::async, sweep_row, window, theta, grid, row_options));
        for (std::size_t i = 0; i < jobs.size(); ++i) table.rows[i] = jobs[i].get();
    }
    else
    {
        for (std::size_t i = 0; i < sorted.size(); ++i) table.rows[i] = sweep_row(window, sorted[i], grid, options);
    }

    std::vector<double> u_h;
    for (const auto& row : table.rows)
        if (std::isfinite(row.u_h)) u_h.push_back(row.u_h);
    bool increasing = u_h.size() >= 2;
    for (std::size_t i = 1; i < u_h.size(); ++i) increasing = increasing && u_h[i] > u_h[i - 1];
    table.summary.emplace_back("u_h_strictly_increasing", increasing ? 1.0 : 0.0);
    table.summary.emplace_back("u_h_growth", u_h.size() >= 2 ? u_h.back() / u_h.front() : nan);
    return table;
}

DiagnosticsTable grid_divergence_study(const WindowSpec& window, const std::vector<int>& samples_per_unit,
                                       int period_units, const Rational& theta, const SolverOptions& options)
{
    if (samples_per_unit.empty()) throw ParameterError("grid_divergence_study needs at least one grid");
    if (!std::is_sorted(samples_per_unit.begin(), samples_per_unit.end()) ||
        std::adjacent_find(samples_per_unit.begin(), samples_per_unit.end()) != samples_per_unit.end())
    {
        throw ParameterError("grid_divergence_study needs strictly increasing s values");
    }

    DiagnosticsTable table;
    table.key_name = "s";
    table.residual_names = {"nabla1_sq", "nabla2_sq", "nabla1_ratio", "nabla2_ratio"};

    double ratio_min = std::numeric_limits<double>::infinity();
    double ratio_max = -std::numeric_limits<double>::infinity();
    double drift1 = 0.0;
    double drift2 = 0.0;
    for (std::size_t i = 0; i < samples_per_unit.size(); ++i)
    {
        const GridSpec grid(samples_per_unit[i], period_units);
        const Signal g = make_window(window, grid);
        DiagnosticsRow row;
        row.key = samples_per_unit[i];
        row.key_label = std::to_string(samples_per_unit[i]);
        const double n1 = norm_sq(nabla1(g, theta));
        const double n2 = norm_sq(nabla2(g));
        row.u_g = n1 * n2;
        row.residuals = {n1, n2, nan, nan};
        if (i > 0)
        {
            const auto& prev = table.rows.back().residuals;
            row.residuals[2] = n1 / prev[0];
            row.residuals[3] = n2 / prev[1];
            ratio_min = std::min(ratio_min, row.residuals[3]);
            ratio_max = std::max(ratio_max, row.residuals[3]);
            drift1 = std::max(drift1, std::abs(n1 - prev[0]) / prev[0]);
            drift2 = std::max(drift2, std::abs(n2 - prev[1]) / prev[1]);
        }
        try
        {
            const LatticeSpec lat(theta, grid);
            const FrameBounds bounds = frame_bounds(g, lat, options);
            row.lower = bounds.lower;
            row.upper = bounds.upper;
            if (is_frame(bounds, options))
            {
                row.u_h = uncertainty_product(dual_window(g, lat, options), theta);
                row.u_prod = row.u_g * row.u_h;
            }
            else
            {
                row.status = "not_a_frame";
            }
        }
        catch (const ParameterError&)
        {
            row.status = "invalid_lattice";
        }
        catch (const NumericalError&)
        {
            row.status = "solver_failed";
        }
        table.rows.push_back(std::move(row));
    }
    table.summary.emplace_back("nabla2_ratio_min", samples_per_unit.size() > 1 ? ratio_min : nan);
    table.summary.emplace_back("nabla2_ratio_max", samples_per_unit.size() > 1 ? ratio_max : nan);
    table.summary.emplace_back("nabla1_max_relative_change", drift1);
    table.summary.emplace_back("nabla2_max_relative_change", drift2);
    return table;
}

DiagnosticsTable battle_refinement(const WindowSpec& window, const std::vector<int>& samples_per_unit,
                                   int period_units, long long radius, Direction direction,
                                   const SolverOptions& options)
{
    if (samples_per_unit.empty()) throw ParameterError("battle_refinement needs at least one grid");
    if (radius < 0) throw ParameterError("battle_refinement needs a nonnegative radius");

    DiagnosticsTable table;
    table.key_name = "s";
    table.residual_names = {"max_mismatch", "g_nabla_sq", "h_nabla_sq", "growth_ratio"};
    const Rational theta(1);
    double worst = 0.0;
    bool nonconvergent = false;
    for (const int s : samples_per_unit)
    {
        const GridSpec grid(s, period_units);
        const LatticeSpec lat(theta, grid);
        const Signal g = make_window(window, grid);
        DiagnosticsRow row;
        row.key = s;
        row.key_label = std::to_string(s);
        row.residuals.assign(4, nan);
        try
        {
            const FrameBounds bounds = frame_bounds(g, lat, options);
            row.lower = bounds.lower;
            row.upper = bounds.upper;
            const Signal h = dual_window(g, lat, options);
            row.u_g = uncertainty_product(g, theta);
            row.u_h = uncertainty_product(h, theta);
            row.u_prod = row.u_g * row.u_h;
            certify_biorthogonal(g, h, lat);
            double mismatch = 0.0;
            for (long long k = -radius; k <= radius; ++k)
                for (long long l = -radius; l <= radius; ++l)
                    mismatch = std::max(mismatch, exchange_pair(g, h, lat, k, l, direction).mismatch());
            row.residuals[0] = mismatch;
            row.residuals[1] = norm_sq(covariant_derivative(g, theta, direction));
            row.residuals[2] = norm_sq(covariant_derivative(h, theta, direction));
            worst = std::max(worst, mismatch);
            if (!table.rows.empty() && std::isfinite(table.rows.back().residuals[1]))
            {
                const auto& prev = table.rows.back().residuals;
                row.residuals[3] = (row.residuals[1] + row.residuals[2]) / (prev[1] + prev[2]);
                if (row.residuals[3] > 1.5)
                {
                    row.status = "nonconvergent";
                    nonconvergent = true;
                }
            }
        }
        catch (const NotAFrameError&)
        {
            row.status = "not_a_frame";
        }
        catch (const PreconditionError&)
        {
            row.status = "not_biorthogonal";
        }
        table.rows.push_back(std::move(row));
    }
    table.summary.emplace_back("max_mismatch", worst);
    table.summary.emplace_back("nonconvergent", nonconvergent ? 1.0 : 0.0);
    return table;
}

}  // namespace gabornc
