#include "gabornc/signal.hpp"

#include "gabornc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gabornc
{

GridSpec::GridSpec(int samples_per_unit, int period_units)
    : s_(samples_per_unit), period_(period_units), n_(0)
{
    if (samples_per_unit < 1 || period_units < 1)
    {
        throw ParameterError("grid needs s >= 1 and P >= 1, got s=" + std::to_string(samples_per_unit) +
                             ", P=" + std::to_string(period_units));
    }
    const auto n = static_cast<unsigned long long>(samples_per_unit) *
                   static_cast<unsigned long long>(period_units);
    if (n > max_samples)
    {
        throw SizeError("grid of " + std::to_string(n) + " samples exceeds the maximum of " +
                        std::to_string(max_samples));
    }
    n_ = static_cast<std::size_t>(n);
}

GridSpec make_grid(int samples_per_unit, int period_units)
{
    return GridSpec(samples_per_unit, period_units);
}

Signal::Signal(const GridSpec& grid) : grid_(grid), values_(grid.size()) {}

Signal::Signal(const GridSpec& grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values))
{
    if (values_.size() != grid_.size())
    {
        throw ShapeError("signal has " + std::to_string(values_.size()) + " samples, grid expects " +
                         std::to_string(grid_.size()));
    }
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* context)
{
    if (!(a == b))
    {
        throw ShapeError(std::string(context) + ": operands live on different grids");
    }
}

Signal& Signal::operator+=(const Signal& other)
{
    require_same_grid(grid_, other.grid_, "signal addition");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
    return *this;
}

Signal& Signal::operator-=(const Signal& other)
{
    require_same_grid(grid_, other.grid_, "signal subtraction");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
    return *this;
}

Signal& Signal::operator*=(Complex scale)
{
    for (auto& v : values_) v *= scale;
    return *this;
}

Signal operator+(Signal a, const Signal& b) { return a += b; }
Signal operator-(Signal a, const Signal& b) { return a -= b; }
Signal operator*(Complex scale, Signal a) { return a *= scale; }

Complex inner(const Signal& f, const Signal& g)
{
    require_same_grid(f.grid(), g.grid(), "inner product");
    Complex acc{};
    const auto fv = f.values();
    const auto gv = g.values();
    for (std::size_t j = 0; j < fv.size(); ++j) acc += fv[j] * std::conj(gv[j]);
    return acc * f.grid().weight();
}

double norm_sq(const Signal& f)
{
    double acc = 0.0;
    for (const auto& v : f.values()) acc += std::norm(v);
    return acc * f.grid().weight();
}

double norm(const Signal& f) { return std::sqrt(norm_sq(f)); }

double max_abs_diff(const Signal& f, const Signal& g)
{
    require_same_grid(f.grid(), g.grid(), "max_abs_diff");
    double worst = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) worst = std::max(worst, std::abs(f[j] - g[j]));
    return worst;
}

LatticeSpec::LatticeSpec(Rational theta, const GridSpec& grid)
    : theta_(theta), grid_(grid), shift_step_(0), time_shifts_(0)
{
    if (theta.num() <= 0 || theta.num() > theta.den())
    {
        throw ParameterError("lattice parameter theta must satisfy 0 < theta <= 1, got " +
                             theta.to_string());
    }
    const auto s = static_cast<std::int64_t>(grid.samples_per_unit());
    const auto period = static_cast<std::int64_t>(grid.period_units());
    if ((theta.num() * s) % theta.den() != 0)
    {
        throw ParameterError("theta*s must be an integer: theta=" + theta.to_string() +
                             ", s=" + std::to_string(s) + " (s must be divisible by " +
                             std::to_string(theta.den()) + ")");
    }
    if (period % theta.num() != 0)
    {
        throw ParameterError("P/theta must be an integer: theta=" + theta.to_string() +
                             ", P=" + std::to_string(period) + " (P must be divisible by " +
                             std::to_string(theta.num()) + ")");
    }
    shift_step_ = static_cast<std::size_t>(theta.num() * s / theta.den());
    time_shifts_ = static_cast<std::size_t>(period / theta.num() * theta.den());
}

}  // namespace gabornc
