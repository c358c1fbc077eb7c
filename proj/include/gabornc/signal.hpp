#pragma once

#include "gabornc/rational.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gabornc
{

using Complex = std::complex<double>;

/// Uniform periodic grid on [-P/2, P/2) with s samples per unit of time.
///
/// Sample j sits at t_j = -P/2 + j/s. Every Signal on the grid has exactly
/// n = s*P samples and the quadrature weight of a sample is 1/s.
class GridSpec
{
public:
    static constexpr std::size_t max_samples = std::size_t{1} << 24;

    GridSpec(int samples_per_unit, int period_units);

    int samples_per_unit() const noexcept { return s_; }
    int period_units() const noexcept { return period_; }
    std::size_t size() const noexcept { return n_; }

    double point(std::size_t j) const noexcept
    {
        return -0.5 * period_ + static_cast<double>(j) / s_;
    }
    double weight() const noexcept { return 1.0 / s_; }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    int s_;
    int period_;
    std::size_t n_;
};

GridSpec make_grid(int samples_per_unit, int period_units);

/// Complex samples of a function on a GridSpec.
class Signal
{
public:
    /// Zero signal.
    explicit Signal(const GridSpec& grid);
    Signal(const GridSpec& grid, std::vector<Complex> values);

    const GridSpec& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const Complex> values() const noexcept { return values_; }
    Complex operator[](std::size_t j) const noexcept { return values_[j]; }

    Signal& operator+=(const Signal& other);
    Signal& operator-=(const Signal& other);
    Signal& operator*=(Complex scale);

private:
    GridSpec grid_;
    std::vector<Complex> values_;
};

Signal operator+(Signal a, const Signal& b);
Signal operator-(Signal a, const Signal& b);
Signal operator*(Complex scale, Signal a);

/// Weighted inner product (1/s) sum f_j conj(g_j), linear in the first slot.
Complex inner(const Signal& f, const Signal& g);
double norm_sq(const Signal& f);
double norm(const Signal& f);
double max_abs_diff(const Signal& f, const Signal& g);

/// Throws ShapeError unless both signals share a grid.
void require_same_grid(const GridSpec& a, const GridSpec& b, const char* context);

/// Separable lattice theta*Z x Z realized on a periodic grid.
///
/// theta = p/q with 0 < theta <= 1. A time step of theta is theta*s samples,
/// which must be an integer, and the P/theta time shifts per period must be an
/// integer count, which needs p | P. Frequency shifts repeat after s steps.
class LatticeSpec
{
public:
    LatticeSpec(Rational theta, const GridSpec& grid);

    const Rational& theta() const noexcept { return theta_; }
    const GridSpec& grid() const noexcept { return grid_; }

    /// theta*s, the time step in samples.
    std::size_t shift_step() const noexcept { return shift_step_; }
    /// P/theta lattice time positions per period.
    std::size_t time_shifts() const noexcept { return time_shifts_; }
    /// s lattice frequencies per period.
    std::size_t freq_shifts() const noexcept { return static_cast<std::size_t>(grid_.samples_per_unit()); }
    std::size_t size() const noexcept { return time_shifts_ * freq_shifts(); }

    friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;

private:
    Rational theta_;
    GridSpec grid_;
    std::size_t shift_step_;
    std::size_t time_shifts_;
};

}  // namespace gabornc
