#include "gabornc/operators.hpp"

#include "detail/phase.hpp"
#include "gabornc/errors.hpp"

#include <fftw3.h>

#include <mutex>
#include <numbers>

namespace gabornc
{

namespace
{

// FFTW's planner is not reentrant.
std::mutex planner_mutex;

Signal shift_modulate(const Signal& f, long long shift, std::int64_t freq_num, std::int64_t freq_den)
{
    const GridSpec& grid = f.grid();
    const auto n = static_cast<std::int64_t>(grid.size());
    const std::int64_t phase_den = 2 * freq_den * grid.samples_per_unit();
    const std::int64_t offset = detail::floor_mod(shift, n);
    const auto in = f.values();
    std::vector<Complex> out(grid.size());
    for (std::int64_t j = 0; j < n; ++j)
    {
        // w t_j = a (2j - n) / (2 b s)
        const std::int64_t phase_num = detail::floor_mod(freq_num * (2 * j - n), phase_den);
        std::int64_t src = j - offset;
        if (src < 0) src += n;
        out[j] = detail::unit_phase(phase_num, phase_den) * in[src];
    }
    return Signal(grid, std::move(out));
}

}  // namespace

Signal tf_shift(const Signal& f, long long k, long long l, const LatticeSpec& lat)
{
    require_same_grid(f.grid(), lat.grid(), "tf_shift");
    const auto shift = static_cast<long long>(lat.shift_step()) * k;
    return shift_modulate(f, shift, l, 1);
}

Signal tf_shift_samples(const Signal& f, long long shift_samples, const Rational& frequency)
{
    if ((frequency.num() * f.grid().period_units()) % frequency.den() != 0)
    {
        throw ParameterError("modulation frequency " + frequency.to_string() +
                             " is not periodic on a grid of period " +
                             std::to_string(f.grid().period_units()));
    }
    return shift_modulate(f, shift_samples, frequency.num(), frequency.den());
}

Signal nabla1(const Signal& f, const Rational& theta)
{
    if (theta.num() <= 0)
    {
        throw ParameterError("nabla1 needs theta > 0, got " + theta.to_string());
    }
    const GridSpec& grid = f.grid();
    const Complex factor(0.0, 2.0 * std::numbers::pi / theta.value());
    std::vector<Complex> out(grid.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = factor * grid.point(j) * f[j];
    return Signal(grid, std::move(out));
}

Signal nabla2(const Signal& f)
{
    const GridSpec& grid = f.grid();
    const std::size_t n = grid.size();
    std::vector<Complex> buffer(f.values().begin(), f.values().end());
    auto* data = reinterpret_cast<fftw_complex*>(buffer.data());

    fftw_plan forward;
    fftw_plan backward;
    {
        std::lock_guard lock(planner_mutex);
        forward = fftw_plan_dft_1d(static_cast<int>(n), data, data, FFTW_FORWARD, FFTW_ESTIMATE);
        backward = fftw_plan_dft_1d(static_cast<int>(n), data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(forward);

    // Mode m carries frequency m/P with m taken in (-n/2, n/2); the Nyquist
    // mode of an even-length grid gets multiplier zero.
    const double period = grid.period_units();
    const double scale = 2.0 * std::numbers::pi / period / static_cast<double>(n);
    for (std::size_t m = 0; m < n; ++m)
    {
        double centered;
        if (2 * m < n)
            centered = static_cast<double>(m);
        else if (2 * m == n)
            centered = 0.0;
        else
            centered = static_cast<double>(m) - static_cast<double>(n);
        buffer[m] *= Complex(0.0, scale * centered);
    }

    fftw_execute(backward);
    {
        std::lock_guard lock(planner_mutex);
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
    }
    return Signal(grid, std::move(buffer));
}

double uncertainty_product(const Signal& g, const Rational& theta)
{
    return norm_sq(nabla1(g, theta)) * norm_sq(nabla2(g));
}

}  // namespace gabornc
