#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace gabornc::detail
{

/// exp(2 pi i num/den), reducing num modulo den first so large arguments keep
/// full precision.
inline std::complex<double> unit_phase(std::int64_t num, std::int64_t den) noexcept
{
    num %= den;
    if (num < 0) num += den;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) noexcept
{
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace gabornc::detail
