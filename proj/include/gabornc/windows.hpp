#pragma once

#include "gabornc/signal.hpp"

#include <string>
#include <string_view>

namespace gabornc
{

enum class WindowKind
{
    gaussian,
    indicator,
    hermite,
    bspline
};

struct WindowSpec
{
    WindowKind kind = WindowKind::gaussian;
    /// Hermite degree or B-spline order; ignored by the other kinds.
    int order = 0;

    /// "gaussian", "indicator", "hermite(m)", "bspline(k)".
    static WindowSpec parse(std::string_view text);
    std::string to_string() const;

    /// Windows with a jump or kink, for which derivative identities degrade.
    bool is_rough() const noexcept;
};

/// Samples the window on the grid.
///
/// gaussian: 2^{1/4} exp(-pi t^2); hermite(m): the L2-normalized Hermite
/// functions built on that Gaussian (hermite(0) is the Gaussian); indicator:
/// the characteristic function of [0,1); bspline(k): the centered cardinal
/// B-spline of order k, normalized on the grid. The first three carry their
/// analytic normalization.
Signal make_window(const WindowSpec& spec, const GridSpec& grid);

}  // namespace gabornc
