#include "gabornc/windows.hpp"

#include "gabornc/errors.hpp"

#include <cmath>
#include <numbers>

namespace gabornc
{

namespace
{

int parse_order(std::string_view text, std::string_view name)
{
    // name(m) or name:m
    auto rest = text.substr(name.size());
    if (rest.empty()) return -1;
    if (rest.front() == '(' && rest.back() == ')')
    {
        rest = rest.substr(1, rest.size() - 2);
    }
    else if (rest.front() == ':')
    {
        rest.remove_prefix(1);
    }
    else
    {
        throw ParameterError("malformed window '" + std::string(text) + "'");
    }
    const auto value = Rational::parse(rest);
    if (!value.is_integer())
    {
        throw ParameterError("window order must be an integer in '" + std::string(text) + "'");
    }
    return static_cast<int>(value.num());
}

double binomial(int n, int k)
{
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Centered cardinal B-spline of order m, supported on [-m/2, m/2).
double bspline_value(int m, double t)
{
    if (m == 1) return (t >= -0.5 && t < 0.5) ? 1.0 : 0.0;
    double acc = 0.0;
    double factorial = 1.0;
    for (int i = 2; i < m; ++i) factorial *= i;
    for (int j = 0; j <= m; ++j)
    {
        const double x = t + 0.5 * m - j;
        if (x > 0.0) acc += ((j % 2) ? -1.0 : 1.0) * binomial(m, j) * std::pow(x, m - 1);
    }
    return acc / factorial;
}

}  // namespace

WindowSpec WindowSpec::parse(std::string_view text)
{
    WindowSpec spec;
    if (text == "gaussian")
    {
        spec.kind = WindowKind::gaussian;
    }
    else if (text == "indicator")
    {
        spec.kind = WindowKind::indicator;
    }
    else if (text.starts_with("hermite"))
    {
        spec.kind = WindowKind::hermite;
        spec.order = parse_order(text, "hermite");
        if (spec.order < 0) throw ParameterError("hermite window needs a degree m >= 0");
    }
    else if (text.starts_with("bspline"))
    {
        spec.kind = WindowKind::bspline;
        spec.order = parse_order(text, "bspline");
        if (spec.order < 1) throw ParameterError("bspline window needs an order >= 1");
    }
    else
    {
        throw ParameterError("unsupported window kind '" + std::string(text) + "'");
    }
    return spec;
}

std::string WindowSpec::to_string() const
{
    switch (kind)
    {
    case WindowKind::gaussian: return "gaussian";
    case WindowKind::indicator: return "indicator";
    case WindowKind::hermite: return "hermite(" + std::to_string(order) + ")";
    case WindowKind::bspline: return "bspline(" + std::to_string(order) + ")";
    }
    return "unknown";
}

bool WindowSpec::is_rough() const noexcept
{
    return kind == WindowKind::indicator || (kind == WindowKind::bspline && order <= 2);
}

Signal make_window(const WindowSpec& spec, const GridSpec& grid)
{
    const std::size_t n = grid.size();
    std::vector<Complex> values(n);
    const double pi = std::numbers::pi;
    const double gauss_norm = std::pow(2.0, 0.25);

    switch (spec.kind)
    {
    case WindowKind::gaussian:
        for (std::size_t j = 0; j < n; ++j)
        {
            const double t = grid.point(j);
            values[j] = gauss_norm * std::exp(-pi * t * t);
        }
        break;

    case WindowKind::indicator:
    {
        // t_j in [0,1)  <=>  0 <= 2j - n < 2s, decided in integers
        const auto two_s = 2 * static_cast<long long>(grid.samples_per_unit());
        for (std::size_t j = 0; j < n; ++j)
        {
            const long long twice = 2 * static_cast<long long>(j) - static_cast<long long>(n);
            values[j] = (twice >= 0 && twice < two_s) ? 1.0 : 0.0;
        }
        break;
    }

    case WindowKind::hermite:
    {
        if (spec.order < 0) throw ParameterError("hermite window needs a degree m >= 0");
        const double scale = std::sqrt(2.0 * pi);
        for (std::size_t j = 0; j < n; ++j)
        {
            const double t = grid.point(j);
            const double x = scale * t;
            double prev = 0.0;
            double cur = gauss_norm * std::exp(-pi * t * t);
            for (int m = 0; m < spec.order; ++m)
            {
                const double next =
                    std::sqrt(2.0 / (m + 1)) * x * cur - std::sqrt(static_cast<double>(m) / (m + 1)) * prev;
                prev = cur;
                cur = next;
            }
            values[j] = cur;
        }
        break;
    }

    case WindowKind::bspline:
    {
        if (spec.order < 1) throw ParameterError("bspline window needs an order >= 1");
        double energy = 0.0;
        for (std::size_t j = 0; j < n; ++j)
        {
            const double v = bspline_value(spec.order, grid.point(j));
            values[j] = v;
            energy += v * v;
        }
        energy *= grid.weight();
        if (energy > 0.0)
        {
            const double inv = 1.0 / std::sqrt(energy);
            for (auto& v : values) v *= inv;
        }
        break;
    }
    }
    return Signal(grid, std::move(values));
}

}  // namespace gabornc
