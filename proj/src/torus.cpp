#include "gabornc/torus.hpp"

#include "detail/phase.hpp"
#include "gabornc/errors.hpp"
#include "gabornc/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gabornc
{

namespace
{

void require_same_theta(const Rational& a, const Rational& b, const char* context)
{
    if (!(a == b))
    {
        throw ParameterError(std::string(context) + ": theta mismatch (" + a.to_string() + " vs " + b.to_string() +
                             ")");
    }
}

long long chebyshev(long long k, long long l) { return std::max(std::llabs(k), std::llabs(l)); }

// Coefficients of an element resampled on a larger box.
std::vector<Complex> embed(const AlgebraElement& a, const SupportBox& box)
{
    std::vector<Complex> out(box.k_extent() * box.l_extent());
    a.for_each([&](long long k, long long l, Complex v) {
        out[static_cast<std::size_t>(k - box.k_min) * box.l_extent() + static_cast<std::size_t>(l - box.l_min)] = v;
    });
    return out;
}

}  // namespace

SupportBox hull(const SupportBox& a, const SupportBox& b)
{
    if (a.empty()) return b;
    if (b.empty()) return a;
    return {std::min(a.k_min, b.k_min), std::max(a.k_max, b.k_max), std::min(a.l_min, b.l_min),
            std::max(a.l_max, b.l_max)};
}

AlgebraElement::AlgebraElement(const Rational& theta) : theta_(theta) {}

AlgebraElement::AlgebraElement(const Rational& theta, const SupportBox& box, std::vector<Complex> coeffs)
    : theta_(theta), box_(box), coeffs_(std::move(coeffs))
{
    if (coeffs_.size() != box_.k_extent() * box_.l_extent())
    {
        throw ShapeError("algebra element has " + std::to_string(coeffs_.size()) +
                         " coefficients for a box of " + std::to_string(box_.k_extent() * box_.l_extent()));
    }
    if (box_.empty()) box_ = SupportBox{};
    for (const auto& v : coeffs_) l1_norm_ += std::abs(v);
}

AlgebraElement AlgebraElement::delta(const Rational& theta, long long k, long long l, Complex value)
{
    return AlgebraElement(theta, SupportBox{k, k, l, l}, {value});
}

Complex AlgebraElement::coeff(long long k, long long l) const noexcept
{
    if (!box_.contains(k, l)) return {};
    return coeffs_[static_cast<std::size_t>(k - box_.k_min) * box_.l_extent() + static_cast<std::size_t>(l - box_.l_min)];
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b)
{
    require_same_theta(a.theta(), b.theta(), "algebra addition");
    const SupportBox box = hull(a.box(), b.box());
    auto lhs = embed(a, box);
    const auto rhs = embed(b, box);
    for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] += rhs[i];
    return AlgebraElement(a.theta(), box, std::move(lhs));
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) { return a + Complex(-1.0) * b; }

AlgebraElement operator*(Complex scale, const AlgebraElement& a)
{
    std::vector<Complex> out(a.coefficients().begin(), a.coefficients().end());
    for (auto& v : out) v *= scale;
    return AlgebraElement(a.theta(), a.box(), std::move(out));
}

double l1_distance(const AlgebraElement& a, const AlgebraElement& b) { return (a - b).l1_norm(); }

AlgebraElement twisted_product(const AlgebraElement& a, const AlgebraElement& b)
{
    require_same_theta(a.theta(), b.theta(), "twisted_product");
    const Rational& theta = a.theta();
    if (a.empty() || b.empty()) return AlgebraElement(theta);

    const SupportBox& ba = a.box();
    const SupportBox& bb = b.box();
    const SupportBox box{ba.k_min + bb.k_min, ba.k_max + bb.k_max, ba.l_min + bb.l_min, ba.l_max + bb.l_max};
    const std::size_t width = box.l_extent();
    std::vector<Complex> out(box.k_extent() * width);

    const std::int64_t p = theta.num();
    const std::int64_t q = theta.den();
    std::vector<Complex> roots(static_cast<std::size_t>(q));
    for (std::int64_t r = 0; r < q; ++r) roots[static_cast<std::size_t>(r)] = detail::unit_phase(r, q);

    a.for_each([&](long long k, long long l, Complex av) {
        if (av == Complex{}) return;
        b.for_each([&](long long m, long long nn, Complex bv) {
            // pi(theta k, l) pi(theta m, nn) = exp(-2 pi i theta k nn) pi(theta(k+m), l+nn)
            const auto phase = roots[static_cast<std::size_t>(detail::floor_mod(-p * k * nn, q))];
            const auto idx = static_cast<std::size_t>(k + m - box.k_min) * width + static_cast<std::size_t>(l + nn - box.l_min);
            out[idx] += av * bv * phase;
        });
    });
    return AlgebraElement(theta, box, std::move(out));
}

AlgebraElement involution(const AlgebraElement& a)
{
    if (a.empty()) return a;
    const Rational& theta = a.theta();
    const SupportBox& src = a.box();
    const SupportBox box{-src.k_max, -src.k_min, -src.l_max, -src.l_min};
    const std::size_t width = box.l_extent();
    std::vector<Complex> out(box.k_extent() * width);
    for (long long k = box.k_min; k <= box.k_max; ++k)
    {
        for (long long l = box.l_min; l <= box.l_max; ++l)
        {
            const auto phase = detail::unit_phase(-theta.num() * k * l, theta.den());
            out[static_cast<std::size_t>(k - box.k_min) * width + static_cast<std::size_t>(l - box.l_min)] =
                std::conj(a.coeff(-k, -l)) * phase;
        }
    }
    return AlgebraElement(theta, box, std::move(out));
}

Signal act(const AlgebraElement& a, const Signal& g, const LatticeSpec& lat)
{
    require_same_theta(a.theta(), lat.theta(), "act");
    require_same_grid(g.grid(), lat.grid(), "act");
    Signal out(g.grid());
    a.for_each([&](long long k, long long l, Complex v) {
        if (v != Complex{}) out += v * tf_shift(g, k, l, lat);
    });
    return out;
}

AlgebraElement derivation(const AlgebraElement& a, int direction)
{
    if (direction != 1 && direction != 2)
    {
        throw ParameterError("derivation direction must be 1 or 2, got " + std::to_string(direction));
    }
    std::vector<Complex> out;
    out.reserve(a.coefficients().size());
    a.for_each([&](long long k, long long l, Complex v) {
        const double index = direction == 1 ? static_cast<double>(k) : static_cast<double>(l);
        out.push_back(Complex(0.0, 2.0 * std::numbers::pi * index) * v);
    });
    return AlgebraElement(a.theta(), a.box(), std::move(out));
}

Complex trace(const AlgebraElement& a) { return a.coeff(0, 0); }

ModuleInnerProduct module_ip(const Signal& f, const Signal& g, const LatticeSpec& lat, long long radius)
{
    require_same_grid(f.grid(), g.grid(), "module_ip");
    require_same_grid(f.grid(), lat.grid(), "module_ip");
    if (radius < 0 || static_cast<std::size_t>(radius) >= lat.time_shifts() ||
        static_cast<std::size_t>(radius) >= lat.freq_shifts())
    {
        throw ParameterError("truncation radius " + std::to_string(radius) +
                             " leaves the fundamental lattice block (" + std::to_string(lat.time_shifts()) + " x " +
                             std::to_string(lat.freq_shifts()) + ")");
    }
    const SupportBox box = SupportBox::square(radius);
    std::vector<Complex> coeffs;
    coeffs.reserve(box.k_extent() * box.l_extent());
    double tail = 0.0;
    for (long long k = -radius; k <= radius; ++k)
    {
        for (long long l = -radius; l <= radius; ++l)
        {
            const Complex c = inner(f, tf_shift(g, k, l, lat));
            coeffs.push_back(c);
            if (chebyshev(k, l) == radius) tail += std::abs(c);
        }
    }
    return {AlgebraElement(lat.theta(), box, std::move(coeffs)), tail};
}

ModuleInnerProduct projection_from_tight(const Signal& g, const LatticeSpec& lat, long long radius,
                                         const SolverOptions& options, double tightness_tolerance)
{
    const FrameBounds bounds = frame_bounds(g, lat, options);
    if (!(bounds.upper > 0.0) || std::abs(bounds.upper - bounds.lower) > tightness_tolerance)
    {
        throw PreconditionError("window is not tight: A=" + std::to_string(bounds.lower) +
                                    ", B=" + std::to_string(bounds.upper),
                                bounds.lower, bounds.upper);
    }
    return module_ip(g, g, lat, radius);
}

DecayProfile decay_profile(const AlgebraElement& a, int max_exponent, double tolerance)
{
    if (max_exponent < 0) throw ParameterError("decay profile needs a nonnegative exponent range");
    DecayProfile profile;
    profile.shell_sups.assign(static_cast<std::size_t>(max_exponent) + 1, 0.0);
    profile.outer_shell_sups.assign(static_cast<std::size_t>(max_exponent) + 1, 0.0);
    profile.l1_norm = a.l1_norm();

    long long outer = 0;
    a.for_each([&](long long k, long long l, Complex) { outer = std::max(outer, chebyshev(k, l)); });

    // Coefficients at rounding level carry no decay information; the
    // polynomial weights would otherwise amplify them past any tolerance.
    const double noise_floor = 16.0 * std::numeric_limits<double>::epsilon() * profile.l1_norm;

    a.for_each([&](long long k, long long l, Complex v) {
        const double raw = std::abs(v);
        const double mag = raw <= noise_floor ? 0.0 : raw;
        const double base = 1.0 + static_cast<double>(std::llabs(k) + std::llabs(l));
        const bool on_outer = chebyshev(k, l) == outer;
        if (on_outer) profile.l1_tail += raw;
        double weight = 1.0;
        for (int e = 0; e <= max_exponent; ++e)
        {
            const double value = mag * weight;
            profile.shell_sups[static_cast<std::size_t>(e)] = std::max(profile.shell_sups[static_cast<std::size_t>(e)], value);
            if (on_outer)
            {
                auto& slot = profile.outer_shell_sups[static_cast<std::size_t>(e)];
                slot = std::max(slot, value);
            }
            weight *= base;
        }
    });

    // A single-cell support has no tail to speak of.
    if (outer == 0)
    {
        profile.schwartz_like = true;
        profile.l1_like = true;
        return profile;
    }
    profile.schwartz_like = std::all_of(profile.outer_shell_sups.begin(), profile.outer_shell_sups.end(),
                                        [&](double v) { return v <= tolerance; });
    profile.l1_like = profile.l1_tail <= tolerance * std::max(profile.l1_norm, 1e-300);
    return profile;
}

}  // namespace gabornc
