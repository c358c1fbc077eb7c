#pragma once

#include "gabornc/frame.hpp"
#include "gabornc/signal.hpp"

#include <vector>

namespace gabornc
{

/// Rectangle of lattice indices [k_min, k_max] x [l_min, l_max]; empty when
/// k_min > k_max or l_min > l_max.
struct SupportBox
{
    long long k_min = 0;
    long long k_max = -1;
    long long l_min = 0;
    long long l_max = -1;

    bool empty() const noexcept { return k_min > k_max || l_min > l_max; }
    std::size_t k_extent() const noexcept { return empty() ? 0 : static_cast<std::size_t>(k_max - k_min + 1); }
    std::size_t l_extent() const noexcept { return empty() ? 0 : static_cast<std::size_t>(l_max - l_min + 1); }
    bool contains(long long k, long long l) const noexcept
    {
        return !empty() && k >= k_min && k <= k_max && l >= l_min && l <= l_max;
    }

    static SupportBox square(long long radius) { return {-radius, radius, -radius, radius}; }

    friend bool operator==(const SupportBox&, const SupportBox&) = default;
};

SupportBox hull(const SupportBox& a, const SupportBox& b);

/// Element sum_{k,l} a_{kl} pi(theta k, l) of the twisted group algebra,
/// with coefficients stored densely on a finite support box.
class AlgebraElement
{
public:
    /// The zero element.
    explicit AlgebraElement(const Rational& theta);
    AlgebraElement(const Rational& theta, const SupportBox& box, std::vector<Complex> coeffs);

    static AlgebraElement delta(const Rational& theta, long long k, long long l, Complex value = 1.0);

    const Rational& theta() const noexcept { return theta_; }
    const SupportBox& box() const noexcept { return box_; }
    bool empty() const noexcept { return box_.empty(); }
    std::span<const Complex> coefficients() const noexcept { return coeffs_; }

    Complex coeff(long long k, long long l) const noexcept;
    double l1_norm() const noexcept { return l1_norm_; }

    /// Applies fn(k, l, a_kl) to every stored coefficient in row-major order.
    template <typename Fn>
    void for_each(Fn&& fn) const
    {
        std::size_t idx = 0;
        for (long long k = box_.k_min; k <= box_.k_max && !box_.empty(); ++k)
            for (long long l = box_.l_min; l <= box_.l_max; ++l) fn(k, l, coeffs_[idx++]);
    }

private:
    Rational theta_;
    SupportBox box_;
    std::vector<Complex> coeffs_;
    double l1_norm_ = 0.0;
};

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(Complex scale, const AlgebraElement& a);

/// sum |a_kl - b_kl| over the union of supports.
double l1_distance(const AlgebraElement& a, const AlgebraElement& b);

/// Twisted convolution
///     (a # b)_{uv} = sum_{k,l} a_{kl} b_{u-k, v-l} exp(-2 pi i theta k (v-l)),
/// so that pi(a # b) = pi(a) pi(b).
AlgebraElement twisted_product(const AlgebraElement& a, const AlgebraElement& b);

/// (a*)_{kl} = conj(a_{-k,-l}) exp(-2 pi i theta k l).
AlgebraElement involution(const AlgebraElement& a);

/// a . g = sum a_kl pi(theta k, l) g.
Signal act(const AlgebraElement& a, const Signal& g, const LatticeSpec& lat);

/// Coefficient multiplier 2 pi i k (direction 1) or 2 pi i l (direction 2).
AlgebraElement derivation(const AlgebraElement& a, int direction);

/// tau(a) = a_00, normalized so tau(1) = 1.
Complex trace(const AlgebraElement& a);

struct ModuleInnerProduct
{
    AlgebraElement value;
    /// l1 mass of the outermost retained shell max(|k|,|l|) = R.
    double tail = 0.0;
};

/// Coefficients <f, pi(theta k, l) g> for |k|, |l| <= radius.
///
/// The radius must stay below the lattice period in each direction
/// (radius < P/theta and radius < s); cells past half a period hold aliases,
/// which are negligible for well-localized windows and show up in the tail.
ModuleInnerProduct module_ip(const Signal& f, const Signal& g, const LatticeSpec& lat, long long radius);

/// p = module_ip(g, g) for a window whose frame is tight.
///
/// Throws PreconditionError carrying the measured bounds unless
/// |A - B| <= tightness_tolerance.
ModuleInnerProduct projection_from_tight(const Signal& g, const LatticeSpec& lat, long long radius,
                                         const SolverOptions& options = {},
                                         double tightness_tolerance = 1e-6);

struct DecayProfile
{
    /// shell_sups[N] = sup_{k,l} |a_kl| (1 + |k| + |l|)^N, ignoring coefficients at
    /// rounding level (below 16 eps ||a||_1).
    std::vector<double> shell_sups;
    /// Same weights restricted to the outermost shell of the support.
    std::vector<double> outer_shell_sups;
    double l1_norm = 0.0;
    /// l1 mass of the outermost shell.
    double l1_tail = 0.0;
    bool schwartz_like = false;
    bool l1_like = false;
};

DecayProfile decay_profile(const AlgebraElement& a, int max_exponent, double tolerance = 1e-8);

}  // namespace gabornc
