#pragma once

#include "gabornc/signal.hpp"

namespace gabornc
{

/// Time-frequency shift pi(theta*k, l) f.
///
/// (pi(x, w) f)(t) = exp(2 pi i w t) f(t - x). On the grid this is a circular
/// shift by theta*k*s samples followed by the modulation exp(2 pi i l t_j), so
/// the operator is exactly unitary and
///     pi(theta k, l) pi(theta m, n) = exp(-2 pi i theta k n) pi(theta (k+m), l+n).
/// That phase is the single convention every other module builds on.
Signal tf_shift(const Signal& f, long long k, long long l, const LatticeSpec& lat);

/// pi(x, w) f for a time shift of a whole number of samples and a rational
/// frequency w. Throws ParameterError when w*P is not an integer, since the
/// modulation would then not be periodic on the grid.
Signal tf_shift_samples(const Signal& f, long long shift_samples, const Rational& frequency);

/// (nabla_1 f)(t) = 2 pi i theta^{-1} t f(t).
Signal nabla1(const Signal& f, const Rational& theta);

/// (nabla_2 f)(t) = f'(t), computed spectrally with the Nyquist mode zeroed.
Signal nabla2(const Signal& f);

/// ||nabla_1 g||^2 * ||nabla_2 g||^2.
double uncertainty_product(const Signal& g, const Rational& theta);

}  // namespace gabornc
