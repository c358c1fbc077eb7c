#pragma once

#include "gabornc/signal.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace gabornc
{

/// Analysis coefficients c_{kl} = <f, pi(theta k, l) g> over one fundamental
/// block k in [0, P/theta), l in [0, s). Indices outside the block alias back
/// into it exactly by periodicity.
class CoefficientArray
{
public:
    explicit CoefficientArray(const LatticeSpec& lat);
    CoefficientArray(const LatticeSpec& lat, std::vector<Complex> values);

    const LatticeSpec& lattice() const noexcept { return lat_; }
    std::size_t time_count() const noexcept { return lat_.time_shifts(); }
    std::size_t freq_count() const noexcept { return lat_.freq_shifts(); }
    std::size_t size() const noexcept { return values_.size(); }

    Complex operator()(std::size_t k, std::size_t l) const noexcept { return values_[k * freq_count() + l]; }
    Complex& operator()(std::size_t k, std::size_t l) noexcept { return values_[k * freq_count() + l]; }
    std::span<const Complex> values() const noexcept { return values_; }

    double l2_norm_sq() const noexcept;

private:
    LatticeSpec lat_;
    std::vector<Complex> values_;
};

struct FrameBounds
{
    double lower = 0.0;
    double upper = 0.0;
    std::string method;
    int iterations = 0;
    double residual = 0.0;
};

enum class Execution
{
    sequential,
    parallel
};

enum class BoundsMethod
{
    automatic,
    dense,
    iterative
};

struct SolverOptions
{
    double cg_tolerance = 1e-10;
    int max_iterations = 5000;
    /// A signal is treated as a frame when A >= positivity_threshold * B.
    double positivity_threshold = 1e-6;
    double eigen_tolerance = 1e-12;
    /// Largest grid handled by the dense routes.
    std::size_t dense_limit = 4096;
    Execution execution = Execution::sequential;
    BoundsMethod method = BoundsMethod::automatic;
};

CoefficientArray analysis(const Signal& f, const Signal& g, const LatticeSpec& lat);
Signal synthesis(const CoefficientArray& c, const Signal& g);

/// S f = sum_{k,l} <f, pi g> pi g, matrix-free over the lattice block.
Signal frame_operator_apply(const Signal& f, const Signal& g, const LatticeSpec& lat,
                            Execution execution = Execution::sequential);

/// The frame operator restricted to samples j = r (mod s).
///
/// Modulations by integers average out every entry S_{jm} with j != m (mod s),
/// so after permuting samples by residue S is block diagonal with s Hermitian
/// P x P blocks. Block r has indices j = r + s*i, i = 0..P-1.
std::vector<Eigen::MatrixXcd> frame_operator_blocks(const Signal& g, const LatticeSpec& lat);

FrameBounds frame_bounds(const Signal& g, const LatticeSpec& lat, const SolverOptions& options = {});

/// True when bounds.lower >= threshold * bounds.upper and upper > 0.
bool is_frame(const FrameBounds& bounds, const SolverOptions& options = {});

/// Canonical dual h = S^{-1} g by conjugate gradients on S.
Signal dual_window(const Signal& g, const LatticeSpec& lat, const SolverOptions& options = {});

/// Canonical tight window S^{-1/2} g; its frame bounds are A = B = 1.
Signal tight_window(const Signal& g, const LatticeSpec& lat, const SolverOptions& options = {});

/// max over the adjoint lattice Z x theta^{-1} Z of
/// |theta^{-1} <h, pi(m, n/theta) g> - delta_{m0} delta_{n0}|.
double wexler_raz_check(const Signal& g, const Signal& h, const LatticeSpec& lat);

namespace detail
{
/// Newton-Schulz iteration for A^{-1/2} of a Hermitian positive definite matrix.
Eigen::MatrixXcd inverse_sqrt_newton_schulz(const Eigen::MatrixXcd& a, double tolerance, int max_iterations,
                                            int* iterations = nullptr);
}

}  // namespace gabornc
