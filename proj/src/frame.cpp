#include "gabornc/frame.hpp"

#include "detail/phase.hpp"
#include "gabornc/errors.hpp"
#include "gabornc/operators.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace gabornc
{

namespace
{

using Vector = std::vector<Complex>;

// E[l][r] = exp(2 pi i l t_r) for l, r in [0, s). Modulation by l depends on
// the sample index only through r = j mod s.
class ModulationTable
{
public:
    explicit ModulationTable(const GridSpec& grid) : s_(static_cast<std::size_t>(grid.samples_per_unit()))
    {
        const auto n = static_cast<std::int64_t>(grid.size());
        const auto two_s = 2 * static_cast<std::int64_t>(s_);
        table_.resize(s_ * s_);
        for (std::size_t l = 0; l < s_; ++l)
        {
            for (std::size_t r = 0; r < s_; ++r)
            {
                const auto num = static_cast<std::int64_t>(l) * (2 * static_cast<std::int64_t>(r) - n);
                table_[l * s_ + r] = detail::unit_phase(num, two_s);
            }
        }
    }

    Complex operator()(std::size_t l, std::size_t r) const noexcept { return table_[l * s_ + r]; }

private:
    std::size_t s_;
    Vector table_;
};

// Coefficients <f, pi(theta k, l) g> for one k, written to out[0..s).
void analyze_row(std::span<const Complex> f, std::span<const Complex> g, std::size_t shift,
                 const ModulationTable& table, std::size_t s, double weight, Complex* out, Vector& fold)
{
    const std::size_t n = f.size();
    std::fill(fold.begin(), fold.end(), Complex{});
    // n is a multiple of s, so j and j + s share a residue; walk j in runs of
    // s and split the source index where it wraps around the period.
    std::size_t src = (n - shift) % n;
    for (std::size_t base = 0; base < n; base += s)
    {
        for (std::size_t r = 0; r < s; ++r)
        {
            fold[r] += f[base + r] * std::conj(g[src]);
            if (++src == n) src = 0;
        }
    }
    for (std::size_t l = 0; l < s; ++l)
    {
        Complex acc{};
        for (std::size_t r = 0; r < s; ++r) acc += fold[r] * std::conj(table(l, r));
        out[l] = acc * weight;
    }
}

// out += sum_l c_l pi(theta k, l) g for one k.
void synthesize_row(const Complex* coeffs, std::span<const Complex> g, std::size_t shift,
                    const ModulationTable& table, std::size_t s, std::span<Complex> out, Vector& combined)
{
    const std::size_t n = g.size();
    for (std::size_t r = 0; r < s; ++r)
    {
        Complex acc{};
        for (std::size_t l = 0; l < s; ++l) acc += coeffs[l] * table(l, r);
        combined[r] = acc;
    }
    std::size_t src = (n - shift) % n;
    for (std::size_t base = 0; base < n; base += s)
    {
        for (std::size_t r = 0; r < s; ++r)
        {
            out[base + r] += g[src] * combined[r];
            if (++src == n) src = 0;
        }
    }
}

// Sum over the time shifts k in [begin, end) of the frame operator terms.
void apply_range(std::span<const Complex> f, std::span<const Complex> g, const LatticeSpec& lat,
                 const ModulationTable& table, std::size_t begin, std::size_t end, std::span<Complex> out)
{
    const std::size_t s = lat.freq_shifts();
    const double weight = lat.grid().weight();
    Vector fold(s);
    Vector coeffs(s);
    Vector combined(s);
    for (std::size_t k = begin; k < end; ++k)
    {
        const std::size_t shift = (k * lat.shift_step()) % f.size();
        analyze_row(f, g, shift, table, s, weight, coeffs.data(), fold);
        synthesize_row(coeffs.data(), g, shift, table, s, out, combined);
    }
}

Vector apply_operator(std::span<const Complex> f, std::span<const Complex> g, const LatticeSpec& lat,
                      const ModulationTable& table, Execution execution)
{
    const std::size_t n = f.size();
    const std::size_t shifts = lat.time_shifts();
    Vector out(n);
    if (execution == Execution::sequential || shifts < 2)
    {
        apply_range(f, g, lat, table, 0, shifts, out);
        return out;
    }

    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::min<std::size_t>(shifts, 16));
    std::vector<Vector> partial(workers, Vector(n));
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
    {
        const std::size_t begin = shifts * w / workers;
        const std::size_t end = shifts * (w + 1) / workers;
        threads.emplace_back([&, w, begin, end] { apply_range(f, g, lat, table, begin, end, partial[w]); });
    }
    for (auto& t : threads) t.join();
    // fixed reduction order regardless of completion order
    for (const auto& p : partial)
        for (std::size_t j = 0; j < n; ++j) out[j] += p[j];
    return out;
}

double euclid_norm(const Vector& v)
{
    double acc = 0.0;
    for (const auto& x : v) acc += std::norm(x);
    return std::sqrt(acc);
}

Complex euclid_dot(const Vector& a, const Vector& b)
{
    Complex acc{};
    for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * std::conj(b[j]);
    return acc;
}

Vector start_vector(std::size_t n)
{
    std::mt19937_64 rng(0x5eedULL);
    Vector v(n);
    const double scale = 1.0 / static_cast<double>(std::mt19937_64::max());
    for (auto& x : v)
    {
        const double re = static_cast<double>(rng()) * scale - 0.5;
        const double im = static_cast<double>(rng()) * scale - 0.5;
        x = {re, im};
    }
    const double nv = euclid_norm(v);
    for (auto& x : v) x /= nv;
    return v;
}

bool use_dense(const GridSpec& grid, const SolverOptions& options)
{
    switch (options.method)
    {
    case BoundsMethod::dense: return true;
    case BoundsMethod::iterative: return false;
    case BoundsMethod::automatic: break;
    }
    return grid.size() <= options.dense_limit;
}

FrameBounds dense_bounds(const Signal& g, const LatticeSpec& lat)
{
    const auto blocks = frame_operator_blocks(g, lat);
    double lower = std::numeric_limits<double>::infinity();
    double upper = -std::numeric_limits<double>::infinity();
    double residual = 0.0;
    for (const auto& block : blocks)
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block);
        const auto& values = solver.eigenvalues();
        const auto& vectors = solver.eigenvectors();
        const Eigen::Index last = values.size() - 1;
        lower = std::min(lower, values(0));
        upper = std::max(upper, values(last));
        residual = std::max(residual, (block * vectors.col(0) - values(0) * vectors.col(0)).norm());
        residual = std::max(residual, (block * vectors.col(last) - values(last) * vectors.col(last)).norm());
    }
    return FrameBounds{std::max(lower, 0.0), std::max(upper, 0.0), "dense", 0, residual};
}

// Lanczos iteration (power iteration accelerated on its Krylov space) with
// full reorthogonalization. Both extreme Ritz values come out of one run;
// the iteration stops once the residual bound |beta_k y_k| of each extreme
// Ritz pair drops below eigen_tolerance * B.
FrameBounds iterative_bounds(const Signal& g, const LatticeSpec& lat, const SolverOptions& options)
{
    const ModulationTable table(lat.grid());
    const std::size_t n = g.size();
    const auto max_steps = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(options.max_iterations, 1)));

    std::vector<Vector> basis;
    basis.push_back(start_vector(n));
    std::vector<double> alpha;
    std::vector<double> beta;
    Eigen::VectorXd ritz_top;
    double lower = 0.0;
    double upper = 0.0;
    double residual = 0.0;

    for (std::size_t k = 0; k < max_steps; ++k)
    {
        const Vector& q = basis.back();
        Vector w = apply_operator(q, g.values(), lat, table, options.execution);
        alpha.push_back(euclid_dot(w, q).real());
        for (int pass = 0; pass < 2; ++pass)
        {
            for (const auto& b : basis)
            {
                const Complex c = euclid_dot(w, b);
                for (std::size_t j = 0; j < n; ++j) w[j] -= c * b[j];
            }
        }
        const double next_beta = euclid_norm(w);
        const auto m = static_cast<Eigen::Index>(alpha.size());
        const bool last_step = k + 1 == max_steps;
        const bool check = m <= 32 || m % 16 == 0 || last_step ||
                           next_beta <= options.eigen_tolerance * std::max(std::abs(upper), 1.0);
        if (!check)
        {
            beta.push_back(next_beta);
            for (auto& x : w) x /= next_beta;
            basis.push_back(std::move(w));
            continue;
        }

        Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
        Eigen::VectorXd sub = m > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(beta.data(), m - 1))
                                    : Eigen::VectorXd(0);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        const auto& values = tri.eigenvalues();
        const auto& vectors = tri.eigenvectors();
        lower = values(0);
        upper = values(m - 1);
        residual = next_beta * std::max(std::abs(vectors(m - 1, 0)), std::abs(vectors(m - 1, m - 1)));
        ritz_top = vectors.col(m - 1);

        const double scale = std::max(std::abs(upper), std::numeric_limits<double>::min());
        if (next_beta <= options.eigen_tolerance * scale || residual <= options.eigen_tolerance * scale)
        {
            return FrameBounds{std::max(lower, 0.0), std::max(upper, 0.0), "iterative", static_cast<int>(k + 1),
                               residual};
        }
        beta.push_back(next_beta);
        for (auto& x : w) x /= next_beta;
        basis.push_back(std::move(w));
    }

    std::vector<Complex> last(n);
    for (Eigen::Index i = 0; i < ritz_top.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) last[j] += ritz_top(i) * basis[static_cast<std::size_t>(i)][j];
    throw NumericalError("Lanczos iteration did not settle after " + std::to_string(max_steps) +
                             " steps (residual " + std::to_string(residual) + ")",
                         std::move(last), residual);
}

void require_frame(const FrameBounds& bounds, const SolverOptions& options)
{
    if (!is_frame(bounds, options))
    {
        throw NotAFrameError("window does not generate a frame: A=" + std::to_string(bounds.lower) +
                                 ", B=" + std::to_string(bounds.upper),
                             bounds.lower, bounds.upper);
    }
}

std::vector<Eigen::VectorXcd> split_by_residue(const Signal& f)
{
    const auto s = static_cast<std::size_t>(f.grid().samples_per_unit());
    const auto period = static_cast<std::size_t>(f.grid().period_units());
    std::vector<Eigen::VectorXcd> parts(s, Eigen::VectorXcd(static_cast<Eigen::Index>(period)));
    for (std::size_t r = 0; r < s; ++r)
        for (std::size_t i = 0; i < period; ++i) parts[r](static_cast<Eigen::Index>(i)) = f[r + s * i];
    return parts;
}

Signal join_by_residue(const GridSpec& grid, const std::vector<Eigen::VectorXcd>& parts)
{
    const auto s = static_cast<std::size_t>(grid.samples_per_unit());
    const auto period = static_cast<std::size_t>(grid.period_units());
    std::vector<Complex> out(grid.size());
    for (std::size_t r = 0; r < s; ++r)
        for (std::size_t i = 0; i < period; ++i) out[r + s * i] = parts[r](static_cast<Eigen::Index>(i));
    return Signal(grid, std::move(out));
}

}  // namespace

CoefficientArray::CoefficientArray(const LatticeSpec& lat) : lat_(lat), values_(lat.size()) {}

CoefficientArray::CoefficientArray(const LatticeSpec& lat, std::vector<Complex> values)
    : lat_(lat), values_(std::move(values))
{
    if (values_.size() != lat_.size())
    {
        throw ShapeError("coefficient array has " + std::to_string(values_.size()) + " entries, lattice block has " +
                         std::to_string(lat_.size()));
    }
}

double CoefficientArray::l2_norm_sq() const noexcept
{
    double acc = 0.0;
    for (const auto& v : values_) acc += std::norm(v);
    return acc;
}

CoefficientArray analysis(const Signal& f, const Signal& g, const LatticeSpec& lat)
{
    require_same_grid(f.grid(), g.grid(), "analysis");
    require_same_grid(f.grid(), lat.grid(), "analysis");
    const ModulationTable table(lat.grid());
    const std::size_t s = lat.freq_shifts();
    CoefficientArray out(lat);
    Vector fold(s);
    Vector row(s);
    for (std::size_t k = 0; k < lat.time_shifts(); ++k)
    {
        const std::size_t shift = (k * lat.shift_step()) % f.size();
        analyze_row(f.values(), g.values(), shift, table, s, lat.grid().weight(), row.data(), fold);
        for (std::size_t l = 0; l < s; ++l) out(k, l) = row[l];
    }
    return out;
}

Signal synthesis(const CoefficientArray& c, const Signal& g)
{
    const LatticeSpec& lat = c.lattice();
    require_same_grid(g.grid(), lat.grid(), "synthesis");
    const ModulationTable table(lat.grid());
    const std::size_t s = lat.freq_shifts();
    Vector out(g.size());
    Vector combined(s);
    for (std::size_t k = 0; k < lat.time_shifts(); ++k)
    {
        const std::size_t shift = (k * lat.shift_step()) % g.size();
        synthesize_row(&c.values()[k * s], g.values(), shift, table, s, out, combined);
    }
    return Signal(g.grid(), std::move(out));
}

Signal frame_operator_apply(const Signal& f, const Signal& g, const LatticeSpec& lat, Execution execution)
{
    require_same_grid(f.grid(), g.grid(), "frame_operator_apply");
    require_same_grid(f.grid(), lat.grid(), "frame_operator_apply");
    const ModulationTable table(lat.grid());
    return Signal(f.grid(), apply_operator(f.values(), g.values(), lat, table, execution));
}

std::vector<Eigen::MatrixXcd> frame_operator_blocks(const Signal& g, const LatticeSpec& lat)
{
    require_same_grid(g.grid(), lat.grid(), "frame_operator_blocks");
    const std::size_t n = g.size();
    const std::size_t s = lat.freq_shifts();
    const auto period = static_cast<Eigen::Index>(lat.grid().period_units());
    const auto shifts = static_cast<Eigen::Index>(lat.time_shifts());
    std::vector<Eigen::MatrixXcd> blocks;
    blocks.reserve(s);
    Eigen::MatrixXcd shifted(shifts, period);
    for (std::size_t r = 0; r < s; ++r)
    {
        for (Eigen::Index k = 0; k < shifts; ++k)
        {
            const std::size_t shift = (static_cast<std::size_t>(k) * lat.shift_step()) % n;
            for (Eigen::Index i = 0; i < period; ++i)
            {
                const std::size_t j = r + s * static_cast<std::size_t>(i);
                shifted(k, i) = g[(j + n - shift) % n];
            }
        }
        // S_{ii'} = sum_k g(t_i - theta k) conj(g(t_i' - theta k))
        blocks.emplace_back(shifted.transpose() * shifted.conjugate());
    }
    return blocks;
}

FrameBounds frame_bounds(const Signal& g, const LatticeSpec& lat, const SolverOptions& options)
{
    require_same_grid(g.grid(), lat.grid(), "frame_bounds");
    if (use_dense(lat.grid(), options)) return dense_bounds(g, lat);
    return iterative_bounds(g, lat, options);
}

bool is_frame(const FrameBounds& bounds, const SolverOptions& options)
{
    return bounds.upper > 0.0 && bounds.lower >= options.positivity_threshold * bounds.upper;
}

Signal dual_window(const Signal& g, const LatticeSpec& lat, const SolverOptions& options)
{
    require_frame(frame_bounds(g, lat, options), options);

    const ModulationTable table(lat.grid());
    const std::size_t n = g.size();
    const Vector rhs(g.values().begin(), g.values().end());
    const double rhs_norm = euclid_norm(rhs);

    Vector x(n);
    Vector r = rhs;
    Vector p = r;
    double rr = euclid_dot(r, r).real();
    for (int it = 0; it < options.max_iterations; ++it)
    {
        if (std::sqrt(rr) <= options.cg_tolerance * rhs_norm) return Signal(g.grid(), std::move(x));
        const Vector sp = apply_operator(p, g.values(), lat, table, options.execution);
        const double alpha = rr / euclid_dot(sp, p).real();
        for (std::size_t j = 0; j < n; ++j)
        {
            x[j] += alpha * p[j];
            r[j] -= alpha * sp[j];
        }
        const double rr_next = euclid_dot(r, r).real();
        const double beta = rr_next / rr;
        rr = rr_next;
        for (std::size_t j = 0; j < n; ++j) p[j] = r[j] + beta * p[j];
    }
    if (std::sqrt(rr) <= options.cg_tolerance * rhs_norm) return Signal(g.grid(), std::move(x));
    throw NumericalError("conjugate gradients did not converge in " + std::to_string(options.max_iterations) +
                             " iterations",
                         std::move(x), std::sqrt(rr) / rhs_norm);
}

Signal tight_window(const Signal& g, const LatticeSpec& lat, const SolverOptions& options)
{
    const FrameBounds bounds = frame_bounds(g, lat, options);
    require_frame(bounds, options);

    const auto blocks = frame_operator_blocks(g, lat);
    auto parts = split_by_residue(g);
    const bool dense = use_dense(lat.grid(), options);
    for (std::size_t r = 0; r < blocks.size(); ++r)
    {
        if (dense)
        {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(blocks[r]);
            const Eigen::VectorXd scale = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().cwiseInverse();
            const auto& v = solver.eigenvectors();
            parts[r] = v * (scale.asDiagonal() * (v.adjoint() * parts[r]));
        }
        else
        {
            parts[r] = detail::inverse_sqrt_newton_schulz(blocks[r], options.eigen_tolerance, 200) * parts[r];
        }
    }
    return join_by_residue(g.grid(), parts);
}

double wexler_raz_check(const Signal& g, const Signal& h, const LatticeSpec& lat)
{
    require_same_grid(g.grid(), h.grid(), "wexler_raz_check");
    require_same_grid(g.grid(), lat.grid(), "wexler_raz_check");
    const GridSpec& grid = lat.grid();
    const Rational& theta = lat.theta();
    const auto n = static_cast<std::int64_t>(grid.size());
    const std::int64_t s = grid.samples_per_unit();
    const std::int64_t period = grid.period_units();
    // adjoint frequencies nn/theta = nn q/p for nn in [0, theta s)
    const std::int64_t freq_count = static_cast<std::int64_t>(lat.shift_step());
    if ((theta.den() * period) % theta.num() != 0)
    {
        throw ParameterError("adjoint lattice frequency 1/theta is not periodic on the grid");
    }

    const double inv_theta = 1.0 / theta.value();
    const double weight = grid.weight();
    const auto hv = h.values();
    const auto gv = g.values();
    Vector modulated(static_cast<std::size_t>(n));
    double worst = 0.0;
    for (std::int64_t nn = 0; nn < freq_count; ++nn)
    {
        const std::int64_t phase_den = 2 * theta.num() * s;
        for (std::int64_t j = 0; j < n; ++j)
        {
            const std::int64_t num = detail::floor_mod(nn * theta.den() * (2 * j - n), phase_den);
            modulated[static_cast<std::size_t>(j)] = detail::unit_phase(num, phase_den);
        }
        for (std::int64_t m = 0; m < period; ++m)
        {
            const std::int64_t shift = m * s;
            Complex acc{};
            for (std::int64_t j = 0; j < n; ++j)
            {
                const std::int64_t src = detail::floor_mod(j - shift, n);
                acc += hv[static_cast<std::size_t>(j)] *
                       std::conj(modulated[static_cast<std::size_t>(j)] * gv[static_cast<std::size_t>(src)]);
            }
            Complex defect = inv_theta * weight * acc;
            if (m == 0 && nn == 0) defect -= 1.0;
            worst = std::max(worst, std::abs(defect));
        }
    }
    return worst;
}

namespace detail
{

Eigen::MatrixXcd inverse_sqrt_newton_schulz(const Eigen::MatrixXcd& a, double tolerance, int max_iterations,
                                            int* iterations)
{
    const Eigen::Index size = a.rows();
    const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(size, size);
    // Any norm bounding the spectral radius keeps the spectrum of a/c in (0, 1].
    const double c = a.cwiseAbs().rowwise().sum().maxCoeff();
    if (c == 0.0) throw NumericalError("Newton-Schulz on a zero matrix", {}, 0.0);

    Eigen::MatrixXcd y = a / c;
    Eigen::MatrixXcd z = identity;
    double defect = (z * y - identity).cwiseAbs().maxCoeff();
    int it = 0;
    while (it < max_iterations && defect > tolerance)
    {
        const Eigen::MatrixXcd t = 0.5 * (3.0 * identity - z * y);
        y = (y * t).eval();
        z = (t * z).eval();
        const double next = (z * y - identity).cwiseAbs().maxCoeff();
        ++it;
        // rounding floor reached
        if (next >= defect && defect < 1e-10) break;
        defect = next;
    }
    if (iterations) *iterations = it;
    if (defect > 1e-8)
    {
        throw NumericalError("Newton-Schulz did not converge (defect " + std::to_string(defect) + ")", {}, defect);
    }
    return z / std::sqrt(c);
}

}  // namespace detail

}  // namespace gabornc
