#include "radiuslab/radius.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "radiuslab/linalg.hpp"
#include "radiuslab/rng.hpp"

namespace radiuslab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kPeaksRefined = 3;

// Maximizes f on [a, b] by golden-section search; returns the best value seen.
template <class F>
double golden_max(F&& f, double a, double b, const SweepConfig& cfg) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    double best = std::max(fc, fd);
    for (int it = 0; it < cfg.max_refine_iters && (b - a) > cfg.refine_tol; ++it) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
            best = std::max(best, fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
            best = std::max(best, fd);
        }
    }
    return best;
}

// `grid[k]` holds f(period * k / N). Refines the best grid peaks (circular
// neighbourhoods) and returns the overall maximum.
template <class F>
double refine_grid(const std::vector<double>& grid, double period, F&& f, const SweepConfig& cfg) {
    const std::size_t n = grid.size();
    const double h = period / static_cast<double>(n);
    std::vector<std::size_t> peaks;
    for (std::size_t k = 0; k < n; ++k) {
        const double prev = grid[(k + n - 1) % n];
        const double next = grid[(k + 1) % n];
        if (grid[k] >= prev && grid[k] >= next) peaks.push_back(k);
    }
    // Stable order: by value, ties by index, so results are reproducible.
    std::stable_sort(peaks.begin(), peaks.end(),
                     [&](std::size_t x, std::size_t y) { return grid[x] > grid[y]; });
    double best = *std::max_element(grid.begin(), grid.end());
    const std::size_t count = std::min<std::size_t>(peaks.size(), kPeaksRefined);
    for (std::size_t i = 0; i < count; ++i) {
        const double centre = h * static_cast<double>(peaks[i]);
        best = std::max(best, golden_max(f, centre - h, centre + h, cfg));
    }
    return best;
}

// cos(theta) A - sin(theta) B for Hermitian A, B; exactly Hermitian output.
void rotate_into(ComplexMatrix& out, const ComplexMatrix& a, const ComplexMatrix& b, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    auto o = out.entries();
    const auto ae = a.entries();
    const auto be = b.entries();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = c * ae[i] - s * be[i];
}

bool is_zero(const ComplexMatrix& m) { return m.max_abs() == 0.0; }

}  // namespace

void SweepConfig::validate() const {
    if (coarse_grid < 8) throw Error(ErrorCode::BadConfig, "coarse_grid must be >= 8");
    if (!(refine_tol > 0.0)) throw Error(ErrorCode::BadConfig, "refine_tol must be > 0");
    if (max_refine_iters < 0) throw Error(ErrorCode::BadConfig, "max_refine_iters must be >= 0");
}

double numerical_radius(const ComplexMatrix& s, const SweepConfig& cfg) {
    cfg.validate();
    require_square(s, "numerical_radius");
    if (!s.all_finite()) throw Error(ErrorCode::NonFinite, "numerical_radius: non-finite entry");
    if (is_zero(s)) return 0.0;
    if (s.rows() == 1) return std::abs(s(0, 0));

    const auto parts = cartesian_decomposition(s);
    const std::size_t n = s.rows();
    ComplexMatrix h(n, n);
    std::vector<Complex> scratch;
    std::vector<double> values;

    const auto f = [&](double theta) {
        rotate_into(h, parts.real, parts.imag, theta);
        return detail::hermitian_extremes(h, scratch, values).max;
    };

    // lambda_max at theta + pi equals -lambda_min at theta, so one
    // decomposition fills two grid points when the grid size is even.
    const std::size_t grid_n = static_cast<std::size_t>(cfg.coarse_grid);
    std::vector<double> grid(grid_n);
    if (grid_n % 2 == 0) {
        const std::size_t half = grid_n / 2;
        for (std::size_t k = 0; k < half; ++k) {
            rotate_into(h, parts.real, parts.imag, kTwoPi * static_cast<double>(k) / grid_n);
            const auto ext = detail::hermitian_extremes(h, scratch, values);
            grid[k] = ext.max;
            grid[k + half] = -ext.min;
        }
    } else {
        for (std::size_t k = 0; k < grid_n; ++k) grid[k] = f(kTwoPi * static_cast<double>(k) / grid_n);
    }
    return refine_grid(grid, kTwoPi, f, cfg);
}

double numerical_radius_oracle(const ComplexMatrix& s, int restarts, std::uint64_t seed) {
    require_square(s, "numerical_radius_oracle");
    if (restarts < 1) throw Error(ErrorCode::BadConfig, "oracle needs at least one restart");
    if (is_zero(s)) return 0.0;
    const std::size_t n = s.rows();
    const double norm = operator_norm(s);
    const double stall = 1e-14 * norm;
    Rng rng(seed);
    double best = 0.0;
    std::vector<Complex> x(n), next;
    for (int r = 0; r < restarts; ++r) {
        for (auto& z : x) z = rng.complex_normal();
        const double len = vector_norm(x);
        for (auto& z : x) z /= len;
        double value = std::abs(form(s, x, x));
        for (int it = 0; it < 500; ++it) {
            const Complex z = form(s, x, x);
            const Complex phase = std::abs(z) > 0.0 ? z / std::abs(z) : Complex(1.0);
            ComplexMatrix rotated = s * std::conj(phase);
            ComplexMatrix herm = cartesian_decomposition(rotated).real;
            detail::top_eigenvector(herm, next);
            const double candidate = std::abs(form(s, next, next));
            if (candidate <= value + stall) {
                value = std::max(value, candidate);
                break;
            }
            x = next;
            value = candidate;
        }
        best = std::max(best, value);
    }
    return best;
}

double off_diag_numerical_radius(const ComplexMatrix& s, const ComplexMatrix& t, const SweepConfig& cfg) {
    cfg.validate();
    require_square(s, "off_diag_numerical_radius");
    require_same_shape(s, t, "off_diag_numerical_radius");
    if (is_zero(s) && is_zero(t)) return 0.0;

    // ||S + e^{i theta} T||^2 = lambda_max(S*S + T*T + 2 Re(e^{i theta} S*T)).
    ComplexMatrix base = adjoint_times(s, s) + adjoint_times(t, t);
    detail::hermitize(base);
    const auto cross = cartesian_decomposition(adjoint_times(s, t));
    const ComplexMatrix re2 = 2.0 * cross.real;
    const ComplexMatrix im2 = 2.0 * cross.imag;
    const std::size_t n = s.rows();
    ComplexMatrix h(n, n);
    std::vector<Complex> scratch;
    std::vector<double> values;
    const auto g = [&](double theta) {
        rotate_into(h, re2, im2, theta);
        h += base;
        const double top = detail::hermitian_extremes(h, scratch, values).max;
        return 0.5 * std::sqrt(std::max(top, 0.0));
    };
    const std::size_t grid_n = static_cast<std::size_t>(cfg.coarse_grid);
    std::vector<double> grid(grid_n);
    for (std::size_t k = 0; k < grid_n; ++k) grid[k] = g(kTwoPi * static_cast<double>(k) / grid_n);
    return refine_grid(grid, kTwoPi, g, cfg);
}

double weighted_numerical_radius(const ComplexMatrix& s, double p, const SweepConfig& cfg) {
    cfg.validate();
    if (std::isnan(p) || p < 1.0) throw Error(ErrorCode::BadExponent, "Schatten exponent must be >= 1");
    require_square(s, "weighted_numerical_radius");
    if (std::isinf(p)) return numerical_radius(s, cfg);
    if (is_zero(s)) return 0.0;

    const auto parts = cartesian_decomposition(s);
    const std::size_t n = s.rows();
    ComplexMatrix h(n, n);
    std::vector<Complex> scratch;
    std::vector<double> values;
    const auto f = [&](double theta) {
        rotate_into(h, parts.real, parts.imag, theta);
        scratch.assign(h.entries().begin(), h.entries().end());
        detail::jacobi(scratch, n, values, nullptr);
        double top = 0.0;
        for (double v : values) top = std::max(top, std::abs(v));
        if (top == 0.0) return 0.0;
        double acc = 0.0;
        for (double v : values) acc += std::pow(std::abs(v) / top, p);
        return top * std::pow(acc, 1.0 / p);
    };
    // Re(e^{i(theta + pi)} S) = -Re(e^{i theta} S): the curve has period pi.
    const std::size_t grid_n = std::max<std::size_t>(4, static_cast<std::size_t>(cfg.coarse_grid) / 2);
    const double period = std::numbers::pi;
    std::vector<double> grid(grid_n);
    for (std::size_t k = 0; k < grid_n; ++k) grid[k] = f(period * static_cast<double>(k) / grid_n);
    return refine_grid(grid, period, f, cfg);
}

}  // namespace radiuslab
