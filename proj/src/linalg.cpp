#include "radiuslab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace radiuslab {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kPsdClamp = 1e-8;
constexpr double kAbsoluteFloor = 1e-12;
constexpr int kMaxSweeps = 60;

void require_finite(const ComplexMatrix& m, const char* what) {
    if (!m.all_finite()) throw Error(ErrorCode::NonFinite, std::string(what) + ": non-finite entry");
}

void require_hermitian(const ComplexMatrix& h, const char* what) {
    require_square(h, what);
    require_finite(h, what);
    const std::size_t n = h.rows();
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) asym += std::norm(h(i, j) - std::conj(h(j, i)));
    asym = std::sqrt(2.0 * asym);
    if (asym > kHermitianTol * h.frobenius_norm()) {
        throw Error(ErrorCode::NotHermitian,
                    std::string(what) + ": ||H - H*||_F = " + std::to_string(asym));
    }
}

ComplexMatrix hermitized_copy(const ComplexMatrix& h) {
    ComplexMatrix m = h;
    detail::hermitize(m);
    return m;
}

// V diag(w) V* written as an exactly Hermitian matrix.
ComplexMatrix reassemble(const ComplexMatrix& v, std::span<const double> w) {
    const std::size_t n = v.rows();
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                if (w[k] == 0.0) continue;
                s += v(i, k) * w[k] * std::conj(v(j, k));
            }
            if (i == j) {
                out(i, i) = s.real();
            } else {
                out(i, j) = s;
                out(j, i) = std::conj(s);
            }
        }
    }
    return out;
}

}  // namespace

namespace detail {

void hermitize(ComplexMatrix& m) {
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex z = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    }
}

void jacobi(std::vector<Complex>& a, std::size_t n, std::vector<double>& values,
            std::vector<Complex>* vectors) {
    values.resize(n);
    if (vectors) {
        vectors->assign(n * n, Complex{});
        for (std::size_t i = 0; i < n; ++i) (*vectors)[i * n + i] = 1.0;
    }
    double fro2 = 0.0;
    for (const auto& z : a) fro2 += std::norm(z);
    // Sweep until the off-diagonal mass is at roundoff level; the 1e-12
    // relative level is passed well before this point.
    const double target2 = fro2 * 1e-28;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off2 = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off2 += 2.0 * std::norm(a[p * n + q]);
        if (off2 <= target2 || off2 == 0.0) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a[p * n + q];
                const double g = std::sqrt(std::norm(apq));
                if (g == 0.0) continue;
                const double app = a[p * n + p].real();
                const double aqq = a[q * n + q].real();
                // Negligible against both diagonal entries: drop it.
                if (sweep > 3 && std::abs(app) + 100.0 * g == std::abs(app) &&
                    std::abs(aqq) + 100.0 * g == std::abs(aqq)) {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                const double theta = (aqq - app) / (2.0 * g);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex u = apq / g;
                const Complex su = s * u;
                const Complex sub = s * std::conj(u);

                // A <- J* A J. Rows k != p, q only see the column update;
                // rows p, q follow by Hermitian symmetry.
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const Complex akp = a[k * n + p];
                    const Complex akq = a[k * n + q];
                    const Complex np = c * akp - sub * akq;
                    const Complex nq = su * akp + c * akq;
                    a[k * n + p] = np;
                    a[k * n + q] = nq;
                    a[p * n + k] = std::conj(np);
                    a[q * n + k] = std::conj(nq);
                }
                a[p * n + p] = app - t * g;
                a[q * n + q] = aqq + t * g;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                if (vectors) {
                    auto& v = *vectors;
                    for (std::size_t k = 0; k < n; ++k) {
                        const Complex vkp = v[k * n + p];
                        const Complex vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - sub * vkq;
                        v[k * n + q] = su * vkp + c * vkq;
                    }
                }
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) values[i] = a[i * n + i].real();
}

Extremes hermitian_extremes(const ComplexMatrix& h, std::vector<Complex>& scratch,
                            std::vector<double>& values) {
    const std::size_t n = h.rows();
    if (n == 1) return {h(0, 0).real(), h(0, 0).real()};
    scratch.assign(h.entries().begin(), h.entries().end());
    jacobi(scratch, n, values, nullptr);
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return {*lo, *hi};
}

double top_eigenvector(const ComplexMatrix& h, std::vector<Complex>& out) {
    const std::size_t n = h.rows();
    std::vector<Complex> a(h.entries().begin(), h.entries().end());
    std::vector<double> values;
    std::vector<Complex> vecs;
    jacobi(a, n, values, &vecs);
    const std::size_t k =
        static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = vecs[i * n + k];
    return values[k];
}

}  // namespace detail

EigenDecomposition hermitian_eigen(const ComplexMatrix& h) {
    require_hermitian(h, "hermitian_eigen");
    const std::size_t n = h.rows();
    const ComplexMatrix sym = hermitized_copy(h);
    std::vector<Complex> a(sym.entries().begin(), sym.entries().end());
    std::vector<double> values;
    std::vector<Complex> vecs;
    detail::jacobi(a, n, values, &vecs);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
    EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = values[order[j]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = vecs[i * n + order[j]];
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
    require_hermitian(h, "hermitian_eigenvalues");
    const ComplexMatrix sym = hermitized_copy(h);
    std::vector<Complex> a(sym.entries().begin(), sym.entries().end());
    std::vector<double> values;
    detail::jacobi(a, h.rows(), values, nullptr);
    std::sort(values.begin(), values.end());
    return values;
}

double lambda_max(const ComplexMatrix& h) { return hermitian_eigenvalues(h).back(); }
double lambda_min(const ComplexMatrix& h) { return hermitian_eigenvalues(h).front(); }

ComplexMatrix psd_power(const ComplexMatrix& a, double p) {
    if (!std::isfinite(p) || p < 0.0) {
        throw Error(ErrorCode::BadExponent, "psd_power exponent must be finite and >= 0");
    }
    const auto eig = hermitian_eigen(a);
    const double scale = std::max(std::abs(eig.eigenvalues.front()), std::abs(eig.eigenvalues.back()));
    std::vector<double> w(eig.eigenvalues.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        double lam = eig.eigenvalues[i];
        if (lam < 0.0) {
            if (lam < -kPsdClamp * scale) {
                throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(lam) +
                                                   " below clamp threshold");
            }
            lam = 0.0;
        }
        w[i] = std::pow(lam, p);
    }
    return reassemble(eig.vectors, w);
}

ComplexMatrix matrix_abs(const ComplexMatrix& s) {
    require_finite(s, "matrix_abs");
    ComplexMatrix gram = adjoint_times(s, s);
    detail::hermitize(gram);
    return psd_power(gram, 0.5);
}

ComplexMatrix spectral_map(const ComplexMatrix& a, const std::function<double(double)>& f) {
    const auto eig = hermitian_eigen(a);
    std::vector<double> w(eig.eigenvalues.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = f(eig.eigenvalues[i]);
        if (!std::isfinite(w[i])) {
            throw Error(ErrorCode::NonFinite, "spectral_map produced a non-finite value");
        }
    }
    return reassemble(eig.vectors, w);
}

double operator_norm(const ComplexMatrix& s) {
    require_finite(s, "operator_norm");
    ComplexMatrix gram = s.rows() >= s.cols() ? adjoint_times(s, s) : s * s.adjoint();
    detail::hermitize(gram);
    std::vector<Complex> scratch;
    std::vector<double> values;
    const double top = detail::hermitian_extremes(gram, scratch, values).max;
    return std::sqrt(std::max(top, 0.0));
}

std::vector<double> singular_values(const ComplexMatrix& s) {
    require_finite(s, "singular_values");
    std::vector<double> sv;
    bool hermitian = s.is_square();
    for (std::size_t i = 0; hermitian && i < s.rows(); ++i)
        for (std::size_t j = i; hermitian && j < s.cols(); ++j)
            hermitian = s(i, j) == std::conj(s(j, i));
    if (hermitian) {
        std::vector<Complex> a(s.entries().begin(), s.entries().end());
        detail::jacobi(a, s.rows(), sv, nullptr);
        for (auto& x : sv) x = std::abs(x);
    } else {
        const std::size_t m = s.rows(), n = s.cols(), d = m + n;
        std::vector<Complex> a(d * d);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                a[i * d + (m + j)] = s(i, j);
                a[(m + j) * d + i] = std::conj(s(i, j));
            }
        std::vector<double> values;
        detail::jacobi(a, d, values, nullptr);
        std::sort(values.begin(), values.end(), std::greater<>());
        sv.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(std::min(m, n)));
        for (auto& x : sv) x = std::max(x, 0.0);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

double schatten_norm(const ComplexMatrix& s, double p) {
    if (std::isnan(p) || p < 1.0) throw Error(ErrorCode::BadExponent, "Schatten exponent must be >= 1");
    if (std::isinf(p)) return operator_norm(s);
    const auto sv = singular_values(s);
    const double top = sv.front();
    if (top == 0.0) return 0.0;
    double acc = 0.0;
    for (double x : sv) acc += std::pow(x / top, p);
    return top * std::pow(acc, 1.0 / p);
}

double spectral_radius_psd_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square(a, "spectral_radius_psd_product");
    require_square(b, "spectral_radius_psd_product");
    require_same_shape(a, b, "spectral_radius_psd_product");
    const ComplexMatrix root = psd_power(a, 0.5);
    // Validates B as PSD with the same clamp policy.
    const auto eb = hermitian_eigenvalues(b);
    const double bscale = std::max(std::abs(eb.front()), std::abs(eb.back()));
    if (eb.front() < -kPsdClamp * bscale) {
        throw Error(ErrorCode::NotPSD, "second operand is not positive semidefinite");
    }
    ComplexMatrix m = root * b * root;
    detail::hermitize(m);
    std::vector<Complex> scratch;
    std::vector<double> values;
    return std::max(detail::hermitian_extremes(m, scratch, values).max, 0.0);
}

CartesianParts cartesian_decomposition(const ComplexMatrix& s) {
    require_square(s, "cartesian_decomposition");
    const std::size_t n = s.rows();
    CartesianParts parts{ComplexMatrix(n, n), ComplexMatrix(n, n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Complex sum = s(i, j) + std::conj(s(j, i));
            const Complex diff = s(i, j) - std::conj(s(j, i));
            parts.real(i, j) = 0.5 * sum;
            // diff / (2i)
            parts.imag(i, j) = Complex(0.5 * diff.imag(), -0.5 * diff.real());
        }
    }
    return parts;
}

MatrixClassification classify(const ComplexMatrix& s, double tol) {
    require_square(s, "classify");
    require_finite(s, "classify");
    if (!(tol > 0.0)) throw Error(ErrorCode::BadConfig, "classification tolerance must be > 0");
    const double norm = operator_norm(s);
    const double thr = std::max(tol * norm, kAbsoluteFloor);
    const double thr2 = std::max(tol * norm * norm, kAbsoluteFloor);
    const auto parts = cartesian_decomposition(s);

    MatrixClassification c;
    c.tolerance = tol;
    c.is_hermitian = operator_norm(parts.imag) <= thr;
    c.is_normal = operator_norm(s * s.adjoint() - adjoint_times(s, s)) <= thr2;
    c.is_accretive = lambda_min(parts.real) >= -thr;
    c.is_dissipative = lambda_min(parts.imag) >= -thr;
    c.is_psd = c.is_hermitian && c.is_accretive;
    return c;
}

ComplexMatrix block_anti_diagonal(const ComplexMatrix& x, const ComplexMatrix& y) {
    require_square(x, "block_anti_diagonal");
    require_same_shape(x, y, "block_anti_diagonal");
    const std::size_t n = x.rows();
    ComplexMatrix out(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            out(i, n + j) = x(i, j);
            out(n + i, j) = y(i, j);
        }
    return out;
}

ComplexMatrix off_diag_embed(const ComplexMatrix& s, const ComplexMatrix& t) {
    require_square(s, "off_diag_embed");
    require_same_shape(s, t, "off_diag_embed");
    return block_anti_diagonal(s, t.adjoint());
}

}  // namespace radiuslab
