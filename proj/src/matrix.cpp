#include "radiuslab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace radiuslab {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::FGProductViolation: return "FGProductViolation";
    case ErrorCode::InternalConsistency: return "InternalConsistency";
    case ErrorCode::UnknownLemma: return "UnknownLemma";
    case ErrorCode::UnknownBound: return "UnknownBound";
    case ErrorCode::IncomparableBounds: return "IncomparableBounds";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IOFailure: return "IOFailure";
    }
    return "Unknown";
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) {
        throw Error(ErrorCode::DimensionMismatch, "matrix dimensions must be positive");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
        throw Error(ErrorCode::DimensionMismatch, "matrix dimensions must be positive");
    }
    if (data_.size() != rows * cols) {
        throw Error(ErrorCode::DimensionMismatch,
                    "expected " + std::to_string(rows * cols) + " entries, got " +
                        std::to_string(data_.size()));
    }
    if (!all_finite()) throw Error(ErrorCode::NonFinite, "matrix has a non-finite entry");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    if (rows_ == 0 || cols_ == 0) {
        throw Error(ErrorCode::DimensionMismatch, "matrix dimensions must be positive");
    }
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    if (!all_finite()) throw Error(ErrorCode::NonFinite, "matrix has a non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    if (!m.all_finite()) throw Error(ErrorCode::NonFinite, "diagonal has a non-finite entry");
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
    std::vector<Complex> c(d.begin(), d.end());
    return diagonal(std::span<const Complex>(c));
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> v) {
    return ComplexMatrix(v.size(), 1, std::vector<Complex>(v.begin(), v.end()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
    return m;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

bool ComplexMatrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "matrix addition");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "matrix subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) noexcept {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(double s) noexcept {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= s; }
ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "matrix product: inner dimensions differ");
    }
    ComplexMatrix c(a.rows(), b.cols());
    const std::size_t n = a.cols(), m = b.cols();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex* crow = &c(i, 0);
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            const Complex* brow = &b(k, 0);
            for (std::size_t j = 0; j < m; ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "adjoint product: row counts differ");
    }
    ComplexMatrix c(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        const Complex* arow = &a(k, 0);
        const Complex* brow = &b(k, 0);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const Complex aki = std::conj(arow[i]);
            if (aki == Complex{}) continue;
            Complex* crow = &c(i, 0);
            for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aki * brow[j];
        }
    }
    return c;
}

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
    if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "inner product");
    Complex s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
    return s;
}

std::vector<Complex> apply(const ComplexMatrix& a, std::span<const Complex> x) {
    if (a.cols() != x.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
    std::vector<Complex> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Complex form(const ComplexMatrix& a, std::span<const Complex> x, std::span<const Complex> y) {
    const auto ax = apply(a, x);
    return inner(ax, y);
}

double vector_norm(std::span<const Complex> x) {
    double s = 0.0;
    for (const auto& z : x) s += std::norm(z);
    return std::sqrt(s);
}

void require_square(const ComplexMatrix& a, const char* what) {
    if (!a.is_square()) {
        throw Error(ErrorCode::NotSquare, std::string(what) + ": matrix is " +
                                              std::to_string(a.rows()) + "x" +
                                              std::to_string(a.cols()));
    }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": shapes differ");
    }
}

}  // namespace radiuslab
