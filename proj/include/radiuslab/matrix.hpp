#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "radiuslab/error.hpp"

namespace radiuslab {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Dimensions are at least 1x1 and every
/// entry is finite; both are checked on construction.
class ComplexMatrix {
public:
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix zero(std::size_t n) { return ComplexMatrix(n, n); }
    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> d);
    static ComplexMatrix diagonal(std::span<const double> d);
    /// n x 1 column from a vector.
    static ComplexMatrix column(std::span<const Complex> v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    std::size_t size() const noexcept { return data_.size(); }

    Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
        return data_[r * cols_ + c];
    }

    std::span<const Complex> entries() const noexcept { return data_; }
    std::span<Complex> entries() noexcept { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    Complex trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const noexcept;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(Complex s) noexcept;
    ComplexMatrix& operator*=(double s) noexcept;

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, double s);
ComplexMatrix operator*(double s, ComplexMatrix a);

/// A* B without forming the adjoint.
ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b);

/// <x, y> = sum x_i conj(y_i), linear in the first argument.
Complex inner(std::span<const Complex> x, std::span<const Complex> y);
/// <A x, y> for column vectors stored as n x 1 matrices or spans.
Complex form(const ComplexMatrix& a, std::span<const Complex> x, std::span<const Complex> y);
std::vector<Complex> apply(const ComplexMatrix& a, std::span<const Complex> x);
double vector_norm(std::span<const Complex> x);

void require_square(const ComplexMatrix& a, const char* what);
void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what);

}  // namespace radiuslab
