#pragma once

#include <functional>
#include <vector>

#include "radiuslab/matrix.hpp"

namespace radiuslab {

/// Eigenvalues in ascending order; column j of `vectors` belongs to eigenvalue j.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix vectors;
};

struct MatrixClassification {
    bool is_hermitian = false;
    bool is_normal = false;
    bool is_accretive = false;
    bool is_dissipative = false;
    bool is_psd = false;
    double tolerance = 0.0;

    bool is_accretive_dissipative() const noexcept { return is_accretive && is_dissipative; }
};

struct CartesianParts {
    ComplexMatrix real;
    ComplexMatrix imag;
};

/// Cyclic complex Jacobi. Throws NotSquare, NonFinite, or NotHermitian when
/// ||H - H*||_F > 1e-10 ||H||_F.
EigenDecomposition hermitian_eigen(const ComplexMatrix& h);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

/// |S| = (S*S)^{1/2}.
ComplexMatrix matrix_abs(const ComplexMatrix& s);

/// A^p for PSD A. Eigenvalues in [-1e-8 ||A||, 0) are clamped to zero, anything
/// more negative raises NotPSD. 0^0 is taken as 1, so psd_power(A, 0) = I.
ComplexMatrix psd_power(const ComplexMatrix& a, double p);

/// V diag(f(lambda_i)) V* for Hermitian A.
ComplexMatrix spectral_map(const ComplexMatrix& a, const std::function<double(double)>& f);

double operator_norm(const ComplexMatrix& s);

/// Descending singular values. Hermitian input uses |eigenvalues|; anything
/// else goes through the Hermitian dilation [[O, S], [S*, O]], which keeps
/// small singular values accurate to roundoff of ||S||.
std::vector<double> singular_values(const ComplexMatrix& s);

/// Schatten p-norm, p in [1, inf]; pass std::numeric_limits<double>::infinity()
/// for the operator norm.
double schatten_norm(const ComplexMatrix& s, double p);

/// r(AB) for PSD A, B, computed as lambda_max(A^{1/2} B A^{1/2}).
double spectral_radius_psd_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Re S = (S + S*)/2, Im S = (S - S*)/(2i).
CartesianParts cartesian_decomposition(const ComplexMatrix& s);

/// Flags are decided with threshold max(tol ||S||, 1e-12) (||S||^2 for normality).
MatrixClassification classify(const ComplexMatrix& s, double tol);

/// [[O, S], [T*, O]].
ComplexMatrix off_diag_embed(const ComplexMatrix& s, const ComplexMatrix& t);
/// [[O, X], [Y, O]].
ComplexMatrix block_anti_diagonal(const ComplexMatrix& x, const ComplexMatrix& y);

double lambda_max(const ComplexMatrix& h);
double lambda_min(const ComplexMatrix& h);

namespace detail {

/// Jacobi on a row-major n x n Hermitian buffer, destroyed in place. Writes the
/// unsorted eigenvalues to `values`; accumulates eigenvectors into `vectors`
/// (row-major, columns are eigenvectors) when it is non-null.
void jacobi(std::vector<Complex>& a, std::size_t n, std::vector<double>& values,
            std::vector<Complex>* vectors);

/// Extreme eigenvalues of an already Hermitian matrix; skips validation.
struct Extremes {
    double min;
    double max;
};
Extremes hermitian_extremes(const ComplexMatrix& h, std::vector<Complex>& scratch,
                            std::vector<double>& values);

/// Top eigenpair of an already Hermitian matrix; skips validation.
double top_eigenvector(const ComplexMatrix& h, std::vector<Complex>& out);

/// Writes (M + M*)/2 into place, making M exactly Hermitian.
void hermitize(ComplexMatrix& m);

}  // namespace detail

}  // namespace radiuslab
