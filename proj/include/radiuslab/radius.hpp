#pragma once

#include <cstdint>

#include "radiuslab/matrix.hpp"

namespace radiuslab {

/// Parameters of the rotation sweep theta -> f(theta) used by every radius.
struct SweepConfig {
    int coarse_grid = 720;          ///< samples on [0, 2pi), >= 8
    double refine_tol = 1e-10;      ///< golden-section bracket width in theta
    int max_refine_iters = 200;

    void validate() const;
};

/// omega(S) = sup_theta lambda_max(Re(e^{i theta} S)): grid maximum refined by
/// golden-section search around the three best grid peaks.
double numerical_radius(const ComplexMatrix& s, const SweepConfig& cfg = {});

/// Lower-bound certificate for omega(S). From random unit starts, repeatedly
/// replaces x by the top eigenvector of Re(e^{-i arg<Sx,x>} S); each step never
/// decreases |<Sx,x>|.
double numerical_radius_oracle(const ComplexMatrix& s, int restarts = 32, std::uint64_t seed = 0);

/// omega([[O, S], [T*, O]]) via (1/2) sup_theta ||S + e^{i theta} T||.
double off_diag_numerical_radius(const ComplexMatrix& s, const ComplexMatrix& t,
                                 const SweepConfig& cfg = {});

/// sup_theta |||Re(e^{i theta} S)|||_p for the Schatten p-norm.
double weighted_numerical_radius(const ComplexMatrix& s, double p, const SweepConfig& cfg = {});

}  // namespace radiuslab
