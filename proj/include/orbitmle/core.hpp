#pragma once

#include "orbitmle/types.hpp"

namespace orbitmle {

/// Sample covariance (1/n) * sum_i y_i y_i^T of n column vectors.
Matrix sample_covariance(const std::vector<Vector>& samples);

/// Gaussian log-likelihood log det(Psi) - tr(Psi * S), without additive
/// normalization constants. Psi must be positive definite.
double log_likelihood(const Matrix& psi, const Matrix& s);

/// Squared norm of the scaled tuple, n * tr(g^T g S).
double orbit_norm_sq(const Matrix& g, const Matrix& s, int n);

struct LambdaStar {
    double lambda = 0.0;       // dim * n / capacity
    double outer_value = 0.0;  // (lambda/n)*capacity - dim*log(lambda)
};

/// Closed-form minimizer of lambda -> (lambda/n)*capacity - dim*log(lambda).
/// capacity <= 0 means the likelihood is unbounded; that case is a DomainError
/// here and must be branched on by the caller.
LambdaStar lambda_star(double capacity, int dim, int n);

/// Minimum of (a,b) Q (a,b)^T over the unit circle a^2 + b^2 = 1,
/// i.e. the smaller eigenvalue of the symmetric 2x2 matrix Q.
double circle_quadratic_min(const Matrix& q);

}  // namespace orbitmle
