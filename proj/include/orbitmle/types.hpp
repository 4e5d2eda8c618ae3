#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbitmle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Shape or size mismatch between inputs.
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input outside the mathematical domain of an operation (e.g. a matrix
/// that is required to be positive definite but is not).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

/// Symmetry up to relative tolerance (Frobenius).
bool is_symmetric(const Matrix& m, double rel_tol = 1e-12);

/// True iff `m` is symmetric and its Cholesky factorization succeeds with
/// a strictly positive diagonal.
bool is_pos_def(const Matrix& m);

/// Throws DomainError unless is_pos_def(m).
void require_pos_def(const Matrix& m, const char* name = "matrix");

/// A tuple of n real matrices of common shape m1 x m2.
struct SampleTuple {
    int n = 0;
    int m1 = 0;
    int m2 = 0;
    std::vector<Matrix> matrices;

    static SampleTuple from_matrices(std::vector<Matrix> mats);

    double norm_sq() const;

    SampleTuple scaled(double c) const;

    /// (o1 * Y_i * o2^T)_i for group elements acting on the left and right.
    SampleTuple transformed(const Matrix& left, const Matrix& right) const;
};

}  // namespace orbitmle
