#include "orbitmle/core.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>

namespace orbitmle {

bool is_symmetric(const Matrix& m, double rel_tol) {
    if (m.rows() != m.cols()) return false;
    const double scale = m.norm();
    if (scale == 0.0) return true;
    return (m - m.transpose()).norm() <= rel_tol * scale;
}

bool is_pos_def(const Matrix& m) {
    if (!is_symmetric(m)) return false;
    if (!m.allFinite()) return false;
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success) return false;
    return llt.matrixL().toDenseMatrix().diagonal().minCoeff() > 0.0;
}

void require_pos_def(const Matrix& m, const char* name) {
    if (!is_pos_def(m)) {
        throw DomainError(std::string(name) + " is not positive definite");
    }
}

SampleTuple SampleTuple::from_matrices(std::vector<Matrix> mats) {
    if (mats.empty()) {
        throw DimensionError("sample tuple needs at least one matrix");
    }
    SampleTuple y;
    y.n = static_cast<int>(mats.size());
    y.m1 = static_cast<int>(mats.front().rows());
    y.m2 = static_cast<int>(mats.front().cols());
    if (y.m1 < 1 || y.m2 < 1) {
        throw DimensionError("sample matrices must be non-empty");
    }
    for (const Matrix& m : mats) {
        if (m.rows() != y.m1 || m.cols() != y.m2) {
            throw DimensionError("sample matrices must share a common shape");
        }
        if (!m.allFinite()) {
            throw DomainError("sample matrices must have finite entries");
        }
    }
    y.matrices = std::move(mats);
    return y;
}

double SampleTuple::norm_sq() const {
    double s = 0.0;
    for (const Matrix& m : matrices) s += m.squaredNorm();
    return s;
}

SampleTuple SampleTuple::scaled(double c) const {
    SampleTuple y = *this;
    for (Matrix& m : y.matrices) m *= c;
    return y;
}

SampleTuple SampleTuple::transformed(const Matrix& left, const Matrix& right) const {
    if (left.cols() != m1 || right.cols() != m2) {
        throw DimensionError("group element shapes do not match the tuple");
    }
    SampleTuple y = *this;
    y.m1 = static_cast<int>(left.rows());
    y.m2 = static_cast<int>(right.rows());
    for (Matrix& m : y.matrices) m = left * m * right.transpose();
    return y;
}

Matrix sample_covariance(const std::vector<Vector>& samples) {
    if (samples.empty()) {
        throw DimensionError("sample covariance needs at least one sample");
    }
    const Eigen::Index m = samples.front().size();
    Matrix s = Matrix::Zero(m, m);
    for (const Vector& y : samples) {
        if (y.size() != m) {
            throw DimensionError("samples must share a common dimension");
        }
        s.noalias() += y * y.transpose();
    }
    s /= static_cast<double>(samples.size());
    // exact symmetry by construction
    return s;
}

double log_likelihood(const Matrix& psi, const Matrix& s) {
    if (psi.rows() != s.rows() || psi.cols() != s.cols()) {
        throw DimensionError("Psi and S must have equal shape");
    }
    require_pos_def(psi, "Psi");
    Eigen::LLT<Matrix> llt(psi);
    const double log_det =
        2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    return log_det - (psi * s).trace();
}

double orbit_norm_sq(const Matrix& g, const Matrix& s, int n) {
    if (g.cols() != s.rows() || s.rows() != s.cols()) {
        throw DimensionError("g and S have incompatible shapes");
    }
    return static_cast<double>(n) * (g.transpose() * g * s).trace();
}

LambdaStar lambda_star(double capacity, int dim, int n) {
    if (capacity <= 0.0) {
        throw DomainError("capacity must be positive; zero capacity means the likelihood is unbounded");
    }
    LambdaStar out;
    out.lambda = static_cast<double>(dim) * static_cast<double>(n) / capacity;
    out.outer_value = (out.lambda / n) * capacity - dim * std::log(out.lambda);
    return out;
}

double circle_quadratic_min(const Matrix& q) {
    if (q.rows() != 2 || q.cols() != 2) {
        throw DimensionError("circle_quadratic_min expects a 2x2 matrix");
    }
    if (!is_symmetric(q, 1e-10)) {
        throw DomainError("circle_quadratic_min expects a symmetric matrix");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(q);
    return es.eigenvalues().minCoeff();
}

}  // namespace orbitmle
