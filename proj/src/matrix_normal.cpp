#include "orbitmle/matrix_normal.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>

namespace orbitmle {

namespace {

// Instability cutoff for the normalized capacity estimate, relative to ||Y||^2.
constexpr double kUnstableRelCapacity = 1e-10;

// Window thresholds for the divergence heuristic at iteration exhaustion.
constexpr double kCapStabilizedRel = 1e-3;
constexpr double kDriftGrowthMin = 1e-2;

Matrix weighted_scatter_left(const SampleTuple& y, const Matrix& psi2) {
    Matrix s = Matrix::Zero(y.m1, y.m1);
    for (const Matrix& yi : y.matrices) s.noalias() += yi * psi2 * yi.transpose();
    return 0.5 * (s + s.transpose());
}

Matrix weighted_scatter_right(const SampleTuple& y, const Matrix& psi1) {
    Matrix s = Matrix::Zero(y.m2, y.m2);
    for (const Matrix& yi : y.matrices) s.noalias() += yi.transpose() * psi1 * yi;
    return 0.5 * (s + s.transpose());
}

struct SymEig {
    Matrix vectors;
    Vector values;
};

SymEig sym_eig(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    return {es.eigenvectors(), es.eigenvalues()};
}

Matrix sym_inverse(const SymEig& e) {
    return e.vectors * e.values.cwiseInverse().asDiagonal() * e.vectors.transpose();
}

Matrix sym_sqrt(const Matrix& m) {
    SymEig e = sym_eig(m);
    return e.vectors * e.values.cwiseMax(0.0).cwiseSqrt().asDiagonal() *
           e.vectors.transpose();
}

double log_eig_spread(const Vector& eigenvalues) {
    double spread = 0.0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        spread = std::max(spread, std::abs(std::log(eigenvalues[i])));
    }
    return spread;
}

}  // namespace

const char* to_string(Stability s) {
    switch (s) {
        case Stability::Unstable: return "Unstable";
        case Stability::SemistableNotPolystable: return "SemistableNotPolystable";
        case Stability::Polystable: return "Polystable";
        case Stability::Stable: return "Stable";
        case Stability::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

double mn_log_likelihood(const SampleTuple& y, const ConcentrationPair& pair) {
    if (pair.psi1.rows() != y.m1 || pair.psi2.rows() != y.m2) {
        throw DimensionError("concentration factors do not match the tuple shape");
    }
    require_pos_def(pair.psi1, "Psi1");
    require_pos_def(pair.psi2, "Psi2");
    Eigen::LLT<Matrix> llt1(pair.psi1);
    Eigen::LLT<Matrix> llt2(pair.psi2);
    const double log_det1 =
        2.0 * llt1.matrixL().toDenseMatrix().diagonal().array().log().sum();
    const double log_det2 =
        2.0 * llt2.matrixL().toDenseMatrix().diagonal().array().log().sum();
    const double trace = (pair.psi1 * weighted_scatter_left(y, pair.psi2)).trace();
    return y.m2 * log_det1 + y.m1 * log_det2 - trace / y.n;
}

MomentResidual moment_residual(const SampleTuple& y) {
    const double norm2 = y.norm_sq();
    if (norm2 <= 0.0) {
        throw DomainError("moment residual is undefined for the zero tuple");
    }
    Matrix left = Matrix::Zero(y.m1, y.m1);
    Matrix right = Matrix::Zero(y.m2, y.m2);
    for (const Matrix& yi : y.matrices) {
        left.noalias() += yi * yi.transpose();
        right.noalias() += yi.transpose() * yi;
    }
    MomentResidual out;
    out.c1 = norm2 / y.m1;
    out.c2 = norm2 / y.m2;
    const double dev1 = (left - out.c1 * Matrix::Identity(y.m1, y.m1)).norm();
    const double dev2 = (right - out.c2 * Matrix::Identity(y.m2, y.m2)).norm();
    out.residual = std::max(dev1, dev2) / norm2;
    return out;
}

double capacity_estimate(const SampleTuple& y, const ConcentrationPair& pair) {
    if (pair.psi1.rows() != y.m1 || pair.psi2.rows() != y.m2) {
        throw DimensionError("concentration factors do not match the tuple shape");
    }
    require_pos_def(pair.psi1, "Psi1");
    require_pos_def(pair.psi2, "Psi2");
    Eigen::LLT<Matrix> llt1(pair.psi1);
    Eigen::LLT<Matrix> llt2(pair.psi2);
    const double log_det1 =
        2.0 * llt1.matrixL().toDenseMatrix().diagonal().array().log().sum();
    const double log_det2 =
        2.0 * llt2.matrixL().toDenseMatrix().diagonal().array().log().sum();
    const double trace = (pair.psi1 * weighted_scatter_left(y, pair.psi2)).trace();
    return std::exp(-log_det1 / y.m1 - log_det2 / y.m2) * trace;
}

int stabilizer_lie_dim(const SampleTuple& y) {
    const int m1 = y.m1;
    const int m2 = y.m2;
    const int unknowns = m1 * m1 + m2 * m2;
    // Equations A*Y_i + Y_i*B^T = 0 stacked over samples, plus tr A = tr B = 0.
    Matrix sys = Matrix::Zero(y.n * m1 * m2 + 2, unknowns);
    int row = 0;
    for (const Matrix& yi : y.matrices) {
        for (int r = 0; r < m1; ++r) {
            for (int c = 0; c < m2; ++c, ++row) {
                for (int k = 0; k < m1; ++k) sys(row, r * m1 + k) = yi(k, c);
                for (int k = 0; k < m2; ++k) sys(row, m1 * m1 + c * m2 + k) += yi(r, k);
            }
        }
    }
    for (int k = 0; k < m1; ++k) sys(row, k * m1 + k) = 1.0;
    ++row;
    for (int k = 0; k < m2; ++k) sys(row, m1 * m1 + k * m2 + k) = 1.0;

    Eigen::JacobiSVD<Matrix> svd(sys);
    const Vector& sing = svd.singularValues();
    const double tol = 1e-10 * std::max(1.0, sing.size() > 0 ? sing[0] : 0.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sing.size(); ++i) {
        if (sing[i] > tol) ++rank;
    }
    return unknowns - rank;
}

StabilityReport flip_flop(const SampleTuple& y, const FlipFlopConfig& cfg) {
    if (cfg.max_iter < 1 || cfg.tol_residual <= 0.0 || cfg.tol_singular <= 0.0 ||
        cfg.divergence_bound <= 0.0) {
        throw DomainError("flip-flop configuration values must be positive");
    }
    StabilityReport report;
    const double norm2 = y.norm_sq();
    if (norm2 == 0.0) {
        report.classification = Stability::Unstable;
        report.capacity_estimate = 0.0;
        return report;
    }

    ConcentrationPair pair{Matrix::Identity(y.m1, y.m1), Matrix::Identity(y.m2, y.m2)};
    report.capacity_estimate = norm2;

    std::vector<double> cap_history;
    std::vector<double> drift_history;
    cap_history.reserve(cfg.max_iter);
    drift_history.reserve(cfg.max_iter);

    for (int iter = 1; iter <= cfg.max_iter; ++iter) {
        report.iterations = iter;

        Matrix a1 = weighted_scatter_left(y, pair.psi2) / (y.n * y.m2);
        SymEig e1 = sym_eig(a1);
        if (e1.values.minCoeff() <= cfg.tol_singular * std::max(0.0, e1.values.maxCoeff())) {
            report.classification = Stability::Unstable;
            report.capacity_estimate = 0.0;  // singular update certifies null-cone membership
            report.mle.reset();
            return report;
        }
        pair.psi1 = sym_inverse(e1);

        Matrix a2 = weighted_scatter_right(y, pair.psi1) / (y.n * y.m1);
        SymEig e2 = sym_eig(a2);
        if (e2.values.minCoeff() <= cfg.tol_singular * std::max(0.0, e2.values.maxCoeff())) {
            report.classification = Stability::Unstable;
            report.capacity_estimate = 0.0;
            report.mle.reset();
            return report;
        }
        pair.psi2 = sym_inverse(e2);

        const double cap = capacity_estimate(y, pair);
        const SampleTuple scaled = y.transformed(sym_sqrt(pair.psi1), sym_sqrt(pair.psi2));
        const double residual = moment_residual(scaled).residual;
        const double ll = mn_log_likelihood(y, pair);
        report.trace.push_back({ll, residual});
        report.capacity_estimate = cap;
        report.moment_residual = residual;

        const double drift = log_eig_spread(sym_eig(pair.psi1).values) +
                             log_eig_spread(sym_eig(pair.psi2).values);
        cap_history.push_back(cap);
        drift_history.push_back(drift);

        if (cap < kUnstableRelCapacity * norm2) {
            report.classification = Stability::Unstable;
            report.mle.reset();
            return report;
        }

        const double prev_drift = drift_history.size() > 1
                                      ? drift_history[drift_history.size() - 2]
                                      : drift;
        if (residual < cfg.tol_residual) {
            if (drift > cfg.divergence_bound) {
                report.classification = Stability::SemistableNotPolystable;
                report.mle.reset();
            } else if (std::abs(drift - prev_drift) < 1e-6 * (1.0 + drift)) {
                report.classification = Stability::Polystable;
                report.mle = pair;
            } else {
                continue;  // residual small but factors still moving
            }
            return report;
        }

        if (drift > cfg.divergence_bound) {
            report.classification = Stability::SemistableNotPolystable;
            report.mle.reset();
            return report;
        }
    }

    // Iteration budget exhausted without a certificate. A stabilized capacity
    // with steadily drifting factors indicates a maximizing sequence that
    // leaves every compact set: semistable but not polystable.
    const std::size_t k = cap_history.size();
    const std::size_t window = std::max<std::size_t>(1, k / 4);
    const double cap_then = cap_history[k - window];
    const double cap_now = cap_history[k - 1];
    const double drift_then = drift_history[k - window];
    const double drift_now = drift_history[k - 1];
    const bool cap_stabilized =
        std::abs(cap_now - cap_then) <= kCapStabilizedRel * std::max(cap_now, 1e-300);
    const bool drift_growing = (drift_now - drift_then) > kDriftGrowthMin;
    if (cap_stabilized && drift_growing) {
        report.classification = Stability::SemistableNotPolystable;
        report.mle.reset();
    } else {
        report.classification = Stability::Undetermined;
    }
    return report;
}

StabilityReport classify(const SampleTuple& y, const FlipFlopConfig& cfg) {
    StabilityReport report = flip_flop(y, cfg);
    report.stabilizer_dim = stabilizer_lie_dim(y);
    if (report.classification == Stability::Polystable && report.stabilizer_dim == 0) {
        report.classification = Stability::Stable;
    }
    return report;
}

}  // namespace orbitmle
