#pragma once

#include <optional>

#include "orbitmle/types.hpp"

namespace orbitmle {

/// Kronecker factors (Psi1, Psi2) of a concentration matrix Psi1 (x) Psi2.
struct ConcentrationPair {
    Matrix psi1;  // m1 x m1, positive definite
    Matrix psi2;  // m2 x m2, positive definite
};

struct FlipFlopConfig {
    int max_iter = 2000;
    double tol_residual = 1e-9;
    double tol_singular = 1e-12;    // relative eigenvalue cutoff for update matrices
    double divergence_bound = 80.0; // cap on the factor log-eigenvalue spread
};

enum class Stability {
    Unstable,
    SemistableNotPolystable,
    Polystable,
    Stable,
    Undetermined,
};

const char* to_string(Stability s);

struct IterationRecord {
    double log_likelihood;
    double residual;
};

struct StabilityReport {
    Stability classification = Stability::Undetermined;
    double capacity_estimate = 0.0;
    double moment_residual = 0.0;
    int stabilizer_dim = -1;  // -1 when not computed
    std::optional<ConcentrationPair> mle;
    int iterations = 0;
    std::vector<IterationRecord> trace;
};

/// m2*logdet(Psi1) + m1*logdet(Psi2) - (1/n)*tr(Psi1 * sum_i Y_i Psi2 Y_i^T).
double mn_log_likelihood(const SampleTuple& y, const ConcentrationPair& pair);

struct MomentResidual {
    double residual;  // max relative Frobenius deviation of the two moment conditions
    double c1;        // ||Y||^2 / m1
    double c2;        // ||Y||^2 / m2
};

/// Deviation of Y from the vanishing locus of the moment map:
/// sum_i Y_i Y_i^T = c1*I and sum_i Y_i^T Y_i = c2*I, relative to ||Y||^2.
MomentResidual moment_residual(const SampleTuple& y);

/// (det Psi1)^(-1/m1) (det Psi2)^(-1/m2) tr(Psi1 * sum_i Y_i Psi2 Y_i^T):
/// the squared norm of Y under the determinant-one normalization of
/// (Psi1^(1/2), Psi2^(1/2)). An upper bound on the capacity.
double capacity_estimate(const SampleTuple& y, const ConcentrationPair& pair);

/// Dimension of the space of traceless pairs (A, B) with A*Y_i + Y_i*B^T = 0
/// for all i. Zero certifies a finite stabilizer.
int stabilizer_lie_dim(const SampleTuple& y);

/// Alternating concentration updates from Psi2 = I. Statistical outcomes
/// (instability, divergence, non-convergence) are report states, not errors.
StabilityReport flip_flop(const SampleTuple& y, const FlipFlopConfig& cfg = {});

/// flip_flop plus the stabilizer certificate: a converged Polystable outcome
/// with zero stabilizer Lie algebra is upgraded to Stable.
StabilityReport classify(const SampleTuple& y, const FlipFlopConfig& cfg = {});

}  // namespace orbitmle
