#include "orbitmle/tdag.hpp"

#include "orbitmle/rational_rank.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <queue>
#include <string>

namespace orbitmle {

namespace {

int float_rank(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(m);
    const Vector& sing = svd.singularValues();
    const double tol = 1e-10 * std::max(1.0, sing[0]);
    int rank = 0;
    for (Eigen::Index i = 0; i < sing.size(); ++i) {
        if (sing[i] > tol) ++rank;
    }
    return rank;
}

Matrix stack_rows(const Matrix& samples, const std::vector<int>& rows) {
    Matrix out(rows.size(), samples.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) out.row(r) = samples.row(rows[r]);
    return out;
}

void require_transitive(const Dag& g) {
    if (!is_transitive(g)) {
        throw DomainError("graph is not transitive; the pattern matrices do not form a group");
    }
}

}  // namespace

Dag Dag::from_edges(int m, const std::vector<std::pair<int, int>>& edges) {
    if (m < 1) throw DimensionError("graph needs at least one node");
    Dag g;
    g.m_ = m;
    g.parents_.resize(m);
    g.adjacency_.assign(m, std::vector<char>(m, 0));
    for (auto [j, i] : edges) {
        if (j < 0 || j >= m || i < 0 || i >= m) {
            throw DimensionError("edge endpoint out of range: " + std::to_string(j + 1) +
                                 " -> " + std::to_string(i + 1));
        }
        if (j == i) {
            throw DomainError("self-loop at node " + std::to_string(i + 1));
        }
        if (g.adjacency_[j][i]) {
            throw DomainError("duplicate edge " + std::to_string(j + 1) + " -> " +
                              std::to_string(i + 1));
        }
        g.adjacency_[j][i] = 1;
        g.parents_[i].push_back(j);
        g.edges_.emplace_back(j, i);
    }
    for (auto& p : g.parents_) std::sort(p.begin(), p.end());

    // Kahn's algorithm: every node must be scheduled, otherwise there is a cycle.
    std::vector<int> remaining(m);
    for (int i = 0; i < m; ++i) remaining[i] = static_cast<int>(g.parents_[i].size());
    std::queue<int> ready;
    for (int i = 0; i < m; ++i) {
        if (remaining[i] == 0) ready.push(i);
    }
    int scheduled = 0;
    while (!ready.empty()) {
        const int j = ready.front();
        ready.pop();
        ++scheduled;
        for (int i = 0; i < m; ++i) {
            if (g.adjacency_[j][i] && --remaining[i] == 0) ready.push(i);
        }
    }
    if (scheduled != m) throw DomainError("graph contains a directed cycle");
    return g;
}

bool Dag::has_edge(int j, int i) const {
    if (j < 0 || j >= m_ || i < 0 || i >= m_) return false;
    return adjacency_[j][i] != 0;
}

int Dag::in_degree() const {
    int deg = 0;
    for (const auto& p : parents_) deg = std::max(deg, static_cast<int>(p.size()));
    return deg;
}

bool is_transitive(const Dag& g) {
    for (auto [j, i] : g.edges()) {
        for (int k = 0; k < g.node_count(); ++k) {
            if (g.has_edge(i, k) && !g.has_edge(j, k)) return false;
        }
    }
    return true;
}

bool group_pattern_holds(const Dag& g, const Matrix& mat) {
    const int m = g.node_count();
    if (mat.rows() != m || mat.cols() != m) {
        throw DimensionError("matrix size does not match the node count");
    }
    Eigen::FullPivLU<Matrix> lu(mat);
    if (!lu.isInvertible()) return false;
    const double tol = 1e-9 * std::max(1.0, mat.norm());
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) {
            if (j == i || g.has_edge(j, i)) continue;
            if (std::abs(mat(j, i)) > tol) return false;
        }
    }
    return true;
}

ExistenceResult mle_exists(const Dag& g, const Matrix& samples, bool use_exact) {
    require_transitive(g);
    if (samples.rows() != g.node_count()) {
        throw DimensionError("sample matrix must have one row per node");
    }
    const auto rank_of = [&](const Matrix& m) {
        return use_exact ? rational_rank(m) : float_rank(m);
    };
    for (int i = 0; i < g.node_count(); ++i) {
        if (samples.row(i).norm() == 0.0) return {false, i};
        const auto& pa = g.parents(i);
        if (pa.empty()) continue;
        Matrix parent_rows = stack_rows(samples, pa);
        Matrix with_row(parent_rows.rows() + 1, samples.cols());
        with_row.topRows(parent_rows.rows()) = parent_rows;
        with_row.bottomRows(1) = samples.row(i);
        if (rank_of(with_row) == rank_of(parent_rows)) return {false, i};
    }
    return {true, -1};
}

int mlt_tdag(const Dag& g) { return g.in_degree() + 1; }

std::vector<std::array<int, 3>> unshielded_colliders(const Dag& g) {
    std::vector<std::array<int, 3>> out;
    for (int i = 0; i < g.node_count(); ++i) {
        const auto& pa = g.parents(i);
        for (std::size_t a = 0; a < pa.size(); ++a) {
            for (std::size_t b = a + 1; b < pa.size(); ++b) {
                const int j = pa[a];
                const int k = pa[b];
                if (!g.has_edge(j, k) && !g.has_edge(k, j)) {
                    out.push_back({j, i, k});
                }
            }
        }
    }
    return out;
}

bool null_cone_zariski_closed(const Dag& g, int n) {
    require_transitive(g);
    if (n < mlt_tdag(g)) {
        throw DomainError("the criterion needs n >= max in-degree + 1");
    }
    return unshielded_colliders(g).empty();
}

TdagMle mle_tdag(const Dag& g, const Matrix& samples) {
    ExistenceResult ex = mle_exists(g, samples);
    if (!ex.exists) {
        throw DomainError("MLE does not exist: node " + std::to_string(ex.witness_node + 1) +
                          " has a row in the span of its parents");
    }
    const int m = g.node_count();
    const int n = static_cast<int>(samples.cols());
    TdagMle out;
    out.lambda = Matrix::Zero(m, m);
    out.omega = Vector::Zero(m);
    for (int i = 0; i < m; ++i) {
        const auto& pa = g.parents(i);
        Vector residual = samples.row(i).transpose();
        if (!pa.empty()) {
            // minimal-norm coefficients; parent rows may be linearly dependent
            Matrix design = stack_rows(samples, pa).transpose();  // n x |pa|
            Vector coeffs =
                design.completeOrthogonalDecomposition().solve(residual);
            residual -= design * coeffs;
            for (std::size_t a = 0; a < pa.size(); ++a) out.lambda(pa[a], i) = coeffs[a];
        }
        out.omega[i] = residual.squaredNorm() / n;
    }
    Matrix b = Matrix::Identity(m, m) - out.lambda;
    out.psi = b * out.omega.cwiseInverse().asDiagonal() * b.transpose();
    out.psi = 0.5 * (out.psi + out.psi.transpose());
    return out;
}

}  // namespace orbitmle
