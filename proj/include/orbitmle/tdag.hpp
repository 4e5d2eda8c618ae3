#pragma once

#include <array>
#include <utility>

#include "orbitmle/types.hpp"

namespace orbitmle {

/// Directed acyclic graph on m labeled nodes (0-based internally).
/// Construction rejects self-loops and cycles.
class Dag {
public:
    static Dag from_edges(int m, const std::vector<std::pair<int, int>>& edges);

    int node_count() const { return m_; }
    bool has_edge(int j, int i) const;  // j -> i
    const std::vector<int>& parents(int i) const { return parents_[i]; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int in_degree() const;  // max number of parents over nodes

private:
    int m_ = 0;
    std::vector<std::pair<int, int>> edges_;       // (j, i) for j -> i
    std::vector<std::vector<int>> parents_;        // sorted
    std::vector<std::vector<char>> adjacency_;     // adjacency_[j][i] for j -> i
};

/// k -> j and j -> i imply k -> i.
bool is_transitive(const Dag& g);

/// Invertible with every off-diagonal entry outside the edge pattern zero
/// (relative tolerance, to admit numerically computed inverses).
bool group_pattern_holds(const Dag& g, const Matrix& mat);

struct ExistenceResult {
    bool exists = false;
    int witness_node = -1;  // node whose row depends on its parent rows, 0-based
};

/// MLE existence for a TDAG model given an m x n sample matrix: for each node,
/// is its row in the span of the parent rows (a zero row counts as a trivial
/// combination regardless of parents). Exact mode eliminates over the
/// rationals; floating mode uses an SVD rank test. Non-transitive graphs are
/// a DomainError.
ExistenceResult mle_exists(const Dag& g, const Matrix& samples, bool use_exact = false);

/// in_degree(g) + 1.
int mlt_tdag(const Dag& g);

/// All (j, i, k), j < k, with j -> i <- k and no edge between j and k.
std::vector<std::array<int, 3>> unshielded_colliders(const Dag& g);

/// For n >= mlt_tdag(g): the null cone is Zariski closed iff g has no
/// unshielded colliders. Smaller n is a DomainError.
bool null_cone_zariski_closed(const Dag& g, int n);

struct TdagMle {
    Matrix lambda;  // m x m, support inside the edge pattern, zero diagonal
    Vector omega;   // positive diagonal of the error covariance
    Matrix psi;     // (I - lambda) diag(omega)^-1 (I - lambda)^T
};

/// Per-node minimal-norm least-squares regression on parent rows;
/// requires mle_exists(g, samples) to hold.
TdagMle mle_tdag(const Dag& g, const Matrix& samples);

}  // namespace orbitmle
