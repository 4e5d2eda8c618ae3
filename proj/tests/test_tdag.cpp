#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbitmle/tdag.hpp"

using namespace orbitmle;

namespace {

// 1 -> 3 <- 2 with no edge between 1 and 2 (0-based below)
Dag collider() { return Dag::from_edges(3, {{0, 2}, {1, 2}}); }

// 1 -> 2 -> 3 plus the shortcut 1 -> 3: the transitive closure of a path
Dag closed_path() { return Dag::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}); }

// 1 -> 2 -> 3 without the shortcut: not transitive
Dag open_path() { return Dag::from_edges(3, {{0, 1}, {1, 2}}); }

Matrix collider_samples() {
    Matrix y(3, 2);
    y << 1, 0, 1, 0, 0, 1;
    return y;
}

}  // namespace

TEST_CASE("construction validates the graph") {
    CHECK_THROWS_AS(Dag::from_edges(2, {{0, 0}}), DomainError);                 // self-loop
    CHECK_THROWS_AS(Dag::from_edges(2, {{0, 1}, {1, 0}}), DomainError);         // cycle
    CHECK_THROWS_AS(Dag::from_edges(2, {{0, 1}, {0, 1}}), DomainError);         // duplicate
    CHECK_THROWS_AS(Dag::from_edges(2, {{0, 2}}), DimensionError);              // range
    CHECK_THROWS_AS(Dag::from_edges(0, {}), DimensionError);
    Dag g = collider();
    CHECK(g.node_count() == 3);
    CHECK(g.has_edge(0, 2));
    CHECK_FALSE(g.has_edge(2, 0));
    CHECK(g.in_degree() == 2);
    CHECK(g.parents(2) == std::vector<int>{0, 1});
}

TEST_CASE("transitivity detection") {
    CHECK(is_transitive(collider()));
    CHECK(is_transitive(closed_path()));
    CHECK_FALSE(is_transitive(open_path()));
    CHECK(is_transitive(Dag::from_edges(2, {})));
}

TEST_CASE("pattern matrices of a transitive graph form a group") {
    Dag g = closed_path();
    Matrix a = Matrix::Identity(3, 3);
    a(0, 1) = 2.0;
    a(1, 2) = -1.0;
    Matrix b = Matrix::Identity(3, 3);
    b(0, 2) = 3.0;
    b(0, 1) = 0.5;
    REQUIRE(group_pattern_holds(g, a));
    REQUIRE(group_pattern_holds(g, b));
    CHECK(group_pattern_holds(g, a * b));          // closed under products
    CHECK(group_pattern_holds(g, a.inverse()));    // and inverses

    Matrix outside = Matrix::Identity(3, 3);
    outside(2, 0) = 1.0;  // 3 -> 1 is not an edge
    CHECK_FALSE(group_pattern_holds(g, outside));
    CHECK_FALSE(group_pattern_holds(g, Matrix::Zero(3, 3)));  // singular
}

TEST_CASE("inverse escapes the pattern when the graph is not transitive") {
    Dag g = open_path();
    Matrix a = Matrix::Identity(3, 3);
    a(0, 1) = 1.0;
    a(1, 2) = 1.0;
    CHECK(group_pattern_holds(g, a));
    // a^-1 has a nonzero (1,3) entry, which the open path does not allow
    CHECK_FALSE(group_pattern_holds(g, a.inverse()));
}

TEST_CASE("MLE existence per node") {
    Dag g = collider();
    CHECK(mle_exists(g, collider_samples()).exists);
    CHECK(mle_exists(g, collider_samples(), true).exists);

    // child row inside the span of the parents: unbounded, witness reported
    Matrix dependent(3, 2);
    dependent << 1, 0, 0, 1, 1, 1;
    ExistenceResult ex = mle_exists(g, dependent);
    CHECK_FALSE(ex.exists);
    CHECK(ex.witness_node == 2);
    CHECK_FALSE(mle_exists(g, dependent, true).exists);

    // a zero row is always a failure, even with no parents
    Matrix zero_row(3, 2);
    zero_row << 0, 0, 1, 0, 0, 1;
    ExistenceResult zr = mle_exists(g, zero_row);
    CHECK_FALSE(zr.exists);
    CHECK(zr.witness_node == 0);

    CHECK_THROWS_AS(mle_exists(open_path(), collider_samples()), DomainError);
    CHECK_THROWS_AS(mle_exists(g, Matrix::Zero(2, 2)), DimensionError);
}

TEST_CASE("exact and floating rank tests agree on near-dependent rows") {
    Dag g = collider();
    Matrix y(3, 4);
    y << 1, 2, 3, 4, 2, 4, 6, 8.000001, 1, 1, 1, 1;
    CHECK(mle_exists(g, y).exists == mle_exists(g, y, true).exists);
}

TEST_CASE("threshold and colliders") {
    CHECK(mlt_tdag(collider()) == 3);
    CHECK(mlt_tdag(closed_path()) == 3);
    CHECK(mlt_tdag(Dag::from_edges(4, {})) == 1);

    auto cols = unshielded_colliders(collider());
    REQUIRE(cols.size() == 1);
    CHECK(cols[0] == std::array<int, 3>{0, 2, 1});
    CHECK(unshielded_colliders(closed_path()).empty());

    CHECK_FALSE(null_cone_zariski_closed(collider(), 3));
    CHECK(null_cone_zariski_closed(closed_path(), 3));
    CHECK_THROWS_AS(null_cone_zariski_closed(collider(), 2), DomainError);
}

TEST_CASE("collider MLE is twice the identity on the golden samples") {
    TdagMle mle = mle_tdag(collider(), collider_samples());
    CHECK(mle.lambda.norm() == doctest::Approx(0.0));
    CHECK((mle.psi - 2.0 * Matrix::Identity(3, 3)).norm() < 1e-12);
    for (int i = 0; i < 3; ++i) CHECK(mle.omega[i] == doctest::Approx(0.5));
}

TEST_CASE("regression coefficients recover a noiseless linear model") {
    Dag g = closed_path();
    Matrix y(3, 4);
    y.row(0) << 1, -1, 2, 0.5;
    y.row(1) = 2.0 * y.row(0);
    y.row(1)(2) += 1.0;  // keep row 2 of the data outside the span of row 1
    y.row(2) = y.row(0) - y.row(1);
    y.row(2)(3) += 0.25;
    TdagMle mle = mle_tdag(g, y);

    // residuals are orthogonal to the parent rows, so omega is positive
    for (int i = 0; i < 3; ++i) CHECK(mle.omega[i] > 0.0);

    // psi matches (I - L) O^-1 (I - L)^T by construction
    Matrix b = Matrix::Identity(3, 3) - mle.lambda;
    Matrix psi = b * mle.omega.cwiseInverse().asDiagonal() * b.transpose();
    CHECK((mle.psi - psi).norm() < 1e-12);

    // lambda is supported on the edge pattern with zero diagonal
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
            if (j != i && !g.has_edge(j, i)) CHECK(mle.lambda(j, i) == 0.0);
    CHECK(mle.lambda.diagonal().norm() == 0.0);
}

TEST_CASE("MLE maximizes the likelihood over nearby pattern concentrations") {
    Dag g = closed_path();
    Matrix y(3, 5);
    y << 1.0, -0.5, 0.3, 1.2, -0.8,
         0.7,  0.2, -1.1, 0.4,  0.9,
        -0.3,  1.0,  0.6, -0.7, 0.1;
    TdagMle mle = mle_tdag(g, y);
    Matrix s = y * y.transpose() / y.cols();
    auto ll = [&](const Matrix& psi) {
        Eigen::LLT<Matrix> llt(psi);
        REQUIRE(llt.info() == Eigen::Success);
        double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
        return logdet - (psi * s).trace();
    };
    const double best = ll(mle.psi);
    // perturb within the model: tweak a regression weight or an error variance
    for (double eps : {1e-4, -1e-4}) {
        TdagMle p = mle;
        p.lambda(0, 1) += eps;
        Matrix b = Matrix::Identity(3, 3) - p.lambda;
        CHECK(ll(b * p.omega.cwiseInverse().asDiagonal() * b.transpose()) <= best);
        TdagMle q = mle;
        q.omega[2] *= 1.0 + eps;
        Matrix bq = Matrix::Identity(3, 3) - q.lambda;
        CHECK(ll(bq * q.omega.cwiseInverse().asDiagonal() * bq.transpose()) <= best);
    }
}

TEST_CASE("mle_tdag rejects samples without an MLE") {
    Matrix dependent(3, 2);
    dependent << 1, 0, 0, 1, 1, 1;
    CHECK_THROWS_AS(mle_tdag(collider(), dependent), DomainError);
}
