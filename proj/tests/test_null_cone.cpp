#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "orbitmle/null_cone.hpp"
#include "orbitmle/rational_rank.hpp"

using namespace orbitmle;

namespace {

CpRankQuery query(int a, int b, int c, int d, int n) {
    CpRankQuery q;
    q.a = a;
    q.b = b;
    q.c = c;
    q.d = d;
    q.n = n;
    return q;
}

}  // namespace

TEST_CASE("exact rational rank") {
    IntMatrix m = {{2, 4}, {1, 2}};
    CHECK(rational_rank(std::move(m)) == 1);
    IntMatrix id = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK(rational_rank(std::move(id)) == 3);
    CHECK(rational_rank(IntMatrix{}) == 0);

    // floating entries are treated as exact rationals
    Matrix f(2, 3);
    f << 0.1, 0.2, 0.3, 0.2, 0.4, 0.6;
    CHECK(rational_rank(f) == 1);
    f(1, 2) = 0.6000000001;
    CHECK(rational_rank(f) == 2);
}

TEST_CASE("single Kronecker product has multiplicative rank") {
    // n = 1: rank(X (x) Y) = rank(X) * rank(Y) = min(a,c) * min(b,d)
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
            for (int c = 1; c <= 3; ++c)
                for (int d = 1; d <= 3; ++d)
                    CHECK(cp_rank(query(a, b, c, d, 1)) ==
                          std::min(a, c) * std::min(b, d));
}

TEST_CASE("rank-one factors cap the rank at n") {
    CHECK(cp_rank(query(1, 1, 3, 3, 1)) == 1);
    CHECK(cp_rank(query(1, 1, 3, 3, 2)) == 1);  // column space is one-dimensional
    CHECK(cp_rank(query(1, 2, 2, 1, 2)) == 2);
}

TEST_CASE("cp rank is monotone in the number of summands") {
    int prev = 0;
    for (int n = 1; n <= 4; ++n) {
        int r = cp_rank(query(2, 2, 3, 2, n));
        CHECK(r >= prev);
        prev = r;
    }
}

TEST_CASE("cp rank is deterministic for a fixed seed") {
    CpRankQuery q = query(2, 3, 3, 2, 2);
    CHECK(cp_rank(q) == cp_rank(q));
    q.seed = 12345;
    CpRankQuery q2 = q;
    CHECK(cp_rank(q) == cp_rank(q2));
}

TEST_CASE("degenerate dimensions") {
    CHECK(cp_rank(query(0, 2, 2, 2, 1)) == 0);
    CHECK(cp_rank(query(2, 2, 0, 2, 1)) == 0);
    CHECK_THROWS(cp_rank(query(-1, 2, 2, 2, 1)));
}

TEST_CASE("null cone membership by shape") {
    // fewer than m1/m2 samples: always unbounded
    CHECK(null_cone_fills(3, 2, 1));
    CHECK(null_cone_fills(5, 2, 2));
    // known boundary cases
    CHECK_FALSE(null_cone_fills(3, 2, 2));
    CHECK(null_cone_fills(5, 3, 2));
    CHECK_FALSE(null_cone_fills(5, 3, 3));
    CHECK(null_cone_fills(8, 3, 2));
    CHECK_FALSE(null_cone_fills(8, 3, 3));
    CHECK_FALSE(null_cone_fills(8, 4, 2));
    // square shapes never fill at n = 1
    CHECK_FALSE(null_cone_fills(2, 2, 1));
    CHECK_FALSE(null_cone_fills(4, 4, 1));
}

TEST_CASE("filling is monotone: more samples never fill when fewer do not") {
    for (int n = 2; n <= 4; ++n) {
        CHECK_FALSE(null_cone_fills(3, 2, n));
        CHECK_FALSE(null_cone_fills(4, 4, n));
    }
}

TEST_CASE("threshold bounds sandwich the exact value") {
    for (int m1 = 2; m1 <= 6; ++m1) {
        for (int m2 = 2; m2 <= m1; ++m2) {
            MltBounds row = mlt_bounds(m1, m2);
            CHECK(row.lower_L <= row.exact_mltb);
            CHECK(row.exact_mltb <= row.alpha_upper);
            CHECK(row.alpha_upper <= row.simple_upper_U);
        }
    }
}

TEST_CASE("divisible shapes attain the lower bound") {
    CHECK(mlt_bounds(4, 2).exact_mltb == 2);
    CHECK(mlt_bounds(6, 2).exact_mltb == 3);
    CHECK(mlt_bounds(6, 3).exact_mltb == 2);
    CHECK(mlt_bounds(5, 5).exact_mltb == 1);
}

TEST_CASE("known thresholds where the naive bounds are not tight") {
    CHECK(mlt_bounds(5, 3).exact_mltb == 3);
    CHECK(mlt_bounds(8, 4).exact_mltb == 2);
    CHECK(mlt_bounds(8, 3).exact_mltb == 3);
    CHECK(mlt_bounds(10, 4).exact_mltb == 3);
    CHECK(mlt_bounds(7, 4).exact_mltb == 3);
}

TEST_CASE("shape arguments are transposed when needed") {
    MltBounds a = mlt_bounds(3, 5);
    MltBounds b = mlt_bounds(5, 3);
    CHECK(a.m1 == b.m1);
    CHECK(a.exact_mltb == b.exact_mltb);
}

TEST_CASE("table covers all shapes in order") {
    auto rows = mlt_table(4);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].m1 == 2);
    CHECK(rows[0].m2 == 2);
    CHECK(rows.back().m1 == 4);
    CHECK(rows.back().m2 == 4);
}
