#pragma once

#include <cstdint>
#include <vector>

#include "orbitmle/types.hpp"

namespace orbitmle {

constexpr int kDefaultTrials = 3;
constexpr long kDefaultEntryBound = 1000;
constexpr std::uint64_t kDefaultSeed = 20210707;

struct CpRankQuery {
    int a = 0;
    int b = 0;
    int c = 0;
    int d = 0;
    int n = 1;
    int trials = kDefaultTrials;
    long entry_bound = kDefaultEntryBound;
    std::uint64_t seed = kDefaultSeed;
};

/// Generic (maximal) rank of sum_i X_i (x) Y_i over X_i in R^{c x a},
/// Y_i in R^{d x b}: Monte-Carlo over integer matrices with exact rational
/// rank per trial, maximum across trials. One-sided error: the rank can only
/// be under-estimated.
int cp_rank(const CpRankQuery& q);

/// Whether the null cone of the left-right SL x SL action fills
/// (R^{m1 x m2})^n, i.e. whether the likelihood is unbounded for every tuple.
bool null_cone_fills(int m1, int m2, int n,
                     int trials = kDefaultTrials,
                     long entry_bound = kDefaultEntryBound,
                     std::uint64_t seed = kDefaultSeed);

struct MltBounds {
    int m1 = 0;
    int m2 = 0;
    int lower_L = 0;       // ceil(m1/m2)
    int alpha_upper = 0;   // floor(max_k(l/k + (m2-k)/(m1-l))) + 1
    int simple_upper_U = 0;  // ceil(m1/m2 + m2/m1)
    int exact_mltb = 0;    // smallest n with null_cone_fills = false
};

/// Bounds and exact threshold for one shape; inputs with m1 < m2 are
/// transposed. The exact threshold is searched over [L, alpha]; if the
/// randomized ranks are inconsistent, trials are widened x4 and the search
/// retried once before failing.
MltBounds mlt_bounds(int m1, int m2,
                     int trials = kDefaultTrials,
                     long entry_bound = kDefaultEntryBound,
                     std::uint64_t seed = kDefaultSeed);

/// Rows for all 2 <= m1 <= max_m1, 2 <= m2 <= m1, ordered by m1 then m2.
std::vector<MltBounds> mlt_table(int max_m1,
                                 int trials = kDefaultTrials,
                                 long entry_bound = kDefaultEntryBound,
                                 std::uint64_t seed = kDefaultSeed);

}  // namespace orbitmle
