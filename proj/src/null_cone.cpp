#include "orbitmle/null_cone.hpp"

#include "orbitmle/rational_rank.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace orbitmle {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(const CpRankQuery& q, int trial) {
    std::uint64_t s = q.seed;
    for (std::uint64_t v : {static_cast<std::uint64_t>(q.a), static_cast<std::uint64_t>(q.b),
                            static_cast<std::uint64_t>(q.c), static_cast<std::uint64_t>(q.d),
                            static_cast<std::uint64_t>(q.n), static_cast<std::uint64_t>(trial)}) {
        s = splitmix64(s ^ v);
    }
    return s;
}

IntMatrix random_int_matrix(int rows, int cols, long bound, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    IntMatrix m(rows, std::vector<mpz_class>(cols));
    for (auto& row : m) {
        for (auto& e : row) e = dist(rng);
    }
    return m;
}

int ceil_div(long long a, long long b) { return static_cast<int>((a + b - 1) / b); }

}  // namespace

int cp_rank(const CpRankQuery& q) {
    if (q.a < 0 || q.b < 0 || q.c < 0 || q.d < 0 || q.n < 1) {
        throw std::invalid_argument("cp_rank dimensions must be nonnegative, n >= 1");
    }
    if (q.trials < 1 || q.entry_bound < 2) {
        throw std::invalid_argument("cp_rank needs trials >= 1 and entry_bound >= 2");
    }
    if (q.a * q.b == 0 || q.c * q.d == 0) return 0;

    int best = 0;
    const int max_rank = std::min(q.a * q.b, q.c * q.d);
    for (int t = 0; t < q.trials && best < max_rank; ++t) {
        std::mt19937_64 rng(trial_seed(q, t));
        IntMatrix sum(q.c * q.d, std::vector<mpz_class>(q.a * q.b, 0));
        for (int i = 0; i < q.n; ++i) {
            IntMatrix x = random_int_matrix(q.c, q.a, q.entry_bound, rng);
            IntMatrix y = random_int_matrix(q.d, q.b, q.entry_bound, rng);
            for (int r1 = 0; r1 < q.c; ++r1)
                for (int r2 = 0; r2 < q.d; ++r2)
                    for (int c1 = 0; c1 < q.a; ++c1)
                        for (int c2 = 0; c2 < q.b; ++c2)
                            sum[r1 * q.d + r2][c1 * q.b + c2] += x[r1][c1] * y[r2][c2];
        }
        best = std::max(best, rational_rank(std::move(sum)));
    }
    return best;
}

bool null_cone_fills(int m1, int m2, int n, int trials, long entry_bound,
                     std::uint64_t seed) {
    if (m1 < m2) std::swap(m1, m2);
    if (m2 < 1 || n < 1) {
        throw std::invalid_argument("null_cone_fills needs m1 >= m2 >= 1, n >= 1");
    }
    if (static_cast<long long>(n) * m2 < m1) return true;  // too few samples, always unbounded

    for (int k = 1; k <= m2; ++k) {
        const int l = ceil_div(static_cast<long long>(m1) * k, m2) - 1;
        const int a = m2 - k;
        const int b = k;
        const int c = m1 - l;
        const int d = n * k - l;
        if (c < 1 || d < 1) continue;
        if (c > static_cast<long long>(n) * a) continue;
        CpRankQuery q;
        q.a = a;
        q.b = b;
        q.c = c;
        q.d = d;
        q.n = n;
        q.trials = trials;
        q.entry_bound = entry_bound;
        q.seed = seed;
        if (cp_rank(q) == c * d) return true;
    }
    return false;
}

MltBounds mlt_bounds(int m1, int m2, int trials, long entry_bound, std::uint64_t seed) {
    if (m1 < m2) std::swap(m1, m2);  // duality
    if (m2 < 1) throw std::invalid_argument("mlt_bounds needs m1 >= m2 >= 1");

    MltBounds out;
    out.m1 = m1;
    out.m2 = m2;
    out.lower_L = ceil_div(m1, m2);
    out.simple_upper_U =
        ceil_div(static_cast<long long>(m1) * m1 + static_cast<long long>(m2) * m2,
                 static_cast<long long>(m1) * m2);

    mpq_class best(0);
    for (int k = 1; k <= m2; ++k) {
        const int l = ceil_div(static_cast<long long>(m1) * k, m2) - 1;
        mpq_class value = mpq_class(l, k) + mpq_class(m2 - k, m1 - l);
        value.canonicalize();
        if (value > best) best = value;
    }
    mpz_class floor_best;
    mpz_fdiv_q(floor_best.get_mpz_t(), best.get_num().get_mpz_t(),
               best.get_den().get_mpz_t());
    out.alpha_upper = static_cast<int>(floor_best.get_si()) + 1;

    out.exact_mltb = 0;
    for (int widened = 0; widened < 2 && out.exact_mltb == 0; ++widened) {
        const int t = widened == 0 ? trials : trials * 4;
        for (int n = out.lower_L; n <= out.alpha_upper; ++n) {
            if (!null_cone_fills(m1, m2, n, t, entry_bound, seed)) {
                out.exact_mltb = n;
                break;
            }
        }
    }
    if (out.exact_mltb == 0) {
        throw std::runtime_error("mlt search failed within the proven bounds");
    }
    return out;
}

std::vector<MltBounds> mlt_table(int max_m1, int trials, long entry_bound,
                                 std::uint64_t seed) {
    if (max_m1 < 2) throw std::invalid_argument("mlt_table needs max_m1 >= 2");
    std::vector<MltBounds> rows;
    for (int m1 = 2; m1 <= max_m1; ++m1) {
        for (int m2 = 2; m2 <= m1; ++m2) {
            rows.push_back(mlt_bounds(m1, m2, trials, entry_bound, seed));
        }
    }
    return rows;
}

}  // namespace orbitmle
