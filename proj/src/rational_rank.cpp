#include "orbitmle/rational_rank.hpp"

#include <utility>

namespace orbitmle {

int rational_rank(IntMatrix m) {
    const int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(m.front().size());
    if (cols == 0) return 0;

    mpz_class prev_pivot = 1;
    int rank = 0;
    for (int step = 0; step < rows && step < cols; ++step) {
        // full pivot search: rank-deficient inputs are the common case here
        int pr = -1, pc = -1;
        for (int i = step; i < rows && pr < 0; ++i) {
            for (int j = step; j < cols; ++j) {
                if (m[i][j] != 0) {
                    pr = i;
                    pc = j;
                    break;
                }
            }
        }
        if (pr < 0) break;
        if (pr != step) std::swap(m[pr], m[step]);
        if (pc != step) {
            for (int i = 0; i < rows; ++i) std::swap(m[i][pc], m[i][step]);
        }
        ++rank;

        const mpz_class pivot = m[step][step];
        for (int i = step + 1; i < rows; ++i) {
            for (int j = step + 1; j < cols; ++j) {
                mpz_class t = m[i][j] * pivot - m[i][step] * m[step][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev_pivot.get_mpz_t());
            }
            m[i][step] = 0;
        }
        prev_pivot = pivot;
    }
    return rank;
}

int rational_rank(const Matrix& m) {
    if (!m.allFinite()) {
        throw DomainError("exact rank requires finite entries");
    }
    const int rows = static_cast<int>(m.rows());
    const int cols = static_cast<int>(m.cols());
    IntMatrix z(rows, std::vector<mpz_class>(cols));
    for (int i = 0; i < rows; ++i) {
        // every double is rational; scale the row to a common integer multiple
        mpz_class lcm = 1;
        std::vector<mpq_class> row(cols);
        for (int j = 0; j < cols; ++j) {
            row[j] = mpq_class(m(i, j));
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(),
                    row[j].get_den().get_mpz_t());
        }
        for (int j = 0; j < cols; ++j) {
            mpq_class scaled = row[j] * mpq_class(lcm);
            z[i][j] = scaled.get_num();  // denominator is 1 after scaling
        }
    }
    return rational_rank(std::move(z));
}

}  // namespace orbitmle
