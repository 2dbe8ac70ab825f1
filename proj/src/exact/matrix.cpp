#include "pfspec/exact/matrix.hpp"

#include <gmpxx.h>

namespace pfspec::exact {

std::size_t rank_fraction_free(const QMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < cols; ++j) {
            const mpz_class den = m(i, j).denominator();
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
        }
        for (std::size_t j = 0; j < cols; ++j) {
            mpq_class v = m(i, j).raw() * l;
            a[i][j] = v.get_num();
        }
    }

    std::size_t rank = 0;
    mpz_class prev = 1;
    mpz_class t;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[rank]);
        const mpz_class& piv = a[rank][c];
        for (std::size_t i = rank + 1; i < rows; ++i) {
            const mpz_class aic = a[i][c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                // a_ij <- (piv * a_ij - a_ic * a_rj) / prev, exact in Z.
                a[i][j] *= piv;
                if (aic != 0 && a[rank][j] != 0) {
                    t = aic * a[rank][j];
                    a[i][j] -= t;
                }
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = piv;
        ++rank;
    }
    return rank;
}

}  // namespace pfspec::exact
