#ifndef MATCOUNT_MATRIX_HPP
#define MATCOUNT_MATRIX_HPP

#include <cstdint>
#include <vector>

#include "matcount/int.hpp"

namespace matcount {

// Dense matrix of exact integers, row-major.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Int(0)) {
        if (r < 1 || c < 1) throw std::invalid_argument("matrix dimensions must be >= 1");
    }

    Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static IntMatrix identity(int n);
};

// Rank over the rationals, by fraction-free (Bareiss) elimination.
// Exact for any size; no floating point anywhere.
int rank_rational(IntMatrix A);

// Rank over F_p, p prime (validated by a probabilistic test; composites
// are rejected).
int rank_mod_p(const IntMatrix& A, uint64_t p);

// Exact determinant (square input) by fraction-free elimination.
Int det(const IntMatrix& A);

// Determinant reduced mod a validated prime, in [0, p).
uint64_t det_mod_p(const IntMatrix& A, uint64_t p);

// Shared validation helper: throws std::invalid_argument unless p is a
// probable prime >= 2. Callers in hot loops validate once and use the
// unchecked internals below.
void require_prime(uint64_t p);

namespace detail {
// Elimination cores over residues in [0, p); no primality re-check.
int rank_mod_p_unchecked(std::vector<uint64_t> a, int rows, int cols, uint64_t p);
uint64_t det_mod_p_unchecked(std::vector<uint64_t> a, int n, uint64_t p);
} // namespace detail

} // namespace matcount

#endif
