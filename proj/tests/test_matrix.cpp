#include <doctest.h>

#include "matcount/matrix.hpp"
#include "matcount/rng.hpp"

using namespace matcount;

TEST_SUITE_BEGIN("symrank");

namespace {
IntMatrix mat(int rows, int cols, std::vector<long> entries) {
    IntMatrix A(rows, cols);
    for (size_t i = 0; i < entries.size(); ++i) A.a[i] = Int(entries[i]);
    return A;
}
} // namespace

TEST_CASE("rational rank on pinned matrices") {
    for (int n = 1; n <= 5; ++n) CHECK(rank_rational(IntMatrix::identity(n)) == n);
    CHECK(rank_rational(mat(3, 3, {1, 1, 1, 1, 1, 1, 1, 1, 1})) == 1);
    CHECK(rank_rational(mat(2, 2, {1, 2, 2, 4})) == 1);
    CHECK(rank_rational(mat(2, 3, {0, 0, 0, 0, 0, 0})) == 0);
    CHECK(rank_rational(mat(2, 3, {1, 2, 3, 2, 4, 7})) == 2);
}

TEST_CASE("modular rank on pinned matrices") {
    CHECK(rank_mod_p(mat(2, 2, {1, 2, 2, 4}), 5) == 1);
    CHECK(rank_mod_p(mat(2, 2, {7, 0, 0, 7}), 7) == 0);
    CHECK(rank_mod_p(IntMatrix::identity(2), 2) == 2);
    CHECK(rank_mod_p(mat(2, 2, {1, 2, 2, 4}), 2) == 1);
    CHECK_THROWS_AS((void)rank_mod_p(IntMatrix::identity(2), 6), std::invalid_argument);
}

TEST_CASE("determinants, exact and modular") {
    CHECK(det(mat(2, 2, {2, 3, 1, 4})) == 5);
    CHECK(det(IntMatrix::identity(4)) == 1);
    CHECK(det_mod_p(mat(2, 2, {2, 3, 1, 4}), 3) == 2);
    CHECK(det_mod_p(mat(2, 2, {-1, 0, 0, 1}), 5) == 4);
    CHECK_THROWS_AS((void)det(mat(2, 3, {1, 2, 3, 4, 5, 6})), std::invalid_argument);
}

TEST_CASE("modular rank is bounded by rational rank and usually meets it") {
    Rng rng(11);
    const uint64_t primes[] = {10007, 10009, 10037};
    for (int t = 0; t < 1000; ++t) {
        IntMatrix A(4, 4);
        for (Int& v : A.a) v = Int(rng.range(-50, 50));
        const int rq = rank_rational(A);
        bool met = false;
        for (uint64_t p : primes) {
            const int rp = rank_mod_p(A, p);
            CHECK(rp <= rq);
            met = met || rp == rq;
        }
        CHECK(met);
        CHECK((det(A) != 0) == (rq == 4));
    }
}

TEST_CASE("determinant matches the Leibniz oracle on small boxes") {
    // 2x2: all entries in [-2,2].
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b)
            for (long c = -2; c <= 2; ++c)
                for (long d = -2; d <= 2; ++d)
                    CHECK(det(mat(2, 2, {a, b, c, d})) == a * d - b * c);
    // 3x3: all entries in [-2,2], 64-bit Leibniz expansion as the oracle.
    long e[9];
    IntMatrix A(3, 3);
    long mismatches = 0;
    for (long idx = 0; idx < 1953125; ++idx) {
        long v = idx;
        for (int i = 0; i < 9; ++i) {
            e[i] = v % 5 - 2;
            v /= 5;
        }
        const long leib = e[0] * e[4] * e[8] + e[1] * e[5] * e[6] + e[2] * e[3] * e[7] -
                          e[2] * e[4] * e[6] - e[1] * e[3] * e[8] - e[0] * e[5] * e[7];
        for (int i = 0; i < 9; ++i) A.a[static_cast<size_t>(i)] = e[i];
        if (det(A) != leib) ++mismatches;
    }
    CHECK(mismatches == 0);
}

TEST_SUITE_END();
