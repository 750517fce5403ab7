#include <doctest.h>

#include <nlohmann/json.hpp>

#include "matcount/poly.hpp"
#include "matcount/rng.hpp"

using namespace matcount;

TEST_SUITE_BEGIN("polycore");

namespace {
IntPoly poly(std::vector<long> cs) {
    std::vector<Int> v;
    for (long c : cs) v.emplace_back(c);
    return IntPoly(std::move(v));
}
} // namespace

TEST_CASE("evaluation is exact") {
    CHECK(IntPoly::monomial(3).eval(2) == 8);
    CHECK(poly({1, 0, 2}).eval(-3) == 19); // 2X^2 + 1
    CHECK(IntPoly().eval(7) == 0);
    CHECK(poly({-4, 1}).eval(Int("100000000000000000000")) ==
          Int("99999999999999999996"));
}

TEST_CASE("modular evaluation stays reduced") {
    CHECK(IntPoly::monomial(2).eval_mod(3, 5) == 4);
    CHECK(poly({0, 1, 0, 1}).eval_mod(2, 3) == 1); // X^3 + X at 2 mod 3
    for (uint64_t x = 0; x < 11; ++x) CHECK(IntPoly::monomial(1).eval_mod(x, 11) == x);
}

TEST_CASE("eval and eval_mod agree on reductions") {
    Rng rng(5);
    const uint64_t primes[] = {2, 3, 101, 9973};
    for (int t = 0; t < 200; ++t) {
        std::vector<Int> cs;
        const int deg = static_cast<int>(rng.below(5));
        for (int i = 0; i <= deg; ++i) cs.emplace_back(rng.range(-40, 40));
        const IntPoly f{std::move(cs)};
        const Int x(rng.range(-1000000, 1000000));
        for (uint64_t p : primes) {
            const uint64_t lhs = mod_u64(f.eval(x), p);
            CHECK(lhs == f.eval_mod(mod_u64(x, p), p));
        }
    }
}

TEST_CASE("normal form trims leading zeros") {
    CHECK(poly({1, 0}).degree() == 0);
    CHECK(poly({0, 0, 3}).degree() == 2);
    CHECK(poly({0, 0}).is_zero());
    CHECK(IntPoly().is_zero());
    CHECK(IntPoly::constant(5).is_constant());
    CHECK_FALSE(IntPoly::monomial(1).is_constant());
}

TEST_CASE("box bound dominates every box value") {
    const IntPoly f = poly({-3, 2, 0, -1});
    const Int bound = f.abs_bound_on_box(7);
    for (long x = -7; x <= 7; ++x) CHECK(abs(f.eval(x)) <= bound);
}

TEST_CASE("spec JSON round trip") {
    const PolyMatrixSpec spec = random_matrix_spec(42, 2, 3, 2, 5);
    const PolyMatrixSpec back = spec_from_json(spec_to_json(spec));
    REQUIRE(back.m == 2);
    REQUIRE(back.n == 3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) CHECK(back.at(i, j) == spec.at(i, j));
}

TEST_CASE("random specs are seed-deterministic with exact degree") {
    const PolyMatrixSpec a = random_matrix_spec(7, 3, 3, 2, 3);
    const PolyMatrixSpec b = random_matrix_spec(7, 3, 3, 2, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(a.at(i, j) == b.at(i, j));
            CHECK(a.at(i, j).degree() == 2);
        }
    CHECK(a.all_nonconstant());
    int differing = 0;
    for (uint64_t s = 0; s < 100; ++s) {
        const PolyMatrixSpec x = random_matrix_spec(1000 + s, 2, 2, 1, 3);
        const PolyMatrixSpec y = random_matrix_spec(2000 + s, 2, 2, 1, 3);
        bool same = true;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) same = same && x.at(i, j) == y.at(i, j);
        if (!same) ++differing;
    }
    CHECK(differing == 100);
}

TEST_CASE("fixed spec builders") {
    const PolyMatrixSpec lin = PolyMatrixSpec::linear(2, 3);
    CHECK(lin.at(1, 2) == IntPoly::monomial(1));
    const PolyMatrixSpec sq = PolyMatrixSpec::monomial(3, 3, 2);
    CHECK(sq.at(0, 0) == IntPoly::monomial(2));
    CHECK(sq.max_degree() == 2);
}

TEST_CASE("prime-size threshold calculator") {
    const BigPower a = ostrowski_threshold(2, 2, 1); // M = 1
    CHECK(a.exponent_exact());
    CHECK(a.base == 8);
    CHECK(a.exponent == 1);
    CHECK(a.value() == 8);

    const BigPower b = ostrowski_threshold(1, 2, 2); // M = 3, 3^8 = 6561
    CHECK(b.exponent_exact());
    CHECK(b.base == 4);
    CHECK(b.exponent == 6561);

    CHECK(binomial(3, 2) == 3);

    // Large shapes keep the exponent symbolic and refuse materialization.
    const BigPower c = ostrowski_threshold(1, 5, 5); // M = binom(9,5) = 126
    CHECK_FALSE(c.exponent_exact());
    CHECK_THROWS_AS((void)c.value(), std::overflow_error);

    CHECK_THROWS_AS((void)ostrowski_threshold(0, 2, 2), std::invalid_argument);
}

TEST_CASE("threshold order is monotone in every argument") {
    CHECK(big_power_less(ostrowski_threshold(1, 2, 2), ostrowski_threshold(2, 2, 2)));
    CHECK(big_power_less(ostrowski_threshold(2, 2, 2), ostrowski_threshold(2, 3, 2)));
    CHECK(big_power_less(ostrowski_threshold(2, 2, 2), ostrowski_threshold(2, 2, 3)));
    CHECK(big_power_less(ostrowski_threshold(1, 3, 3), ostrowski_threshold(1, 5, 5)));
}

TEST_SUITE_END();
