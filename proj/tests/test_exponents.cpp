#include <doctest.h>

#include "matcount/exponents.hpp"

using namespace matcount;

TEST_SUITE_BEGIN("exponents");

namespace {
Rat rat(long n, long d = 1) {
    Rat q(n, d);
    q.canonicalize();
    return q;
}

BoundParams params(int d, int m, int n, int r) {
    BoundParams p;
    p.d = d;
    p.m = m;
    p.n = n;
    p.r = r;
    return p;
}
} // namespace

TEST_CASE("power-saving parameter: table branch then integer formula") {
    CHECK(s_param(3, 3) == rat(2));
    CHECK(s_param(3, 9) == rat(2));
    CHECK(s_param(4, 3) == rat(9, 4));
    CHECK(s_param(5, 3) == rat(5, 2));
    CHECK(s_param(6, 3) == rat(11, 4));
    for (int t = 7; t <= 10; ++t) CHECK(s_param(t, 3) == rat(3));
    CHECK(s_param(11, 3) == rat(3));
    CHECK(s_param(20, 4) == rat(4));
    CHECK(s_param(20, 3) == rat(3));
    // The two readings of the parameter disagree at small t.
    CHECK(s_param(3, 3, SParamMode::formula_only) == rat(1));
    CHECK(s_param(11, 3, SParamMode::formula_only) == s_param(11, 3));
    CHECK_THROWS_AS((void)s_param(2, 3), std::invalid_argument);
    CHECK_THROWS_AS((void)s_param(3, 2), std::invalid_argument);
}

TEST_CASE("sigma shifts the saving parameter") {
    CHECK(sigma_param(4) == rat(2));
    CHECK(sigma_param(5) == rat(9, 4));
    CHECK(sigma_param(8) == rat(3));
    CHECK_THROWS_AS((void)sigma_param(3), std::invalid_argument);
    CHECK_THROWS_AS((void)sigma_param(12), std::invalid_argument);
}

TEST_CASE("delta exponent pinned and nonnegative") {
    CHECK(delta_exponent(3, 5, 5, 4) == rat(7, 4));
    CHECK(delta_exponent(3, 6, 6, 3) == rat(3));
    CHECK(delta_exponent(3, 4, 8, 3) == rat(0));
    CHECK(delta_exponent(3, 2, 2, 2) == rat(0)); // empty t-range
    for (int n = 3; n <= 9; ++n)
        for (int m = 3; m <= n; ++m)
            for (int r = 1; r <= m; ++r) CHECK(delta_exponent(3, m, n, r) >= 0);
    CHECK_THROWS_AS((void)delta_exponent(3, 5, 4, 3), std::invalid_argument);
    CHECK_THROWS_AS((void)delta_exponent(2, 5, 5, 3), std::invalid_argument);
}

TEST_CASE("gamma exponent pinned and nonnegative") {
    CHECK(gamma_exponent(5, 5, 3) == rat(2));
    CHECK(gamma_exponent(3, 3, 3) == rat(0));
    CHECK(gamma_exponent(4, 8, 3) == rat(0));
    for (int n = 3; n <= 9; ++n)
        for (int m = 3; m <= n; ++m)
            for (int r = 3; r <= m; ++r) CHECK(gamma_exponent(m, n, r) >= 0);
    CHECK_THROWS_AS((void)gamma_exponent(5, 4, 3), std::invalid_argument);
}

TEST_CASE("named bounds pinned at (d,m,n,r) = (3,5,5,4)") {
    const BoundParams prm = params(3, 5, 5, 4);
    CHECK(predicted_exponent(BoundFormula::poly_rank_box, prm).branches[0].h_exp == rat(91, 4));
    CHECK(predicted_exponent(BoundFormula::blomer_li, prm).branches[0].h_exp == rat(23));
    CHECK(predicted_exponent(BoundFormula::katznelson, prm).branches[0].h_exp == rat(20));
    const BoundEval sing = predicted_exponent(BoundFormula::poly_singular_box, params(3, 5, 5, 4));
    CHECK(sing.branches[0].h_exp == rat(91, 4)); // 25 - s_4
}

TEST_CASE("square-shape reductions hold exactly") {
    for (int n = 4; n <= 12; ++n)
        for (int r = 4; r <= n; ++r) {
            const Rat lhs =
                predicted_exponent(BoundFormula::poly_rank_box, params(3, n, n, r)).branches[0].h_exp;
            const Rat rhs = predicted_exponent(BoundFormula::poly_rank_box_square, params(3, n, n, r))
                                .branches[0]
                                .h_exp;
            CHECK(lhs == rhs);
            const Rat lhs10 =
                predicted_exponent(BoundFormula::poly_rank_box, params(10, n, n, r)).branches[0].h_exp;
            const Rat rhs10 =
                predicted_exponent(BoundFormula::poly_rank_box_square, params(10, n, n, r))
                    .branches[0]
                    .h_exp;
            CHECK(lhs10 == rhs10);
        }
    for (int n = 3; n <= 12; ++n)
        for (int r = 3; r <= n; ++r) {
            const Rat lhs =
                predicted_exponent(BoundFormula::poly_rank_mod, params(3, n, n, r)).branches[0].h_exp;
            const Rat rhs =
                predicted_exponent(BoundFormula::poly_rank_mod_square, params(3, n, n, r))
                    .branches[0]
                    .h_exp;
            CHECK(lhs == rhs);
        }
}

TEST_CASE("saving grows no faster than t") {
    for (int d = 3; d <= 10; ++d) {
        Rat prev = Rat(3) - s_param(3, d);
        for (int t = 4; t <= 40; ++t) {
            const Rat cur = Rat(t) - s_param(t, d);
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("box bound improves on the generic one for square shapes") {
    for (int n = 5; n <= 14; ++n)
        for (int r = 4; r < n; ++r) {
            const Rat ours =
                predicted_exponent(BoundFormula::poly_rank_box, params(3, n, n, r)).branches[0].h_exp;
            const Rat generic =
                predicted_exponent(BoundFormula::blomer_li, params(3, n, n, r)).branches[0].h_exp;
            CHECK(ours <= generic);
        }
}

TEST_CASE("branch catalogue shapes") {
    CHECK(all_bound_formulas().size() == 11);
    for (BoundFormula f : all_bound_formulas()) CHECK(bound_formula_name(f) != "?");
    CHECK(predicted_exponent(BoundFormula::rank_mod_asymptotic, params(3, 3, 3, 2)).branches.size() ==
          3);
    CHECK(predicted_exponent(BoundFormula::rank_mod_minmax, params(3, 3, 3, 2)).branches.size() == 2);
    CHECK(predicted_exponent(BoundFormula::poly_rank_box_simple, params(3, 5, 5, 4)).branches.size() ==
          3);
}

TEST_CASE("branch selection compares exactly at (H, p)") {
    BoundParams prm = params(3, 3, 3, 2);
    prm.H = Int(10);
    prm.p = Int(7);
    const BoundEval ev = predicted_exponent(BoundFormula::rank_mod_minmax, prm);
    REQUIRE(ev.branches.size() == 2);
    CHECK(ev.branches[0].label == "box");     // H^6
    CHECK(ev.branches[1].label == "density"); // H^9 / p
    CHECK(ev.selected == 1);                  // 10^9/7 > 10^6

    prm.p = Int(1000000007);
    CHECK(predicted_exponent(BoundFormula::rank_mod_minmax, prm).selected == 0);
}

TEST_CASE("hypotheses are enforced unless forced") {
    CHECK_THROWS_WITH_AS((void)predicted_exponent(BoundFormula::poly_rank_box, params(3, 5, 5, 3)),
                         "hypothesis violated: n >= m >= r >= 4", std::invalid_argument);
    CHECK_THROWS_AS((void)predicted_exponent(BoundFormula::katznelson, params(3, 4, 4, 4)),
                    std::invalid_argument);
    BoundParams prm = params(3, 5, 5, 3);
    prm.force = true;
    const BoundEval ev = predicted_exponent(BoundFormula::poly_rank_box, prm);
    CHECK(ev.outside_hypotheses);
    CHECK(ev.branches.size() == 1);
}

TEST_SUITE_END();
