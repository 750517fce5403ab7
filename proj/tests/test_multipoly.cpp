#include <doctest.h>

#include "matcount/matrix.hpp"
#include "matcount/multipoly.hpp"
#include "matcount/rng.hpp"

using namespace matcount;

TEST_SUITE_BEGIN("symbolic");

TEST_CASE("symbolic determinants of the 2x2 model specs") {
    const auto names = entry_var_names(2, 2);
    REQUIRE(names.size() == 4);
    const MultiPoly x11 = MultiPoly::variable(names, 0);
    const MultiPoly x12 = MultiPoly::variable(names, 1);
    const MultiPoly x21 = MultiPoly::variable(names, 2);
    const MultiPoly x22 = MultiPoly::variable(names, 3);

    CHECK(symbolic_determinant(PolyMatrixSpec::linear(2, 2)) == x11 * x22 - x12 * x21);
    const MultiPoly square = symbolic_determinant(PolyMatrixSpec::monomial(2, 2, 2));
    CHECK(square == x11 * x11 * x22 * x22 - x12 * x12 * x21 * x21);
    // The reducibility witness: the square-monomial determinant factors.
    CHECK(square == (x11 * x22 - x12 * x21) * (x11 * x22 + x12 * x21));
}

TEST_CASE("symbolic determinant evaluates to the numeric determinant") {
    Rng rng(42);
    for (int t = 0; t < 100; ++t) {
        const PolyMatrixSpec spec =
            random_matrix_spec(9000 + static_cast<uint64_t>(t), 3, 3, (t % 3) + 1, 4);
        const MultiPoly sym = symbolic_determinant(spec);
        std::vector<Int> point;
        IntMatrix A(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const Int x(rng.range(-6, 6));
                point.push_back(x);
                A.at(i, j) = spec.at(i, j).eval(x);
            }
        CHECK(sym.eval(point) == det(A));
    }
}

TEST_CASE("first-row specialization collapses to the signed row sum") {
    std::vector<std::string> names = {"X11", "X12", "X13"};
    const MultiPoly expect_linear = MultiPoly::variable(names, 0) -
                                    MultiPoly::variable(names, 1) -
                                    MultiPoly::variable(names, 2);
    CHECK(specialize_first_row(PolyMatrixSpec::linear(3, 3)) == expect_linear);

    const IntPoly sq = IntPoly::monomial(2);
    const MultiPoly expect_square = MultiPoly::lift(names, 0, sq) - MultiPoly::lift(names, 1, sq) -
                                    MultiPoly::lift(names, 2, sq);
    CHECK(specialize_first_row(PolyMatrixSpec::monomial(3, 3, 2)) == expect_square);

    for (int n = 4; n <= 5; ++n) {
        std::vector<std::string> row_names;
        for (int j = 1; j <= n; ++j) row_names.push_back("X1" + std::to_string(j));
        const PolyMatrixSpec spec = random_matrix_spec(31 + static_cast<uint64_t>(n), n, n, 3, 5);
        MultiPoly want = MultiPoly::lift(row_names, 0, spec.at(0, 0));
        for (int j = 1; j < n; ++j)
            want = want - MultiPoly::lift(row_names, static_cast<size_t>(j), spec.at(0, j));
        CHECK(specialize_first_row(spec) == want);
    }
}

TEST_CASE("minor combinations") {
    const PolyMatrixSpec spec3 = PolyMatrixSpec::linear(3, 3);
    CHECK(minor_combination(spec3, 3, {Int(1)}) == symbolic_determinant(spec3));

    const PolyMatrixSpec spec4 = random_matrix_spec(77, 4, 4, 2, 3);
    std::vector<Int> e1(16, Int(0)), e2(16, Int(0)), both(16, Int(0));
    e1[0] = 1;
    e2[1] = 1;
    both[0] = 1;
    both[1] = 1;
    CHECK(minor_combination(spec4, 3, both) ==
          minor_combination(spec4, 3, e1) + minor_combination(spec4, 3, e2));

    // First unit vector selects the top-left r x r minor: evaluate both sides.
    Rng rng(55);
    std::vector<Int> point;
    IntMatrix top(3, 3);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Int x(rng.range(-4, 4));
            point.push_back(x);
            if (i < 3 && j < 3) top.at(i, j) = spec4.at(i, j).eval(x);
        }
    CHECK(minor_combination(spec4, 3, e1).eval(point) == det(top));

    CHECK_THROWS_AS((void)minor_combination(spec4, 3, std::vector<Int>(16, Int(0))),
                    std::invalid_argument);
}

TEST_CASE("homogenization") {
    const std::vector<std::string> abc = {"A", "B", "C"};
    const std::vector<std::string> abcz = {"A", "B", "C", "Z"};
    const MultiPoly f = MultiPoly::variable(abc, 0) * MultiPoly::variable(abc, 1) +
                        MultiPoly::variable(abc, 2);
    const MultiPoly want = MultiPoly::variable(abcz, 0) * MultiPoly::variable(abcz, 1) +
                           MultiPoly::variable(abcz, 2) * MultiPoly::variable(abcz, 3);
    CHECK(f.homogenized(2) == want);

    const std::vector<std::string> x = {"X"};
    const std::vector<std::string> xz = {"X", "Z"};
    const MultiPoly cubic =
        MultiPoly::variable(x, 0) * MultiPoly::variable(x, 0) * MultiPoly::variable(x, 0) +
        MultiPoly::constant(x, 1);
    const MultiPoly zc = MultiPoly::variable(xz, 1);
    CHECK(cubic.homogenized(3) ==
          MultiPoly::variable(xz, 0) * MultiPoly::variable(xz, 0) * MultiPoly::variable(xz, 0) +
              zc * zc * zc);

    // Already homogeneous: terms unchanged, Z joins the registry with
    // exponent zero everywhere.
    const MultiPoly homog = MultiPoly::variable(abc, 0) * MultiPoly::variable(abc, 1);
    CHECK(homog.homogenized(2) == MultiPoly::variable(abcz, 0) * MultiPoly::variable(abcz, 1));

    CHECK_THROWS_AS((void)cubic.homogenized(2), std::invalid_argument);
}

TEST_CASE("arithmetic commutes with evaluation") {
    Rng rng(99);
    const std::vector<std::string> names = {"U", "V"};
    for (int t = 0; t < 100; ++t) {
        MultiPoly a = MultiPoly::constant(names, Int(rng.range(-5, 5)));
        MultiPoly b = MultiPoly::variable(names, 0).scaled(Int(rng.range(-5, 5)));
        MultiPoly c = MultiPoly::variable(names, 1);
        const MultiPoly expr = (a + b) * c - b * b;
        const std::vector<Int> point = {Int(rng.range(-7, 7)), Int(rng.range(-7, 7))};
        const Int via_poly = expr.eval(point);
        const Int direct =
            (a.eval(point) + b.eval(point)) * c.eval(point) - b.eval(point) * b.eval(point);
        CHECK(via_poly == direct);
    }
}

TEST_CASE("guards") {
    CHECK_THROWS_AS((void)symbolic_determinant(random_matrix_spec(1, 6, 6, 1, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)specialize_first_row(PolyMatrixSpec::linear(2, 2)),
                    std::invalid_argument);
    const std::vector<std::string> a = {"A"};
    const std::vector<std::string> b = {"B"};
    CHECK_THROWS_AS((void)(MultiPoly::variable(a, 0) + MultiPoly::variable(b, 0)),
                    std::invalid_argument);
}

TEST_SUITE_END();
