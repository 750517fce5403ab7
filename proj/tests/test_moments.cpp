#include <doctest.h>

#include <cmath>
#include <map>

#include "matcount/moments.hpp"
#include "matcount/rng.hpp"

using namespace matcount;

TEST_SUITE_BEGIN("momentlab");

namespace {
const IntPoly X = IntPoly::monomial(1);
const IntPoly X2 = IntPoly::monomial(2);
const IntPoly X3 = IntPoly::monomial(3);

std::map<Int, Int> as_map(const ValueDist& d) {
    return std::map<Int, Int>(d.entries.begin(), d.entries.end());
}

// Independent quadratic-time convolution oracle.
std::map<Int, Int> naive_convolve(const ValueDist& a, const ValueDist& b,
                                  std::optional<uint64_t> p) {
    std::map<Int, Int> out;
    for (const auto& [va, ca] : a.entries)
        for (const auto& [vb, cb] : b.entries) {
            Int v = va + vb;
            if (p) v = Int(mod_u64(v, *p));
            out[v] += ca * cb;
        }
    return out;
}
} // namespace

TEST_CASE("value distributions pinned") {
    CHECK(as_map(value_distribution(X2, 1)) == std::map<Int, Int>{{0, 1}, {1, 2}});
    CHECK(as_map(value_distribution(X3, 1)) == std::map<Int, Int>{{-1, 1}, {0, 1}, {1, 1}});
    const IntPoly affine{std::vector<Int>{Int(1), Int(2)}}; // 2X + 1
    CHECK(as_map(value_distribution(affine, 1)) ==
          std::map<Int, Int>{{-1, 1}, {1, 1}, {3, 1}});
    CHECK(value_distribution(X, 8).total() == 17);
    CHECK(as_map(value_distribution_mod(X2, 2, 5)) ==
          std::map<Int, Int>{{0, 1}, {1, 2}, {4, 2}});
}

TEST_CASE("convolution matches the quadratic oracle on both domains") {
    Rng rng(21);
    for (int t = 0; t < 20; ++t) {
        std::vector<Int> ca, cb;
        const int da = 1 + static_cast<int>(rng.below(3));
        const int db = 1 + static_cast<int>(rng.below(3));
        for (int i = 0; i <= da; ++i) ca.emplace_back(rng.range(-6, 6));
        for (int i = 0; i <= db; ++i) cb.emplace_back(rng.range(-6, 6));
        const IntPoly f{std::move(ca)}, g{std::move(cb)};
        const long Ha = static_cast<long>(rng.below(9));
        const long Hb = static_cast<long>(rng.below(9));

        const ValueDist a = value_distribution(f, Ha);
        const ValueDist b = value_distribution(g, Hb);
        CHECK(as_map(convolve(a, b)) == naive_convolve(a, b, std::nullopt));

        const ValueDist am = value_distribution_mod(f, 5, 11);
        const ValueDist bm = value_distribution_mod(g, 4, 11);
        CHECK(as_map(convolve(am, bm)) == naive_convolve(am, bm, 11));
    }
}

TEST_CASE("value scaling") {
    const ValueDist d = value_distribution(X2, 1); // {0:1, 1:2}
    CHECK(as_map(scale_values(d, -3)) == std::map<Int, Int>{{-3, 2}, {0, 1}});
    CHECK(scale_values(d, 1).entries == d.entries);
}

TEST_CASE("even moments pinned and brute-checked") {
    CHECK(even_moment_I(X, 1, 4).value == 19);
    CHECK(even_moment_I(X2, 1, 4).value == 33);
    for (long H = 0; H <= 12; ++H) CHECK(even_moment_I(X3, H, 2).value == 2 * H + 1);

    // Direct 4-variable enumeration oracle for small boxes.
    for (long H = 1; H <= 4; ++H) {
        Int brute = 0;
        for (long x1 = -H; x1 <= H; ++x1)
            for (long x2 = -H; x2 <= H; ++x2)
                for (long y1 = -H; y1 <= H; ++y1)
                    for (long y2 = -H; y2 <= H; ++y2)
                        if (x1 * x1 * x1 + x2 * x2 * x2 == y1 * y1 * y1 + y2 * y2 * y2) brute += 1;
        CHECK(even_moment_I(X3, H, 4).value == brute);
    }

    // Closed form for the linear fourth moment.
    for (long H = 1; H <= 50; ++H) {
        const Int N(2 * H + 1);
        CHECK(even_moment_I(X, H, 4).value == N * (2 * N * N + 1) / 3);
    }

    CHECK_THROWS_AS((void)even_moment_I(X, 5, 3), std::invalid_argument);
    CHECK_THROWS_AS((void)even_moment_I(X, 5, 0), std::invalid_argument);
}

TEST_CASE("moment results carry their method tag") {
    const MomentResult r = even_moment_I(X, 3, 4);
    CHECK(r.exact);
    CHECK(r.method == "convolution");
    CHECK(r.k == 4);
    CHECK(r.H == 3);
    CHECK_FALSE(r.p.has_value());
}

TEST_CASE("diophantine counts pinned") {
    CHECK(diophantine_count({X2, X2}, {Int(1), Int(-1)}, 1) == 5);
    CHECK(diophantine_count({X, X, X}, {Int(1), Int(1), Int(1)}, 1) == 7);
    CHECK(diophantine_count({X, X}, {Int(2), Int(-2)}, 1) == 3);
    // Equal-weight difference equals the second moment.
    for (long H = 1; H <= 10; ++H)
        CHECK(Rat(diophantine_count({X2, X2}, {Int(1), Int(-1)}, H)) ==
              even_moment_I(X2, H, 2).value);
    // Five-variable brute cross-check.
    const std::vector<IntPoly> fs = {X, X2, X};
    const std::vector<Int> as = {Int(2), Int(1), Int(-3)};
    for (long H = 1; H <= 5; ++H) {
        Int brute = 0;
        for (long x = -H; x <= H; ++x)
            for (long y = -H; y <= H; ++y)
                for (long z = -H; z <= H; ++z)
                    if (2 * x + y * y - 3 * z == 0) brute += 1;
        CHECK(diophantine_count(fs, as, H) == brute);
    }
    CHECK_THROWS_AS((void)diophantine_count({X, X}, {Int(1), Int(0)}, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)diophantine_count({X}, {Int(1)}, 2), std::invalid_argument);
}

TEST_CASE("residue moments pinned") {
    CHECK(moment_J(X2, 2, 5, 2).value == 9);
    for (long H = 1; H <= 5; ++H) CHECK(moment_J(X, H, 11, 2).value == 2 * H + 1);
    for (uint64_t p : {5ull, 7ull, 11ull}) {
        const long H = static_cast<long>((p - 1) / 2);
        CHECK(moment_J(X, H, p, 4).value == Rat(pow_int(Int(static_cast<long>(p)), 3)));
    }
    CHECK_THROWS_AS((void)moment_J(X, 3, 5, 2), std::invalid_argument);  // 2H+1 > p
    CHECK_THROWS_AS((void)moment_J(X, 2, 6, 2), std::invalid_argument);  // composite
}

TEST_CASE("no-wraparound residue moments equal integer moments") {
    // max |x^2| on [-3,3] is 9; for p > 2k*9 the congruence has no wrap.
    for (int k2 : {2, 4}) {
        const MomentResult I = even_moment_I(X2, 3, k2);
        const MomentResult J = moment_J(X2, 3, 101, k2);
        CHECK(I.value == J.value);
    }
}

TEST_CASE("convolution and grid routes agree") {
    struct Case {
        IntPoly f;
        long H;
        uint64_t p;
        int k;
    } cases[] = {
        {X2, 2, 5, 2},
        {X2, 50, 101, 2},
        {X2, 50, 101, 4},
        {X3, 20, 73, 4},
    };
    for (const auto& c : cases) {
        const double exact = moment_J(c.f, c.H, c.p, c.k).value.get_d();
        const MomentResult grid = moment_J_grid(c.f, c.H, c.p, c.k);
        CHECK_FALSE(grid.exact);
        CHECK(grid.method == "grid");
        CHECK(std::abs(grid.value_f - exact) <= 1e-6 * std::abs(exact));
        CHECK(grid.err_bound > 0);
    }
    // Odd k only has the grid route; moment_J must delegate.
    const MomentResult odd = moment_J(X2, 2, 11, 3);
    CHECK_FALSE(odd.exact);
    CHECK(odd.method == "grid");
    CHECK(odd.value_f > 0);
}

TEST_CASE("moment sequence is log-convex") {
    for (const IntPoly& f : {X, X2, X3}) {
        for (long H : {3L, 7L, 12L}) {
            const Rat i2 = even_moment_I(f, H, 2).value;
            const Rat i4 = even_moment_I(f, H, 4).value;
            const Rat i6 = even_moment_I(f, H, 6).value;
            CHECK(i4 * i4 <= i2 * i6);
            CHECK(i4 >= i2);
        }
    }
}

TEST_CASE("budget refusals name the failing stage") {
    CHECK_THROWS_AS((void)even_moment_I(X, 60, 6, Int(50)), budget_error);
    try {
        (void)even_moment_I(X, 60, 6, Int(50));
        FAIL("expected budget refusal");
    } catch (const budget_error& e) {
        CHECK(std::string(e.what()).find("budget") != std::string::npos);
        CHECK(e.required > e.limit);
    }
}

TEST_CASE("slope estimation") {
    auto pt = [](long h, long c) { return std::make_pair(Int(h), Int(c)); };
    CHECK(slope_estimate({pt(10, 100), pt(100, 10000)}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(slope_estimate({pt(10, 10), pt(100, 100), pt(1000, 1000)}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(slope_estimate({pt(2, 7 * 8), pt(4, 7 * 64), pt(8, 7 * 512)}) ==
          doctest::Approx(3.0).epsilon(1e-9));
    CHECK_THROWS_AS((void)slope_estimate({pt(10, 100)}), std::invalid_argument);
    CHECK_THROWS_AS((void)slope_estimate({pt(10, 100), pt(10, 200)}), std::invalid_argument);
    CHECK_THROWS_AS((void)slope_estimate({pt(10, 0), pt(20, 5)}), std::invalid_argument);
}

TEST_SUITE_END();
