#include <doctest.h>

#include <algorithm>
#include <vector>

#include "matcount/kernels.hpp"
#include "matcount/rng.hpp"

using namespace matcount;
using namespace matcount::kernels;

TEST_SUITE_BEGIN("kernels");

TEST_CASE("scalar backend is always available") {
    const auto backends = available_backends();
    CHECK(std::count(backends.begin(), backends.end(), Backend::scalar) == 1);
    CHECK(backend_name(Backend::scalar) == std::string("scalar"));
}

TEST_CASE("affine match count agrees across backends") {
    Rng rng(303);
    for (int t = 0; t < 50; ++t) {
        const size_t n = 1 + rng.below(300);
        std::vector<int64_t> vals(n);
        for (auto& v : vals) v = rng.range(-1000, 1000);
        const int64_t c0 = rng.range(-100000, 100000);
        const int64_t c1 = rng.range(-500, 500);
        const int64_t target = c0 + c1 * vals[rng.below(n)]; // guarantee hits exist sometimes
        size_t naive = 0;
        for (int64_t v : vals)
            if (c0 + c1 * v == target) ++naive;
        for (Backend b : available_backends()) {
            force_backend(b);
            CHECK(count_affine_match_i64(vals.data(), n, c0, c1, target) == naive);
        }
        force_backend(std::nullopt);
        CHECK(count_affine_match_i64(vals.data(), n, c0, c1, target) == naive);
    }
}

TEST_CASE("affine match handles magnitudes near the contract bound") {
    const int64_t big = (int64_t(1) << 61);
    std::vector<int64_t> vals = {big, -big, 0, 1, big - 1};
    for (Backend b : available_backends()) {
        force_backend(b);
        CHECK(count_affine_match_i64(vals.data(), vals.size(), 0, 1, big) == 1);
        CHECK(count_affine_match_i64(vals.data(), vals.size(), 1, 1, 1) == 1);
        CHECK(count_affine_match_i64(vals.data(), vals.size(), 0, -1, big) == 1);
    }
    force_backend(std::nullopt);
}

TEST_CASE("fused accumulate matches the scalar definition including wraparound") {
    Rng rng(404);
    for (int t = 0; t < 30; ++t) {
        const size_t n = 1 + rng.below(200);
        std::vector<uint64_t> src(n), dst0(n), dst1(n);
        for (auto& v : src) v = rng.next();
        for (size_t i = 0; i < n; ++i) dst0[i] = dst1[i] = rng.next();
        const uint64_t scale = rng.next(); // huge scale exercises mod-2^64 wrap
        std::vector<uint64_t> expect = dst0;
        for (size_t i = 0; i < n; ++i) expect[i] += src[i] * scale;
        for (Backend b : available_backends()) {
            force_backend(b);
            std::vector<uint64_t> dst = dst0;
            fma_accumulate_u64(dst.data(), src.data(), n, scale);
            CHECK(dst == expect);
        }
        force_backend(std::nullopt);
    }
}

TEST_SUITE_END();
