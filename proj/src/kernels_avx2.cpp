#include "kernels_impl.hpp"

#if defined(MATCOUNT_HAVE_AVX2_TU)

#include <immintrin.h>

namespace matcount::kernels::detail {

// 64-bit lane-wise product mod 2^64; AVX2 has no mullo_epi64, so build it
// from 32x32 partial products.
static inline __m256i mullo64(__m256i a, __m256i b) {
    __m256i bswap = _mm256_shuffle_epi32(b, 0xB1);
    __m256i prodlh = _mm256_mullo_epi32(a, bswap);
    __m256i zero = _mm256_setzero_si256();
    __m256i prodlh2 = _mm256_hadd_epi32(prodlh, zero);
    __m256i prodlh3 = _mm256_shuffle_epi32(prodlh2, 0x73);
    __m256i prodll = _mm256_mul_epu32(a, b);
    return _mm256_add_epi64(prodll, prodlh3);
}

static uint64_t count_affine_avx2(const int64_t* vals, size_t n, int64_t c0, int64_t c1, int64_t target) {
    __m256i vc0 = _mm256_set1_epi64x(c0);
    __m256i vc1 = _mm256_set1_epi64x(c1);
    __m256i vt = _mm256_set1_epi64x(target);
    __m256i acc = _mm256_setzero_si256();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(vals + i));
        __m256i s = _mm256_add_epi64(vc0, mullo64(vc1, v));
        __m256i eq = _mm256_cmpeq_epi64(s, vt); // all-ones per matching lane
        acc = _mm256_sub_epi64(acc, eq);
    }
    alignas(32) uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    uint64_t count = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    uint64_t uc0 = static_cast<uint64_t>(c0), uc1 = static_cast<uint64_t>(c1);
    uint64_t ut = static_cast<uint64_t>(target);
    for (; i < n; ++i)
        count += (uc0 + uc1 * static_cast<uint64_t>(vals[i])) == ut;
    return count;
}

static void fma_avx2(uint64_t* dst, const uint64_t* src, size_t n, uint64_t scale) {
    __m256i vs = _mm256_set1_epi64x(static_cast<int64_t>(scale));
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i d = _mm256_loadu_si256(reinterpret_cast<__m256i*>(dst + i));
        d = _mm256_add_epi64(d, mullo64(vs, s));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), d);
    }
    for (; i < n; ++i) dst[i] += scale * src[i];
}

Impl avx2_impl() { return Impl{&count_affine_avx2, &fma_avx2}; }

} // namespace matcount::kernels::detail

#endif
