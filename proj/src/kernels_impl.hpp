#ifndef MATCOUNT_KERNELS_IMPL_HPP
#define MATCOUNT_KERNELS_IMPL_HPP

#include <cstddef>
#include <cstdint>

namespace matcount::kernels::detail {

struct Impl {
    uint64_t (*count_affine_match_i64)(const int64_t*, size_t, int64_t, int64_t, int64_t);
    void (*fma_accumulate_u64)(uint64_t*, const uint64_t*, size_t, uint64_t);
};

Impl scalar_impl();

#if defined(__x86_64__) || defined(_M_X64)
#define MATCOUNT_HAVE_AVX2_TU 1
Impl avx2_impl(); // compiled with AVX2 codegen in its own translation unit
#endif

} // namespace matcount::kernels::detail

#endif
