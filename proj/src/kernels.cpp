#include "matcount/kernels.hpp"

#include <stdexcept>

#include "kernels_impl.hpp"

namespace matcount::kernels {

namespace detail {

static uint64_t count_affine_scalar(const int64_t* vals, size_t n, int64_t c0, int64_t c1, int64_t target) {
    // Unsigned wrap keeps the arithmetic defined; the caller's bound makes
    // wrapped equality coincide with exact equality.
    uint64_t count = 0;
    uint64_t uc0 = static_cast<uint64_t>(c0), uc1 = static_cast<uint64_t>(c1);
    uint64_t ut = static_cast<uint64_t>(target);
    for (size_t i = 0; i < n; ++i)
        count += (uc0 + uc1 * static_cast<uint64_t>(vals[i])) == ut;
    return count;
}

static void fma_scalar(uint64_t* dst, const uint64_t* src, size_t n, uint64_t scale) {
    for (size_t i = 0; i < n; ++i) dst[i] += scale * src[i];
}

Impl scalar_impl() { return Impl{&count_affine_scalar, &fma_scalar}; }

} // namespace detail

static bool avx2_supported() {
#if defined(MATCOUNT_HAVE_AVX2_TU)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

static detail::Impl impl_for(Backend b) {
    switch (b) {
        case Backend::scalar: return detail::scalar_impl();
        case Backend::avx2:
#if defined(MATCOUNT_HAVE_AVX2_TU)
            return detail::avx2_impl();
#else
            break;
#endif
    }
    throw std::invalid_argument("backend not compiled in");
}

namespace {
struct State {
    Backend detected;
    Backend active;
    detail::Impl impl;
};

State& state() {
    static State s = [] {
        Backend b = avx2_supported() ? Backend::avx2 : Backend::scalar;
        return State{b, b, impl_for(b)};
    }();
    return s;
}
} // namespace

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
    }
    return "?";
}

Backend active_backend() { return state().active; }

std::vector<Backend> available_backends() {
    std::vector<Backend> v{Backend::scalar};
    if (avx2_supported()) v.push_back(Backend::avx2);
    return v;
}

void force_backend(std::optional<Backend> b) {
    State& s = state();
    Backend want = b.value_or(s.detected);
    if (want == Backend::avx2 && !avx2_supported())
        throw std::invalid_argument("avx2 backend unavailable on this CPU");
    s.active = want;
    s.impl = impl_for(want);
}

uint64_t count_affine_match_i64(const int64_t* vals, size_t n, int64_t c0, int64_t c1, int64_t target) {
    return state().impl.count_affine_match_i64(vals, n, c0, c1, target);
}

void fma_accumulate_u64(uint64_t* dst, const uint64_t* src, size_t n, uint64_t scale) {
    state().impl.fma_accumulate_u64(dst, src, n, scale);
}

} // namespace matcount::kernels
