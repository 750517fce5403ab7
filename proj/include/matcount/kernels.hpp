#ifndef MATCOUNT_KERNELS_HPP
#define MATCOUNT_KERNELS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace matcount::kernels {

// Inner loops of the counting and convolution engines. Each kernel has a
// scalar reference implementation and vector variants; the backend is
// chosen once at runtime from CPU capabilities. All variants are exact
// and agree bit-for-bit on every input within the stated contracts.
enum class Backend { scalar, avx2 };

std::string backend_name(Backend b);
// Backend currently in effect (after any force_backend override).
Backend active_backend();
std::vector<Backend> available_backends();
// Testing hook: pin a backend, or pass nullopt to restore detection.
// Throws std::invalid_argument if the backend is unavailable on this CPU.
void force_backend(std::optional<Backend> b);

// Count of indices i with c0 + c1*vals[i] == target.
// Contract: every |c0 + c1*vals[i]| < 2^62 without overflow (caller
// checks bounds before choosing this path).
uint64_t count_affine_match_i64(const int64_t* vals, size_t n, int64_t c0, int64_t c1, int64_t target);

// dst[i] += scale * src[i] for i < n, wrapping mod 2^64.
// Callers guarantee true values stay below 2^64.
void fma_accumulate_u64(uint64_t* dst, const uint64_t* src, size_t n, uint64_t scale);

} // namespace matcount::kernels

#endif
