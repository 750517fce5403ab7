#ifndef MATCOUNT_INT_HPP
#define MATCOUNT_INT_HPP

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace matcount {

// Exact arithmetic types used throughout. Int is an arbitrary-precision
// integer, Rat an arbitrary-precision rational kept in lowest terms.
using Int = mpz_class;
using Rat = mpq_class;

// Thrown when a query would exceed its enumeration or memory budget.
// `required` is the budget that would have been needed.
struct budget_error : std::runtime_error {
    Int required;
    Int limit;
    budget_error(const std::string& what, Int required_, Int limit_)
        : std::runtime_error(what), required(std::move(required_)), limit(std::move(limit_)) {}
};

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

static_assert(sizeof(long) == 8, "LP64 assumed: long carries int64 exactly");

inline bool fits_i64(const Int& v) {
    return v.fits_slong_p();
}

inline int64_t to_i64(const Int& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("value does not fit in 64 bits");
    return static_cast<int64_t>(v.get_si());
}

// Nonnegative remainder in [0, p).
inline uint64_t mod_u64(const Int& v, uint64_t p) {
    Int r = v % Int(p);
    if (r < 0) r += Int(p);
    return r.get_ui();
}

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, p);
        a = mulmod_u64(a, a, p);
        e >>= 1;
    }
    return r;
}

// Inverse of a modulo prime p; a must be nonzero mod p.
inline uint64_t invmod_u64(uint64_t a, uint64_t p) {
    a %= p;
    if (a == 0) throw std::domain_error("inverse of zero residue");
    int64_t t = 0, newt = 1;
    int64_t r = static_cast<int64_t>(p), newr = static_cast<int64_t>(a);
    while (newr != 0) {
        int64_t q = r / newr;
        int64_t tmp = t - q * newt; t = newt; newt = tmp;
        tmp = r - q * newr; r = newr; newr = tmp;
    }
    if (r != 1) throw std::domain_error("modulus not coprime to argument");
    if (t < 0) t += static_cast<int64_t>(p);
    return static_cast<uint64_t>(t);
}

inline bool probable_prime(uint64_t p) {
    Int v(static_cast<unsigned long>(p));
    return mpz_probab_prime_p(v.get_mpz_t(), 30) != 0;
}

} // namespace matcount

#endif
