#ifndef MATCOUNT_MOMENTS_HPP
#define MATCOUNT_MOMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matcount/int.hpp"
#include "matcount/poly.hpp"

namespace matcount {

// Exact multiset of values of a polynomial expression over a box. Entries
// are sorted by value with positive counts. Residue-domain distributions
// keep values in [0, p) and convolve cyclically.
struct ValueDist {
    enum class Domain { integers, residues };

    Domain domain = Domain::integers;
    uint64_t p = 0; // modulus, meaningful for residues only
    std::vector<std::pair<Int, Int>> entries;

    bool empty() const { return entries.empty(); }
    Int total() const;
    // Count attached to `value`, zero when absent.
    Int count_of(const Int& value) const;
};

// Per-stage key budget: caps dense table width, histogram length, and
// sparse pair enumeration alike.
inline const Int& default_key_budget() {
    static const Int b(200000000);
    return b;
}

// {f(x) : |x| <= H} with exact multiplicities.
ValueDist value_distribution(const IntPoly& f, long H, const Int& key_budget = default_key_budget());

// {f(x) mod p : |x| <= H}, values reduced into [0, p).
ValueDist value_distribution_mod(const IntPoly& f, long H, uint64_t p,
                                 const Int& key_budget = default_key_budget());

// Distribution of a * value; a must be nonzero. Residue values are
// rescaled mod p.
ValueDist scale_values(const ValueDist& d, const Int& a);

// Distribution of the sum of one draw from each input. Domains (and
// moduli) must match; residue inputs convolve cyclically mod p.
ValueDist convolve(const ValueDist& a, const ValueDist& b, const Int& key_budget = default_key_budget());

struct MomentResult {
    int k = 0;
    long H = 0;
    std::optional<uint64_t> p;
    bool exact = false;
    Rat value;            // meaningful when exact
    double value_f = 0.0; // always set; approximation of `value` when exact
    double err_bound = 0.0; // accumulated rounding bound; zero when exact
    std::string method;     // "convolution" or "grid"
};

// I_k(f, H) for even k >= 2: the number of solutions of
// f(x_1)+...+f(x_{k/2}) = f(y_1)+...+f(y_{k/2}) over the box, computed as
// the sum of squared coefficients of the (k/2)-fold convolution.
MomentResult even_moment_I(const IntPoly& f, long H, int k, const Int& key_budget = default_key_budget());

// T_a: solutions of sum_i a_i f_i(x_i) = 0, |x_i| <= H, all a_i nonzero,
// via meet-in-the-middle on the first ceil(k/2) variables.
Int diophantine_count(const std::vector<IntPoly>& fs, const std::vector<Int>& as, long H,
                      const Int& key_budget = default_key_budget());

// J_k(f, H, p) = (1/p) sum_{alpha mod p} |sum_{|x|<=H} e_p(alpha f(x))|^k.
// Requires p prime and 2H+1 <= p (the box injects into residues).
// Even k: exact via cyclic convolution. Odd k: complex grid with an error
// bound; never used in exact assertions.
MomentResult moment_J(const IntPoly& f, long H, uint64_t p, int k,
                      const Int& key_budget = default_key_budget());

// Direct complex-grid evaluation of J_k for any k >= 1; the independent
// cross-check route for the convolution path. Fixed summation order.
MomentResult moment_J_grid(const IntPoly& f, long H, uint64_t p, int k,
                           const Int& key_budget = default_key_budget());

// Least-squares slope of log(count) against log(H). Requires at least two
// points, H strictly increasing and positive, counts positive.
double slope_estimate(const std::vector<std::pair<Int, Int>>& points);

} // namespace matcount

#endif
