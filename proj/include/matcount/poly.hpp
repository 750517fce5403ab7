#ifndef MATCOUNT_POLY_HPP
#define MATCOUNT_POLY_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "matcount/int.hpp"

namespace matcount {

// Univariate polynomial with exact integer coefficients, ascending order.
// The coefficient vector is kept trimmed; the zero polynomial stores {0}.
class IntPoly {
public:
    IntPoly() : coeffs_{Int(0)} {}
    explicit IntPoly(std::vector<Int> coeffs);

    static IntPoly constant(Int c) { return IntPoly(std::vector<Int>{std::move(c)}); }
    static IntPoly monomial(unsigned degree, Int c = Int(1));

    const std::vector<Int>& coeffs() const { return coeffs_; }
    unsigned degree() const { return static_cast<unsigned>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0; }
    bool is_constant() const { return coeffs_.size() == 1; }

    Int eval(const Int& x) const;
    // Value of f(x) reduced into [0, p). p >= 2 is required; p need not be prime.
    uint64_t eval_mod(const Int& x, uint64_t p) const;

    // Height: max |coefficient|.
    Int height() const;
    // Cheap upper bound for max |f(x)| over |x| <= H: sum of |c_i| H^i.
    Int abs_bound_on_box(const Int& H) const;

    std::string to_string(const std::string& var = "X") const;

    bool operator==(const IntPoly& o) const { return coeffs_ == o.coeffs_; }

private:
    std::vector<Int> coeffs_;
};

// m x n matrix of integer polynomials, one independent variable per entry.
struct PolyMatrixSpec {
    int m = 0;
    int n = 0;
    std::vector<IntPoly> entries; // row-major, size m*n

    const IntPoly& at(int i, int j) const { return entries[static_cast<size_t>(i) * n + j]; }
    IntPoly& at(int i, int j) { return entries[static_cast<size_t>(i) * n + j]; }

    bool square() const { return m == n; }
    // True iff every entry has degree >= 1.
    bool all_nonconstant() const;
    unsigned max_degree() const;
    Int height() const;

    void validate() const; // throws std::invalid_argument on malformed dimensions

    // Convenience constructors for common test shapes.
    static PolyMatrixSpec uniform(int m, int n, const IntPoly& f);
    static PolyMatrixSpec linear(int m, int n);            // every entry X
    static PolyMatrixSpec monomial(int m, int n, unsigned d); // every entry X^d
};

nlohmann::json spec_to_json(const PolyMatrixSpec& spec);
PolyMatrixSpec spec_from_json(const nlohmann::json& j);
PolyMatrixSpec load_spec_file(const std::string& path);

// Deterministic in all arguments. Entry (i,j) gets a degree `degree`
// polynomial with coefficients in [-coeff_bound, coeff_bound] and a
// nonzero leading coefficient.
PolyMatrixSpec random_matrix_spec(uint64_t seed, int m, int n, unsigned degree, const Int& coeff_bound);

// A power base^exponent too large to materialize routinely. The exponent
// is either exact or itself a BigPower (one nesting level is enough here).
struct BigPower {
    Int base;
    Int exponent;                            // meaningful when !nested
    std::shared_ptr<const BigPower> nested;  // when set, true exponent is nested's value

    bool exponent_exact() const { return nested == nullptr; }
    // Approximate log2(log2(value)), for order-of-magnitude comparisons.
    // Saturates to +inf far beyond double range.
    double log2_log2() const;
    // Materializes the exact integer; throws std::overflow_error when the
    // result would exceed roughly 2^26 bits.
    Int value() const;
    std::string to_string() const;
};

// Strict order on the represented values, by log2_log2 with exact
// comparison when both sides materialize cheaply.
bool big_power_less(const BigPower& a, const BigPower& b);

// Prime size past which a nonzero integer polynomial combination of the
// given shape cannot vanish identically mod p: (4*norm)^(M^(2^M)) with
// M = binomial(k+d-1, k). The exponent is exact when small enough,
// symbolic otherwise; exponent_exact() records the choice.
BigPower ostrowski_threshold(const Int& norm, unsigned k, unsigned d);

} // namespace matcount

#endif
