#ifndef MATCOUNT_EXPONENTS_HPP
#define MATCOUNT_EXPONENTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "matcount/int.hpp"

namespace matcount {

// The power-saving parameter s_t carries a documented ambiguity: a lookup
// table with fractional values for 3 <= t <= 10, and an integer formula
// (largest s <= d with s(s+1) <= t+1) that disagrees with the table at
// small t. Both readings are available; the default uses the table below
// t = 11 and the integer formula from there on.
enum class SParamMode { table_then_formula, formula_only };

// s_t for t >= 3, entry-degree cap d >= 3. Exact rational.
Rat s_param(int t, int d, SParamMode mode = SParamMode::table_then_formula);

// sigma_k = s_{k-1} for 4 <= k <= 11 (table branch; d-independent there).
Rat sigma_param(int k);

// max over {0} and {(t-1)m - n(s_t - 1) - r(t - s_t) : t = 3..r}.
// Requires n >= m >= r >= 1 and d >= 3; the t-range is empty for r <= 2.
Rat delta_exponent(int d, int m, int n, int r, SParamMode mode = SParamMode::table_then_formula);

// max{0, m - (n+r)/2, m(r-1) - n - r(r-2)}. Requires n >= m >= r >= 3.
Rat gamma_exponent(int m, int n, int r);

// Catalogue of the named upper-bound exponents computed by this module.
// Values are exponent pairs (h, q) meaning H^h * p^q; pure-H bounds have
// q = 0. Names follow the literature the bounds come from or the shape
// of the counted set, not any numbering scheme.
enum class BoundFormula {
    katznelson,               // integer matrices of rank r: H^{nr}
    blomer_li,                // H^{mr + (n-r)(r-1)}
    rank_mod_asymptotic,      // main (2H+1)^{mn} p^{-(m-r)(n-r)} plus two error branches
    rank_mod_minmax,          // max{H^{mr}, H^{mn} p^{-(m-r)(n-r)}}
    poly_rank_box,            // H^{m + nr - r + Delta(d,m,n,r)}
    poly_rank_box_simple,     // three-term variant of poly_rank_box
    poly_rank_box_square,     // m = n: H^{nr + (n-r)(r - s_r + 1)}
    poly_rank_nonproportional,// rows pairwise non-proportional: two-branch max
    poly_singular_box,        // m = n, det = a: H^{n^2 - s_{n-1}}
    poly_rank_mod,            // H^{m + nr - r + Gamma(m,n,r)}
    poly_rank_mod_square,     // m = n: H^{nr + (n-r)(r-1)}
};

std::string bound_formula_name(BoundFormula f);
std::vector<BoundFormula> all_bound_formulas();

struct BoundBranch {
    std::string label;
    Rat h_exp;
    Rat p_exp; // 0 for pure-H bounds
};

struct BoundParams {
    int d = 0;
    int m = 0;
    int n = 0;
    int r = 0;
    std::optional<Int> H;      // supply with p to select the max branch
    std::optional<Int> p;
    bool force = false;        // evaluate outside stated hypotheses
};

struct BoundEval {
    BoundFormula formula;
    std::vector<BoundBranch> branches;
    int selected = -1;         // argmax branch at (H, p) when supplied
    bool outside_hypotheses = false; // set when force bypassed a check
    std::string note;          // validity conditions that are not checked numerically
};

// Exponents of the named bound at the given parameters. Stated hypotheses
// are enforced (error names the violated inequality) unless force is set,
// in which case the result is flagged outside_hypotheses. When H and p
// are supplied the branches are compared exactly (integer powers after
// clearing exponent denominators) and `selected` is filled.
BoundEval predicted_exponent(BoundFormula f, const BoundParams& params);

} // namespace matcount

#endif
