#ifndef MATCOUNT_MULTIPOLY_HPP
#define MATCOUNT_MULTIPOLY_HPP

#include <map>
#include <string>
#include <vector>

#include "matcount/int.hpp"
#include "matcount/poly.hpp"

namespace matcount {

// Sparse multivariate polynomial over a fixed variable registry.
// Terms live in a map under graded-lexicographic order (total degree
// first, then exponent vectors), which fixes printing and equality.
class MultiPoly {
public:
    struct GradedLex {
        bool operator()(const std::vector<int>& a, const std::vector<int>& b) const;
    };
    using TermMap = std::map<std::vector<int>, Int, GradedLex>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> var_names);

    static MultiPoly constant(std::vector<std::string> var_names, const Int& c);
    // x_var^1 with coefficient 1.
    static MultiPoly variable(std::vector<std::string> var_names, size_t var);
    // Lift a univariate polynomial into the registry at variable index `var`.
    static MultiPoly lift(std::vector<std::string> var_names, size_t var, const IntPoly& f);

    size_t nvars() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    unsigned total_degree() const; // 0 for the zero polynomial
    unsigned degree_in(size_t var) const;
    bool is_homogeneous() const;

    void add_term(const std::vector<int>& exps, const Int& coeff);

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly scaled(const Int& c) const;
    bool operator==(const MultiPoly& o) const;

    Int eval(const std::vector<Int>& point) const;
    // Substitute constants for a subset of variables (nullopt = keep).
    MultiPoly substitute(const std::vector<std::optional<Int>>& values) const;

    // Multiply each term by Z^(target - degree) for a fresh final variable
    // Z; requires target >= total degree of every term.
    MultiPoly homogenized(unsigned target, const std::string& zname = "Z") const;

    std::string to_string() const;

private:
    std::vector<std::string> names_;
    TermMap terms_;
    void check_same_registry(const MultiPoly& o) const;
};

// Variable names X11, X12, ..., Xmn for an m x n matrix of entry variables.
std::vector<std::string> entry_var_names(int m, int n);

// Full Leibniz expansion of det(f_ij(X_ij)) over the n^2 entry variables.
// Square spec, n <= 5.
MultiPoly symbolic_determinant(const PolyMatrixSpec& spec);

// Determinant after replacing all rows below the first with the constant
// block [1 | I_{n-1}]; returns a polynomial in the first-row variables
// X11..X1n. Square spec, 3 <= n <= 5. Expands the substituted matrix;
// the closed form f_11 - f_12 - ... - f_1n is the independent check.
MultiPoly specialize_first_row(const PolyMatrixSpec& spec);

// Integer linear combination of all r x r minors of the symbolic matrix,
// coefficients indexed by (row subset, column subset) pairs with subsets
// in lexicographic order, row-subset index major. Square spec,
// 3 <= r <= n <= 4; at least one coefficient must be nonzero.
MultiPoly minor_combination(const PolyMatrixSpec& spec, int r, const std::vector<Int>& coeffs);

} // namespace matcount

#endif
