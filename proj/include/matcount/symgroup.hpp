#ifndef MATCOUNT_SYMGROUP_HPP
#define MATCOUNT_SYMGROUP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matcount/int.hpp"
#include "matcount/matrix.hpp"

namespace matcount {

// Integer partition with parts in non-increasing order; also encodes a
// cycle type when used as a conjugacy class label.
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    explicit Partition(std::vector<int> p);

    int n() const;
    size_t size() const { return parts.size(); }
    bool operator==(const Partition& o) const { return parts == o.parts; }
    bool operator<(const Partition& o) const { return parts < o.parts; }
    std::string to_string() const;
};

// All partitions of n in the canonical order used everywhere in this
// project: reverse-lexicographic, from (n) down to (1,...,1). 1 <= n <= 24.
std::vector<Partition> partitions_of(int n);

// Size of the conjugacy class of S_n with cycle type mu:
// n! / prod_j (j^{m_j} m_j!) over multiplicities m_j of part j.
Int class_size(const Partition& mu);

// Irreducible character chi_lambda evaluated on cycle type mu, by the
// Murnaghan-Nakayama rule. lambda and mu must partition the same n <= 12.
long long character_mn(const Partition& lambda, const Partition& mu);

// Full character table of S_n, rows and columns indexed by
// partitions_of(n), together with class sizes.
struct CharacterTable {
    int n = 0;
    std::vector<Partition> classes;             // also the row labels
    std::vector<Int> sizes;                     // class sizes, same order
    std::vector<std::vector<long long>> values; // values[lambda][mu]

    static CharacterTable build(int n); // n <= 12
    // Exact row orthogonality: sum_mu |C_mu| chi_a(mu) chi_b(mu) = [a==b] n!.
    bool row_orthogonal() const;
};

// Immanant of a square integer matrix with respect to chi_lambda:
// sum over permutations of chi(cycle type) times the diagonal product.
// n <= 10. With a modulus, the result is reduced into [0, p).
Int immanant(const IntMatrix& A, const Partition& lambda);
uint64_t immanant_mod_p(const IntMatrix& A, const Partition& lambda, uint64_t p);

// Immanant for an integer linear combination of irreducible characters;
// multiplicities follow the partitions_of(n) order.
Int immanant_combination(const IntMatrix& A, const std::vector<Int>& multiplicities);

// Permanent by Ryser's inclusion-exclusion formula with Gray-code subset
// order; n <= 20. Cross-check for immanant with lambda = (n).
Int permanent_ryser(const IntMatrix& A);

namespace detail {
// Immanant core over residues with a caller-supplied character value per
// cycle type (indexed in partitions_of(n) order).
uint64_t immanant_mod_p_tabled(const std::vector<uint64_t>& entries, int n,
                               const std::vector<long long>& chi_by_class, uint64_t p);
// Index of a cycle type within partitions_of(n).
int class_index(const Partition& mu);
} // namespace detail

} // namespace matcount

#endif
