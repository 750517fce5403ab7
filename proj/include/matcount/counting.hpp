#ifndef MATCOUNT_COUNTING_HPP
#define MATCOUNT_COUNTING_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "matcount/int.hpp"
#include "matcount/matrix.hpp"
#include "matcount/poly.hpp"
#include "matcount/symgroup.hpp"

namespace matcount {

enum class CountKind {
    rank_eq_Q,             // rank over the rationals equals r
    rank_eq_modp,          // rank over F_p equals r
    det_eq_value,          // det equals a (exactly, or mod p when p is set)
    imm_zero_modp,         // immanant for lambda vanishes mod p
    full_residue_det_zero, // det vanishes mod p, variables over [0, p-1]
};

// Default cap on predicate evaluations per query.
inline const Int& default_eval_budget() {
    static const Int b(1000000000);
    return b;
}

// One box-counting question: how many integer points x in the box make
// the evaluated matrix (f_ij(x_ij)) satisfy the predicate. Queries above
// budget are rejected up front, never truncated.
struct CountQuery {
    PolyMatrixSpec spec;
    long H = 0;
    CountKind kind = CountKind::rank_eq_Q;
    int r = -1;                      // target rank, rank kinds only
    Int a;                           // target determinant, det_eq_value only
    std::optional<Partition> lambda; // character label, imm_zero_modp only
    std::optional<uint64_t> p;
    Int budget = default_eval_budget();
    int shards = 1;
    // Per-variable interval override, row-major over entries; empty means
    // [-H, H] everywhere. Covers dyadic boxes [ceil(H/2), H] and full
    // residue systems [0, p-1]. full_residue_det_zero always enumerates
    // [0, p-1] regardless of this field.
    std::vector<std::pair<long, long>> intervals;
};

struct CountRecord {
    CountQuery query; // echo
    Int count;
    // Predicate evaluations actually performed. The affine fast paths
    // decide the whole last-variable range per evaluation, so this can be
    // far below the box size; it never exceeds it.
    Int evaluations;
    double elapsed = 0.0; // seconds; excluded from deterministic output
    uint64_t seed = 0;    // provenance echo for seeded callers
};

// Exact count of box points with rank(f(x)) = r, over Q or over F_p.
CountRecord count_rank(const CountQuery& q);

// Exact count of box points with det f(x) = a (or det f(x) = a mod p).
CountRecord count_det_value(const CountQuery& q);

// Exact count of box points whose immanant vanishes mod p. Requires every
// entry nonconstant.
CountRecord count_imm_zero_mod_p(const CountQuery& q);

// Exact count of full-residue points (each variable over [0, p-1]) with
// det f(x) vanishing mod p.
CountRecord count_full_residue_zero(const PolyMatrixSpec& spec, uint64_t p,
                                    const Int& budget = default_eval_budget(), int shards = 1);

// Dispatch on q.kind.
CountRecord run_count(const CountQuery& q);

// Reference route: plain enumeration of every box point with a direct
// predicate evaluation, no fast paths, no sharding. The equivalence
// oracle for the engines above.
Int count_brute(const CountQuery& q);

// Output of the low-rank sampler: evaluated matrices of rank <= r built
// by copying the first row's arguments into rows r+1..m.
struct LowRankBatch {
    std::vector<IntMatrix> matrices;
    long attempts = 0; // draws including rejected singular top blocks
    long accepted = 0;
    double acceptance_ratio() const {
        return attempts == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(attempts);
    }
};

// Draws sample_count matrices: the top r rows get fresh arguments in
// [-H, H] (redrawn while the top-left r x r block is singular), rows
// below reuse row 1's arguments entry-wise. Requires the polynomials
// within each column to be equal and 1 <= r <= min(m, n).
LowRankBatch generate_low_rank(const PolyMatrixSpec& spec, long H, int r, long sample_count,
                               uint64_t seed);

} // namespace matcount

#endif
