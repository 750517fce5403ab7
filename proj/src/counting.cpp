#include "matcount/counting.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <thread>
#include <utility>

#include "matcount/kernels.hpp"
#include "matcount/rng.hpp"

namespace matcount {

namespace {

struct Box {
    std::vector<std::pair<long, long>> iv; // inclusive per-variable ranges
    std::vector<size_t> sizes;
    Int points;
};

constexpr long kMaxRangeLen = 1L << 31;

Box make_box(const PolyMatrixSpec& spec, long H, const std::vector<std::pair<long, long>>& intervals) {
    const size_t mn = static_cast<size_t>(spec.m) * spec.n;
    Box box;
    if (intervals.empty()) {
        if (H < 0) throw std::invalid_argument("H must be nonnegative");
        box.iv.assign(mn, {-H, H});
    } else {
        if (intervals.size() != mn)
            throw std::invalid_argument("interval override must cover every variable");
        box.iv = intervals;
    }
    box.points = 1;
    box.sizes.reserve(mn);
    for (const auto& [lo, hi] : box.iv) {
        if (lo > hi) throw std::invalid_argument("empty variable interval");
        const Int len = Int(hi) - Int(lo) + 1;
        if (len > kMaxRangeLen) throw std::invalid_argument("variable range too large");
        box.points *= len;
        box.sizes.push_back(static_cast<size_t>(len.get_ui()));
    }
    return box;
}

void check_eval_budget(const Box& box, const Int& budget) {
    if (box.points > budget)
        throw budget_error("budget exceeded: box has " + box.points.get_str() +
                               " points, limit " + budget.get_str(),
                           box.points, budget);
}

std::vector<std::vector<Int>> value_tables(const PolyMatrixSpec& spec, const Box& box) {
    std::vector<std::vector<Int>> tables(box.iv.size());
    for (size_t e = 0; e < box.iv.size(); ++e) {
        const IntPoly& f = spec.entries[e];
        tables[e].reserve(box.sizes[e]);
        for (long x = box.iv[e].first; x <= box.iv[e].second; ++x) tables[e].push_back(f.eval(Int(x)));
    }
    return tables;
}

std::vector<std::vector<uint64_t>> residue_tables(const PolyMatrixSpec& spec, const Box& box,
                                                  uint64_t p) {
    std::vector<std::vector<uint64_t>> tables(box.iv.size());
    for (size_t e = 0; e < box.iv.size(); ++e) {
        const IntPoly& f = spec.entries[e];
        tables[e].reserve(box.sizes[e]);
        for (long x = box.iv[e].first; x <= box.iv[e].second; ++x)
            tables[e].push_back(f.eval_mod(Int(x), p));
    }
    return tables;
}

// Mixed-radix odometer over `count` positions with the given table sizes;
// position 0 is restricted to indices [lo0, hi0). Calls body(idx) for
// every assignment, last position varying fastest.
template <class Body>
void enumerate_span(const size_t* sizes, size_t count, size_t lo0, size_t hi0, Body&& body) {
    if (count == 0) {
        body(static_cast<const size_t*>(nullptr));
        return;
    }
    if (lo0 >= hi0) return;
    std::vector<size_t> idx(count, 0);
    idx[0] = lo0;
    for (;;) {
        body(idx.data());
        size_t e = count - 1;
        for (;;) {
            ++idx[e];
            if (idx[e] < (e == 0 ? hi0 : sizes[e])) break;
            if (e == 0) return;
            idx[e] = 0;
            --e;
        }
    }
}

struct ShardResult {
    Int count;
    Int evals;
};

// Splits index range [0, size0) of the outermost variable into contiguous
// slices and sums the shard results in slice order, so the total is
// independent of scheduling.
ShardResult run_sharded(int shards, size_t size0,
                        const std::function<ShardResult(size_t, size_t)>& worker) {
    if (shards <= 1) return worker(0, size0);
    std::vector<ShardResult> parts(static_cast<size_t>(shards));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(shards));
    for (int k = 0; k < shards; ++k) {
        const size_t lo = size0 * static_cast<size_t>(k) / static_cast<size_t>(shards);
        const size_t hi = size0 * static_cast<size_t>(k + 1) / static_cast<size_t>(shards);
        threads.emplace_back([&parts, &worker, k, lo, hi] { parts[static_cast<size_t>(k)] = worker(lo, hi); });
    }
    for (auto& t : threads) t.join();
    ShardResult total;
    for (const auto& part : parts) {
        total.count += part.count;
        total.evals += part.evals;
    }
    return total;
}

uint64_t submod(uint64_t a, uint64_t b, uint64_t p) { return a >= b ? a - b : a + p - b; }

// Incremental row-echelon accumulator over F_p. Stored rows are zero left
// of their pivot column and normalized to pivot 1; pivot columns are
// pairwise distinct, so stored rows stay independent.
struct EchelonP {
    uint64_t p = 2;
    int cols = 0;
    std::vector<std::vector<uint64_t>> rows;
    std::vector<int> pivcol;

    // Eliminates `row` against the stored rows in place; returns the
    // column of the leading surviving entry, or -1 when dependent.
    int reduce(std::vector<uint64_t>& row) const {
        for (int c = 0; c < cols; ++c) {
            if (row[c] == 0) continue;
            int k = -1;
            for (size_t i = 0; i < pivcol.size(); ++i)
                if (pivcol[i] == c) { k = static_cast<int>(i); break; }
            if (k < 0) return c;
            const uint64_t f = row[c];
            for (int j = c; j < cols; ++j)
                row[j] = submod(row[j], mulmod_u64(f, rows[static_cast<size_t>(k)][static_cast<size_t>(j)], p), p);
        }
        return -1;
    }

    void add_row(std::vector<uint64_t> row) {
        const int c = reduce(row);
        if (c < 0) return;
        const uint64_t inv = invmod_u64(row[static_cast<size_t>(c)], p);
        for (int j = c; j < cols; ++j)
            row[static_cast<size_t>(j)] = mulmod_u64(row[static_cast<size_t>(j)], inv, p);
        rows.push_back(std::move(row));
        pivcol.push_back(c);
    }

    int rank_with(std::vector<uint64_t> row) const {
        return static_cast<int>(rows.size()) + (reduce(row) >= 0 ? 1 : 0);
    }
};

// Same accumulator over Q, fraction-free: reductions cross-multiply by
// the (nonzero) pivot, which rescales rows without changing rank.
struct EchelonQ {
    int cols = 0;
    std::vector<std::vector<Int>> rows;
    std::vector<int> pivcol;

    int reduce(std::vector<Int>& row) const {
        for (int c = 0; c < cols; ++c) {
            if (row[c] == 0) continue;
            int k = -1;
            for (size_t i = 0; i < pivcol.size(); ++i)
                if (pivcol[i] == c) { k = static_cast<int>(i); break; }
            if (k < 0) return c;
            const Int f = row[static_cast<size_t>(c)];
            const std::vector<Int>& piv = rows[static_cast<size_t>(k)];
            const Int pv = piv[static_cast<size_t>(c)];
            for (int j = c; j < cols; ++j)
                row[static_cast<size_t>(j)] = pv * row[static_cast<size_t>(j)] - f * piv[static_cast<size_t>(j)];
        }
        return -1;
    }

    void add_row(std::vector<Int> row) {
        const int c = reduce(row);
        if (c < 0) return;
        rows.push_back(std::move(row));
        pivcol.push_back(c);
    }

    int rank_with(std::vector<Int> row) const {
        return static_cast<int>(rows.size()) + (reduce(row) >= 0 ? 1 : 0);
    }
};

void require_prime_param(const std::optional<uint64_t>& p) {
    if (!p) throw std::invalid_argument("query kind requires a prime p");
    require_prime(*p);
}

// Count of box points with rank(f(x)) = r. The prefix odometer fixes the
// first m-1 rows and keeps their echelon form; each last-row point only
// pays one row reduction.
struct RankPrep {
    int m = 0;
    int n = 0;
    int r = -1;
    bool modp = false;
    uint64_t p = 2;
    std::vector<std::vector<Int>> vq;
    std::vector<std::vector<uint64_t>> vp;
};

RankPrep make_rank(const CountQuery& q, const Box& box) {
    RankPrep prep;
    prep.m = q.spec.m;
    prep.n = q.spec.n;
    prep.r = q.r;
    prep.modp = q.kind == CountKind::rank_eq_modp;
    if (prep.modp) {
        prep.p = *q.p;
        prep.vp = residue_tables(q.spec, box, prep.p);
    } else {
        prep.vq = value_tables(q.spec, box);
    }
    return prep;
}

ShardResult run_rank(const RankPrep& prep, const Box& box, size_t lo0, size_t hi0) {
    const int m = prep.m, n = prep.n;
    const size_t nprefix = static_cast<size_t>(m - 1) * n;
    const size_t ilo = nprefix == 0 ? lo0 : 0;
    const size_t ihi = nprefix == 0 ? hi0 : box.sizes[nprefix];
    ShardResult out;
    uint64_t evals = 0;
    enumerate_span(box.sizes.data(), nprefix, lo0, hi0, [&](const size_t* idx) {
        EchelonP echp;
        EchelonQ echq;
        if (prep.modp) {
            echp.p = prep.p;
            echp.cols = n;
        } else {
            echq.cols = n;
        }
        for (int i = 0; i + 1 < m; ++i) {
            if (prep.modp) {
                std::vector<uint64_t> row(static_cast<size_t>(n));
                for (int j = 0; j < n; ++j) {
                    const size_t e = static_cast<size_t>(i) * n + j;
                    row[static_cast<size_t>(j)] = prep.vp[e][idx[e]];
                }
                echp.add_row(std::move(row));
            } else {
                std::vector<Int> row(static_cast<size_t>(n));
                for (int j = 0; j < n; ++j) {
                    const size_t e = static_cast<size_t>(i) * n + j;
                    row[static_cast<size_t>(j)] = prep.vq[e][idx[e]];
                }
                echq.add_row(std::move(row));
            }
        }
        uint64_t matched = 0;
        enumerate_span(box.sizes.data() + nprefix, static_cast<size_t>(n), ilo, ihi,
                       [&](const size_t* jdx) {
                           int rank;
                           if (prep.modp) {
                               std::vector<uint64_t> row(static_cast<size_t>(n));
                               for (int j = 0; j < n; ++j)
                                   row[static_cast<size_t>(j)] = prep.vp[nprefix + j][jdx[j]];
                               rank = echp.rank_with(std::move(row));
                           } else {
                               std::vector<Int> row(static_cast<size_t>(n));
                               for (int j = 0; j < n; ++j)
                                   row[static_cast<size_t>(j)] = prep.vq[nprefix + j][jdx[j]];
                               rank = echq.rank_with(std::move(row));
                           }
                           ++evals;
                           if (rank == prep.r) ++matched;
                       });
        out.count += matched;
    });
    out.evals = evals;
    return out;
}

// Shared scaffolding for the mod-p affine kinds (determinant and
// immanant): per prefix the predicate value is c0 + c1 * t in the last
// entry's value t, so one histogram lookup decides the whole last range.
struct AffineModPrep {
    int n = 0;
    uint64_t p = 2;
    uint64_t target = 0;
    bool imm = false;
    std::vector<long long> chi; // by cycle type, imm only
    std::vector<std::vector<uint64_t>> res;
    std::vector<uint64_t> hist; // residue histogram of the last entry
    uint64_t last_range = 0;
    std::vector<uint64_t> inv; // inverse table, 1..p-1
};

AffineModPrep make_affine_mod(const CountQuery& q, const Box& box, uint64_t target_mod) {
    AffineModPrep prep;
    prep.n = q.spec.n;
    prep.p = *q.p;
    prep.target = target_mod;
    prep.imm = q.kind == CountKind::imm_zero_modp;
    if (prep.imm) {
        const auto classes = partitions_of(prep.n);
        prep.chi.reserve(classes.size());
        for (const auto& mu : classes) prep.chi.push_back(character_mn(*q.lambda, mu));
    }
    prep.res = residue_tables(q.spec, box, prep.p);
    const auto& last = prep.res.back();
    prep.hist.assign(static_cast<size_t>(prep.p), 0);
    for (uint64_t v : last) ++prep.hist[static_cast<size_t>(v)];
    prep.last_range = last.size();
    prep.inv.assign(static_cast<size_t>(prep.p), 0);
    for (uint64_t v = 1; v < prep.p; ++v) prep.inv[static_cast<size_t>(v)] = invmod_u64(v, prep.p);
    return prep;
}

ShardResult run_affine_mod(const AffineModPrep& prep, const Box& box, size_t lo0, size_t hi0) {
    const int n = prep.n;
    const size_t mn = static_cast<size_t>(n) * n;
    const size_t nprefix = mn - 1;
    const uint64_t p = prep.p;
    ShardResult out;
    uint64_t evals = 0;

    if (nprefix == 0) {
        // Single-variable matrix: scan the (possibly sharded) value range
        // directly; det = value.
        uint64_t matched = 0;
        for (size_t t = lo0; t < hi0; ++t) {
            ++evals;
            if (prep.res[0][t] == prep.target) ++matched;
        }
        out.count = matched;
        out.evals = evals;
        return out;
    }

    std::vector<uint64_t> cur(mn, 0);
    std::vector<uint64_t> minor(static_cast<size_t>(n - 1) * (n - 1), 0);
    enumerate_span(box.sizes.data(), nprefix, lo0, hi0, [&](const size_t* idx) {
        for (size_t e = 0; e < nprefix; ++e) cur[e] = prep.res[e][idx[e]];
        uint64_t c0, c1;
        if (prep.imm) {
            cur[nprefix] = 0;
            c0 = detail::immanant_mod_p_tabled(cur, n, prep.chi, p);
            cur[nprefix] = 1;
            const uint64_t i1 = detail::immanant_mod_p_tabled(cur, n, prep.chi, p);
            c1 = submod(i1, c0, p);
        } else {
            cur[nprefix] = 0;
            c0 = detail::det_mod_p_unchecked(cur, n, p);
            for (int i = 0; i + 1 < n; ++i)
                for (int j = 0; j + 1 < n; ++j)
                    minor[static_cast<size_t>(i) * (n - 1) + j] = cur[static_cast<size_t>(i) * n + j];
            c1 = detail::det_mod_p_unchecked(minor, n - 1, p);
        }
        uint64_t matched;
        if (c1 != 0) {
            const uint64_t v = mulmod_u64(submod(prep.target, c0, p), prep.inv[static_cast<size_t>(c1)], p);
            matched = prep.hist[static_cast<size_t>(v)];
        } else {
            matched = c0 == prep.target ? prep.last_range : 0;
        }
        ++evals;
        out.count += matched;
    });
    out.evals = evals;
    return out;
}

// Integer determinant-value engine: per prefix, det = c0 + c1 * t with c1
// the top-left cofactor. When all quantities provably fit in int64, the
// last-entry scan runs on the vector kernel; otherwise an exact
// divisibility check plus a sorted lookup decides it.
struct AffineIntPrep {
    int n = 0;
    Int a;
    std::vector<std::vector<Int>> vals;
    std::vector<std::pair<Int, Int>> last_sorted; // (value, multiplicity)
    uint64_t last_range = 0;
    bool kernel_ok = false;
    std::vector<int64_t> last64;
    int64_t a64 = 0;
};

AffineIntPrep make_affine_int(const CountQuery& q, const Box& box) {
    AffineIntPrep prep;
    prep.n = q.spec.n;
    prep.a = q.a;
    prep.vals = value_tables(q.spec, box);
    const auto& last = prep.vals.back();
    prep.last_range = last.size();
    {
        std::vector<Int> sorted(last);
        std::sort(sorted.begin(), sorted.end());
        for (const Int& v : sorted) {
            if (prep.last_sorted.empty() || prep.last_sorted.back().first != v)
                prep.last_sorted.emplace_back(v, 1);
            else
                prep.last_sorted.back().second += 1;
        }
    }
    // Row-wise magnitude bounds decide once whether the int64 kernel is
    // safe for every prefix: |c0| <= n! prod(M_i), |c1| <= (n-1)! times
    // the product over the first n-1 rows.
    const int n = prep.n;
    Int max_last = 0;
    std::vector<Int> row_max(static_cast<size_t>(n), Int(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const Int& v : prep.vals[static_cast<size_t>(i) * n + j]) {
                Int av = abs(v);
                if (av > row_max[static_cast<size_t>(i)]) row_max[static_cast<size_t>(i)] = av;
            }
    for (const Int& v : last) {
        Int av = abs(v);
        if (av > max_last) max_last = av;
    }
    Int b0 = factorial(static_cast<unsigned long>(n));
    for (const Int& m : row_max) b0 *= m;
    Int b1 = n >= 2 ? factorial(static_cast<unsigned long>(n - 1)) : Int(1);
    for (int i = 0; i + 1 < n; ++i) b1 *= row_max[static_cast<size_t>(i)];
    static const Int lim = pow_int(Int(2), 62);
    prep.kernel_ok = b1 < lim && b0 + b1 * max_last < lim && abs(prep.a) < lim;
    if (prep.kernel_ok) {
        prep.last64.reserve(last.size());
        for (const Int& v : last) prep.last64.push_back(to_i64(v));
        prep.a64 = to_i64(prep.a);
    }
    return prep;
}

ShardResult run_affine_int(const AffineIntPrep& prep, const Box& box, size_t lo0, size_t hi0) {
    const int n = prep.n;
    const size_t mn = static_cast<size_t>(n) * n;
    const size_t nprefix = mn - 1;
    ShardResult out;
    uint64_t evals = 0;

    if (nprefix == 0) {
        uint64_t matched = 0;
        for (size_t t = lo0; t < hi0; ++t) {
            ++evals;
            if (prep.vals[0][t] == prep.a) ++matched;
        }
        out.count = matched;
        out.evals = evals;
        return out;
    }

    auto lookup = [&](const Int& v) -> Int {
        auto it = std::lower_bound(prep.last_sorted.begin(), prep.last_sorted.end(), v,
                                   [](const auto& e, const Int& x) { return e.first < x; });
        if (it == prep.last_sorted.end() || it->first != v) return 0;
        return it->second;
    };

    IntMatrix cur(n, n);
    IntMatrix minor = n >= 2 ? IntMatrix(n - 1, n - 1) : IntMatrix(1, 1);
    enumerate_span(box.sizes.data(), nprefix, lo0, hi0, [&](const size_t* idx) {
        for (size_t e = 0; e < nprefix; ++e) cur.a[e] = prep.vals[e][idx[e]];
        cur.a[nprefix] = 0;
        const Int c0 = det(cur);
        for (int i = 0; i + 1 < n; ++i)
            for (int j = 0; j + 1 < n; ++j)
                minor.at(i, j) = cur.at(i, j);
        const Int c1 = det(minor);
        ++evals;
        if (prep.kernel_ok) {
            out.count += kernels::count_affine_match_i64(prep.last64.data(), prep.last64.size(),
                                                         to_i64(c0), to_i64(c1), prep.a64);
            return;
        }
        if (c1 == 0) {
            if (c0 == prep.a) out.count += Int(static_cast<unsigned long>(prep.last_range));
            return;
        }
        const Int diff = prep.a - c0;
        if (diff % c1 != 0) return;
        out.count += lookup(diff / c1);
    });
    out.evals = evals;
    return out;
}

void validate_query(const CountQuery& q) {
    q.spec.validate();
    if (q.H < 0) throw std::invalid_argument("H must be nonnegative");
    if (q.shards < 1) throw std::invalid_argument("shard count must be at least 1");
    switch (q.kind) {
    case CountKind::rank_eq_Q:
        if (q.r < 0 || q.r > std::min(q.spec.m, q.spec.n))
            throw std::invalid_argument("rank target out of range");
        break;
    case CountKind::rank_eq_modp:
        if (q.r < 0 || q.r > std::min(q.spec.m, q.spec.n))
            throw std::invalid_argument("rank target out of range");
        require_prime_param(q.p);
        break;
    case CountKind::det_eq_value:
        if (!q.spec.square()) throw std::invalid_argument("determinant requires a square spec");
        if (q.p) require_prime(*q.p);
        break;
    case CountKind::imm_zero_modp:
        if (!q.spec.square()) throw std::invalid_argument("immanant requires a square spec");
        if (!q.spec.all_nonconstant())
            throw std::invalid_argument("immanant counting requires every entry nonconstant");
        if (!q.lambda) throw std::invalid_argument("immanant counting requires a partition");
        if (q.lambda->n() != q.spec.n)
            throw std::invalid_argument("partition size must match the matrix dimension");
        if (q.spec.n > 10) throw std::invalid_argument("immanant counting supports n <= 10");
        require_prime_param(q.p);
        break;
    case CountKind::full_residue_det_zero:
        if (!q.spec.square()) throw std::invalid_argument("determinant requires a square spec");
        require_prime_param(q.p);
        if (*q.p > static_cast<uint64_t>(kMaxRangeLen))
            throw std::invalid_argument("modulus too large for full-residue enumeration");
        break;
    }
}

CountQuery with_full_residue_intervals(CountQuery q) {
    const size_t mn = static_cast<size_t>(q.spec.m) * q.spec.n;
    q.intervals.assign(mn, {0L, static_cast<long>(*q.p - 1)});
    return q;
}

CountRecord execute(const CountQuery& q) {
    validate_query(q);
    const CountQuery qq =
        q.kind == CountKind::full_residue_det_zero ? with_full_residue_intervals(q) : q;
    const Box box = make_box(qq.spec, qq.H, qq.intervals);
    check_eval_budget(box, qq.budget);

    const auto t0 = std::chrono::steady_clock::now();
    ShardResult result;
    switch (qq.kind) {
    case CountKind::rank_eq_Q:
    case CountKind::rank_eq_modp: {
        const RankPrep prep = make_rank(qq, box);
        result = run_sharded(qq.shards, box.sizes[0], [&](size_t lo0, size_t hi0) {
            return run_rank(prep, box, lo0, hi0);
        });
        break;
    }
    case CountKind::det_eq_value: {
        if (qq.p) {
            const AffineModPrep prep = make_affine_mod(qq, box, mod_u64(qq.a, *qq.p));
            result = run_sharded(qq.shards, box.sizes[0], [&](size_t lo0, size_t hi0) {
                return run_affine_mod(prep, box, lo0, hi0);
            });
        } else {
            const AffineIntPrep prep = make_affine_int(qq, box);
            result = run_sharded(qq.shards, box.sizes[0], [&](size_t lo0, size_t hi0) {
                return run_affine_int(prep, box, lo0, hi0);
            });
        }
        break;
    }
    case CountKind::imm_zero_modp:
    case CountKind::full_residue_det_zero: {
        const AffineModPrep prep = make_affine_mod(qq, box, 0);
        result = run_sharded(qq.shards, box.sizes[0], [&](size_t lo0, size_t hi0) {
            return run_affine_mod(prep, box, lo0, hi0);
        });
        break;
    }
    }
    const auto t1 = std::chrono::steady_clock::now();

    CountRecord record;
    record.query = q;
    record.count = result.count;
    record.evaluations = result.evals;
    record.elapsed = std::chrono::duration<double>(t1 - t0).count();
    return record;
}

} // namespace

CountRecord count_rank(const CountQuery& q) {
    if (q.kind != CountKind::rank_eq_Q && q.kind != CountKind::rank_eq_modp)
        throw std::invalid_argument("count_rank requires a rank kind");
    return execute(q);
}

CountRecord count_det_value(const CountQuery& q) {
    if (q.kind != CountKind::det_eq_value)
        throw std::invalid_argument("count_det_value requires kind det_eq_value");
    return execute(q);
}

CountRecord count_imm_zero_mod_p(const CountQuery& q) {
    if (q.kind != CountKind::imm_zero_modp)
        throw std::invalid_argument("count_imm_zero_mod_p requires kind imm_zero_modp");
    return execute(q);
}

CountRecord count_full_residue_zero(const PolyMatrixSpec& spec, uint64_t p, const Int& budget,
                                    int shards) {
    CountQuery q;
    q.spec = spec;
    q.kind = CountKind::full_residue_det_zero;
    q.a = 0;
    q.p = p;
    q.budget = budget;
    q.shards = shards;
    return execute(q);
}

CountRecord run_count(const CountQuery& q) { return execute(q); }

Int count_brute(const CountQuery& q) {
    validate_query(q);
    const CountQuery qq =
        q.kind == CountKind::full_residue_det_zero ? with_full_residue_intervals(q) : q;
    const Box box = make_box(qq.spec, qq.H, qq.intervals);
    check_eval_budget(box, qq.budget);

    const int m = qq.spec.m, n = qq.spec.n;
    const size_t mn = static_cast<size_t>(m) * n;
    const bool modp = qq.kind != CountKind::rank_eq_Q &&
                      (qq.kind != CountKind::det_eq_value || qq.p.has_value());
    std::vector<std::vector<Int>> vq;
    std::vector<std::vector<uint64_t>> vp;
    if (modp)
        vp = residue_tables(qq.spec, box, *qq.p);
    else
        vq = value_tables(qq.spec, box);

    std::vector<long long> chi;
    if (qq.kind == CountKind::imm_zero_modp)
        for (const auto& mu : partitions_of(n)) chi.push_back(character_mn(*qq.lambda, mu));
    const uint64_t target_mod = modp ? mod_u64(qq.a, *qq.p) : 0;

    Int count = 0;
    std::vector<uint64_t> flat(mn);
    IntMatrix A(m, n);
    enumerate_span(box.sizes.data(), mn, 0, box.sizes[0], [&](const size_t* idx) {
        bool hit = false;
        switch (qq.kind) {
        case CountKind::rank_eq_Q:
            for (size_t e = 0; e < mn; ++e) A.a[e] = vq[e][idx[e]];
            hit = rank_rational(A) == qq.r;
            break;
        case CountKind::rank_eq_modp:
            for (size_t e = 0; e < mn; ++e) flat[e] = vp[e][idx[e]];
            hit = detail::rank_mod_p_unchecked(flat, m, n, *qq.p) == qq.r;
            break;
        case CountKind::det_eq_value:
            if (modp) {
                for (size_t e = 0; e < mn; ++e) flat[e] = vp[e][idx[e]];
                hit = detail::det_mod_p_unchecked(flat, n, *qq.p) == target_mod;
            } else {
                for (size_t e = 0; e < mn; ++e) A.a[e] = vq[e][idx[e]];
                hit = det(A) == qq.a;
            }
            break;
        case CountKind::imm_zero_modp:
            for (size_t e = 0; e < mn; ++e) flat[e] = vp[e][idx[e]];
            hit = detail::immanant_mod_p_tabled(flat, n, chi, *qq.p) == 0;
            break;
        case CountKind::full_residue_det_zero:
            for (size_t e = 0; e < mn; ++e) flat[e] = vp[e][idx[e]];
            hit = detail::det_mod_p_unchecked(flat, n, *qq.p) == 0;
            break;
        }
        if (hit) count += 1;
    });
    return count;
}

LowRankBatch generate_low_rank(const PolyMatrixSpec& spec, long H, int r, long sample_count,
                               uint64_t seed) {
    spec.validate();
    if (H < 0) throw std::invalid_argument("H must be nonnegative");
    if (r < 1 || r > std::min(spec.m, spec.n))
        throw std::invalid_argument("rank target out of range");
    if (sample_count < 0) throw std::invalid_argument("sample count must be nonnegative");
    for (int j = 0; j < spec.n; ++j)
        for (int i = 1; i < spec.m; ++i)
            if (!(spec.at(i, j) == spec.at(0, j)))
                throw std::invalid_argument("construction requires equal polynomials per column");

    Rng rng(seed);
    LowRankBatch out;
    out.matrices.reserve(static_cast<size_t>(sample_count));
    const long cap = 1000 + 200 * sample_count;
    std::vector<std::vector<long>> args(static_cast<size_t>(r), std::vector<long>(static_cast<size_t>(spec.n)));

    while (out.accepted < sample_count) {
        if (out.attempts >= cap)
            throw std::runtime_error("low-rank sampler: acceptance ratio too low");
        ++out.attempts;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < spec.n; ++j)
                args[static_cast<size_t>(i)][static_cast<size_t>(j)] = rng.range(-H, H);
        IntMatrix block(r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                block.at(i, j) = spec.at(i, j).eval(Int(args[static_cast<size_t>(i)][static_cast<size_t>(j)]));
        if (det(block) == 0) continue;
        IntMatrix A(spec.m, spec.n);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < spec.n; ++j)
                A.at(i, j) = spec.at(i, j).eval(Int(args[static_cast<size_t>(i)][static_cast<size_t>(j)]));
        for (int h = r; h < spec.m; ++h)
            for (int j = 0; j < spec.n; ++j)
                A.at(h, j) = spec.at(h, j).eval(Int(args[0][static_cast<size_t>(j)]));
        ++out.accepted;
        out.matrices.push_back(std::move(A));
    }
    return out;
}

} // namespace matcount
