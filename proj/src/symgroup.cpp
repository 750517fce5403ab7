#include "matcount/symgroup.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace matcount {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] < 1) throw std::invalid_argument("partition parts must be >= 1");
        if (i > 0 && parts[i] > parts[i - 1])
            throw std::invalid_argument("partition parts must be non-increasing");
    }
}

int Partition::n() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
}

std::string Partition::to_string() const {
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out << ",";
        out << parts[i];
    }
    out << ")";
    return out.str();
}

static void gen_partitions(int remaining, int cap, std::vector<int>& cur, std::vector<Partition>& out) {
    if (remaining == 0) {
        out.push_back(Partition(cur));
        return;
    }
    for (int first = std::min(cap, remaining); first >= 1; --first) {
        cur.push_back(first);
        gen_partitions(remaining - first, first, cur, out);
        cur.pop_back();
    }
}

std::vector<Partition> partitions_of(int n) {
    if (n < 1 || n > 24) throw std::invalid_argument("partitions_of: n out of range [1,24]");
    std::vector<Partition> out;
    std::vector<int> cur;
    gen_partitions(n, n, cur, out);
    return out;
}

Int class_size(const Partition& mu) {
    int n = mu.n();
    if (n < 1) throw std::invalid_argument("class_size: empty cycle type");
    Int denom = 1;
    int run = 0;
    for (size_t i = 0; i < mu.parts.size(); ++i) {
        denom *= mu.parts[i];
        ++run;
        if (i + 1 == mu.parts.size() || mu.parts[i + 1] != mu.parts[i]) {
            denom *= factorial(run);
            run = 0;
        }
    }
    return factorial(n) / denom;
}

// Pack a partition (or cycle-length multiset) with parts <= 12 into 4-bit
// multiplicity fields; collisions impossible in that range.
static uint64_t mult_key(const std::vector<int>& parts) {
    uint64_t key = 0;
    for (int p : parts) key += 1ull << (4 * (p - 1));
    return key;
}

namespace {

struct MnMemo {
    std::unordered_map<uint64_t, long long> map;
};

uint64_t lambda_key(const std::vector<int>& lambda) {
    // At most 12 parts, each <= 12: 4 bits per position.
    uint64_t key = 0;
    for (int p : lambda) key = (key << 4) | static_cast<uint64_t>(p);
    return key;
}

long long mn_rec(const std::vector<int>& lambda, const std::vector<int>& mu, size_t mu_idx, MnMemo& memo) {
    if (mu_idx == mu.size()) return 1; // lambda is necessarily empty here
    uint64_t key = (lambda_key(lambda) << 5) | static_cast<uint64_t>(mu_idx);
    auto it = memo.map.find(key);
    if (it != memo.map.end()) return it->second;

    int ell = mu[mu_idx];
    int k = static_cast<int>(lambda.size());
    std::vector<int> beta(k);
    for (int i = 0; i < k; ++i) beta[i] = lambda[i] + (k - 1 - i); // strictly decreasing

    long long total = 0;
    for (int i = 0; i < k; ++i) {
        int b = beta[i] - ell;
        if (b < 0) continue;
        bool occupied = false;
        int between = 0;
        for (int j = 0; j < k; ++j) {
            if (j == i) continue;
            if (beta[j] == b) { occupied = true; break; }
            if (beta[j] > b && beta[j] < beta[i]) ++between;
        }
        if (occupied) continue;
        std::vector<int> nb = beta;
        nb[i] = b;
        std::sort(nb.begin(), nb.end(), std::greater<int>());
        std::vector<int> nl(k);
        for (int j = 0; j < k; ++j) nl[j] = nb[j] - (k - 1 - j);
        while (!nl.empty() && nl.back() == 0) nl.pop_back();
        long long sub = mn_rec(nl, mu, mu_idx + 1, memo);
        total += (between % 2 == 0) ? sub : -sub;
    }
    memo.map.emplace(key, total);
    return total;
}

} // namespace

long long character_mn(const Partition& lambda, const Partition& mu) {
    int n = lambda.n();
    if (n < 1 || n > 12) throw std::invalid_argument("character_mn: n out of range [1,12]");
    if (mu.n() != n) throw std::invalid_argument("character_mn: lambda and mu must partition the same n");
    MnMemo memo;
    return mn_rec(lambda.parts, mu.parts, 0, memo);
}

CharacterTable CharacterTable::build(int n) {
    if (n < 1 || n > 12) throw std::invalid_argument("CharacterTable: n out of range [1,12]");
    CharacterTable t;
    t.n = n;
    t.classes = partitions_of(n);
    t.sizes.reserve(t.classes.size());
    for (const Partition& mu : t.classes) t.sizes.push_back(class_size(mu));
    t.values.reserve(t.classes.size());
    for (const Partition& lam : t.classes) {
        std::vector<long long> row;
        row.reserve(t.classes.size());
        for (const Partition& mu : t.classes) row.push_back(character_mn(lam, mu));
        t.values.push_back(std::move(row));
    }
    return t;
}

bool CharacterTable::row_orthogonal() const {
    Int nfact = factorial(static_cast<unsigned long>(n));
    for (size_t a = 0; a < values.size(); ++a) {
        for (size_t b = a; b < values.size(); ++b) {
            Int acc = 0;
            for (size_t m = 0; m < classes.size(); ++m)
                acc += sizes[m] * Int(static_cast<long>(values[a][m])) *
                       Int(static_cast<long>(values[b][m]));
            if (a == b ? acc != nfact : acc != 0) return false;
        }
    }
    return true;
}

namespace detail {

int class_index(const Partition& mu) {
    std::vector<Partition> all = partitions_of(mu.n());
    for (size_t i = 0; i < all.size(); ++i)
        if (all[i] == mu) return static_cast<int>(i);
    throw std::logic_error("cycle type not found");
}

// Permutations are enumerated row by row. The partial map is a disjoint
// union of paths; choosing sigma(i)=j either extends a path or closes a
// cycle, so the cycle type is maintained incrementally instead of being
// refactored at each leaf. Value is Int for exact work or uint64_t for
// residues mod p.
template <typename Value>
struct ImmanantEnum {
    int n;
    const Value* entries; // row-major n*n
    const std::unordered_map<uint64_t, int>* key_to_class;
    uint64_t p; // modulus when Value is uint64_t, unused otherwise

    std::vector<int> pstart; // pstart[e]: start of the open path ending at e
    std::vector<int> pend;   // pend[s]: end of the open path starting at s
    std::vector<int> plen;   // plen[s]: node count, stored at the start
    uint64_t cycle_key = 0;  // mult_key of cycles closed so far
    uint32_t used = 0;

    std::vector<Value> class_acc; // one diagonal-product accumulator per class

    ImmanantEnum(int n_, const Value* e, const std::unordered_map<uint64_t, int>* k2c, uint64_t p_ = 0)
        : n(n_), entries(e), key_to_class(k2c), p(p_), pstart(n_), pend(n_), plen(n_, 1),
          class_acc(k2c->size(), Value(0)) {
        for (int i = 0; i < n; ++i) pstart[i] = pend[i] = i;
    }

    Value mul(const Value& a, const Value& b) const {
        if constexpr (std::is_same_v<Value, uint64_t>)
            return mulmod_u64(a, b, p);
        else
            return a * b;
    }

    void add_to(Value& acc, const Value& v) const {
        if constexpr (std::is_same_v<Value, uint64_t>) {
            acc += v;
            if (acc >= p) acc -= p;
        } else {
            acc += v;
        }
    }

    void run(int row, const Value& prod) {
        if (row == n) {
            add_to(class_acc[key_to_class->at(cycle_key)], prod);
            return;
        }
        const Value* arow = entries + static_cast<size_t>(row) * n;
        for (int j = 0; j < n; ++j) {
            if (used & (1u << j)) continue;
            if (arow[j] == Value(0)) continue;
            Value next = mul(prod, arow[j]);
            int s = pstart[row]; // row is always the end of its open path
            used |= 1u << j;
            if (s == j) {
                int len = plen[s];
                cycle_key += 1ull << (4 * (len - 1));
                run(row + 1, next);
                cycle_key -= 1ull << (4 * (len - 1));
            } else {
                int e = pend[j];
                int old_plen = plen[s];
                pend[s] = e;
                pstart[e] = s;
                plen[s] += plen[j];
                run(row + 1, next);
                plen[s] = old_plen;
                pstart[e] = j;
                pend[s] = row;
            }
            used &= ~(1u << j);
        }
    }
};

uint64_t immanant_mod_p_tabled(const std::vector<uint64_t>& entries, int n,
                               const std::vector<long long>& chi_by_class, uint64_t p) {
    std::vector<Partition> classes = partitions_of(n);
    std::unordered_map<uint64_t, int> k2c;
    for (size_t i = 0; i < classes.size(); ++i) k2c.emplace(mult_key(classes[i].parts), static_cast<int>(i));

    std::vector<uint64_t> vals;
    vals.reserve(entries.size());
    for (uint64_t e : entries) vals.push_back(e % p);

    ImmanantEnum<uint64_t> en(n, vals.data(), &k2c, p);
    en.run(0, 1 % p);

    uint64_t acc = 0;
    for (size_t c = 0; c < chi_by_class.size(); ++c) {
        long long chi = chi_by_class[c] % static_cast<long long>(p);
        uint64_t cu = chi >= 0 ? static_cast<uint64_t>(chi) : p - static_cast<uint64_t>(-chi);
        acc = (acc + mulmod_u64(cu, en.class_acc[c], p)) % p;
    }
    return acc;
}

} // namespace detail

static void check_immanant_args(const IntMatrix& A, int lam_n) {
    if (A.rows != A.cols) throw std::invalid_argument("immanant: matrix must be square");
    if (A.rows > 10) throw std::invalid_argument("immanant: n capped at 10");
    if (lam_n != A.rows) throw std::invalid_argument("immanant: partition size must match matrix order");
}

Int immanant_combination(const IntMatrix& A, const std::vector<Int>& multiplicities) {
    if (A.rows != A.cols) throw std::invalid_argument("immanant: matrix must be square");
    if (A.rows > 10) throw std::invalid_argument("immanant: n capped at 10");
    int n = A.rows;
    std::vector<Partition> classes = partitions_of(n);
    if (multiplicities.size() != classes.size())
        throw std::invalid_argument("immanant: one multiplicity per partition expected");

    // chi of the combination on each class.
    std::vector<Int> chi(classes.size(), Int(0));
    for (size_t l = 0; l < classes.size(); ++l) {
        if (multiplicities[l] == 0) continue;
        for (size_t m = 0; m < classes.size(); ++m)
            chi[m] += multiplicities[l] * Int(static_cast<long>(character_mn(classes[l], classes[m])));
    }

    std::unordered_map<uint64_t, int> k2c;
    for (size_t i = 0; i < classes.size(); ++i) k2c.emplace(mult_key(classes[i].parts), static_cast<int>(i));
    detail::ImmanantEnum<Int> en(n, A.a.data(), &k2c);
    en.run(0, Int(1));
    Int acc = 0;
    for (size_t c = 0; c < classes.size(); ++c) acc += chi[c] * en.class_acc[c];
    return acc;
}

Int immanant(const IntMatrix& A, const Partition& lambda) {
    check_immanant_args(A, lambda.n());
    std::vector<Partition> classes = partitions_of(A.rows);
    std::vector<Int> mult(classes.size(), Int(0));
    mult[static_cast<size_t>(detail::class_index(lambda))] = 1;
    return immanant_combination(A, mult);
}

uint64_t immanant_mod_p(const IntMatrix& A, const Partition& lambda, uint64_t p) {
    check_immanant_args(A, lambda.n());
    require_prime(p);
    int n = A.rows;
    std::vector<Partition> classes = partitions_of(n);
    std::vector<long long> chi(classes.size());
    for (size_t m = 0; m < classes.size(); ++m) chi[m] = character_mn(lambda, classes[m]);
    std::vector<uint64_t> entries(A.a.size());
    for (size_t i = 0; i < entries.size(); ++i) entries[i] = mod_u64(A.a[i], p);
    return detail::immanant_mod_p_tabled(entries, n, chi, p);
}

Int permanent_ryser(const IntMatrix& A) {
    if (A.rows != A.cols) throw std::invalid_argument("permanent: matrix must be square");
    int n = A.rows;
    if (n > 20) throw std::invalid_argument("permanent: n capped at 20");

    // Gray-code subset walk; one row-sum column update per step.
    std::vector<Int> rowsum(n, Int(0));
    Int total = 0;
    uint32_t gray_prev = 0;
    uint64_t steps = 1ull << n;
    for (uint64_t s = 1; s < steps; ++s) {
        uint32_t gray = static_cast<uint32_t>(s ^ (s >> 1));
        uint32_t diff = gray ^ gray_prev;
        int col = __builtin_ctz(diff);
        bool added = gray & diff;
        for (int i = 0; i < n; ++i) {
            if (added)
                rowsum[i] += A.at(i, col);
            else
                rowsum[i] -= A.at(i, col);
        }
        gray_prev = gray;
        Int prod = 1;
        for (int i = 0; i < n && prod != 0; ++i) prod *= rowsum[i];
        int popc = __builtin_popcount(gray);
        if ((n - popc) % 2 == 0)
            total += prod;
        else
            total -= prod;
    }
    return total;
}

} // namespace matcount
