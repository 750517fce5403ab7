#include "matcount/moments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "matcount/kernels.hpp"

namespace matcount {

namespace {

// Counts in a u64 table stay exact as long as the grand total does:
// every convolution coefficient is at most total_a * total_b.
const Int& u64_count_cap() {
    static const Int cap = pow_int(Int(2), 63);
    return cap;
}

double log_int(const Int& v) {
    long e = 0;
    double d = mpz_get_d_2exp(&e, v.get_mpz_t());
    return std::log(d) + static_cast<double>(e) * std::log(2.0);
}

void check_budget(const char* stage, const Int& required, const Int& limit) {
    if (required > limit) {
        throw budget_error(std::string("budget exceeded in ") + stage + ": needs " +
                               required.get_str() + " keys, limit " + limit.get_str(),
                           required, limit);
    }
}

ValueDist from_map(std::map<Int, Int>&& m, ValueDist::Domain domain, uint64_t p) {
    ValueDist out;
    out.domain = domain;
    out.p = p;
    out.entries.reserve(m.size());
    for (auto& [v, c] : m)
        if (c != 0) out.entries.emplace_back(v, std::move(c));
    return out;
}

// Cyclic convolution mod p into a dense u64 histogram; exactness is
// guaranteed by the caller's total-count check.
ValueDist convolve_residues_dense(const ValueDist& a, const ValueDist& b) {
    const size_t p = static_cast<size_t>(a.p);
    std::vector<uint64_t> src(p, 0), dst(p, 0);
    for (const auto& [v, c] : b.entries) src[v.get_ui()] = static_cast<uint64_t>(c.get_ui());
    for (const auto& [v, c] : a.entries) {
        const size_t ra = static_cast<size_t>(v.get_ui());
        const uint64_t ca = static_cast<uint64_t>(c.get_ui());
        kernels::fma_accumulate_u64(dst.data() + ra, src.data(), p - ra, ca);
        kernels::fma_accumulate_u64(dst.data(), src.data() + (p - ra), ra, ca);
    }
    ValueDist out;
    out.domain = ValueDist::Domain::residues;
    out.p = a.p;
    for (size_t j = 0; j < p; ++j)
        if (dst[j]) out.entries.emplace_back(Int(static_cast<unsigned long>(j)),
                                             Int(static_cast<unsigned long>(dst[j])));
    return out;
}

ValueDist convolve_residues_sparse(const ValueDist& a, const ValueDist& b) {
    std::map<Int, Int> acc;
    const Int modulus(static_cast<unsigned long>(a.p));
    for (const auto& [va, ca] : a.entries)
        for (const auto& [vb, cb] : b.entries) {
            Int v = va + vb;
            if (v >= modulus) v -= modulus;
            acc[v] += ca * cb;
        }
    return from_map(std::move(acc), ValueDist::Domain::residues, a.p);
}

// Dense integer-domain convolution: the shorter operand drives shifted
// fused multiply-adds over the other operand's dense table.
ValueDist convolve_integers_dense(const ValueDist& a, const ValueDist& b) {
    const ValueDist* outer = &a;
    const ValueDist* inner = &b;
    if (outer->entries.size() > inner->entries.size()) std::swap(outer, inner);

    const Int inner_min = inner->entries.front().first;
    const Int out_min = outer->entries.front().first + inner_min;
    const size_t inner_width =
        static_cast<size_t>(to_i64(inner->entries.back().first - inner_min + 1));
    const size_t out_width = static_cast<size_t>(
        to_i64(outer->entries.back().first + inner->entries.back().first - out_min + 1));

    std::vector<uint64_t> src(inner_width, 0), dst(out_width, 0);
    for (const auto& [v, c] : inner->entries)
        src[static_cast<size_t>(to_i64(v - inner_min))] = static_cast<uint64_t>(c.get_ui());
    for (const auto& [v, c] : outer->entries) {
        const size_t offset = static_cast<size_t>(to_i64(v - outer->entries.front().first));
        kernels::fma_accumulate_u64(dst.data() + offset, src.data(), inner_width,
                                    static_cast<uint64_t>(c.get_ui()));
    }
    ValueDist out;
    out.domain = ValueDist::Domain::integers;
    for (size_t j = 0; j < out_width; ++j)
        if (dst[j]) out.entries.emplace_back(out_min + Int(static_cast<unsigned long>(j)),
                                             Int(static_cast<unsigned long>(dst[j])));
    return out;
}

bool sums_fit_i64(const ValueDist& a, const ValueDist& b) {
    static const Int lo = Int(std::numeric_limits<int64_t>::min() / 2);
    static const Int hi = Int(std::numeric_limits<int64_t>::max() / 2);
    return a.entries.front().first >= lo && b.entries.front().first >= lo &&
           a.entries.back().first <= hi && b.entries.back().first <= hi;
}

ValueDist convolve_integers_sparse(const ValueDist& a, const ValueDist& b, bool u64_counts) {
    if (u64_counts && sums_fit_i64(a, b)) {
        std::unordered_map<int64_t, uint64_t> acc;
        acc.reserve(a.entries.size() * b.entries.size() / 4 + 16);
        for (const auto& [va, ca] : a.entries) {
            const int64_t ia = to_i64(va);
            const uint64_t ua = static_cast<uint64_t>(ca.get_ui());
            for (const auto& [vb, cb] : b.entries)
                acc[ia + to_i64(vb)] += ua * static_cast<uint64_t>(cb.get_ui());
        }
        ValueDist out;
        out.domain = ValueDist::Domain::integers;
        out.entries.reserve(acc.size());
        for (const auto& [v, c] : acc)
            out.entries.emplace_back(Int(static_cast<long>(v)), Int(static_cast<unsigned long>(c)));
        std::sort(out.entries.begin(), out.entries.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        return out;
    }
    std::map<Int, Int> acc;
    for (const auto& [va, ca] : a.entries)
        for (const auto& [vb, cb] : b.entries) acc[va + vb] += ca * cb;
    return from_map(std::move(acc), ValueDist::Domain::integers, 0);
}

void require_prime_modulus(uint64_t p) {
    if (p < 2 || !probable_prime(p)) throw std::invalid_argument("modulus must be prime");
}

void require_box_injects(long H, uint64_t p) {
    if (H < 0) throw std::invalid_argument("H must be nonnegative");
    if (Int(2) * Int(H) + 1 > Int(static_cast<unsigned long>(p)))
        throw std::invalid_argument("box does not inject into residues: need 2H+1 <= p");
}

Rat sum_of_squared_counts(const ValueDist& d) {
    Int s = 0;
    for (const auto& [v, c] : d.entries) s += c * c;
    return Rat(s);
}

} // namespace

Int ValueDist::total() const {
    Int s = 0;
    for (const auto& [v, c] : entries) s += c;
    return s;
}

Int ValueDist::count_of(const Int& value) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), value,
                               [](const auto& e, const Int& v) { return e.first < v; });
    if (it == entries.end() || it->first != value) return 0;
    return it->second;
}

ValueDist value_distribution(const IntPoly& f, long H, const Int& key_budget) {
    if (H < 0) throw std::invalid_argument("H must be nonnegative");
    check_budget("value distribution", Int(2) * Int(H) + 1, key_budget);
    std::map<Int, Int> acc;
    for (long x = -H; x <= H; ++x) acc[f.eval(Int(x))] += 1;
    return from_map(std::move(acc), ValueDist::Domain::integers, 0);
}

ValueDist value_distribution_mod(const IntPoly& f, long H, uint64_t p, const Int& key_budget) {
    if (H < 0) throw std::invalid_argument("H must be nonnegative");
    if (p < 2) throw std::invalid_argument("modulus must be at least 2");
    check_budget("residue histogram", Int(static_cast<unsigned long>(p)), key_budget);
    std::vector<uint64_t> hist(static_cast<size_t>(p), 0);
    for (long x = -H; x <= H; ++x) ++hist[f.eval_mod(Int(x), p)];
    ValueDist out;
    out.domain = ValueDist::Domain::residues;
    out.p = p;
    for (size_t j = 0; j < hist.size(); ++j)
        if (hist[j]) out.entries.emplace_back(Int(static_cast<unsigned long>(j)),
                                              Int(static_cast<unsigned long>(hist[j])));
    return out;
}

ValueDist scale_values(const ValueDist& d, const Int& a) {
    if (a == 0) throw std::invalid_argument("scale coefficient must be nonzero");
    ValueDist out;
    out.domain = d.domain;
    out.p = d.p;
    if (d.domain == ValueDist::Domain::residues) {
        const uint64_t ra = mod_u64(a, d.p);
        if (ra == 0) throw std::invalid_argument("scale coefficient vanishes mod p");
        std::map<Int, Int> acc;
        for (const auto& [v, c] : d.entries)
            acc[Int(static_cast<unsigned long>(mulmod_u64(v.get_ui(), ra, d.p)))] += c;
        return from_map(std::move(acc), d.domain, d.p);
    }
    out.entries.reserve(d.entries.size());
    if (a > 0) {
        for (const auto& [v, c] : d.entries) out.entries.emplace_back(v * a, c);
    } else {
        for (auto it = d.entries.rbegin(); it != d.entries.rend(); ++it)
            out.entries.emplace_back(it->first * a, it->second);
    }
    return out;
}

ValueDist convolve(const ValueDist& a, const ValueDist& b, const Int& key_budget) {
    if (a.domain != b.domain) throw std::invalid_argument("convolution domains differ");
    if (a.domain == ValueDist::Domain::residues && a.p != b.p)
        throw std::invalid_argument("convolution moduli differ");
    if (a.empty() || b.empty()) {
        ValueDist out;
        out.domain = a.domain;
        out.p = a.p;
        return out;
    }

    const bool u64_counts = a.total() * b.total() < u64_count_cap();
    const Int pairs = Int(a.entries.size()) * Int(b.entries.size());

    if (a.domain == ValueDist::Domain::residues) {
        const Int p_int(static_cast<unsigned long>(a.p));
        if (u64_counts && p_int <= key_budget) return convolve_residues_dense(a, b);
        check_budget("cyclic convolution", pairs < p_int ? pairs : p_int, key_budget);
        return convolve_residues_sparse(a, b);
    }

    const Int out_width =
        a.entries.back().first + b.entries.back().first -
        (a.entries.front().first + b.entries.front().first) + 1;
    const size_t nnz_min = std::min(a.entries.size(), b.entries.size());
    const Int inner_width = (a.entries.size() <= b.entries.size())
                                ? b.entries.back().first - b.entries.front().first + 1
                                : a.entries.back().first - a.entries.front().first + 1;
    const bool dense_ok = u64_counts && out_width <= key_budget;
    const bool sparse_ok = pairs <= key_budget;
    if (!dense_ok && !sparse_ok)
        check_budget("convolution", pairs < out_width ? pairs : out_width, key_budget);

    if (dense_ok && sparse_ok) {
        const Int dense_ops = out_width + Int(nnz_min) * inner_width;
        const Int sparse_ops = pairs * 16;
        return dense_ops <= sparse_ops ? convolve_integers_dense(a, b)
                                       : convolve_integers_sparse(a, b, u64_counts);
    }
    return dense_ok ? convolve_integers_dense(a, b) : convolve_integers_sparse(a, b, u64_counts);
}

MomentResult even_moment_I(const IntPoly& f, long H, int k, const Int& key_budget) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("even moment requires even k >= 2");
    ValueDist d = value_distribution(f, H, key_budget);
    ValueDist r = d;
    for (int i = 2; i <= k / 2; ++i) r = convolve(r, d, key_budget);
    MomentResult out;
    out.k = k;
    out.H = H;
    out.exact = true;
    out.value = sum_of_squared_counts(r);
    out.value_f = out.value.get_d();
    out.method = "convolution";
    return out;
}

Int diophantine_count(const std::vector<IntPoly>& fs, const std::vector<Int>& as, long H,
                      const Int& key_budget) {
    const size_t k = fs.size();
    if (k < 2) throw std::invalid_argument("need at least two summands");
    if (as.size() != k) throw std::invalid_argument("coefficient count must match polynomial count");
    for (const Int& a : as)
        if (a == 0) throw std::invalid_argument("coefficients must be nonzero");

    const size_t split = (k + 1) / 2;
    auto fold = [&](size_t lo, size_t hi) {
        ValueDist acc = scale_values(value_distribution(fs[lo], H, key_budget), as[lo]);
        for (size_t i = lo + 1; i < hi; ++i)
            acc = convolve(acc, scale_values(value_distribution(fs[i], H, key_budget), as[i]),
                           key_budget);
        return acc;
    };
    ValueDist left = fold(0, split);
    ValueDist right = fold(split, k);

    // Solutions pair a left value v with a right value -v: walk left
    // ascending and right descending in lockstep.
    Int count = 0;
    auto it = left.entries.begin();
    auto jt = right.entries.rbegin();
    while (it != left.entries.end() && jt != right.entries.rend()) {
        const Int neg = -jt->first;
        if (it->first < neg) {
            ++it;
        } else if (neg < it->first) {
            ++jt;
        } else {
            count += it->second * jt->second;
            ++it;
            ++jt;
        }
    }
    return count;
}

MomentResult moment_J(const IntPoly& f, long H, uint64_t p, int k, const Int& key_budget) {
    require_prime_modulus(p);
    require_box_injects(H, p);
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (k % 2 != 0) return moment_J_grid(f, H, p, k, key_budget);

    ValueDist d = value_distribution_mod(f, H, p, key_budget);
    ValueDist r = d;
    for (int i = 2; i <= k / 2; ++i) r = convolve(r, d, key_budget);
    MomentResult out;
    out.k = k;
    out.H = H;
    out.p = p;
    out.exact = true;
    out.value = sum_of_squared_counts(r);
    out.value_f = out.value.get_d();
    out.method = "convolution";
    return out;
}

MomentResult moment_J_grid(const IntPoly& f, long H, uint64_t p, int k, const Int& key_budget) {
    require_prime_modulus(p);
    require_box_injects(H, p);
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    const Int box = Int(2) * Int(H) + 1;
    check_budget("exponential grid", Int(static_cast<unsigned long>(p)) * box, key_budget);

    std::vector<uint64_t> residues;
    residues.reserve(static_cast<size_t>(2 * H + 1));
    for (long x = -H; x <= H; ++x) residues.push_back(f.eval_mod(Int(x), p));

    const double two_pi = 2.0 * std::acos(-1.0);
    std::vector<std::complex<double>> twiddle(static_cast<size_t>(p));
    for (uint64_t j = 0; j < p; ++j)
        twiddle[static_cast<size_t>(j)] =
            std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(p));

    // Fixed summation order (alpha ascending, x ascending) keeps reruns
    // bit-identical.
    double sum = 0.0;
    for (uint64_t alpha = 0; alpha < p; ++alpha) {
        std::complex<double> s(0.0, 0.0);
        for (uint64_t r : residues) s += twiddle[static_cast<size_t>(mulmod_u64(alpha, r, p))];
        sum += std::pow(std::norm(s), static_cast<double>(k) / 2.0);
    }
    MomentResult out;
    out.k = k;
    out.H = H;
    out.p = p;
    out.exact = false;
    out.value_f = sum / static_cast<double>(p);
    out.err_bound = static_cast<double>(k) * static_cast<double>(2 * H + 1) *
                    static_cast<double>(p) * std::numeric_limits<double>::epsilon() *
                    std::max(1.0, std::abs(out.value_f));
    out.method = "grid";
    return out;
}

double slope_estimate(const std::vector<std::pair<Int, Int>>& points) {
    if (points.size() < 2) throw std::invalid_argument("need at least two points");
    for (size_t i = 0; i < points.size(); ++i) {
        if (points[i].first <= 0) throw std::invalid_argument("H values must be positive");
        if (points[i].second <= 0) throw std::invalid_argument("counts must be positive");
        if (i > 0 && points[i].first <= points[i - 1].first)
            throw std::invalid_argument("H values must be strictly increasing");
    }
    const double n = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0;
    std::vector<std::pair<double, double>> logs;
    logs.reserve(points.size());
    for (const auto& [h, c] : points) {
        logs.emplace_back(log_int(h), log_int(c));
        sx += logs.back().first;
        sy += logs.back().second;
    }
    const double mx = sx / n, my = sy / n;
    double num = 0.0, den = 0.0;
    for (const auto& [x, y] : logs) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    return num / den;
}

} // namespace matcount
