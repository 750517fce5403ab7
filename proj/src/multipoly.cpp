#include "matcount/multipoly.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace matcount {

bool MultiPoly::GradedLex::operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    int da = 0, db = 0;
    for (int e : a) da += e;
    for (int e : b) db += e;
    if (da != db) return da > db; // higher degree first, so iteration prints canonically
    return a > b;
}

MultiPoly::MultiPoly(std::vector<std::string> var_names) : names_(std::move(var_names)) {}

MultiPoly MultiPoly::constant(std::vector<std::string> var_names, const Int& c) {
    MultiPoly p(std::move(var_names));
    if (c != 0) p.terms_.emplace(std::vector<int>(p.nvars(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> var_names, size_t var) {
    MultiPoly p(std::move(var_names));
    if (var >= p.nvars()) throw std::invalid_argument("variable index out of range");
    std::vector<int> e(p.nvars(), 0);
    e[var] = 1;
    p.terms_.emplace(std::move(e), Int(1));
    return p;
}

MultiPoly MultiPoly::lift(std::vector<std::string> var_names, size_t var, const IntPoly& f) {
    MultiPoly p(std::move(var_names));
    if (var >= p.nvars()) throw std::invalid_argument("variable index out of range");
    for (size_t i = 0; i < f.coeffs().size(); ++i) {
        if (f.coeffs()[i] == 0) continue;
        std::vector<int> e(p.nvars(), 0);
        e[var] = static_cast<int>(i);
        p.terms_.emplace(std::move(e), f.coeffs()[i]);
    }
    return p;
}

unsigned MultiPoly::total_degree() const {
    if (terms_.empty()) return 0;
    // First key has maximal total degree under the graded order.
    const std::vector<int>& e = terms_.begin()->first;
    int d = 0;
    for (int x : e) d += x;
    return static_cast<unsigned>(d);
}

unsigned MultiPoly::degree_in(size_t var) const {
    if (var >= nvars()) throw std::invalid_argument("variable index out of range");
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return static_cast<unsigned>(d);
}

bool MultiPoly::is_homogeneous() const {
    std::optional<int> deg;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int x : e) d += x;
        if (!deg) deg = d;
        else if (*deg != d) return false;
    }
    return true;
}

void MultiPoly::add_term(const std::vector<int>& exps, const Int& coeff) {
    if (exps.size() != nvars()) throw std::invalid_argument("exponent vector has wrong arity");
    if (coeff == 0) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

void MultiPoly::check_same_registry(const MultiPoly& o) const {
    if (names_ != o.names_) throw std::invalid_argument("operands use different variable registries");
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    check_same_registry(o);
    MultiPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    check_same_registry(o);
    MultiPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
    return out;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    check_same_registry(o);
    MultiPoly out(names_);
    std::vector<int> e(nvars());
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

MultiPoly MultiPoly::scaled(const Int& c) const {
    MultiPoly out(names_);
    if (c == 0) return out;
    for (const auto& [e, coeff] : terms_) out.terms_.emplace(e, coeff * c);
    return out;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    return names_ == o.names_ && terms_ == o.terms_;
}

Int MultiPoly::eval(const std::vector<Int>& point) const {
    if (point.size() != nvars()) throw std::invalid_argument("point has wrong arity");
    Int acc = 0;
    for (const auto& [e, c] : terms_) {
        Int t = c;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (e[i] == 1) {
                t *= point[i];
            } else {
                t *= pow_int(point[i], static_cast<unsigned long>(e[i]));
            }
        }
        acc += t;
    }
    return acc;
}

MultiPoly MultiPoly::substitute(const std::vector<std::optional<Int>>& values) const {
    if (values.size() != nvars()) throw std::invalid_argument("substitution has wrong arity");
    MultiPoly out(names_);
    std::vector<int> e(nvars());
    for (const auto& [exps, c] : terms_) {
        Int coeff = c;
        for (size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0 || !values[i]) {
                e[i] = exps[i];
            } else {
                e[i] = 0;
                coeff *= pow_int(*values[i], static_cast<unsigned long>(exps[i]));
            }
        }
        out.add_term(e, coeff);
    }
    return out;
}

MultiPoly MultiPoly::homogenized(unsigned target, const std::string& zname) const {
    if (total_degree() > target)
        throw std::invalid_argument("homogenize: target degree below polynomial degree");
    std::vector<std::string> names = names_;
    names.push_back(zname);
    MultiPoly out(std::move(names));
    for (const auto& [exps, c] : terms_) {
        int d = 0;
        for (int x : exps) d += x;
        std::vector<int> e = exps;
        e.push_back(static_cast<int>(target) - d);
        out.terms_.emplace(std::move(e), c);
    }
    return out;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Int a = abs(c);
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        bool any_var = false;
        for (int x : e)
            if (x > 0) { any_var = true; break; }
        if (!any_var || a != 1) out << a.get_str();
        bool printed = !any_var || a != 1;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (printed) out << "*";
            out << names_[i];
            if (e[i] > 1) out << "^" << e[i];
            printed = true;
        }
    }
    return out.str();
}

std::vector<std::string> entry_var_names(int m, int n) {
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(m) * n);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j)
            names.push_back("X" + std::to_string(i) + std::to_string(j));
    return names;
}

// Leibniz expansion of det over an explicit matrix of MultiPoly entries.
static MultiPoly leibniz_det(const std::vector<MultiPoly>& entries, int n,
                             const std::vector<std::string>& names) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    MultiPoly acc(names);
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        MultiPoly prod = MultiPoly::constant(names, Int(inversions % 2 == 0 ? 1 : -1));
        for (int i = 0; i < n && !prod.is_zero(); ++i)
            prod = prod * entries[static_cast<size_t>(i) * n + perm[i]];
        acc = acc + prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

MultiPoly symbolic_determinant(const PolyMatrixSpec& spec) {
    spec.validate();
    if (!spec.square()) throw std::invalid_argument("symbolic_determinant: spec must be square");
    if (spec.n > 5) throw std::invalid_argument("symbolic_determinant: n capped at 5 (term blowup)");
    int n = spec.n;
    std::vector<std::string> names = entry_var_names(n, n);
    std::vector<MultiPoly> entries;
    entries.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            entries.push_back(MultiPoly::lift(names, static_cast<size_t>(i) * n + j, spec.at(i, j)));
    return leibniz_det(entries, n, names);
}

MultiPoly specialize_first_row(const PolyMatrixSpec& spec) {
    spec.validate();
    if (!spec.square() || spec.n < 3 || spec.n > 5)
        throw std::invalid_argument("specialize_first_row: square spec with 3 <= n <= 5 required");
    int n = spec.n;
    std::vector<std::string> names;
    for (int j = 1; j <= n; ++j) names.push_back("X1" + std::to_string(j));
    std::vector<MultiPoly> entries;
    entries.reserve(static_cast<size_t>(n) * n);
    for (int j = 0; j < n; ++j) entries.push_back(MultiPoly::lift(names, static_cast<size_t>(j), spec.at(0, j)));
    for (int i = 1; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            // Lower block [1 | I_{n-1}]: first column ones, then the identity.
            Int v = (j == 0 || j == i) ? 1 : 0;
            entries.push_back(MultiPoly::constant(names, v));
        }
    }
    return leibniz_det(entries, n, names);
}

static std::vector<std::vector<int>> subsets_lex(int n, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(r);
    for (int i = 0; i < r; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = r - 1;
        while (i >= 0 && cur[i] == n - r + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < r; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

MultiPoly minor_combination(const PolyMatrixSpec& spec, int r, const std::vector<Int>& coeffs) {
    spec.validate();
    if (!spec.square()) throw std::invalid_argument("minor_combination: spec must be square");
    int n = spec.n;
    if (n > 4 || r < 3 || r > n)
        throw std::invalid_argument("minor_combination: requires 3 <= r <= n <= 4");
    std::vector<std::vector<int>> subs = subsets_lex(n, r);
    size_t s = subs.size() * subs.size();
    if (coeffs.size() != s)
        throw std::invalid_argument("minor_combination: expected binom(n,r)^2 coefficients");
    bool any = false;
    for (const Int& c : coeffs)
        if (c != 0) { any = true; break; }
    if (!any) throw std::invalid_argument("minor_combination: all-zero combination is trivial");

    std::vector<std::string> names = entry_var_names(n, n);
    MultiPoly acc(names);
    size_t idx = 0;
    for (const auto& rows : subs) {
        for (const auto& cols : subs) {
            const Int& c = coeffs[idx++];
            if (c == 0) continue;
            std::vector<MultiPoly> entries;
            entries.reserve(static_cast<size_t>(r) * r);
            for (int i : rows)
                for (int j : cols)
                    entries.push_back(MultiPoly::lift(names, static_cast<size_t>(i) * n + j, spec.at(i, j)));
            acc = acc + leibniz_det(entries, r, names).scaled(c);
        }
    }
    return acc;
}

} // namespace matcount
