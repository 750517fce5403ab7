#include "matcount/poly.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "matcount/rng.hpp"

namespace matcount {

IntPoly::IntPoly(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(Int(0));
    while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPoly IntPoly::monomial(unsigned degree, Int c) {
    std::vector<Int> v(degree + 1, Int(0));
    v[degree] = std::move(c);
    return IntPoly(std::move(v));
}

Int IntPoly::eval(const Int& x) const {
    Int acc = 0;
    for (size_t i = coeffs_.size(); i-- > 0;) {
        acc *= x;
        acc += coeffs_[i];
    }
    return acc;
}

uint64_t IntPoly::eval_mod(const Int& x, uint64_t p) const {
    if (p < 2) throw std::invalid_argument("eval_mod: modulus must be >= 2");
    uint64_t xr = mod_u64(x, p);
    uint64_t acc = 0;
    for (size_t i = coeffs_.size(); i-- > 0;) {
        acc = mulmod_u64(acc, xr, p);
        uint64_t c = mod_u64(coeffs_[i], p);
        acc += c;
        if (acc >= p) acc -= p;
    }
    return acc;
}

Int IntPoly::height() const {
    Int h = 0;
    for (const Int& c : coeffs_) {
        Int a = abs(c);
        if (a > h) h = a;
    }
    return h;
}

Int IntPoly::abs_bound_on_box(const Int& H) const {
    if (H < 0) throw std::invalid_argument("abs_bound_on_box: H must be >= 0");
    Int acc = 0;
    for (size_t i = coeffs_.size(); i-- > 0;) {
        acc *= H;
        acc += abs(coeffs_[i]);
    }
    return acc;
}

std::string IntPoly::to_string(const std::string& var) const {
    std::ostringstream out;
    bool first = true;
    for (size_t i = coeffs_.size(); i-- > 0;) {
        const Int& c = coeffs_[i];
        if (c == 0 && !(coeffs_.size() == 1)) continue;
        Int a = abs(c);
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        if (i == 0 || a != 1) out << a.get_str();
        if (i > 0) {
            if (a != 1) out << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    if (first) out << "0";
    return out.str();
}

bool PolyMatrixSpec::all_nonconstant() const {
    for (const IntPoly& f : entries)
        if (f.is_constant()) return false;
    return true;
}

unsigned PolyMatrixSpec::max_degree() const {
    unsigned d = 0;
    for (const IntPoly& f : entries) d = std::max(d, f.degree());
    return d;
}

Int PolyMatrixSpec::height() const {
    Int h = 0;
    for (const IntPoly& f : entries) h = std::max(h, f.height());
    return h;
}

void PolyMatrixSpec::validate() const {
    if (m < 1 || n < 1) throw std::invalid_argument("matrix spec: dimensions must be >= 1");
    if (entries.size() != static_cast<size_t>(m) * static_cast<size_t>(n))
        throw std::invalid_argument("matrix spec: entry count does not match dimensions");
}

PolyMatrixSpec PolyMatrixSpec::uniform(int m, int n, const IntPoly& f) {
    PolyMatrixSpec s;
    s.m = m;
    s.n = n;
    s.entries.assign(static_cast<size_t>(m) * n, f);
    s.validate();
    return s;
}

PolyMatrixSpec PolyMatrixSpec::linear(int m, int n) {
    return uniform(m, n, IntPoly::monomial(1));
}

PolyMatrixSpec PolyMatrixSpec::monomial(int m, int n, unsigned d) {
    return uniform(m, n, IntPoly::monomial(d));
}

static nlohmann::json coeff_to_json(const Int& c) {
    if (c.fits_slong_p()) return nlohmann::json(c.get_si());
    return nlohmann::json(c.get_str());
}

static Int coeff_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<int64_t>()));
    if (j.is_number_unsigned()) {
        uint64_t v = j.get<uint64_t>();
        Int r(static_cast<unsigned long>(v));
        return r;
    }
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::invalid_argument("matrix spec: coefficients must be integers or integer strings");
}

nlohmann::json spec_to_json(const PolyMatrixSpec& spec) {
    spec.validate();
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < spec.m; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < spec.n; ++j) {
            nlohmann::json cs = nlohmann::json::array();
            for (const Int& c : spec.at(i, j).coeffs()) cs.push_back(coeff_to_json(c));
            row.push_back(std::move(cs));
        }
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"m", spec.m}, {"n", spec.n}, {"entries", std::move(rows)}};
}

PolyMatrixSpec spec_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("m") || !j.contains("n") || !j.contains("entries"))
        throw std::invalid_argument("matrix spec: expected object with m, n, entries");
    PolyMatrixSpec s;
    s.m = j.at("m").get<int>();
    s.n = j.at("n").get<int>();
    const nlohmann::json& rows = j.at("entries");
    if (!rows.is_array() || rows.size() != static_cast<size_t>(std::max(s.m, 0)))
        throw std::invalid_argument("matrix spec: entries must hold m rows");
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != static_cast<size_t>(std::max(s.n, 0)))
            throw std::invalid_argument("matrix spec: each row must hold n entries");
        for (const auto& cs : row) {
            if (!cs.is_array() || cs.empty())
                throw std::invalid_argument("matrix spec: each entry is a nonempty coefficient array");
            std::vector<Int> coeffs;
            coeffs.reserve(cs.size());
            for (const auto& c : cs) coeffs.push_back(coeff_from_json(c));
            s.entries.emplace_back(std::move(coeffs));
        }
    }
    s.validate();
    return s;
}

PolyMatrixSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open spec file: " + path);
    nlohmann::json j;
    in >> j;
    return spec_from_json(j);
}

PolyMatrixSpec random_matrix_spec(uint64_t seed, int m, int n, unsigned degree, const Int& coeff_bound) {
    if (m < 1 || n < 1) throw std::invalid_argument("random_matrix_spec: dimensions must be >= 1");
    if (degree < 1) throw std::invalid_argument("random_matrix_spec: degree must be >= 1");
    if (coeff_bound < 1) throw std::invalid_argument("random_matrix_spec: coefficient bound must be >= 1");
    if (!coeff_bound.fits_slong_p())
        throw std::invalid_argument("random_matrix_spec: coefficient bound too large");
    int64_t B = coeff_bound.get_si();

    // Mix the shape into the stream so distinct shapes with one seed differ.
    Rng rng(seed ^ (0x9e3779b97f4a7c15ull * (static_cast<uint64_t>(m) * 64 + n) + degree));
    PolyMatrixSpec s;
    s.m = m;
    s.n = n;
    s.entries.reserve(static_cast<size_t>(m) * n);
    for (int e = 0; e < m * n; ++e) {
        std::vector<Int> coeffs(degree + 1);
        for (unsigned i = 0; i < degree; ++i) coeffs[i] = Int(static_cast<long>(rng.range(-B, B)));
        int64_t lead = rng.range(1, B);
        if (rng.below(2)) lead = -lead;
        coeffs[degree] = Int(static_cast<long>(lead));
        s.entries.emplace_back(std::move(coeffs));
    }
    return s;
}

static double log2_of(const Int& v) {
    long exp2 = 0;
    double d = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log2(d) + static_cast<double>(exp2);
}

double BigPower::log2_log2() const {
    double lb = log2_of(base); // >= 1 since base >= 2
    double le;
    if (nested) {
        // exponent = nb^ne with ne exact; log2(exponent) = ne * log2(nb)
        double ne = mpz_get_d(nested->exponent.get_mpz_t());
        le = ne * log2_of(nested->base);
    } else {
        le = log2_of(exponent);
    }
    return le + std::log2(lb);
}

Int BigPower::value() const {
    Int e = exponent_exact() ? exponent : nested->value();
    if (e < 0) throw std::domain_error("negative exponent");
    // bits(result) ~ e * log2(base); refuse beyond ~2^26 bits
    double bits = mpz_get_d(e.get_mpz_t()) * log2_of(base);
    if (!(bits <= static_cast<double>(1 << 26)))
        throw std::overflow_error("power too large to materialize");
    if (!e.fits_ulong_p()) throw std::overflow_error("exponent does not fit a machine word");
    return pow_int(base, e.get_ui());
}

std::string BigPower::to_string() const {
    std::ostringstream out;
    out << base.get_str() << "^";
    if (exponent_exact())
        out << exponent.get_str();
    else
        out << "(" << nested->to_string() << ")";
    return out.str();
}

bool big_power_less(const BigPower& a, const BigPower& b) {
    double la = a.log2_log2(), lb = b.log2_log2();
    // Distinguishable on the double scale: trust it.
    if (std::isfinite(la) && std::isfinite(lb) && std::abs(la - lb) > 1e-9 * (1.0 + std::abs(la) + std::abs(lb)))
        return la < lb;
    // Near-ties: compare exactly when both sides materialize.
    try {
        return a.value() < b.value();
    } catch (const std::overflow_error&) {
        return la < lb;
    }
}

BigPower ostrowski_threshold(const Int& norm, unsigned k, unsigned d) {
    if (norm < 1) throw std::invalid_argument("ostrowski_threshold: norm must be >= 1");
    if (k < 1 || d < 1) throw std::invalid_argument("ostrowski_threshold: k and d must be >= 1");
    Int M = binomial(k + d - 1, k);
    BigPower out;
    out.base = 4 * norm;
    // Exponent M^(2^M): exact while both 2^M and the resulting bit size
    // stay sane; symbolic (M, 2^M) otherwise.
    if (M == 1) {
        out.exponent = 1; // 1^2 = 1
        return out;
    }
    if (M.fits_ulong_p() && M.get_ui() <= (1u << 26)) {
        unsigned long mu = M.get_ui();
        Int pow2 = Int(1) << mu;
        double bits = mpz_get_d(pow2.get_mpz_t()) * std::log2(static_cast<double>(mu));
        if (mu <= 63 && bits <= static_cast<double>(1 << 20)) {
            out.exponent = pow_int(M, 1ul << mu);
            return out;
        }
        auto nested = std::make_shared<BigPower>();
        nested->base = M;
        nested->exponent = pow2;
        out.nested = std::move(nested);
        return out;
    }
    throw std::invalid_argument("ostrowski_threshold: parameters exceed representable exponent tower");
}

} // namespace matcount
