#include "matcount/exponents.hpp"

#include <algorithm>

namespace matcount {

static Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

static Rat s_integer_formula(int t, int d) {
    // Largest integer s <= d with s(s+1) <= t+1; s = 1 always qualifies
    // for t >= 1.
    int s = 1;
    while (s + 1 <= d && static_cast<long>(s + 1) * (s + 2) <= t + 1) ++s;
    return rat(s);
}

Rat s_param(int t, int d, SParamMode mode) {
    if (t < 3) throw std::invalid_argument("s_param: t must be >= 3");
    if (d < 3) throw std::invalid_argument("s_param: d must be >= 3");
    if (mode == SParamMode::table_then_formula && t <= 10) {
        switch (t) {
            case 3: return rat(2);
            case 4: return rat(9, 4);
            case 5: return rat(5, 2);
            case 6: return rat(11, 4);
            default: return rat(3); // t = 7..10
        }
    }
    return s_integer_formula(t, d);
}

Rat sigma_param(int k) {
    if (k < 4 || k > 11) throw std::invalid_argument("sigma_param: k must be in [4,11]");
    return s_param(k - 1, 3, SParamMode::table_then_formula);
}

Rat delta_exponent(int d, int m, int n, int r, SParamMode mode) {
    if (!(n >= m && m >= r && r >= 1))
        throw std::invalid_argument("delta_exponent: need n >= m >= r >= 1");
    if (d < 3) throw std::invalid_argument("delta_exponent: need d >= 3");
    Rat best = rat(0);
    for (int t = 3; t <= r; ++t) {
        Rat st = s_param(t, d, mode);
        Rat term = rat(t - 1) * rat(m) - rat(n) * (st - rat(1)) - rat(r) * (rat(t) - st);
        if (term > best) best = term;
    }
    return best;
}

Rat gamma_exponent(int m, int n, int r) {
    if (!(n >= m && m >= r && r >= 3))
        throw std::invalid_argument("gamma_exponent: need n >= m >= r >= 3");
    Rat best = rat(0);
    Rat a = rat(m) - rat(n + r, 2);
    Rat b = rat(m) * rat(r - 1) - rat(n) - rat(r) * rat(r - 2);
    if (a > best) best = a;
    if (b > best) best = b;
    return best;
}

std::string bound_formula_name(BoundFormula f) {
    switch (f) {
        case BoundFormula::katznelson: return "katznelson";
        case BoundFormula::blomer_li: return "blomer_li";
        case BoundFormula::rank_mod_asymptotic: return "rank_mod_asymptotic";
        case BoundFormula::rank_mod_minmax: return "rank_mod_minmax";
        case BoundFormula::poly_rank_box: return "poly_rank_box";
        case BoundFormula::poly_rank_box_simple: return "poly_rank_box_simple";
        case BoundFormula::poly_rank_box_square: return "poly_rank_box_square";
        case BoundFormula::poly_rank_nonproportional: return "poly_rank_nonproportional";
        case BoundFormula::poly_singular_box: return "poly_singular_box";
        case BoundFormula::poly_rank_mod: return "poly_rank_mod";
        case BoundFormula::poly_rank_mod_square: return "poly_rank_mod_square";
    }
    return "?";
}

std::vector<BoundFormula> all_bound_formulas() {
    return {BoundFormula::katznelson,
            BoundFormula::blomer_li,
            BoundFormula::rank_mod_asymptotic,
            BoundFormula::rank_mod_minmax,
            BoundFormula::poly_rank_box,
            BoundFormula::poly_rank_box_simple,
            BoundFormula::poly_rank_box_square,
            BoundFormula::poly_rank_nonproportional,
            BoundFormula::poly_singular_box,
            BoundFormula::poly_rank_mod,
            BoundFormula::poly_rank_mod_square};
}

namespace {

void require(bool ok, const char* what, const BoundParams& prm, BoundEval& eval) {
    if (ok) return;
    if (prm.force) {
        eval.outside_hypotheses = true;
        return;
    }
    throw std::invalid_argument(std::string("hypothesis violated: ") + what);
}

// Compare H^{h1} p^{q1} vs H^{h2} p^{q2} exactly: clear the denominators
// and move negative exponents across the inequality.
int cmp_branches(const Int& H, const Int& p, const BoundBranch& x, const BoundBranch& y) {
    Rat dh = x.h_exp - y.h_exp;
    Rat dq = x.p_exp - y.p_exp;
    Int den = lcm(dh.get_den(), dq.get_den());
    Int eh = dh.get_num() * (den / dh.get_den());
    Int eq = dq.get_num() * (den / dq.get_den());
    Int lhs(1), rhs(1);
    if (eh >= 0) lhs *= pow_int(H, eh.get_ui());
    else rhs *= pow_int(H, Int(-eh).get_ui());
    if (eq >= 0) lhs *= pow_int(p, eq.get_ui());
    else rhs *= pow_int(p, Int(-eq).get_ui());
    return cmp(lhs, rhs);
}

} // namespace

BoundEval predicted_exponent(BoundFormula f, const BoundParams& prm) {
    BoundEval out;
    out.formula = f;
    const int d = prm.d, m = prm.m, n = prm.n, r = prm.r;

    switch (f) {
        case BoundFormula::katznelson:
            require(n > r && r >= 1, "n > r >= 1", prm, out);
            out.branches.push_back({"count", rat(n) * rat(r), rat(0)});
            break;
        case BoundFormula::blomer_li:
            require(n >= m && m >= r && r >= 1, "n >= m >= r >= 1", prm, out);
            out.branches.push_back({"count", rat(m) * rat(r) + rat(n - r) * rat(r - 1), rat(0)});
            break;
        case BoundFormula::rank_mod_asymptotic:
            require(n >= m && m >= r && r >= 1, "n >= m >= r >= 1", prm, out);
            out.branches.push_back({"main", rat(m) * rat(n), rat(-(m - r) * (n - r))});
            out.branches.push_back({"error_p", rat(0), rat(static_cast<long>(r) * (m + n - r), 2)});
            out.branches.push_back({"error_Hp", rat(static_cast<long>(r) * (m + n - r) - 1), rat(1, 2)});
            out.note = "main term plus error branches; the count is main + O(max of errors)";
            break;
        case BoundFormula::rank_mod_minmax:
            require(n >= m && m >= r && r >= 1, "n >= m >= r >= 1", prm, out);
            out.branches.push_back({"box", rat(m) * rat(r), rat(0)});
            out.branches.push_back({"density", rat(m) * rat(n), rat(-(m - r) * (n - r))});
            break;
        case BoundFormula::poly_rank_box:
            require(d >= 3, "d >= 3", prm, out);
            require(n >= m && m >= r && r >= 4, "n >= m >= r >= 4", prm, out);
            out.branches.push_back({"count", rat(m) + rat(n) * rat(r) - rat(r) +
                                                 delta_exponent(d, m, n, r), rat(0)});
            break;
        case BoundFormula::poly_rank_box_simple:
            require(n >= m && m >= r && r >= 4, "n >= m >= r >= 4", prm, out);
            out.branches.push_back({"rank_term", rat(m) + rat(n) * rat(r) - rat(r), rat(0)});
            out.branches.push_back({"pair_term", rat(3 * m) + rat(n) * rat(r - 1) - rat(2 * r), rat(0)});
            out.branches.push_back({"moment_term", rat(m) * rat(r) + rat(n - r) * (rat(r) - rat(5, 4)), rat(0)});
            break;
        case BoundFormula::poly_rank_box_square:
            require(d >= 3, "d >= 3", prm, out);
            require(n >= r && r >= 4, "n >= r >= 4", prm, out);
            out.branches.push_back({"count", rat(n) * rat(r) +
                                                 rat(n - r) * (rat(r) - s_param(r, d) + rat(1)), rat(0)});
            break;
        case BoundFormula::poly_rank_nonproportional:
            require(n >= m && m >= r && r >= 4, "n >= m >= r >= 4", prm, out);
            out.branches.push_back({"pair_term", rat(3 * m) + rat(n) * rat(r - 1) - rat(2 * r), rat(0)});
            out.branches.push_back({"moment_term", rat(m) * rat(r) + rat(n - r) * (rat(r) - rat(5, 4)), rat(0)});
            break;
        case BoundFormula::poly_singular_box:
            require(d >= 3, "d >= 3", prm, out);
            require(n >= 4, "n >= 4", prm, out);
            out.branches.push_back({"count", rat(n) * rat(n) - s_param(n - 1, d), rat(0)});
            break;
        case BoundFormula::poly_rank_mod:
            require(n >= m && m >= r && r >= 3, "n >= m >= r >= 3", prm, out);
            out.branches.push_back({"count", rat(m) + rat(n) * rat(r) - rat(r) + gamma_exponent(m, n, r), rat(0)});
            out.note = "valid for H below the mean-value range p^{2/(e(e+1))} of the entry degree e";
            break;
        case BoundFormula::poly_rank_mod_square:
            require(n >= r && r >= 3, "n >= r >= 3", prm, out);
            out.branches.push_back({"count", rat(n) * rat(r) + rat(n - r) * rat(r - 1), rat(0)});
            out.note = "valid for H below the mean-value range p^{2/(e(e+1))} of the entry degree e";
            break;
    }

    if (prm.H && prm.p) {
        if (*prm.H < 1 || *prm.p < 1)
            throw std::invalid_argument("branch selection requires H >= 1 and p >= 1");
        int best = 0;
        for (size_t i = 1; i < out.branches.size(); ++i)
            if (cmp_branches(*prm.H, *prm.p, out.branches[i], out.branches[best]) > 0)
                best = static_cast<int>(i);
        out.selected = best;
    }
    return out;
}

} // namespace matcount
