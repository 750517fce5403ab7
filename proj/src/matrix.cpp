#include "matcount/matrix.hpp"

#include <mutex>

namespace matcount {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix I(n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

void require_prime(uint64_t p) {
    // Cache the last few accepted moduli; counting loops revalidate often.
    static std::mutex mu;
    static uint64_t accepted[4] = {0, 0, 0, 0};
    {
        std::lock_guard<std::mutex> lk(mu);
        for (uint64_t q : accepted)
            if (q == p) return;
    }
    if (p < 2 || !probable_prime(p))
        throw std::invalid_argument("modulus must be prime");
    std::lock_guard<std::mutex> lk(mu);
    accepted[3] = accepted[2];
    accepted[2] = accepted[1];
    accepted[1] = accepted[0];
    accepted[0] = p;
}

int rank_rational(IntMatrix A) {
    int r = 0;
    Int denom = 1;
    for (int col = 0; col < A.cols && r < A.rows; ++col) {
        int piv = -1;
        for (int i = r; i < A.rows; ++i)
            if (A.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < A.cols; ++j) swap(A.at(piv, j), A.at(r, j));
        for (int i = r + 1; i < A.rows; ++i) {
            for (int j = col + 1; j < A.cols; ++j) {
                Int t = A.at(r, col) * A.at(i, j) - A.at(i, col) * A.at(r, j);
                mpz_divexact(A.at(i, j).get_mpz_t(), t.get_mpz_t(), denom.get_mpz_t());
            }
            A.at(i, col) = 0;
        }
        denom = A.at(r, col);
        ++r;
    }
    return r;
}

Int det(const IntMatrix& A) {
    if (A.rows != A.cols) throw std::invalid_argument("det: matrix must be square");
    IntMatrix M = A;
    int n = M.rows;
    Int denom = 1;
    int sign = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (M.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) return Int(0);
        if (piv != col) {
            for (int j = 0; j < n; ++j) swap(M.at(piv, j), M.at(col, j));
            sign = -sign;
        }
        for (int i = col + 1; i < n; ++i) {
            for (int j = col + 1; j < n; ++j) {
                Int t = M.at(col, col) * M.at(i, j) - M.at(i, col) * M.at(col, j);
                mpz_divexact(M.at(i, j).get_mpz_t(), t.get_mpz_t(), denom.get_mpz_t());
            }
            M.at(i, col) = 0;
        }
        denom = M.at(col, col);
    }
    Int d = M.at(n - 1, n - 1);
    return sign < 0 ? Int(-d) : d;
}

namespace detail {

int rank_mod_p_unchecked(std::vector<uint64_t> a, int rows, int cols, uint64_t p) {
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a[static_cast<size_t>(i) * cols + col] != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < cols; ++j)
                std::swap(a[static_cast<size_t>(piv) * cols + j], a[static_cast<size_t>(r) * cols + j]);
        uint64_t inv = invmod_u64(a[static_cast<size_t>(r) * cols + col], p);
        for (int i = r + 1; i < rows; ++i) {
            uint64_t f = a[static_cast<size_t>(i) * cols + col];
            if (f == 0) continue;
            uint64_t scale = mulmod_u64(f, inv, p);
            for (int j = col; j < cols; ++j) {
                uint64_t sub = mulmod_u64(scale, a[static_cast<size_t>(r) * cols + j], p);
                uint64_t& x = a[static_cast<size_t>(i) * cols + j];
                x = (x >= sub) ? x - sub : x + p - sub;
            }
        }
        ++r;
    }
    return r;
}

uint64_t det_mod_p_unchecked(std::vector<uint64_t> a, int n, uint64_t p) {
    uint64_t prod = 1 % p;
    bool neg = false;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (a[static_cast<size_t>(i) * n + col] != 0) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != col) {
            for (int j = 0; j < n; ++j)
                std::swap(a[static_cast<size_t>(piv) * n + j], a[static_cast<size_t>(col) * n + j]);
            neg = !neg;
        }
        uint64_t pv = a[static_cast<size_t>(col) * n + col];
        prod = mulmod_u64(prod, pv, p);
        uint64_t inv = invmod_u64(pv, p);
        for (int i = col + 1; i < n; ++i) {
            uint64_t f = a[static_cast<size_t>(i) * n + col];
            if (f == 0) continue;
            uint64_t scale = mulmod_u64(f, inv, p);
            for (int j = col; j < n; ++j) {
                uint64_t sub = mulmod_u64(scale, a[static_cast<size_t>(col) * n + j], p);
                uint64_t& x = a[static_cast<size_t>(i) * n + j];
                x = (x >= sub) ? x - sub : x + p - sub;
            }
        }
    }
    if (neg && prod != 0) prod = p - prod;
    return prod;
}

} // namespace detail

int rank_mod_p(const IntMatrix& A, uint64_t p) {
    require_prime(p);
    std::vector<uint64_t> a(A.a.size());
    for (size_t i = 0; i < a.size(); ++i) a[i] = mod_u64(A.a[i], p);
    return detail::rank_mod_p_unchecked(std::move(a), A.rows, A.cols, p);
}

uint64_t det_mod_p(const IntMatrix& A, uint64_t p) {
    if (A.rows != A.cols) throw std::invalid_argument("det_mod_p: matrix must be square");
    require_prime(p);
    std::vector<uint64_t> a(A.a.size());
    for (size_t i = 0; i < a.size(); ++i) a[i] = mod_u64(A.a[i], p);
    return detail::det_mod_p_unchecked(std::move(a), A.rows, p);
}

} // namespace matcount
