#pragma once
// Small dense exact matrix helpers over Q (row-major vector<vector<Rational>>)
// and a Smith normal form over Z with unimodular transforms.

#include "rational.hpp"

#include <stdexcept>
#include <vector>

namespace voakit {

using Mat = std::vector<std::vector<Rational>>;
using IMat = std::vector<std::vector<Integer>>;

inline Mat mat_identity(size_t n) {
    Mat m(n, std::vector<Rational>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline Mat mat_transpose(const Mat& a) {
    if (a.empty()) return {};
    Mat t(a[0].size(), std::vector<Rational>(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    Mat r(n, std::vector<Rational>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

inline Mat mat_scale(const Mat& a, const Rational& c) {
    Mat r = a;
    for (auto& row : r)
        for (auto& x : row) x *= c;
    return r;
}

// Gauss-Jordan inverse; throws on singular input.
inline Mat mat_inverse(const Mat& a) {
    size_t n = a.size();
    Mat m = a, inv = mat_identity(n);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) throw std::domain_error("matrix is singular");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Rational d = m[col][col];
        for (size_t j = 0; j < n; ++j) {
            m[col][j] /= d;
            inv[col][j] /= d;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col] == 0) continue;
            Rational f = m[i][col];
            for (size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

inline Rational mat_det(Mat m) {
    size_t n = m.size();
    Rational det = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (size_t i = col + 1; i < n; ++i) {
            if (m[i][col] == 0) continue;
            Rational f = m[i][col] / m[col][col];
            for (size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    return det;
}

inline bool mat_is_integral(const Mat& a) {
    for (auto& row : a)
        for (auto& x : row)
            if (!is_integer(x)) return false;
    return true;
}

// --- Smith normal form over Z ---

struct SmithForm {
    IMat U, D, V;  // U*A*V = D diagonal, U and V unimodular
    std::vector<Integer> invariant_factors;  // nonzero diagonal, d1 | d2 | ...
};

namespace detail {
inline void irow_swap(IMat& m, size_t i, size_t j) { std::swap(m[i], m[j]); }
inline void irow_addmul(IMat& m, size_t dst, size_t src, const Integer& c) {
    for (size_t j = 0; j < m[dst].size(); ++j) m[dst][j] += c * m[src][j];
}
inline void icol_swap(IMat& m, size_t i, size_t j) {
    for (auto& row : m) std::swap(row[i], row[j]);
}
inline void icol_addmul(IMat& m, size_t dst, size_t src, const Integer& c) {
    for (auto& row : m) row[dst] += c * row[src];
}
inline void irow_neg(IMat& m, size_t i) {
    for (auto& x : m[i]) x = -x;
}
}  // namespace detail

inline SmithForm smith_normal_form(IMat a) {
    using namespace detail;
    size_t n = a.size(), m = n ? a[0].size() : 0;
    IMat U(n, std::vector<Integer>(n, 0)), V(m, std::vector<Integer>(m, 0));
    for (size_t i = 0; i < n; ++i) U[i][i] = 1;
    for (size_t j = 0; j < m; ++j) V[j][j] = 1;

    size_t t = 0;
    while (t < n && t < m) {
        // find a nonzero pivot at or below/right of (t, t)
        size_t pi = t, pj = t;
        bool found = false;
        for (size_t i = t; i < n && !found; ++i)
            for (size_t j = t; j < m && !found; ++j)
                if (a[i][j] != 0) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        if (pi != t) {
            irow_swap(a, pi, t);
            irow_swap(U, pi, t);
        }
        if (pj != t) {
            icol_swap(a, pj, t);
            icol_swap(V, pj, t);
        }
        // clear row and column t by euclidean steps
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (size_t i = t + 1; i < n; ++i)
                if (a[i][t] != 0) {
                    Integer q = a[i][t] / a[t][t];
                    irow_addmul(a, i, t, -q);
                    irow_addmul(U, i, t, -q);
                    if (a[i][t] != 0) {  // remainder smaller than pivot: swap up
                        irow_swap(a, i, t);
                        irow_swap(U, i, t);
                        dirty = true;
                    }
                }
            for (size_t j = t + 1; j < m; ++j)
                if (a[t][j] != 0) {
                    Integer q = a[t][j] / a[t][t];
                    icol_addmul(a, j, t, -q);
                    icol_addmul(V, j, t, -q);
                    if (a[t][j] != 0) {
                        icol_swap(a, j, t);
                        icol_swap(V, j, t);
                        dirty = true;
                    }
                }
        }
        // divisibility: pivot must divide the remaining block
        for (size_t i = t + 1; i < n; ++i)
            for (size_t j = t + 1; j < m; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    irow_addmul(a, t, i, 1);
                    irow_addmul(U, t, i, 1);
                    i = n;  // restart the clearing pass for this pivot
                    // re-run the while loop by recursing on the same t
                    break;
                }
        // check whether the divisibility fix re-dirtied row t
        bool redo = false;
        for (size_t j = t + 1; j < m; ++j)
            if (a[t][j] != 0) redo = true;
        if (redo) continue;
        if (a[t][t] < 0) {
            irow_neg(a, t);
            irow_neg(U, t);
        }
        ++t;
    }
    SmithForm s;
    s.U = std::move(U);
    s.V = std::move(V);
    s.D = std::move(a);
    for (size_t i = 0; i < n && i < m; ++i)
        if (s.D[i][i] != 0) s.invariant_factors.push_back(s.D[i][i]);
    return s;
}

}  // namespace voakit
