#pragma once

#include "gf2.hpp"
#include "rational.hpp"

#include <numeric>
#include <vector>

namespace troppatch {

using IVec = std::vector<long long>;
using IMat = std::vector<IVec>; // list of row vectors

inline long long igcd(long long a, long long b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) { long long t = a % b; a = b; b = t; }
    return a;
}

inline IVec primitive(IVec v) {
    long long g = 0;
    for (long long x : v) g = igcd(g, x);
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

inline bool is_zero_vec(const IVec& v) {
    for (long long x : v) if (x) return false;
    return true;
}

inline IVec ivec_sub(const IVec& a, const IVec& b) {
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline long long dot(const IVec& a, const IVec& b) {
    long long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Rank over Q of a list of integer row vectors.
inline int qrank(IMat rows) {
    int n = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    int r = 0;
    for (int c = 0; c < n && r < static_cast<int>(rows.size()); ++c) {
        int sel = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (rows[i][c] != 0) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(rows[r], rows[sel]);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            // eliminate over Q using integer cross-multiplication, then re-normalize
            long long a = rows[r][c], b = rows[i][c];
            long long g = igcd(a, b);
            long long fa = b / g, fr = a / g;
            for (int k = 0; k < n; ++k) rows[i][k] = rows[i][k] * fr - rows[r][k] * fa;
            rows[i] = primitive(rows[i]);
        }
        ++r;
    }
    return r;
}

// Rank over Q of rational row vectors.
inline int qrank_rat(std::vector<QVec> rows) {
    int n = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    int r = 0;
    for (int c = 0; c < n && r < static_cast<int>(rows.size()); ++c) {
        int sel = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (!rows[i][c].is_zero()) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(rows[r], rows[sel]);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            Rat f = rows[i][c] / rows[r][c];
            for (int k = 0; k < n; ++k) rows[i][k] = rows[i][k] - f * rows[r][k];
        }
        ++r;
    }
    return r;
}

// Determinant of a square integer matrix via BigInt fraction-free elimination.
inline BigInt idet(const IMat& m) {
    int n = static_cast<int>(m.size());
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = BigInt(m[i][j]);
    BigInt det(1);
    BigInt prev(1);
    int sign = 1;
    for (int c = 0; c < n; ++c) {
        int sel = -1;
        for (int r = c; r < n; ++r)
            if (!(a[r][c] == BigInt(0))) { sel = r; break; }
        if (sel < 0) return BigInt(0);
        if (sel != c) { std::swap(a[sel], a[c]); sign = -sign; }
        for (int r = c + 1; r < n; ++r) {
            for (int k = c + 1; k < n; ++k)
                a[r][k] = (a[r][k] * a[c][c] - a[r][c] * a[c][k]) / prev; // Bareiss: division exact
            a[r][c] = BigInt(0);
        }
        prev = a[c][c];
    }
    det = a[n - 1][n - 1];
    return sign < 0 ? det.neg() : det;
}

// gcd of all k x k minors of a k x n integer matrix (rows independent assumed not required).
inline BigInt minors_gcd(const IMat& rows) {
    int k = static_cast<int>(rows.size());
    int n = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    if (k == 0) return BigInt(1);
    if (k > n) return BigInt(0);
    BigInt g(0);
    for (const auto& cols : subsets_lex(n, k)) {
        IMat sub(k, IVec(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub[i][j] = rows[i][cols[j]];
        g = BigInt::gcd(g, idet(sub));
        if (g == BigInt(1)) return g;
    }
    return g;
}

// Saturated lattice data for the span of a set of integer vectors in Z^n:
// a Z-basis of the saturation, an integral complement basis, and the integer
// projection matrix onto complement coordinates (kernel = the saturation).
struct LatticeSplit {
    int n = 0;
    int rank = 0;
    IMat tangent_basis;    // rank rows, a Z-basis of sat(span)
    IMat complement_basis; // n - rank rows, completes to a Z-basis of Z^n
    IMat proj;             // (n - rank) x n integer matrix, x -> complement coords
};

// Smith-style reduction tracking U (rows) and U^{-1}.
inline LatticeSplit lattice_split(const IMat& generators, int n) {
    IMat a; // working copy: columns = generators, stored as n x k
    int k = static_cast<int>(generators.size());
    a.assign(n, IVec(k, 0));
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) a[i][j] = generators[j][i];
    IMat u(n, IVec(n, 0)), uinv(n, IVec(n, 0));
    for (int i = 0; i < n; ++i) { u[i][i] = 1; uinv[i][i] = 1; }

    auto row_swap = [&](int r1, int r2) {
        std::swap(a[r1], a[r2]);
        std::swap(u[r1], u[r2]);
        for (int i = 0; i < n; ++i) std::swap(uinv[i][r1], uinv[i][r2]);
    };
    auto row_add = [&](int dst, int src, long long f) { // row_dst += f * row_src
        for (int j = 0; j < k; ++j) a[dst][j] += f * a[src][j];
        for (int j = 0; j < n; ++j) u[dst][j] += f * u[src][j];
        for (int i = 0; i < n; ++i) uinv[i][src] -= f * uinv[i][dst];
    };
    auto row_neg = [&](int r) {
        for (auto& x : a[r]) x = -x;
        for (auto& x : u[r]) x = -x;
        for (int i = 0; i < n; ++i) uinv[i][r] = -uinv[i][r];
    };
    auto col_swap = [&](int c1, int c2) {
        for (int i = 0; i < n; ++i) std::swap(a[i][c1], a[i][c2]);
    };
    auto col_add = [&](int dst, int src, long long f) {
        for (int i = 0; i < n; ++i) a[i][dst] += f * a[i][src];
    };

    int r = 0;
    while (r < n && r < k) {
        // find a nonzero pivot in the remaining block
        int pi = -1, pj = -1;
        for (int i = r; i < n && pi < 0; ++i)
            for (int j = r; j < k; ++j)
                if (a[i][j] != 0) { pi = i; pj = j; break; }
        if (pi < 0) break;
        row_swap(r, pi);
        col_swap(r, pj);
        // clear column r and row r by gcd steps
        bool again = true;
        while (again) {
            again = false;
            for (int i = r + 1; i < n; ++i) {
                if (a[i][r] == 0) continue;
                long long q = a[i][r] / a[r][r];
                row_add(i, r, -q);
                if (a[i][r] != 0) { row_swap(r, i); again = true; }
            }
            for (int j = r + 1; j < k; ++j) {
                if (a[r][j] == 0) continue;
                long long q = a[r][j] / a[r][r];
                col_add(j, r, -q);
                if (a[r][j] != 0) { col_swap(r, j); again = true; }
            }
        }
        if (a[r][r] < 0) row_neg(r);
        ++r;
    }

    LatticeSplit out;
    out.n = n;
    out.rank = r;
    for (int i = 0; i < r; ++i) {
        IVec col(n);
        for (int j = 0; j < n; ++j) col[j] = uinv[j][i];
        out.tangent_basis.push_back(std::move(col));
    }
    for (int i = r; i < n; ++i) {
        IVec col(n);
        for (int j = 0; j < n; ++j) col[j] = uinv[j][i];
        out.complement_basis.push_back(std::move(col));
    }
    for (int i = r; i < n; ++i) out.proj.push_back(u[i]);
    return out;
}

inline IVec apply_imat(const IMat& m, const IVec& x) {
    IVec y(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i) y[i] = dot(m[i], x);
    return y;
}

inline QVec apply_imat_q(const IMat& m, const QVec& x) {
    QVec y(m.size(), Rat(0));
    for (size_t i = 0; i < m.size(); ++i) {
        Rat s(0);
        for (size_t j = 0; j < x.size(); ++j) s = s + Rat(m[i][j]) * x[j];
        y[i] = s;
    }
    return y;
}

inline GF2Matrix imat_mod2(const IMat& m, int cols) {
    GF2Matrix g(static_cast<int>(m.size()), cols);
    for (size_t i = 0; i < m.size(); ++i)
        for (int j = 0; j < cols; ++j)
            if (m[i][j] & 1) g.set(static_cast<int>(i), j, true);
    return g;
}

inline uint64_t ivec_mod2_mask(const IVec& v) {
    uint64_t m = 0;
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] & 1) m |= (1ull << i);
    return m;
}

inline IMat imat_product(const IMat& a, const IMat& b) {
    // a: p x q, b: q x r  ->  p x r
    size_t p = a.size(), q = b.size(), r = b.empty() ? 0 : b[0].size();
    IMat out(p, IVec(r, 0));
    for (size_t i = 0; i < p; ++i)
        for (size_t k = 0; k < q; ++k)
            if (a[i][k])
                for (size_t j = 0; j < r; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

inline IMat imat_transpose(const IMat& a) {
    if (a.empty()) return {};
    IMat t(a[0].size(), IVec(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

} // namespace troppatch
