#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace troppatch {

struct TroppatchError : std::runtime_error {
    std::string code;
    TroppatchError(std::string c, const std::string& what)
        : std::runtime_error(c + ": " + what), code(std::move(c)) {}
};

// Dense bit-packed matrix over GF(2). Row-major, 64-bit words.
class GF2Matrix {
public:
    GF2Matrix() = default;
    GF2Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), words_(static_cast<size_t>(rows) * ((cols + 63) / 64), 0) {
        if (rows < 0 || cols < 0 || cols > (1 << 16)) throw TroppatchError("BadDimension", "GF2Matrix size");
    }

    static GF2Matrix identity(int n) {
        GF2Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const {
        return (words_[static_cast<size_t>(r) * wpr_ + c / 64] >> (c % 64)) & 1ull;
    }
    void set(int r, int c, bool v) {
        uint64_t& w = words_[static_cast<size_t>(r) * wpr_ + c / 64];
        uint64_t bit = 1ull << (c % 64);
        if (v) w |= bit; else w &= ~bit;
    }

    void xor_row_into(int dst, int src) {
        size_t d = static_cast<size_t>(dst) * wpr_, s = static_cast<size_t>(src) * wpr_;
        for (size_t k = 0; k < wpr_; ++k) words_[d + k] ^= words_[s + k];
    }

    void swap_rows(int a, int b) {
        if (a == b) return;
        size_t pa = static_cast<size_t>(a) * wpr_, pb = static_cast<size_t>(b) * wpr_;
        for (size_t k = 0; k < wpr_; ++k) std::swap(words_[pa + k], words_[pb + k]);
    }

    bool row_is_zero(int r) const {
        size_t p = static_cast<size_t>(r) * wpr_;
        for (size_t k = 0; k < wpr_; ++k)
            if (words_[p + k]) return false;
        return true;
    }

    std::vector<uint8_t> row(int r) const {
        std::vector<uint8_t> v(cols_);
        for (int c = 0; c < cols_; ++c) v[c] = get(r, c);
        return v;
    }

    void set_row(int r, const std::vector<uint8_t>& v) {
        for (int c = 0; c < cols_; ++c) set(r, c, v[c] != 0);
    }

    GF2Matrix transpose() const {
        GF2Matrix t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c)
                if (get(r, c)) t.set(c, r, true);
        return t;
    }

    GF2Matrix operator*(const GF2Matrix& o) const {
        if (cols_ != o.rows_) throw TroppatchError("BadDimension", "GF2Matrix product");
        GF2Matrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k)
                if (get(i, k)) r.xor_row_into_from(i, o, k);
        return r;
    }

    std::vector<uint8_t> apply(const std::vector<uint8_t>& x) const {
        if (static_cast<int>(x.size()) != cols_) throw TroppatchError("BadDimension", "GF2Matrix apply");
        std::vector<uint8_t> y(rows_, 0);
        for (int i = 0; i < rows_; ++i) {
            uint8_t acc = 0;
            for (int c = 0; c < cols_; ++c) acc ^= (get(i, c) & x[c]);
            y[i] = acc;
        }
        return y;
    }

    friend bool operator==(const GF2Matrix& a, const GF2Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.words_ == b.words_;
    }

    bool is_zero() const {
        for (uint64_t w : words_) if (w) return false;
        return true;
    }

private:
    int rows_ = 0, cols_ = 0;
    size_t wpr_ = 0;
    std::vector<uint64_t> words_;

    void xor_row_into_from(int dst, const GF2Matrix& src, int src_row) {
        size_t d = static_cast<size_t>(dst) * wpr_, s = static_cast<size_t>(src_row) * src.wpr_;
        for (size_t k = 0; k < wpr_; ++k) words_[d + k] ^= src.words_[s + k];
    }
};

struct RrefResult {
    GF2Matrix mat;
    std::vector<int> pivot_cols;
};

// Reduced row echelon form over GF(2); row space is preserved.
inline RrefResult rref(GF2Matrix m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int sel = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m.get(i, c)) { sel = i; break; }
        if (sel < 0) continue;
        m.swap_rows(r, sel);
        for (int i = 0; i < m.rows(); ++i)
            if (i != r && m.get(i, c)) m.xor_row_into(i, r);
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

struct RankKernel {
    int rank = 0;
    std::vector<std::vector<uint8_t>> kernel_basis; // vectors of length cols
};

inline RankKernel rank_kernel(const GF2Matrix& m) {
    RrefResult rr = rref(m);
    RankKernel out;
    out.rank = static_cast<int>(rr.pivot_cols.size());
    std::vector<int> pivot_of_col(m.cols(), -1);
    for (int i = 0; i < out.rank; ++i) pivot_of_col[rr.pivot_cols[i]] = i;
    for (int c = 0; c < m.cols(); ++c) {
        if (pivot_of_col[c] >= 0) continue;
        std::vector<uint8_t> v(m.cols(), 0);
        v[c] = 1;
        for (int i = 0; i < out.rank; ++i)
            if (rr.mat.get(i, c)) v[rr.pivot_cols[i]] = 1;
        out.kernel_basis.push_back(std::move(v));
    }
    return out;
}

inline int gf2_rank(const GF2Matrix& m) { return static_cast<int>(rref(m).pivot_cols.size()); }

// Incremental solver for membership in a span / coordinate extraction.
// Stores echelonized rows together with their expressions in terms of the
// independent generators that were added, so coords() answers in the
// caller's basis.
class GF2Span {
public:
    explicit GF2Span(int dim) : dim_(dim) {}

    int dim_ambient() const { return dim_; }
    int rank() const { return static_cast<int>(rows_.size()); }

    // Returns true if v was independent (and got added as generator #rank-1).
    bool add(std::vector<uint8_t> v) {
        std::vector<uint8_t> expr(n_gens_, 0);
        reduce(v, expr);
        if (all_zero(v)) return false;
        expr.push_back(1); // the new generator itself
        for (auto& e : exprs_) e.push_back(0);
        rows_.push_back(std::move(v));
        exprs_.push_back(std::move(expr));
        pivots_.push_back(pivot_of(rows_.back()));
        ++n_gens_;
        return true;
    }

    bool contains(std::vector<uint8_t> v) const {
        std::vector<uint8_t> expr(n_gens_, 0);
        reduce(v, expr);
        return all_zero(v);
    }

    // Coordinates of v in terms of the added independent generators, if any.
    std::optional<std::vector<uint8_t>> coords(std::vector<uint8_t> v) const {
        std::vector<uint8_t> expr(n_gens_, 0);
        reduce(v, expr);
        if (!all_zero(v)) return std::nullopt;
        return expr;
    }

private:
    int dim_;
    int n_gens_ = 0;
    std::vector<std::vector<uint8_t>> rows_;  // echelonized, distinct pivots
    std::vector<std::vector<uint8_t>> exprs_; // row = sum of these generators
    std::vector<int> pivots_;

    static bool all_zero(const std::vector<uint8_t>& v) {
        for (uint8_t x : v) if (x) return false;
        return true;
    }

    static int pivot_of(const std::vector<uint8_t>& v) {
        for (size_t i = 0; i < v.size(); ++i) if (v[i]) return static_cast<int>(i);
        return -1;
    }

    void reduce(std::vector<uint8_t>& v, std::vector<uint8_t>& expr) const {
        for (size_t i = 0; i < rows_.size(); ++i) {
            if (v[pivots_[i]]) {
                for (int c = 0; c < dim_; ++c) v[c] ^= rows_[i][c];
                for (size_t k = 0; k < expr.size() && k < exprs_[i].size(); ++k)
                    expr[k] ^= exprs_[i][k];
            }
        }
    }
};

// ---------------------------------------------------------------------------
// Affine subspaces of (Z/2)^m, m <= 63. Points are bit masks, coordinate i is
// bit i. Canonical form: direction basis echelonized by highest set bit and
// mutually reduced; base point is the numerically least element of the coset.
// ---------------------------------------------------------------------------
class Z2AffineSubspace {
public:
    Z2AffineSubspace() = default;

    Z2AffineSubspace(int ambient_dim, uint64_t base, std::vector<uint64_t> directions)
        : m_(ambient_dim) {
        check_dim(ambient_dim);
        dirs_ = echelonize(std::move(directions));
        base_ = reduce(base);
    }

    static Z2AffineSubspace from_points(int ambient_dim, std::vector<uint64_t> pts) {
        check_dim(ambient_dim);
        if (pts.empty()) throw TroppatchError("PointsNotAffine", "empty point set");
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        uint64_t b = pts[0];
        std::vector<uint64_t> diffs;
        for (uint64_t p : pts) diffs.push_back(p ^ b);
        Z2AffineSubspace cand(ambient_dim, b, diffs);
        if ((1ull << cand.dim()) != pts.size())
            throw TroppatchError("PointsNotAffine", "point set size is not 2^dim of its affine closure");
        return cand;
    }

    int ambient_dim() const { return m_; }
    int dim() const { return static_cast<int>(dirs_.size()); }
    uint64_t base_point() const { return base_; }
    const std::vector<uint64_t>& direction_basis() const { return dirs_; }

    bool contains(uint64_t p) const { return reduce(p) == base_; }

    bool direction_space_contains(uint64_t v) const {
        for (uint64_t d : dirs_) {
            uint64_t h = highest_bit(d);
            if (v & h) v ^= d;
        }
        return v == 0;
    }

    std::vector<uint64_t> points() const {
        std::vector<uint64_t> out;
        out.reserve(1ull << dim());
        size_t k = dirs_.size();
        for (uint64_t mask = 0; mask < (1ull << k); ++mask) {
            uint64_t p = base_;
            for (size_t i = 0; i < k; ++i)
                if ((mask >> i) & 1ull) p ^= dirs_[i];
            out.push_back(p);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // Image under a mod-2 linear map given by a matrix (rows = target coords).
    Z2AffineSubspace project(const GF2Matrix& map) const {
        if (map.cols() != m_) throw TroppatchError("BadDimension", "projection of affine subspace");
        uint64_t b = apply_mask(map, base_);
        std::vector<uint64_t> ds;
        for (uint64_t d : dirs_) ds.push_back(apply_mask(map, d));
        return Z2AffineSubspace(map.rows(), b, ds);
    }

    friend bool operator==(const Z2AffineSubspace& a, const Z2AffineSubspace& b) {
        return a.m_ == b.m_ && a.base_ == b.base_ && a.dirs_ == b.dirs_;
    }
    friend bool operator<(const Z2AffineSubspace& a, const Z2AffineSubspace& b) {
        if (a.base_ != b.base_) return a.base_ < b.base_;
        return a.dirs_ < b.dirs_;
    }

    static uint64_t apply_mask(const GF2Matrix& map, uint64_t x) {
        uint64_t y = 0;
        for (int r = 0; r < map.rows(); ++r) {
            int acc = 0;
            for (int c = 0; c < map.cols(); ++c)
                if (map.get(r, c)) acc ^= static_cast<int>((x >> c) & 1ull);
            if (acc) y |= (1ull << r);
        }
        return y;
    }

private:
    int m_ = 0;
    uint64_t base_ = 0;
    std::vector<uint64_t> dirs_;

    static void check_dim(int m) {
        if (m < 0 || m > 63) throw TroppatchError("BadDimension", "ambient dim out of range for Z2AffineSubspace");
    }

    static uint64_t highest_bit(uint64_t v) {
        uint64_t h = 1;
        while (v >>= 1) h <<= 1;
        return h;
    }

    static std::vector<uint64_t> echelonize(std::vector<uint64_t> vs) {
        std::vector<uint64_t> basis;
        for (uint64_t v : vs) {
            for (uint64_t b : basis) {
                uint64_t h = highest_bit(b);
                if (v & h) v ^= b;
            }
            if (v) basis.push_back(v);
        }
        // mutual reduction, then sort descending for a unique form
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = 0; j < basis.size(); ++j)
                if (i != j && (basis[i] & highest_bit(basis[j]))) basis[i] ^= basis[j];
        std::sort(basis.begin(), basis.end(), std::greater<uint64_t>());
        return basis;
    }

    uint64_t reduce(uint64_t p) const {
        for (uint64_t d : dirs_) {
            uint64_t h = highest_bit(d);
            if (p & h) p ^= d;
        }
        return p;
    }
};

// Exact integer Gaussian binomial [d choose p]_2.
inline unsigned long long gaussian_binomial_2(int d, int p) {
    if (p < 0 || p > d) return 0;
    // [d,p]_q = [d-1,p-1]_q + q^p [d-1,p]_q
    std::vector<std::vector<unsigned long long>> g(d + 1, std::vector<unsigned long long>(d + 1, 0));
    for (int n = 0; n <= d; ++n) {
        g[n][0] = 1;
        for (int k = 1; k <= n; ++k)
            g[n][k] = g[n - 1][k - 1] + ((1ull << k) * (k <= n - 1 ? g[n - 1][k] : 0));
    }
    return g[d][p];
}

// All p-dimensional affine subspaces contained in h, canonical and sorted.
inline std::vector<Z2AffineSubspace> enumerate_affine_subspaces(const Z2AffineSubspace& h, int p) {
    int d = h.dim();
    if (p > d) throw TroppatchError("DimTooLarge", "requested dimension exceeds dim of subspace");
    std::vector<Z2AffineSubspace> out;
    if (p < 0) return out;
    std::vector<uint64_t> dirs = h.direction_basis();
    // enumerate p-dim linear subspaces of GF(2)^d via RREF profiles
    std::vector<std::vector<uint64_t>> linear; // each: list of p independent vectors in coordinate space GF(2)^d
    auto emit = [&](const std::vector<int>& pivots) {
        // free entries: row i, column c with c > pivots[i], c not a pivot
        std::vector<std::pair<int, int>> free_pos;
        for (int i = 0; i < p; ++i)
            for (int c = pivots[i] + 1; c < d; ++c)
                if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
                    free_pos.emplace_back(i, c);
        size_t nf = free_pos.size();
        for (uint64_t fill = 0; fill < (1ull << nf); ++fill) {
            std::vector<uint64_t> rows(p, 0);
            for (int i = 0; i < p; ++i) rows[i] |= (1ull << pivots[i]);
            for (size_t t = 0; t < nf; ++t)
                if ((fill >> t) & 1ull) rows[free_pos[t].first] |= (1ull << free_pos[t].second);
            linear.push_back(rows);
        }
    };
    if (p == 0) {
        linear.push_back({});
    } else {
        // iterate over all p-subsets of {0..d-1}
        std::vector<int> sel(p);
        for (int i = 0; i < p; ++i) sel[i] = i;
        while (true) {
            emit(sel);
            int i = p - 1;
            while (i >= 0 && sel[i] == d - p + i) --i;
            if (i < 0) break;
            ++sel[i];
            for (int j = i + 1; j < p; ++j) sel[j] = sel[j - 1] + 1;
        }
    }
    for (const auto& rows : linear) {
        // map coordinate-space rows into ambient via h's direction basis
        std::vector<uint64_t> amb;
        for (uint64_t r : rows) {
            uint64_t v = 0;
            for (int i = 0; i < d; ++i)
                if ((r >> i) & 1ull) v ^= dirs[i];
            amb.push_back(v);
        }
        // enumerate distinct cosets inside h
        std::vector<uint64_t> seen;
        for (uint64_t mask = 0; mask < (1ull << d); ++mask) {
            uint64_t pt = h.base_point();
            for (int i = 0; i < d; ++i)
                if ((mask >> i) & 1ull) pt ^= dirs[i];
            Z2AffineSubspace cand(h.ambient_dim(), pt, amb);
            if (std::find(seen.begin(), seen.end(), cand.base_point()) == seen.end()) {
                seen.push_back(cand.base_point());
                out.push_back(cand);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Lexicographically ordered p-subsets of {0..m-1}.
inline std::vector<std::vector<int>> subsets_lex(int m, int p) {
    std::vector<std::vector<int>> out;
    if (p < 0 || p > m) return out;
    if (p == 0) { out.push_back({}); return out; }
    std::vector<int> sel(p);
    for (int i = 0; i < p; ++i) sel[i] = i;
    while (true) {
        out.push_back(sel);
        int i = p - 1;
        while (i >= 0 && sel[i] == m - p + i) --i;
        if (i < 0) break;
        ++sel[i];
        for (int j = i + 1; j < p; ++j) sel[j] = sel[j - 1] + 1;
    }
    return out;
}

inline int det_gf2(std::vector<uint64_t> rows, int n) {
    for (int c = 0; c < n; ++c) {
        int sel = -1;
        for (int r = c; r < n; ++r)
            if ((rows[r] >> c) & 1ull) { sel = r; break; }
        if (sel < 0) return 0;
        std::swap(rows[c], rows[sel]);
        for (int r = 0; r < n; ++r)
            if (r != c && ((rows[r] >> c) & 1ull)) rows[r] ^= rows[c];
    }
    return 1;
}

// Matrix of the wedge embedding: columns are coordinates of v_I = v_{i1} ^ ... ^ v_{ip}
// for p-subsets I of `basis` (lex order), in the standard monomial basis e_J of
// wedge^p GF(2)^m (J lex). Entry (J, I) is the p x p minor (rows J, columns I) mod 2.
inline GF2Matrix wedge_power_map(const std::vector<uint64_t>& basis, int m, int p) {
    {
        Z2AffineSubspace probe(m, 0, basis);
        if (probe.dim() != static_cast<int>(basis.size()))
            throw TroppatchError("DependentBasis", "wedge_power_map needs independent vectors");
    }
    if (p > static_cast<int>(basis.size()))
        throw TroppatchError("DimTooLarge", "wedge power exceeds basis size");
    auto row_subsets = subsets_lex(m, p);
    auto col_subsets = subsets_lex(static_cast<int>(basis.size()), p);
    GF2Matrix out(static_cast<int>(row_subsets.size()), static_cast<int>(col_subsets.size()));
    for (size_t ci = 0; ci < col_subsets.size(); ++ci) {
        for (size_t ri = 0; ri < row_subsets.size(); ++ri) {
            // p x p submatrix: entry (a, b) = coordinate row_subsets[ri][a] of basis[col_subsets[ci][b]]
            std::vector<uint64_t> sub(p, 0);
            for (int a = 0; a < p; ++a)
                for (int b = 0; b < p; ++b)
                    if ((basis[col_subsets[ci][b]] >> row_subsets[ri][a]) & 1ull)
                        sub[a] |= (1ull << b);
            if (det_gf2(sub, p)) out.set(static_cast<int>(ri), static_cast<int>(ci), true);
        }
    }
    return out;
}

// Matrix of wedge^p applied to a mod-2 linear map. Rows/cols indexed by lex
// p-subsets of target/source coordinates; entries are p x p minors.
inline GF2Matrix wedge_power_of_map(const GF2Matrix& map, int p) {
    auto row_subsets = subsets_lex(map.rows(), p);
    auto col_subsets = subsets_lex(map.cols(), p);
    GF2Matrix out(static_cast<int>(row_subsets.size()), static_cast<int>(col_subsets.size()));
    for (size_t ri = 0; ri < row_subsets.size(); ++ri) {
        for (size_t ci = 0; ci < col_subsets.size(); ++ci) {
            std::vector<uint64_t> sub(p, 0);
            for (int a = 0; a < p; ++a)
                for (int b = 0; b < p; ++b)
                    if (map.get(row_subsets[ri][a], col_subsets[ci][b])) sub[a] |= (1ull << b);
            if (det_gf2(sub, p)) out.set(static_cast<int>(ri), static_cast<int>(ci), true);
        }
    }
    return out;
}

} // namespace troppatch
