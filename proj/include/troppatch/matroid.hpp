#pragma once

#include "complex.hpp"
#include "poset.hpp"

#include <bit>
#include <string>
#include <vector>

namespace troppatch {

// Integer polynomial, coefficient of t^k at index k.
using IPoly = std::vector<long long>;

inline std::string poly_to_string(const IPoly& p, const std::string& var = "t") {
    std::string s;
    for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) {
        if (p[k] == 0) continue;
        if (!s.empty()) s += (p[k] > 0) ? " + " : " - ";
        else if (p[k] < 0) s += "-";
        long long a = p[k] > 0 ? p[k] : -p[k];
        if (a != 1 || k == 0) s += std::to_string(a);
        if (k >= 1) {
            if (a != 1) s += "*";
            s += var;
            if (k >= 2) s += "^" + std::to_string(k);
        }
    }
    return s.empty() ? "0" : s;
}

inline long long poly_eval(const IPoly& p, long long x) {
    long long v = 0;
    for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) v = v * x + p[k];
    return v;
}

inline void poly_trim(IPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Matroid given by its list of bases on ground set {0..n-1}, as bitmasks.
class Matroid {
public:
    int ground = 0;
    std::vector<uint32_t> bases; // sorted
    int rank = 0;

    static Matroid from_bases(int ground, const std::vector<std::vector<int>>& base_sets) {
        Matroid m;
        m.ground = ground;
        if (ground < 0 || ground > 20) throw TroppatchError("BadDimension", "ground set too large");
        for (const auto& b : base_sets) {
            uint32_t mask = 0;
            for (int e : b) {
                if (e < 0 || e >= ground) throw TroppatchError("BadElement", "basis element out of range");
                mask |= (1u << e);
            }
            if (std::popcount(mask) != static_cast<int>(b.size()))
                throw TroppatchError("BadElement", "repeated element in basis");
            m.bases.push_back(mask);
        }
        std::sort(m.bases.begin(), m.bases.end());
        m.bases.erase(std::unique(m.bases.begin(), m.bases.end()), m.bases.end());
        if (m.bases.empty()) throw TroppatchError("NotAMatroid", "no bases");
        m.rank = std::popcount(m.bases[0]);
        for (uint32_t b : m.bases)
            if (std::popcount(b) != m.rank)
                throw TroppatchError("NotAMatroid", "bases of unequal size");
        // basis exchange axiom
        for (uint32_t b1 : m.bases) {
            for (uint32_t b2 : m.bases) {
                uint32_t diff = b1 & ~b2;
                for (int x = 0; x < ground; ++x) {
                    if (!((diff >> x) & 1u)) continue;
                    bool ok = false;
                    uint32_t stripped = b1 & ~(1u << x);
                    for (int y = 0; y < ground && !ok; ++y) {
                        if (!(((b2 & ~b1) >> y) & 1u)) continue;
                        uint32_t cand = stripped | (1u << y);
                        ok = std::binary_search(m.bases.begin(), m.bases.end(), cand);
                    }
                    if (!ok) throw TroppatchError("NotAMatroid", "basis exchange fails");
                }
            }
        }
        return m;
    }

    static Matroid uniform(int r, int n) {
        std::vector<std::vector<int>> bs;
        for (const auto& s : subsets_lex(n, r)) bs.push_back(s);
        return from_bases(n, bs);
    }

    int rk(uint32_t a) const {
        int best = 0;
        for (uint32_t b : bases) best = std::max(best, std::popcount(a & b));
        return best;
    }

    uint32_t closure(uint32_t a) const {
        int r = rk(a);
        uint32_t cl = a;
        for (int x = 0; x < ground; ++x)
            if (rk(a | (1u << x)) == r) cl |= (1u << x);
        return cl;
    }

    uint32_t loops() const { return closure(0); }
    bool loopfree() const { return loops() == 0; }
    uint32_t full_mask() const { return (ground == 32) ? 0xffffffffu : ((1u << ground) - 1); }
};

struct FlatsLattice {
    std::vector<uint32_t> flats;   // sorted by (rank, mask)
    std::vector<int> flat_rank;

    int index_of(uint32_t f) const {
        for (size_t i = 0; i < flats.size(); ++i)
            if (flats[i] == f) return static_cast<int>(i);
        return -1;
    }

    FinitePoset poset() const {
        int m = static_cast<int>(flats.size());
        std::vector<std::string> labels;
        std::vector<std::vector<uint8_t>> leq(m, std::vector<uint8_t>(m, 0));
        for (int i = 0; i < m; ++i) {
            labels.push_back(mask_label(flats[i]));
            for (int j = 0; j < m; ++j)
                leq[i][j] = ((flats[i] & flats[j]) == flats[i]) ? 1 : 0;
        }
        return FinitePoset::from_leq(std::move(labels), std::move(leq));
    }

    static std::string mask_label(uint32_t mask) {
        std::string s = "{";
        bool first = true;
        for (int i = 0; i < 32; ++i)
            if ((mask >> i) & 1u) {
                if (!first) s += ",";
                s += std::to_string(i);
                first = false;
            }
        return s + "}";
    }
};

inline FlatsLattice flats_lattice(const Matroid& m) {
    std::vector<uint32_t> flats;
    uint32_t full = m.full_mask();
    for (uint32_t a = 0; a <= full; ++a) flats.push_back(m.closure(a));
    std::sort(flats.begin(), flats.end());
    flats.erase(std::unique(flats.begin(), flats.end()), flats.end());
    FlatsLattice out;
    out.flats = flats;
    std::sort(out.flats.begin(), out.flats.end(), [&](uint32_t a, uint32_t b) {
        int ra = m.rk(a), rb = m.rk(b);
        if (ra != rb) return ra < rb;
        return a < b;
    });
    for (uint32_t f : out.flats) out.flat_rank.push_back(m.rk(f));
    return out;
}

// Whitney rank generating sum: chi(t) = sum_{A subset E} (-1)^|A| t^{r - rk(A)}.
inline IPoly characteristic_polynomial(const Matroid& m) {
    if (!m.loopfree()) throw TroppatchError("HasLoops", "characteristic polynomial of a matroid with loops");
    IPoly chi(m.rank + 1, 0);
    uint32_t full = m.full_mask();
    for (uint32_t a = 0;; ++a) {
        int sign = (std::popcount(a) % 2 == 0) ? 1 : -1;
        chi[m.rank - m.rk(a)] += sign;
        if (a == full) break;
    }
    poly_trim(chi);
    return chi;
}

// Exact division chi(t) / (t - 1).
inline IPoly reduced_characteristic_polynomial(const Matroid& m) {
    IPoly chi = characteristic_polynomial(m);
    if (chi.empty()) throw TroppatchError("HasLoops", "zero characteristic polynomial");
    IPoly q(chi.size() - 1, 0);
    long long carry = 0;
    for (int k = static_cast<int>(chi.size()) - 1; k >= 1; --k) {
        carry = chi[k] + carry;
        q[k - 1] = carry;
    }
    if (chi[0] + carry != 0)
        throw TroppatchError("NotDivisible", "characteristic polynomial not divisible by t-1");
    poly_trim(q);
    return q;
}

// dim F_p(P Sigma_M) read off the reduced characteristic polynomial:
// entry p is |coefficient of t^(d-p)| where d = rank - 1.
inline std::vector<int> fp_dims_from_charpoly(const Matroid& m) {
    IPoly mu = reduced_characteristic_polynomial(m);
    int d = m.rank - 1;
    std::vector<int> dims(d + 1, 0);
    for (int p = 0; p <= d; ++p) {
        long long c = (d - p < static_cast<int>(mu.size())) ? mu[d - p] : 0;
        dims[p] = static_cast<int>(c < 0 ? -c : c);
    }
    return dims;
}

// ---------------------------------------------------------------------------
// Ardila-Klivans matroid fans. Cones are spanned by v_F = -sum_{i in F} e_i
// over chains of proper flats; the affine fan adds the lineality v_E, the
// projective fan lives in R^E/(1,...,1) via x -> (x_1-x_0, ..., x_{n-1}-x_0).
// ---------------------------------------------------------------------------
namespace detail {

inline IVec flat_vector(uint32_t mask, int n) {
    IVec v(n, 0);
    for (int i = 0; i < n; ++i)
        if ((mask >> i) & 1u) v[i] = -1;
    return v;
}

inline IVec project_quotient(const IVec& x) {
    IVec q(x.size() - 1);
    for (size_t i = 1; i < x.size(); ++i) q[i - 1] = x[i] - x[0];
    return q;
}

} // namespace detail

inline TropicalComplex bergman_fan(const Matroid& m_in, bool projective) {
    // loops are dropped: Sigma_M = Sigma_{M/L} on the loopfree part
    Matroid m = m_in;
    if (!m_in.loopfree()) {
        uint32_t keep = m_in.full_mask() & ~m_in.loops();
        std::vector<int> old_of_new;
        for (int i = 0; i < m_in.ground; ++i)
            if ((keep >> i) & 1u) old_of_new.push_back(i);
        std::vector<std::vector<int>> bs;
        for (uint32_t b : m_in.bases) {
            std::vector<int> nb;
            for (size_t k = 0; k < old_of_new.size(); ++k)
                if ((b >> old_of_new[k]) & 1u) nb.push_back(static_cast<int>(k));
            bs.push_back(nb);
        }
        m = Matroid::from_bases(static_cast<int>(old_of_new.size()), bs);
    }
    int n = m.ground;
    auto lattice = flats_lattice(m);
    std::vector<uint32_t> proper;
    for (uint32_t f : lattice.flats)
        if (f != 0 && f != m.full_mask()) proper.push_back(f);
    // chains of proper flats
    std::vector<std::vector<uint32_t>> chains;
    std::vector<uint32_t> cur;
    std::function<void(size_t)> rec = [&](size_t start) {
        chains.push_back(cur);
        for (size_t i = start; i < proper.size(); ++i) {
            if (!cur.empty()) {
                uint32_t prev = cur.back();
                if ((prev & proper[i]) != prev || prev == proper[i]) continue;
            }
            cur.push_back(proper[i]);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);

    TropicalComplex out;
    out.ambient = projective ? n - 1 : n;
    auto chain_id = [&](const std::vector<uint32_t>& ch) {
        if (ch.empty()) return std::string("o");
        std::string s = "f";
        for (uint32_t f : ch) s += "_" + std::to_string(f);
        return s;
    };
    std::map<std::string, int> index;
    for (const auto& ch : chains) {
        Cell c;
        c.id = chain_id(ch);
        Polyhedron p;
        p.ambient = out.ambient;
        p.vertices = {QVec(out.ambient, Rat(0))};
        for (uint32_t f : ch) {
            IVec v = detail::flat_vector(f, n);
            if (projective) v = detail::project_quotient(v);
            p.rays.push_back(primitive(v));
        }
        if (!projective) p.lineality.push_back(primitive(IVec(n, -1)));
        c.poly = std::move(p);
        index[c.id] = static_cast<int>(out.cells.size());
        out.cells.push_back(std::move(c));
    }
    // faces: subchains
    for (const auto& ch : chains) {
        int self = index[chain_id(ch)];
        int k = static_cast<int>(ch.size());
        for (uint64_t sub = 0; sub < (1ull << k); ++sub) {
            if (sub == (1ull << k) - 1) continue;
            std::vector<uint32_t> s;
            for (int i = 0; i < k; ++i)
                if ((sub >> i) & 1ull) s.push_back(ch[i]);
            out.cells[self].faces.push_back(index[chain_id(s)]);
        }
    }
    for (auto& c : out.cells) {
        std::sort(c.faces.begin(), c.faces.end());
        c.faces.erase(std::unique(c.faces.begin(), c.faces.end()), c.faces.end());
    }
    out.finalize();
    return out;
}

// Number of maximal chains in the lattice of flats (facet-count oracle).
inline long long maximal_flat_chain_count(const Matroid& m) {
    auto lattice = flats_lattice(m);
    int nf = static_cast<int>(lattice.flats.size());
    std::vector<long long> ways(nf, 0);
    for (int i = 0; i < nf; ++i)
        if (lattice.flat_rank[i] == 0) ways[i] = 1;
    for (int r = 1; r <= m.rank; ++r) {
        for (int i = 0; i < nf; ++i) {
            if (lattice.flat_rank[i] != r) continue;
            for (int j = 0; j < nf; ++j) {
                if (lattice.flat_rank[j] != r - 1) continue;
                if ((lattice.flats[j] & lattice.flats[i]) == lattice.flats[j]) ways[i] += ways[j];
            }
        }
    }
    long long total = 0;
    for (int i = 0; i < nf; ++i)
        if (lattice.flats[i] == m.full_mask()) total += ways[i];
    return total;
}

} // namespace troppatch
