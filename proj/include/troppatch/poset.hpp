#pragma once

#include "complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace troppatch {

// Finite poset with opaque labels and an optional marked subset.
class FinitePoset {
public:
    std::vector<std::string> labels;
    std::vector<int> marked; // sorted element indices

    static FinitePoset from_leq(std::vector<std::string> labels,
                                std::vector<std::vector<uint8_t>> leq,
                                std::vector<int> marked = {}) {
        FinitePoset p;
        p.labels = std::move(labels);
        p.leq_ = std::move(leq);
        p.marked = std::move(marked);
        std::sort(p.marked.begin(), p.marked.end());
        int m = p.size();
        for (int i = 0; i < m; ++i) {
            if (!p.leq_[i][i]) throw TroppatchError("NotAPoset", "relation not reflexive");
            for (int j = 0; j < m; ++j) {
                if (i != j && p.leq_[i][j] && p.leq_[j][i])
                    throw TroppatchError("NotAPoset", "relation not antisymmetric");
                for (int k = 0; k < m; ++k)
                    if (p.leq_[i][j] && p.leq_[j][k] && !p.leq_[i][k])
                        throw TroppatchError("NotAPoset", "relation not transitive");
            }
        }
        p.build_covers();
        return p;
    }

    int size() const { return static_cast<int>(labels.size()); }
    bool leq(int i, int j) const { return leq_[i][j]; }
    bool is_marked(int i) const { return std::binary_search(marked.begin(), marked.end(), i); }
    const std::vector<int>& up_covers(int i) const { return up_[i]; }
    const std::vector<int>& down_covers(int i) const { return down_[i]; }

    FinitePoset opposite() const {
        int m = size();
        std::vector<std::vector<uint8_t>> l(m, std::vector<uint8_t>(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) l[i][j] = leq_[j][i];
        return from_leq(labels, l, marked);
    }

    // longest-chain height of each element (0 for minimal elements)
    std::vector<int> heights() const {
        int m = size();
        std::vector<int> h(m, 0);
        bool changed = true;
        while (changed) {
            changed = false;
            for (int i = 0; i < m; ++i)
                for (int j : up_[i])
                    if (h[j] < h[i] + 1) { h[j] = h[i] + 1; changed = true; }
        }
        return h;
    }

    // number of chains grouped by length (index k = chains with k+1 elements);
    // dynamic-programming oracle used to cross-check the order complex
    std::vector<long long> chain_counts() const {
        int m = size();
        std::vector<std::vector<long long>> ending(m); // ending[i][k] = chains of k+1 elements with max i
        std::vector<int> order(m);
        std::iota(order.begin(), order.end(), 0);
        auto h = heights();
        std::sort(order.begin(), order.end(), [&](int a, int b) { return h[a] < h[b]; });
        std::vector<long long> total;
        for (int i : order) {
            std::vector<long long> e = {1};
            for (int j = 0; j < m; ++j) {
                if (j == i || !leq_[j][i]) continue;
                for (size_t k = 0; k < ending[j].size(); ++k) {
                    if (e.size() <= k + 1) e.resize(k + 2, 0);
                    e[k + 1] += ending[j][k];
                }
            }
            ending[i] = e;
            if (total.size() < e.size()) total.resize(e.size(), 0);
            for (size_t k = 0; k < e.size(); ++k) total[k] += e[k];
        }
        return total;
    }

private:
    std::vector<std::vector<uint8_t>> leq_;
    std::vector<std::vector<int>> up_, down_;

    void build_covers() {
        int m = size();
        up_.assign(m, {});
        down_.assign(m, {});
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (i == j || !leq_[i][j]) continue;
                bool cover = true;
                for (int k = 0; k < m; ++k)
                    if (k != i && k != j && leq_[i][k] && leq_[k][j]) { cover = false; break; }
                if (cover) { up_[i].push_back(j); down_[j].push_back(i); }
            }
    }
};

inline FinitePoset face_poset(const TropicalComplex& c, std::vector<int> marked = {}) {
    std::vector<std::string> labels;
    for (const auto& cell : c.cells) labels.push_back(cell.id);
    return FinitePoset::from_leq(labels, c.leq_, std::move(marked));
}

// Poset of closed intervals [a,b], ordered by [a,b] <= [c,d] iff c <= a, b <= d.
inline FinitePoset interval_poset(const FinitePoset& p) {
    std::vector<std::pair<int, int>> elems;
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b)
            if (p.leq(a, b)) elems.push_back({a, b});
    int m = static_cast<int>(elems.size());
    std::vector<std::string> labels;
    std::vector<std::vector<uint8_t>> leq(m, std::vector<uint8_t>(m, 0));
    for (int x = 0; x < m; ++x) {
        labels.push_back("[" + p.labels[elems[x].first] + "," + p.labels[elems[x].second] + "]");
        for (int y = 0; y < m; ++y)
            leq[x][y] = (p.leq(elems[y].first, elems[x].first) && p.leq(elems[x].second, elems[y].second)) ? 1 : 0;
    }
    return FinitePoset::from_leq(std::move(labels), std::move(leq));
}

// Abstract simplicial complex; simplices listed with sorted vertex indices.
struct SimplicialComplex {
    int n_vertices = 0;
    std::vector<std::vector<int>> simplices;

    std::vector<std::vector<int>> of_dim(int d) const {
        std::vector<std::vector<int>> out;
        for (const auto& s : simplices)
            if (static_cast<int>(s.size()) == d + 1) out.push_back(s);
        return out;
    }
    int dim() const {
        int d = -1;
        for (const auto& s : simplices) d = std::max(d, static_cast<int>(s.size()) - 1);
        return d;
    }
};

// Order complex: simplices are the nonempty chains.
inline SimplicialComplex order_complex(const FinitePoset& p) {
    SimplicialComplex sc;
    sc.n_vertices = p.size();
    std::vector<int> chain;
    std::vector<std::vector<int>> collected;
    std::function<void(int)> grow = [&](int last) {
        if (!chain.empty()) collected.push_back(chain);
        for (int next = 0; next < p.size(); ++next) {
            if (last >= 0 && (next == last || !p.leq(last, next))) continue;
            if (last < 0 && !chain.empty()) continue;
            chain.push_back(next);
            grow(next);
            chain.pop_back();
        }
    };
    grow(-1);
    for (auto& s : collected) std::sort(s.begin(), s.end());
    std::sort(collected.begin(), collected.end());
    collected.erase(std::unique(collected.begin(), collected.end()), collected.end());
    sc.simplices = std::move(collected);
    return sc;
}

// GF(2) Betti numbers of a simplicial complex (unreduced).
inline std::vector<int> simplicial_betti_gf2(const SimplicialComplex& sc) {
    int d = sc.dim();
    if (d < 0) return {};
    std::vector<std::map<std::vector<int>, int>> index(d + 1);
    for (const auto& s : sc.simplices) {
        auto& mp = index[s.size() - 1];
        int next = static_cast<int>(mp.size());
        mp.emplace(s, next);
    }
    std::vector<GF2Matrix> boundary(d + 1); // boundary[q]: C_q -> C_{q-1}
    for (int q = 1; q <= d; ++q) {
        boundary[q] = GF2Matrix(static_cast<int>(index[q - 1].size()), static_cast<int>(index[q].size()));
        for (const auto& [s, col] : index[q]) {
            for (size_t drop = 0; drop < s.size(); ++drop) {
                std::vector<int> f;
                for (size_t i = 0; i < s.size(); ++i)
                    if (i != drop) f.push_back(s[i]);
                boundary[q].set(index[q - 1].at(f), col, true);
            }
        }
    }
    std::vector<int> betti(d + 1, 0);
    std::vector<int> ranks(d + 2, 0);
    for (int q = 1; q <= d; ++q) ranks[q] = gf2_rank(boundary[q]);
    for (int q = 0; q <= d; ++q) {
        int dim_cq = static_cast<int>(index[q].size());
        int nullity = dim_cq - ranks[q]; // rank of boundary_q (0 for q=0)
        betti[q] = nullity - ranks[q + 1];
    }
    return betti;
}

// ---------------------------------------------------------------------------
// Poset isomorphism with marking, by invariant refinement plus backtracking.
// ---------------------------------------------------------------------------
struct IsoResult {
    bool isomorphic = false;
    std::vector<int> mapping; // p index -> q index
    std::string refutation;
};

namespace detail {

// Joint Weisfeiler-Leman style refinement over cover relations; both posets
// share one palette so equal signatures receive equal colors on both sides.
inline std::pair<std::vector<int>, std::vector<int>> wl_colors_pair(const FinitePoset& p,
                                                                    const FinitePoset& q) {
    auto initial = [](const FinitePoset& r) {
        std::vector<long long> color(r.size());
        auto h = r.heights();
        for (int i = 0; i < r.size(); ++i)
            color[i] = (static_cast<long long>(h[i]) << 24) ^
                       (static_cast<long long>(r.up_covers(i).size()) << 12) ^
                       (static_cast<long long>(r.down_covers(i).size()) << 1) ^
                       (r.is_marked(i) ? 1 : 0);
        return color;
    };
    std::vector<long long> cp = initial(p), cq = initial(q);
    int rounds = p.size() + q.size();
    auto signature = [](const FinitePoset& r, const std::vector<long long>& color, int i) {
        std::vector<long long> s = {color[i]};
        std::vector<long long> ups, downs;
        for (int j : r.up_covers(i)) ups.push_back(color[j]);
        for (int j : r.down_covers(i)) downs.push_back(color[j]);
        std::sort(ups.begin(), ups.end());
        std::sort(downs.begin(), downs.end());
        s.push_back(-1);
        s.insert(s.end(), ups.begin(), ups.end());
        s.push_back(-2);
        s.insert(s.end(), downs.begin(), downs.end());
        return s;
    };
    for (int round = 0; round < rounds; ++round) {
        std::map<std::vector<long long>, long long> palette;
        std::vector<std::vector<long long>> sp(p.size()), sq(q.size());
        for (int i = 0; i < p.size(); ++i) sp[i] = signature(p, cp, i);
        for (int i = 0; i < q.size(); ++i) sq[i] = signature(q, cq, i);
        for (const auto& s : sp) palette.emplace(s, 0);
        for (const auto& s : sq) palette.emplace(s, 0);
        long long next = 0;
        for (auto& [k, v] : palette) v = next++;
        std::vector<long long> np(p.size()), nq(q.size());
        for (int i = 0; i < p.size(); ++i) np[i] = palette[sp[i]];
        for (int i = 0; i < q.size(); ++i) nq[i] = palette[sq[i]];
        if (np == cp && nq == cq) break;
        cp = std::move(np);
        cq = std::move(nq);
    }
    std::vector<int> rp(p.size()), rq(q.size());
    for (int i = 0; i < p.size(); ++i) rp[i] = static_cast<int>(cp[i]);
    for (int i = 0; i < q.size(); ++i) rq[i] = static_cast<int>(cq[i]);
    return {rp, rq};
}

} // namespace detail

inline IsoResult poset_isomorphic(const FinitePoset& p, const FinitePoset& q) {
    IsoResult res;
    if (p.size() != q.size()) {
        res.refutation = "size mismatch: " + std::to_string(p.size()) + " vs " + std::to_string(q.size());
        return res;
    }
    if (p.marked.size() != q.marked.size()) {
        res.refutation = "marked-subset size mismatch";
        return res;
    }
    int m = p.size();
    auto [cp, cq] = detail::wl_colors_pair(p, q);
    {
        auto hp = cp, hq = cq;
        std::sort(hp.begin(), hp.end());
        std::sort(hq.begin(), hq.end());
        if (hp != hq) {
            res.refutation = "invariant mismatch: refined (grade, cover-degree, marking) profiles differ";
            return res;
        }
    }
    // order p's elements: rarest color class first, then by index (deterministic)
    std::map<int, int> class_size;
    for (int c : cp) class_size[c]++;
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (class_size[cp[a]] != class_size[cp[b]]) return class_size[cp[a]] < class_size[cp[b]];
        return a < b;
    });
    std::vector<int> map_pq(m, -1), used(m, 0);
    std::function<bool(size_t)> rec = [&](size_t pos) -> bool {
        if (pos == m + 0u) return true;
        int a = order[pos];
        for (int b = 0; b < m; ++b) {
            if (used[b] || cq[b] != cp[a]) continue;
            if (p.is_marked(a) != q.is_marked(b)) continue;
            bool ok = true;
            for (size_t t = 0; t < pos && ok; ++t) {
                int a2 = order[t], b2 = map_pq[a2];
                ok = (p.leq(a, a2) == q.leq(b, b2)) && (p.leq(a2, a) == q.leq(b2, b));
            }
            if (!ok) continue;
            map_pq[a] = b;
            used[b] = 1;
            if (rec(pos + 1)) return true;
            map_pq[a] = -1;
            used[b] = 0;
        }
        return false;
    };
    if (!rec(0)) {
        res.refutation = "backtracking search exhausted without an order-preserving bijection";
        return res;
    }
    // verify the certificate in full
    for (int i = 0; i < m; ++i) {
        if (p.is_marked(i) != q.is_marked(map_pq[i])) throw TroppatchError("Internal", "bad iso certificate");
        for (int j = 0; j < m; ++j)
            if (p.leq(i, j) != q.leq(map_pq[i], map_pq[j]))
                throw TroppatchError("Internal", "bad iso certificate");
    }
    res.isomorphic = true;
    res.mapping = std::move(map_pq);
    return res;
}

// ---------------------------------------------------------------------------
// Bounded-cubical subdivision poset: elements ([lambda, kappa], rho) with
// kappa + rho a cell of X, ordered by lambda <= lambda', kappa' <= kappa,
// rho' <= rho. Poset-level only; no geometric realization is built.
// ---------------------------------------------------------------------------
struct BoundedCubicalElement {
    int lambda;   // cell index in P (a bounded face)
    int kappa;    // cell index in P (the bounded part of `cell`)
    int rho;      // cone index in the recession fan
    int cell;     // the cell kappa + rho of X
};

struct BoundedCubicalPoset {
    FinitePoset poset;
    std::vector<BoundedCubicalElement> elements;
    Fan recession; // recession fan of P
};

inline int bounded_face_of(const TropicalComplex& p, int cell) {
    Polyhedron hull;
    hull.ambient = p.cells[cell].poly.ambient;
    hull.vertices = p.cells[cell].poly.vertices;
    if (hull.same_set(p.cells[cell].poly)) return cell;
    for (int f : p.face_list(cell))
        if (p.cells[f].poly.same_set(hull)) return f;
    throw TroppatchError("NotStronglyUnimodular",
                         "bounded part of " + p.cells[cell].id + " is not a face");
}

inline BoundedCubicalPoset bounded_cubical_poset(const TropicalComplex& p,
                                                 const std::vector<int>& x_ids) {
    require_strongly_unimodular(p);
    // X must be a subcomplex (throws otherwise)
    (void)subcomplex(p, x_ids);
    BoundedCubicalPoset out;
    out.recession = recession_fan(p);
    std::vector<uint8_t> in_x(p.size(), 0);
    for (int id : x_ids) in_x[id] = 1;
    for (int x = 0; x < p.size(); ++x) {
        if (!in_x[x]) continue;
        int kappa = bounded_face_of(p, x);
        Polyhedron rec;
        rec.ambient = p.cells[x].poly.ambient;
        rec.vertices = {QVec(rec.ambient, Rat(0))};
        rec.rays = p.cells[x].poly.rays;
        int rho = out.recession.find_cone(rec);
        if (rho < 0) throw TroppatchError("Internal", "recession cone missing from fan");
        std::vector<int> lambdas = {kappa};
        for (int f : p.face_list(kappa)) lambdas.push_back(f);
        std::sort(lambdas.begin(), lambdas.end());
        for (int lam : lambdas)
            out.elements.push_back({lam, kappa, rho, x});
    }
    int m = static_cast<int>(out.elements.size());
    std::vector<std::string> labels;
    std::vector<std::vector<uint8_t>> leq(m, std::vector<uint8_t>(m, 0));
    for (int a = 0; a < m; ++a) {
        const auto& ea = out.elements[a];
        labels.push_back("[" + p.cells[ea.lambda].id + "," + p.cells[ea.kappa].id + "]|" +
                         out.recession.cones[ea.rho].id);
        for (int b = 0; b < m; ++b) {
            const auto& eb = out.elements[b];
            leq[a][b] = (p.leq(eb.lambda, ea.lambda) && p.leq(ea.kappa, eb.kappa) &&
                         out.recession.leq(ea.rho, eb.rho))
                            ? 1
                            : 0;
        }
    }
    out.poset = FinitePoset::from_leq(std::move(labels), std::move(leq));
    return out;
}

// ---------------------------------------------------------------------------
// Tropical special fibre poset: cells are pairs (sigma in X, tau in P) with
// tau a face of sigma; certified against Int(X) and against the closure of
// the bounded-cubical subdivision.
// ---------------------------------------------------------------------------
struct SpecialFibreResult {
    FinitePoset fibre;
    IsoResult versus_interval;
    IsoResult versus_bounded_cubical;
};

inline SpecialFibreResult special_fibre_poset(const TropicalComplex& p,
                                              const std::vector<int>& x_ids) {
    require_strongly_unimodular(p);
    auto x = subcomplex(p, x_ids);
    // fibre cells: (sigma, tau) with tau <= sigma, both in X
    std::vector<std::pair<int, int>> elems;
    for (int s = 0; s < x.size(); ++s) {
        elems.push_back({s, s});
        for (int t : x.face_list(s)) elems.push_back({s, t});
    }
    std::sort(elems.begin(), elems.end());
    int m = static_cast<int>(elems.size());
    std::vector<std::string> labels;
    std::vector<std::vector<uint8_t>> leq(m, std::vector<uint8_t>(m, 0));
    for (int a = 0; a < m; ++a) {
        labels.push_back("(" + x.cells[elems[a].first].id + "," + x.cells[elems[a].second].id + ")");
        for (int b = 0; b < m; ++b)
            leq[a][b] = (x.leq(elems[a].first, elems[b].first) &&
                         x.leq(elems[b].second, elems[a].second))
                            ? 1
                            : 0;
    }
    SpecialFibreResult out;
    out.fibre = FinitePoset::from_leq(std::move(labels), std::move(leq));
    out.versus_interval = poset_isomorphic(out.fibre, interval_poset(face_poset(x)));

    // closure of the bounded-cubical subdivision: elements (F, eta) with
    // eta below F's recession cone, ordered by the compactification rule
    auto bc = bounded_cubical_poset(p, x_ids);
    std::vector<std::pair<int, int>> closure_elems;
    for (int i = 0; i < static_cast<int>(bc.elements.size()); ++i)
        for (int eta = 0; eta < bc.recession.size(); ++eta)
            if (bc.recession.leq(eta, bc.elements[i].rho)) closure_elems.push_back({i, eta});
    int mc = static_cast<int>(closure_elems.size());
    std::vector<std::string> clabels;
    std::vector<std::vector<uint8_t>> cleq(mc, std::vector<uint8_t>(mc, 0));
    for (int a = 0; a < mc; ++a) {
        clabels.push_back(bc.poset.labels[closure_elems[a].first] + "@" +
                          bc.recession.cones[closure_elems[a].second].id);
        for (int b = 0; b < mc; ++b)
            cleq[a][b] = (bc.poset.leq(closure_elems[a].first, closure_elems[b].first) &&
                          bc.recession.leq(closure_elems[b].second, closure_elems[a].second))
                             ? 1
                             : 0;
    }
    auto bc_closure = FinitePoset::from_leq(std::move(clabels), std::move(cleq));
    out.versus_bounded_cubical = poset_isomorphic(out.fibre, bc_closure);
    return out;
}

} // namespace troppatch
