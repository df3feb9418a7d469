#pragma once

#include "phase.hpp"
#include "poset.hpp"

#include <map>
#include <string>
#include <vector>

namespace troppatch {

// ---------------------------------------------------------------------------
// Q(Sigma): the stratum poset of the real tropical toric variety. Elements
// (rho, eps) with eps in Z_2(rho); (rho, eps) <= (eta, delta) iff eta <= rho
// and eps is the projection of delta.
// ---------------------------------------------------------------------------
inline FinitePoset real_toric_poset(const Fan& fan) {
    if (!fan.pointed()) throw TroppatchError("NotPointed", "real_toric_poset");
    struct Elem {
        int rho;
        uint64_t eps;
    };
    std::vector<Elem> elems;
    for (int rho = 0; rho < fan.size(); ++rho) {
        int m = fan.ambient - fan.cone_dim(rho);
        if (m > 20) throw TroppatchError("BadDimension", "stratum too large");
        for (uint64_t eps = 0; eps < (1ull << m); ++eps) elems.push_back({rho, eps});
    }
    int n = static_cast<int>(elems.size());
    std::vector<std::string> labels;
    std::vector<std::vector<uint8_t>> leq(n, std::vector<uint8_t>(n, 0));
    for (int a = 0; a < n; ++a)
        labels.push_back(fan.cones[elems[a].rho].id + "|" + std::to_string(elems[a].eps));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            // a <= b iff rho_b <= rho_a and eps_a = pi(eps_b)
            if (!fan.leq(elems[b].rho, elems[a].rho)) continue;
            IMat pi = fan.stratum_projection(elems[b].rho, elems[a].rho);
            GF2Matrix p2 = imat_mod2(pi, fan.ambient - fan.cone_dim(elems[b].rho));
            leq[a][b] = (Z2AffineSubspace::apply_mask(p2, elems[b].eps) == elems[a].eps) ? 1 : 0;
        }
    }
    return FinitePoset::from_leq(std::move(labels), std::move(leq));
}

// ---------------------------------------------------------------------------
// The patchwork complex: one cell per (face, eps in its induced phase set),
// as an abstract cell poset with per-cell labels back into the base complex.
// ---------------------------------------------------------------------------
struct PatchworkComplex {
    const TropicalComplex* base = nullptr;
    std::vector<std::pair<int, uint64_t>> cells; // (base cell, eps)
    std::vector<std::string> labels;
    std::vector<std::vector<uint8_t>> leq;
    int dim = -1;

    int size() const { return static_cast<int>(cells.size()); }
    int cell_dim(int i) const { return base->cells[cells[i].first].dim; }
    bool cell_compact(int i) const { return base->cells[cells[i].first].compact; }

    FinitePoset poset() const { return FinitePoset::from_leq(labels, leq); }

    long long euler_all() const {
        long long chi = 0;
        for (int i = 0; i < size(); ++i) chi += (cell_dim(i) % 2 == 0) ? 1 : -1;
        return chi;
    }
    long long euler_compact() const {
        long long chi = 0;
        for (int i = 0; i < size(); ++i)
            if (cell_compact(i)) chi += (cell_dim(i) % 2 == 0) ? 1 : -1;
        return chi;
    }
};

inline PatchworkComplex build_patchwork(const TropicalComplex& c, const RealPhaseStructure& e,
                                        bool validate = true) {
    if (validate) {
        auto rep = validate_phase(c, e);
        if (!rep.ok) throw TroppatchError("PhaseInvalid", rep.violations.front());
    }
    PatchworkComplex out;
    out.base = &c;
    out.dim = c.dim;
    std::vector<std::vector<uint64_t>> induced(c.size());
    for (int i = 0; i < c.size(); ++i) induced[i] = induced_phase_on_face(c, e, i);
    for (int i = 0; i < c.size(); ++i)
        for (uint64_t eps : induced[i]) {
            out.cells.push_back({i, eps});
            out.labels.push_back(c.cells[i].id + "(" + std::to_string(eps) + ")");
        }
    int m = out.size();
    out.leq.assign(m, std::vector<uint8_t>(m, 0));
    for (int a = 0; a < m; ++a) {
        auto [ca, ea] = out.cells[a];
        for (int b = 0; b < m; ++b) {
            auto [cb, eb] = out.cells[b];
            if (!c.leq(ca, cb)) continue;
            GF2Matrix pi = stratum_projection_mod2(c, c.cells[cb].sed, c.cells[ca].sed);
            out.leq[a][b] = (Z2AffineSubspace::apply_mask(pi, eb) == ea) ? 1 : 0;
        }
    }
    return out;
}

// Closedness certificate: every codimension-one cell of the patchwork lies in
// an even number of facet-cells. Returns the offending cell on failure.
struct ClosednessResult {
    bool closed = true;
    std::string counterexample;
};

inline ClosednessResult check_closed_chain(const PatchworkComplex& p) {
    ClosednessResult out;
    for (int i = 0; i < p.size(); ++i) {
        if (p.cell_dim(i) != p.dim - 1) continue;
        int count = 0;
        for (int j = 0; j < p.size(); ++j)
            if (j != i && p.cell_dim(j) == p.dim && p.leq[i][j]) ++count;
        if (count % 2 != 0) {
            out.closed = false;
            out.counterexample = p.labels[i];
            return out;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Q(P) and Q(X, E): the posets controlling the regular CW structure of the
// generic real fibre. Elements (sigma, eps in Z_2(RecCone sigma)).
// ---------------------------------------------------------------------------
struct QPosets {
    FinitePoset q_p;      // Q(P), marked subset = Q(X, E)
    std::vector<std::pair<int, uint64_t>> elements;
};

inline QPosets q_posets(const TropicalComplex& p, const std::vector<int>& x_ids,
                        const RealPhaseStructure& e) {
    require_strongly_unimodular(p);
    auto x = subcomplex(p, x_ids);
    if (!x_ids.empty()) {
        auto rep = validate_phase(x, e);
        if (!rep.ok) throw TroppatchError("PhaseInvalid", rep.violations.front());
    }
    std::vector<LatticeSplit> rec_split;
    for (int i = 0; i < p.size(); ++i) rec_split.push_back(recession_split(p, i));
    QPosets out;
    for (int i = 0; i < p.size(); ++i) {
        int m = p.ambient - rec_split[i].rank;
        if (m > 20) throw TroppatchError("BadDimension", "stratum too large");
        for (uint64_t eps = 0; eps < (1ull << m); ++eps) out.elements.push_back({i, eps});
    }
    int n = static_cast<int>(out.elements.size());
    std::vector<std::string> labels;
    std::vector<std::vector<uint8_t>> leq(n, std::vector<uint8_t>(n, 0));
    for (int a = 0; a < n; ++a)
        labels.push_back(p.cells[out.elements[a].first].id + "|" +
                         std::to_string(out.elements[a].second));
    for (int a = 0; a < n; ++a) {
        auto [sa, ea] = out.elements[a];
        for (int b = 0; b < n; ++b) {
            auto [sb, eb] = out.elements[b];
            // (sa, ea) <= (sb, eb) iff sb <= sa and ea = pi(eb),
            // pi: Z_2(RecCone sb) -> Z_2(RecCone sa)
            if (!p.leq(sb, sa)) continue;
            IMat lift = imat_transpose(rec_split[sb].complement_basis);
            IMat pi = imat_product(rec_split[sa].proj, lift);
            GF2Matrix p2 = imat_mod2(pi, p.ambient - rec_split[sb].rank);
            leq[a][b] = (Z2AffineSubspace::apply_mask(p2, eb) == ea) ? 1 : 0;
        }
    }
    // marked subset Q(X, E): sigma in X and eps in the projected induced phase
    std::vector<uint8_t> in_x(p.size(), 0);
    std::vector<int> x_index(p.size(), -1);
    for (size_t k = 0; k < x_ids.size(); ++k) {
        in_x[x_ids[k]] = 1;
        x_index[x_ids[k]] = static_cast<int>(k);
    }
    std::vector<int> marked;
    for (int a = 0; a < n; ++a) {
        auto [sa, ea] = out.elements[a];
        if (!in_x[sa]) continue;
        auto induced = induced_phase_on_face(x, e, x_index[sa]);
        GF2Matrix p2 = imat_mod2(rec_split[sa].proj, p.ambient);
        bool hit = false;
        for (uint64_t pt : induced)
            if (Z2AffineSubspace::apply_mask(p2, pt) == ea) { hit = true; break; }
        if (hit) marked.push_back(a);
    }
    out.q_p = FinitePoset::from_leq(std::move(labels), std::move(leq), std::move(marked));
    return out;
}

// ---------------------------------------------------------------------------
// The positive special fibre as a cell poset, built through the stars of P
// with their induced phases, then certified against Q(P) / Q(X, E).
// ---------------------------------------------------------------------------
struct PositiveFibreResult {
    FinitePoset fibre;   // marked subset = cells meeting the patchworked fibre
    IsoResult certificate; // against q_posets output
};

inline PositiveFibreResult positive_special_fibre_poset(const TropicalComplex& p,
                                                        const std::vector<int>& x_ids,
                                                        const RealPhaseStructure& e) {
    require_strongly_unimodular(p);
    auto x = subcomplex(p, x_ids);
    if (!x_ids.empty()) {
        auto rep = validate_phase(x, e);
        if (!rep.ok) throw TroppatchError("PhaseInvalid", rep.violations.front());
    }
    std::vector<uint8_t> in_x(p.size(), 0);
    std::vector<int> x_index(p.size(), -1);
    for (size_t k = 0; k < x_ids.size(); ++k) {
        in_x[x_ids[k]] = 1;
        x_index[x_ids[k]] = static_cast<int>(k);
    }
    // strata: (sigma, eps in Z_2(RecCone sigma)); each is a copy of T Star_sigma P
    std::vector<LatticeSplit> rec_split;
    for (int i = 0; i < p.size(); ++i) rec_split.push_back(recession_split(p, i));
    std::vector<std::pair<int, uint64_t>> elems;
    for (int i = 0; i < p.size(); ++i) {
        int m = p.ambient - rec_split[i].rank;
        for (uint64_t eps = 0; eps < (1ull << m); ++eps) elems.push_back({i, eps});
    }
    int n = static_cast<int>(elems.size());
    std::vector<std::string> labels;
    std::vector<std::vector<uint8_t>> leq(n, std::vector<uint8_t>(n, 0));
    for (int a = 0; a < n; ++a)
        labels.push_back("star " + p.cells[elems[a].first].id + "(" +
                         std::to_string(elems[a].second) + ")");
    // direct-limit order: the copy for (sigma, eps) includes into the copy for
    // (tau, delta) iff tau <= sigma and eps is the projection of delta
    for (int a = 0; a < n; ++a) {
        auto [sa, ea] = elems[a];
        for (int b = 0; b < n; ++b) {
            auto [sb, eb] = elems[b];
            if (!p.leq(sb, sa)) continue;
            IMat lift = imat_transpose(rec_split[sb].complement_basis);
            IMat pi = imat_product(rec_split[sa].proj, lift);
            GF2Matrix p2 = imat_mod2(pi, p.ambient - rec_split[sb].rank);
            leq[a][b] = (Z2AffineSubspace::apply_mask(p2, eb) == ea) ? 1 : 0;
        }
    }
    // marking via star phases: the stratum (sigma, eps) meets the patchworked
    // fibre iff sigma is in X and the class of eps in Z_2(sigma) lies in the
    // induced phase of Star_sigma X at its minimal cone
    std::vector<int> marked;
    for (int a = 0; a < n; ++a) {
        auto [sa, ea] = elems[a];
        if (!in_x[sa]) continue;
        auto sp = star_phase(x, e, x_index[sa]);
        int origin = -1;
        for (int k = 0; k < sp.complex.size(); ++k)
            if (sp.complex.cells[k].dim == 0) origin = k;
        auto star_induced = induced_phase_on_face(sp.complex, sp.phases, origin);
        // eps lives in Z_2(RecCone sigma); project to Z_2(sigma)
        auto tangent_split = lattice_split(x.cells[x_index[sa]].tangent, p.ambient);
        IMat lift = imat_transpose(rec_split[sa].complement_basis);
        IMat pi = imat_product(tangent_split.proj, lift);
        GF2Matrix p2 = imat_mod2(pi, p.ambient - rec_split[sa].rank);
        uint64_t cls = Z2AffineSubspace::apply_mask(p2, ea);
        if (std::binary_search(star_induced.begin(), star_induced.end(), cls)) marked.push_back(a);
    }
    PositiveFibreResult out;
    out.fibre = FinitePoset::from_leq(std::move(labels), std::move(leq), std::move(marked));
    auto q = q_posets(p, x_ids, e);
    out.certificate = poset_isomorphic(out.fibre, q.q_p);
    return out;
}

} // namespace troppatch
