#pragma once

#include "oriented_matroid.hpp"

#include <map>
#include <string>
#include <vector>

namespace troppatch {

// Real phase structure: one affine subspace of (Z/2)^m per facet, keyed by
// cell id, in the coordinates of the complex's sedentarity stratum.
struct RealPhaseStructure {
    std::map<std::string, Z2AffineSubspace> facet_phases;
};

inline GF2Matrix stratum_projection_mod2(const TropicalComplex& c, int from_cone, int to_cone) {
    IMat p = c.sigma.stratum_projection(from_cone, to_cone);
    int cols = c.ambient - c.sigma.cone_dim(from_cone);
    return imat_mod2(p, cols);
}

// Sedentarity cone shared by all facets (the complex's own sedentarity).
inline int complex_sedentarity(const TropicalComplex& c) {
    for (const auto& cell : c.cells)
        if (cell.facet) return cell.sed;
    throw TroppatchError("BadCell", "complex without facets");
}

inline ValidationReport validate_phase(const TropicalComplex& c, const RealPhaseStructure& e) {
    ValidationReport rep;
    int sed0 = complex_sedentarity(c);
    int m = c.ambient - c.sigma.cone_dim(sed0);
    if (m > 20) {
        rep.fail("TooLarge: even-covering scan needs stratum dim <= 20");
        return rep;
    }
    for (int i = 0; i < c.size(); ++i) {
        const Cell& cell = c.cells[i];
        if (!cell.facet) continue;
        auto it = e.facet_phases.find(cell.id);
        if (it == e.facet_phases.end()) {
            rep.fail("MissingFacet: " + cell.id);
            continue;
        }
        const auto& h = it->second;
        if (h.ambient_dim() != m) {
            rep.fail("BadAmbient: " + cell.id);
            continue;
        }
        if (h.dim() != c.dim) rep.fail("BadDimension: phase of " + cell.id);
        // condition (1): direction space equals the mod-2 tangent space
        auto tangent = c.tangent_mod2(i);
        Z2AffineSubspace tspan(m, 0, tangent);
        bool parallel = (tspan.dim() == h.dim());
        for (uint64_t t : tangent) parallel = parallel && h.direction_space_contains(t);
        if (!parallel) rep.fail("NotParallel: " + cell.id);
    }
    for (const auto& [id, subspace] : e.facet_phases) {
        int idx = c.find_cell(id);
        if (idx < 0 || !c.cells[idx].facet) rep.fail("NotAFacet: " + id);
        (void)subspace;
    }
    if (!rep.ok) return rep;
    // condition (2): even covering around codimension-one faces of the same sedentarity
    for (int i = 0; i < c.size(); ++i) {
        const Cell& tau = c.cells[i];
        if (tau.sed != sed0 || tau.dim != c.dim - 1) continue;
        std::vector<const Z2AffineSubspace*> sets;
        for (int f : c.facets_above(i))
            if (f != i) sets.push_back(&e.facet_phases.at(c.cells[f].id));
        for (uint64_t pt = 0; pt < (1ull << m); ++pt) {
            int count = 0;
            for (const auto* s : sets) count += s->contains(pt) ? 1 : 0;
            if (count % 2 != 0) {
                rep.fail("NotEvenCovering: face " + tau.id);
                break;
            }
        }
    }
    return rep;
}

// E(tau) = union over adjacent facets of the projected facet phases.
// In general not an affine subspace; returned as a sorted point list.
inline std::vector<uint64_t> induced_phase_on_face(const TropicalComplex& c,
                                                   const RealPhaseStructure& e, int face) {
    if (face < 0 || face >= c.size()) throw TroppatchError("UnknownFace", "induced_phase_on_face");
    int sed0 = complex_sedentarity(c);
    const Cell& tau = c.cells[face];
    GF2Matrix proj = stratum_projection_mod2(c, sed0, tau.sed);
    std::vector<uint64_t> out;
    for (int f : c.facets_above(face)) {
        const auto& h = e.facet_phases.at(c.cells[f].id);
        for (uint64_t p : h.points()) out.push_back(Z2AffineSubspace::apply_mask(proj, p));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Same union but keeping multiplicities per adjacent facet (for parity tests).
inline std::map<uint64_t, int> induced_phase_multiset(const TropicalComplex& c,
                                                      const RealPhaseStructure& e, int face) {
    int sed0 = complex_sedentarity(c);
    const Cell& tau = c.cells[face];
    GF2Matrix proj = stratum_projection_mod2(c, sed0, tau.sed);
    std::map<uint64_t, int> out;
    for (int f : c.facets_above(face)) {
        const auto& h = e.facet_phases.at(c.cells[f].id);
        std::set<uint64_t> image;
        for (uint64_t p : h.points()) image.insert(Z2AffineSubspace::apply_mask(proj, p));
        for (uint64_t p : image) out[p] += 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Subdivision transfer: each fine facet inherits the phase of the coarse cell
// containing its relative interior. This is a bijection between the phase
// structures on a complex and on any of its subdivisions.
// ---------------------------------------------------------------------------
inline int coarse_cell_of(const TropicalComplex& coarse, const QVec& pt) {
    int found = -1;
    for (int i = 0; i < coarse.size(); ++i) {
        if (!coarse.cells[i].poly.contains(pt)) continue;
        bool in_proper_face = false;
        for (int f : coarse.face_list(i))
            if (coarse.cells[f].poly.contains(pt)) { in_proper_face = true; break; }
        if (!in_proper_face) {
            if (found >= 0) return -1; // ambiguous, not a complex
            found = i;
        }
    }
    return found;
}

inline RealPhaseStructure transfer_under_subdivision(const TropicalComplex& coarse,
                                                     const RealPhaseStructure& e,
                                                     const TropicalComplex& fine) {
    RealPhaseStructure out;
    for (int i = 0; i < fine.size(); ++i) {
        const Cell& cell = fine.cells[i];
        if (!cell.facet) continue;
        QVec p = cell.poly.relint_point();
        int host = coarse_cell_of(coarse, p);
        if (host < 0) throw TroppatchError("NotASubdivision", "fine facet " + cell.id + " has no host");
        if (!coarse.cells[host].facet)
            throw TroppatchError("NotASubdivision", "fine facet " + cell.id + " lands in a lower cell");
        out.facet_phases.emplace(cell.id, e.facet_phases.at(coarse.cells[host].id));
    }
    // support sanity in the other direction
    for (int i = 0; i < coarse.size(); ++i) {
        if (!coarse.cells[i].facet) continue;
        QVec p = coarse.cells[i].poly.relint_point();
        bool covered = false;
        for (int j = 0; j < fine.size() && !covered; ++j)
            covered = fine.cells[j].poly.contains(p);
        if (!covered) throw TroppatchError("NotASubdivision", "coarse facet not covered");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Star phase: the star fan as a complex, with phases E(sigma)/T_Z2(tau).
// ---------------------------------------------------------------------------
inline TropicalComplex fan_as_complex(const Fan& f) {
    TropicalComplex out;
    out.ambient = f.ambient;
    for (int i = 0; i < f.size(); ++i) {
        Cell c;
        c.id = f.cones[i].id;
        c.poly = f.cones[i].poly(f.ambient);
        for (int j = 0; j < f.size(); ++j)
            if (j != i && f.leq(j, i)) c.faces.push_back(j);
        out.cells.push_back(std::move(c));
    }
    out.finalize();
    return out;
}

struct StarPhase {
    TropicalComplex complex;
    RealPhaseStructure phases;
};

inline StarPhase star_phase(const TropicalComplex& c, const RealPhaseStructure& e, int face) {
    if (face < 0 || face >= c.size()) throw TroppatchError("UnknownFace", "star_phase");
    auto st = star_fan(c, face);
    GF2Matrix proj = imat_mod2(st.proj, c.cells[face].poly.ambient);
    int sed0 = complex_sedentarity(c);
    GF2Matrix to_stratum = stratum_projection_mod2(c, sed0, c.cells[face].sed);
    StarPhase out;
    out.complex = fan_as_complex(st.fan);
    for (size_t k = 0; k < st.source_cell.size(); ++k) {
        int src = st.source_cell[k];
        // the star's facets are the maximal same-stratum slices; their phases
        // are the facet phases of the underlying sedentarity-0 facets,
        // projected into the stratum first
        bool maximal = true;
        for (size_t k2 = 0; k2 < st.source_cell.size(); ++k2)
            if (k2 != k && c.leq(src, st.source_cell[k2])) maximal = false;
        if (!maximal) continue;
        const std::string& key = c.cells[src].base_id.empty() ? c.cells[src].id
                                                              : c.cells[src].base_id;
        auto it = e.facet_phases.find(key);
        if (it == e.facet_phases.end()) continue;
        out.phases.facet_phases.emplace(st.fan.cones[k].id,
                                        it->second.project(to_stratum).project(proj));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Coarsening onto a fan structure: the cells are the fan cones lying inside
// the support, phases transported through the subdivision bijection. The
// subdivision relation is verified by a round trip through the transfer.
// ---------------------------------------------------------------------------
struct CoarseStructure {
    TropicalComplex complex;
    RealPhaseStructure phases;
};

inline CoarseStructure coarsen_to_fan(const TropicalComplex& fine, const RealPhaseStructure& e,
                                      const Fan& fan) {
    CoarseStructure out;
    out.complex.ambient = fine.ambient;
    std::vector<int> kept;
    for (int i = 0; i < fan.size(); ++i) {
        QVec pt = fan.cones[i].poly(fan.ambient).relint_point();
        bool inside = false;
        for (int j = 0; j < fine.size() && !inside; ++j)
            inside = fine.cells[j].poly.contains(pt);
        if (inside) kept.push_back(i);
    }
    std::vector<int> new_index(fan.size(), -1);
    for (size_t k = 0; k < kept.size(); ++k) new_index[kept[k]] = static_cast<int>(k);
    for (int i : kept) {
        Cell c;
        c.id = fan.cones[i].id;
        c.poly = fan.cones[i].poly(fan.ambient);
        for (int j : kept)
            if (j != i && fan.leq(j, i)) c.faces.push_back(new_index[j]);
        out.complex.cells.push_back(std::move(c));
    }
    out.complex.finalize();
    // reconstruct the coarse phases from the fine facets they contain
    for (int i = 0; i < fine.size(); ++i) {
        if (!fine.cells[i].facet) continue;
        int host = coarse_cell_of(out.complex, fine.cells[i].poly.relint_point());
        if (host < 0 || !out.complex.cells[host].facet)
            throw TroppatchError("NotASubdivision", "support is not a union of fan cones");
        const auto& h = e.facet_phases.at(fine.cells[i].id);
        auto it = out.phases.facet_phases.find(out.complex.cells[host].id);
        if (it == out.phases.facet_phases.end())
            out.phases.facet_phases.emplace(out.complex.cells[host].id, h);
        else if (!(it->second == h))
            throw TroppatchError("NotASubdivision", "phase not constant across a coarse facet");
    }
    auto rep = validate_phase(out.complex, out.phases);
    if (!rep.ok) throw TroppatchError("PhaseInvalid", rep.violations.front());
    // certify the subdivision relation by the forward transfer
    auto back = transfer_under_subdivision(out.complex, out.phases, fine);
    for (const auto& [id, h] : back.facet_phases)
        if (!(h == e.facet_phases.at(id)))
            throw TroppatchError("NotASubdivision", "transfer round trip mismatch");
    return out;
}

// ---------------------------------------------------------------------------
// The oriented-matroid phase structure on a Bergman fan: each facet (maximal
// flat chain) receives the tope set of its flag minors.
// ---------------------------------------------------------------------------
struct BergmanWithPhase {
    Matroid matroid;
    TropicalComplex complex;
    RealPhaseStructure phases;
};

inline BergmanWithPhase bergman_fan_with_phase(const OrientedMatroid& om, bool projective) {
    auto val = validate_covectors(om);
    if (!val.report.ok) throw TroppatchError("InvalidOM", val.report.violations.front());
    Matroid m = val.underlying;
    if (!m.loopfree()) throw TroppatchError("HasLoops", "phase structures need loopfree matroids");
    BergmanWithPhase out;
    out.matroid = m;
    out.complex = bergman_fan(m, projective);
    int n = m.ground;
    // projective quotient mod 2: eps -> (eps_1 + eps_0, ..., eps_{n-1} + eps_0)
    GF2Matrix proj(n - 1, n);
    for (int i = 1; i < n; ++i) {
        proj.set(i - 1, 0, true);
        proj.set(i - 1, i, true);
    }
    // facets are labelled by maximal chains of proper flats; rebuild the chain
    for (int i = 0; i < out.complex.size(); ++i) {
        const Cell& cell = out.complex.cells[i];
        if (!cell.facet) continue;
        std::vector<uint32_t> chain;
        if (cell.id != "o") {
            std::string rest = cell.id.substr(2); // strip "f_"
            size_t pos = 0;
            while (pos < rest.size()) {
                size_t next = rest.find('_', pos);
                if (next == std::string::npos) next = rest.size();
                chain.push_back(static_cast<uint32_t>(std::stoul(rest.substr(pos, next - pos))));
                pos = next + 1;
            }
        }
        chain.push_back(m.full_mask());
        Z2AffineSubspace h = phase_from_flag(om, m, chain);
        if (projective) h = h.project(proj);
        out.phases.facet_phases.emplace(cell.id, h);
    }
    return out;
}

} // namespace troppatch
