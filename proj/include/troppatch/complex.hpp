#pragma once

#include "fan.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace troppatch {

// A cell of a polyhedral complex in a tropical toric variety. Geometry lives
// in the coordinates of its sedentarity stratum R(rho), dimension n - dim rho.
struct Cell {
    std::string id;
    int sed = 0;            // cone index into the ambient fan
    Polyhedron poly;
    std::vector<int> faces; // indices of proper faces (any generating set; closed transitively)

    // derived
    int dim = -1;
    IMat tangent;   // saturated Z-basis of the tangent lattice, stratum coords
    bool facet = false;
    bool compact = false;
    int base_cell = -1;  // compactification labels, -1 on ordinary complexes
    int rho = -1;
    std::string base_id; // id of the sedentarity-0 cell this one slices
};

class TropicalComplex {
public:
    int ambient = 0; // n, the dimension of the sedentarity-0 stratum
    Fan sigma;       // ambient fan
    std::vector<Cell> cells;
    int dim = -1;

    int size() const { return static_cast<int>(cells.size()); }

    bool leq(int i, int j) const { return leq_[i][j]; } // i is a face of j (or equal)
    const std::vector<int>& face_list(int i) const { return all_faces_[i]; }
    const std::vector<int>& covers_of(int i) const { return covered_by_[i]; } // cells covering i
    const std::vector<int>& covered_cells(int i) const { return covers_[i]; } // cells i covers
    const std::vector<int>& facets_above(int i) const { return facets_above_[i]; }

    int find_cell(const std::string& id) const {
        for (int i = 0; i < size(); ++i)
            if (cells[i].id == id) return i;
        return -1;
    }

    std::vector<int> cells_of_dim(int d) const {
        std::vector<int> out;
        for (int i = 0; i < size(); ++i)
            if (cells[i].dim == d) out.push_back(i);
        return out;
    }

    // GF(2) tangent space of a cell, as masks in its stratum coordinates.
    std::vector<uint64_t> tangent_mod2(int i) const {
        std::vector<uint64_t> out;
        for (const auto& b : cells[i].tangent) out.push_back(ivec_mod2_mask(b));
        return out;
    }

    // Recompute all derived data. Throws on structural inconsistencies.
    void finalize() {
        int m = size();
        if (sigma.size() == 0) sigma = Fan::trivial(ambient);
        for (auto& c : cells) {
            c.dim = c.poly.dim();
            int stratum_dim = ambient - sigma.cone_dim(c.sed);
            if (c.poly.ambient != stratum_dim)
                throw TroppatchError("BadDimension", "cell " + c.id + " not in its stratum coordinates");
            c.tangent = lattice_split(c.poly.tangent_generators(), stratum_dim).tangent_basis;
        }
        // transitive closure of the face relation
        leq_.assign(m, std::vector<uint8_t>(m, 0));
        for (int i = 0; i < m; ++i) leq_[i][i] = 1;
        for (int i = 0; i < m; ++i)
            for (int f : cells[i].faces) leq_[f][i] = 1;
        for (int k = 0; k < m; ++k)
            for (int i = 0; i < m; ++i)
                if (leq_[i][k])
                    for (int j = 0; j < m; ++j)
                        if (leq_[k][j]) leq_[i][j] = 1;
        for (int i = 0; i < m; ++i)
            if (leq_[i][i] && cells[i].dim < 0)
                throw TroppatchError("BadCell", "cell with empty polyhedron");
        all_faces_.assign(m, {});
        covered_by_.assign(m, {});
        covers_.assign(m, {});
        facets_above_.assign(m, {});
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (i != j && leq_[i][j]) all_faces_[j].push_back(i);
        for (int i = 0; i < m; ++i) {
            for (int j : all_faces_[i]) {
                // j < i; cover iff no k strictly between
                bool cover = true;
                for (int k : all_faces_[i]) {
                    if (k == j) continue;
                    if (leq_[j][k]) { cover = false; break; }
                }
                if (cover) {
                    covers_[i].push_back(j);
                    covered_by_[j].push_back(i);
                }
            }
        }
        dim = -1;
        for (const auto& c : cells) dim = std::max(dim, c.dim);
        for (int i = 0; i < m; ++i) {
            bool maximal = true;
            for (int j = 0; j < m; ++j)
                if (i != j && leq_[i][j]) { maximal = false; break; }
            cells[i].facet = maximal;
        }
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (cells[j].facet && leq_[i][j]) facets_above_[i].push_back(j);
        // compactness: recession cone contained in a single cone of Star_sed(Sigma)
        for (int i = 0; i < m; ++i) {
            Cell& c = cells[i];
            Polyhedron rec;
            rec.ambient = c.poly.ambient;
            rec.vertices = {QVec(c.poly.ambient, Rat(0))};
            rec.rays = c.poly.rays;
            rec.lineality = c.poly.lineality;
            if (rec.rays.empty() && rec.lineality.empty()) {
                c.compact = true;
            } else {
                Fan st = (sigma.cone_dim(c.sed) == 0) ? sigma : sigma.star(c.sed);
                c.compact = st.supports_cone(rec);
            }
        }
    }

    std::vector<std::vector<uint8_t>> leq_;

private:
    std::vector<std::vector<int>> all_faces_;
    std::vector<std::vector<int>> covered_by_;
    std::vector<std::vector<int>> covers_;
    std::vector<std::vector<int>> facets_above_;
};

// ---------------------------------------------------------------------------

inline IMat homogenized_generators(const Polyhedron& p) {
    IMat rows;
    for (const auto& v : p.vertices) {
        BigInt l(1);
        for (const auto& x : v) l = l * x.den() / BigInt::gcd(l, x.den());
        IVec row(p.ambient + 1);
        for (int k = 0; k < p.ambient; ++k) row[k] = (v[k].num() * (l / v[k].den())).to_ll();
        row[p.ambient] = l.to_ll();
        rows.push_back(primitive(row));
    }
    for (const auto& r : p.rays) {
        IVec row = r;
        row.push_back(0);
        rows.push_back(row);
    }
    return rows;
}

inline bool pair_intersection_ok(const TropicalComplex& c, int i, int j) {
    const Polyhedron& a = c.cells[i].poly;
    const Polyhedron& b = c.cells[j].poly;
    // find common listed faces
    std::vector<int> common;
    for (int f = 0; f < c.size(); ++f)
        if (c.leq(f, i) && c.leq(f, j)) common.push_back(f);
    if (common.empty()) {
        // must be disjoint
        FaceFunctional everything{QVec(a.ambient, Rat(0)), Rat(-1)};
        return !Fan::meets_open_halfspace(a, b, everything);
    }
    int best = common[0];
    for (int f : common)
        if (c.cells[f].dim > c.cells[best].dim) best = f;
    for (int f : common)
        if (!c.leq(f, best)) return false; // no unique maximal common face
    // coverage: a ∩ b inside the max common face, from both sides
    auto fa = face_functional(a, c.cells[best].poly);
    auto fb = face_functional(b, c.cells[best].poly);
    if (!fa || !fb) return false;
    if (Fan::meets_open_halfspace(a, b, *fa)) return false;
    if (Fan::meets_open_halfspace(b, a, *fb)) return false;
    return true;
}

inline ValidationReport validate_complex(const TropicalComplex& c) {
    ValidationReport rep;
    std::set<std::string> ids;
    for (const auto& cell : c.cells) {
        if (!ids.insert(cell.id).second) rep.fail("DuplicateId: " + cell.id);
        if (cell.poly.vertices.empty() && cell.poly.lineality.empty())
            rep.fail("NoGenerators: " + cell.id);
        for (const auto& r : cell.poly.rays)
            if (primitive(r) != r) rep.fail("NotPrimitive: ray of " + cell.id);
        for (const auto& l : cell.poly.lineality)
            if (primitive(l) != l) rep.fail("NotPrimitive: lineality of " + cell.id);
    }
    // pure dimension
    for (const auto& cell : c.cells)
        if (cell.facet && cell.dim != c.dim)
            rep.fail("NotPureDimension: facet " + cell.id + " has dim " + std::to_string(cell.dim));
    // pure sedentarity: facets all carry the same sedentarity
    int facet_sed = -1;
    for (const auto& cell : c.cells) {
        if (!cell.facet) continue;
        if (facet_sed < 0) facet_sed = cell.sed;
        else if (facet_sed != cell.sed) rep.fail("NotPureSedentarity: facet " + cell.id);
    }
    // declared faces actually are faces; geometric faces are all present
    for (int i = 0; i < c.size(); ++i) {
        const Cell& cell = c.cells[i];
        for (int f : c.face_list(i)) {
            const Cell& fc = c.cells[f];
            if (fc.sed == cell.sed) {
                if (!face_functional(cell.poly, fc.poly).has_value())
                    rep.fail("NotAFace: " + fc.id + " listed under " + cell.id);
            }
            // faces in deeper strata are validated by the compactification poset
        }
        auto geometric = enumerate_faces(cell.poly);
        for (const auto& g : geometric) {
            bool found = false;
            if (g.same_set(cell.poly)) continue;
            for (int f : c.face_list(i)) {
                if (c.cells[f].sed != cell.sed) continue;
                if (c.cells[f].poly.same_set(g)) { found = true; break; }
            }
            if (!found) rep.fail("NotFaceClosed: " + cell.id + " misses a geometric face");
        }
    }
    // pairwise intersections are common faces (within each stratum)
    for (int i = 0; i < c.size(); ++i) {
        for (int j = i + 1; j < c.size(); ++j) {
            const Cell& a = c.cells[i];
            const Cell& b = c.cells[j];
            if (a.sed != b.sed) continue;
            if (c.leq(i, j) || c.leq(j, i)) continue;
            if (!pair_intersection_ok(c, i, j))
                rep.fail("IntersectionNotFace: " + a.id + ", " + b.id);
        }
    }
    // regularity spot-check (sufficient condition): each cell's homogenization
    // cone is simplicial, so the closed cell is a ball
    for (const auto& cell : c.cells) {
        if (cell.poly.lineality.empty()) {
            IMat gens = homogenized_generators(cell.poly);
            if (qrank(gens) != static_cast<int>(gens.size()))
                rep.warn("RegularityUnverified: " + cell.id);
        } else {
            rep.warn("RegularityUnverified: " + cell.id);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Recession fan of a sedentarity-0 complex.
// ---------------------------------------------------------------------------
inline Fan recession_fan(const TropicalComplex& c) {
    Fan f;
    f.ambient = c.ambient;
    std::vector<Polyhedron> seen;
    for (const auto& cell : c.cells) {
        FanCone rc;
        rc.rays = cell.poly.rays;
        rc.lineality = cell.poly.lineality;
        dedupe(rc.rays);
        dedupe(rc.lineality);
        Polyhedron p = rc.poly(c.ambient);
        bool dup = false;
        for (const auto& s : seen)
            if (s.same_set(p)) { dup = true; break; }
        if (dup) continue;
        seen.push_back(p);
        rc.id = "rec_" + cell.id;
        f.cones.push_back(std::move(rc));
    }
    f.finalize();
    auto rep = f.validate();
    if (!rep.ok) throw TroppatchError("NotAFan", rep.violations.front());
    return f;
}

// ---------------------------------------------------------------------------
// Star fan of a complex at a cell, with the projection data needed to carry
// phases along.
// ---------------------------------------------------------------------------
struct StarFan {
    Fan fan;
    IMat proj;                     // stratum coords -> star coords (integer)
    std::vector<int> source_cell;  // cone index -> cell index in the complex
};

inline StarFan star_fan(const TropicalComplex& c, int cell_idx) {
    if (cell_idx < 0 || cell_idx >= c.size()) throw TroppatchError("UnknownCell", "star_fan");
    const Cell& tau = c.cells[cell_idx];
    int m = tau.poly.ambient;
    auto sp = lattice_split(tau.tangent, m);
    StarFan out;
    out.proj = sp.proj;
    out.fan.ambient = m - sp.rank;
    QVec p0 = tau.poly.relint_point();
    for (int j = 0; j < c.size(); ++j) {
        if (!c.leq(cell_idx, j)) continue;
        if (c.cells[j].sed != tau.sed) continue;
        const Polyhedron& sp_poly = c.cells[j].poly;
        FanCone cone;
        cone.id = c.cells[j].id;
        for (const auto& v : sp_poly.vertices) {
            QVec d(m);
            for (int k = 0; k < m; ++k) d[k] = v[k] - p0[k];
            // scale to integer
            BigInt l(1);
            for (const auto& x : d) l = l * x.den() / BigInt::gcd(l, x.den());
            IVec iv(m);
            for (int k = 0; k < m; ++k) iv[k] = (d[k].num() * (l / d[k].den())).to_ll();
            IVec pr = apply_imat(sp.proj, iv);
            if (!is_zero_vec(pr)) cone.rays.push_back(primitive(pr));
        }
        for (const auto& r : sp_poly.rays) {
            IVec pr = apply_imat(sp.proj, r);
            if (!is_zero_vec(pr)) cone.rays.push_back(primitive(pr));
        }
        for (const auto& l : sp_poly.lineality) {
            IVec pl = apply_imat(sp.proj, l);
            if (!is_zero_vec(pl)) cone.lineality.push_back(primitive(pl));
        }
        dedupe(cone.rays);
        dedupe(cone.lineality);
        out.fan.cones.push_back(std::move(cone));
        out.source_cell.push_back(j);
    }
    out.fan.finalize();
    return out;
}

// ---------------------------------------------------------------------------
// Canonical compactification inside the toric variety of `sigma`.
// Cells are pairs (cell, rho) with rho a fan cone inside the recession cone;
// (cell', rho') <= (cell, rho) iff cell' <= cell and rho <= rho'.
// ---------------------------------------------------------------------------
inline TropicalComplex compactify(const TropicalComplex& c, const Fan& fan) {
    if (!fan.pointed()) throw TroppatchError("NotPointed", "compactification fan must be pointed");
    int n = c.ambient;
    // every recession cone must be a cone of the fan
    std::vector<int> rec_cone_of(c.size(), -1);
    for (int i = 0; i < c.size(); ++i) {
        Polyhedron rec;
        rec.ambient = n;
        rec.vertices = {QVec(n, Rat(0))};
        rec.rays = c.cells[i].poly.rays;
        rec.lineality = c.cells[i].poly.lineality;
        int idx = fan.find_cone(rec);
        if (idx < 0) throw TroppatchError("RecessionNotInFan", "cell " + c.cells[i].id);
        rec_cone_of[i] = idx;
    }
    TropicalComplex out;
    out.ambient = n;
    out.sigma = fan;
    std::map<std::pair<int, int>, int> index;
    for (int i = 0; i < c.size(); ++i) {
        for (int rho : fan.subcones(rec_cone_of[i])) {
            Cell cell;
            cell.base_cell = i;
            cell.rho = rho;
            cell.sed = rho;
            cell.base_id = c.cells[i].id;
            cell.id = (rho == fan.zero_cone()) ? c.cells[i].id
                                               : c.cells[i].id + "@" + fan.cones[rho].id;
            const auto& split = fan.split(rho);
            Polyhedron q;
            q.ambient = n - split.rank;
            for (const auto& v : c.cells[i].poly.vertices) {
                QVec pv = apply_imat_q(split.proj, v);
                bool dup = false;
                for (const auto& w : q.vertices)
                    if (w == pv) { dup = true; break; }
                if (!dup) q.vertices.push_back(pv);
            }
            for (const auto& r : c.cells[i].poly.rays) {
                IVec pr = apply_imat(split.proj, r);
                if (!is_zero_vec(pr)) q.rays.push_back(primitive(pr));
            }
            for (const auto& l : c.cells[i].poly.lineality) {
                IVec pl = apply_imat(split.proj, l);
                if (!is_zero_vec(pl)) q.lineality.push_back(primitive(pl));
            }
            dedupe(q.rays);
            dedupe(q.lineality);
            cell.poly = std::move(q);
            index[{i, rho}] = static_cast<int>(out.cells.size());
            out.cells.push_back(std::move(cell));
        }
    }
    // face relation: (i', rho') <= (i, rho) iff i' <= i and rho <= rho'
    for (auto& [key, idx] : index) {
        auto [i, rho] = key;
        for (auto& [key2, idx2] : index) {
            auto [i2, rho2] = key2;
            if (idx2 == idx) continue;
            if (c.leq(i2, i) && fan.leq(rho, rho2))
                out.cells[idx].faces.push_back(idx2);
        }
    }
    out.finalize();
    return out;
}

// Abstract pair poset built only from the face posets and the recession map,
// for certification against the geometric compactification above.
struct PosetData {
    std::vector<std::string> labels;
    std::vector<std::vector<uint8_t>> leq;
};

inline PosetData compactification_poset_abstract(const TropicalComplex& c, const Fan& fan) {
    std::vector<std::pair<int, int>> elems;
    for (int i = 0; i < c.size(); ++i) {
        Polyhedron rec;
        rec.ambient = c.ambient;
        rec.vertices = {QVec(c.ambient, Rat(0))};
        rec.rays = c.cells[i].poly.rays;
        rec.lineality = c.cells[i].poly.lineality;
        for (int rho = 0; rho < fan.size(); ++rho)
            if (rec.contains_polyhedron(fan.cones[rho].poly(c.ambient)))
                elems.push_back({i, rho});
    }
    PosetData pd;
    int m = static_cast<int>(elems.size());
    pd.leq.assign(m, std::vector<uint8_t>(m, 0));
    for (int a = 0; a < m; ++a) {
        pd.labels.push_back(c.cells[elems[a].first].id + "|" + fan.cones[elems[a].second].id);
        for (int b = 0; b < m; ++b)
            pd.leq[a][b] = (c.leq(elems[a].first, elems[b].first) &&
                            fan.leq(elems[b].second, elems[a].second))
                               ? 1
                               : 0;
    }
    return pd;
}

// ---------------------------------------------------------------------------
// Unimodularity of the homogenization cone C(p) (closure of the cone over
// p x {1}); strong additionally requires ray heights in {0,1}.
// ---------------------------------------------------------------------------
inline bool check_unimodular(const Polyhedron& p, bool strong) {
    if (p.vertices.empty()) throw TroppatchError("NoVertex", "check_unimodular");
    if (!p.lineality.empty()) return false;
    IMat gens = homogenized_generators(p);
    for (auto& g : gens) g = primitive(g);
    // keep only extreme generators of C(p)
    IMat extreme;
    for (size_t i = 0; i < gens.size(); ++i) {
        Polyhedron rest;
        rest.ambient = p.ambient + 1;
        rest.vertices = {QVec(p.ambient + 1, Rat(0))};
        for (size_t j = 0; j < gens.size(); ++j)
            if (j != i) rest.rays.push_back(gens[j]);
        if (!rest.recession_contains(gens[i])) extreme.push_back(gens[i]);
    }
    dedupe(extreme);
    int d = qrank(extreme);
    if (d != static_cast<int>(extreme.size())) return false; // not simplicial
    if (!(minors_gcd(extreme) == BigInt(1))) return false;
    if (strong) {
        for (const auto& g : extreme)
            if (g.back() != 0 && g.back() != 1) return false;
    }
    return true;
}

inline bool cell_is_compact(const TropicalComplex& c, int cell_idx) {
    if (cell_idx < 0 || cell_idx >= c.size()) throw TroppatchError("UnknownCell", "cell_is_compact");
    return c.cells[cell_idx].compact;
}

// Extract the subcomplex on the given cells; they must be face-closed.
inline TropicalComplex subcomplex(const TropicalComplex& c, const std::vector<int>& ids) {
    std::vector<int> new_index(c.size(), -1);
    for (size_t k = 0; k < ids.size(); ++k) {
        if (ids[k] < 0 || ids[k] >= c.size()) throw TroppatchError("UnknownCell", "subcomplex");
        new_index[ids[k]] = static_cast<int>(k);
    }
    TropicalComplex out;
    out.ambient = c.ambient;
    out.sigma = c.sigma;
    for (int id : ids) {
        Cell cell = c.cells[id];
        std::vector<int> fs;
        for (int f : c.face_list(id)) {
            if (new_index[f] < 0)
                throw TroppatchError("NotSubcomplex", "cell " + c.cells[id].id + " misses face " + c.cells[f].id);
            fs.push_back(new_index[f]);
        }
        cell.faces = std::move(fs);
        out.cells.push_back(std::move(cell));
    }
    out.finalize();
    return out;
}

inline void require_strongly_unimodular(const TropicalComplex& c) {
    bool has_vertex_cell = false;
    for (const auto& cell : c.cells) {
        if (cell.dim == 0) has_vertex_cell = true;
        if (!check_unimodular(cell.poly, true))
            throw TroppatchError("NotStronglyUnimodular", "cell " + cell.id);
    }
    if (!has_vertex_cell)
        throw TroppatchError("NotStronglyUnimodular", "complex has no 0-dimensional cell");
}

// Saturated-lattice data of the recession cone span of a cell.
inline LatticeSplit recession_split(const TropicalComplex& c, int cell_idx) {
    const Cell& cell = c.cells[cell_idx];
    IMat gens = cell.poly.rays;
    for (const auto& l : cell.poly.lineality) gens.push_back(l);
    return lattice_split(gens, cell.poly.ambient);
}

} // namespace troppatch
