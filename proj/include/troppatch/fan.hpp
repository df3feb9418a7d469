#pragma once

#include "polyhedron.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace troppatch {

inline void dedupe(IMat& vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
    std::vector<std::string> warnings;

    void fail(const std::string& msg) {
        ok = false;
        violations.push_back(msg);
    }
    void warn(const std::string& msg) { warnings.push_back(msg); }
};

// Polyhedral cone with apex 0, V-representation.
struct FanCone {
    std::string id;
    IMat rays;      // primitive
    IMat lineality; // primitive

    Polyhedron poly(int ambient) const {
        Polyhedron p;
        p.ambient = ambient;
        p.vertices = {QVec(ambient, Rat(0))};
        p.rays = rays;
        p.lineality = lineality;
        return p;
    }

    int dim(int ambient) const { return poly(ambient).dim(); }
    bool is_zero() const { return rays.empty() && lineality.empty(); }
};

// A fan, always carrying its zero cone. Face relations are recomputed from
// geometry (semantic containment), not trusted from input.
class Fan {
public:
    int ambient = 0;
    std::vector<FanCone> cones;

    static Fan trivial(int ambient) {
        Fan f;
        f.ambient = ambient;
        f.cones.push_back({"0", {}, {}});
        f.finalize();
        return f;
    }

    // Fan of tropical projective n-space, in the coordinates of R^n:
    // rays -e_1, ..., -e_n and (1,...,1); cones over proper subsets.
    static Fan tropical_projective(int n) {
        Fan f;
        f.ambient = n;
        IMat gens;
        for (int i = 0; i < n; ++i) {
            IVec v(n, 0);
            v[i] = -1;
            gens.push_back(v);
        }
        gens.push_back(IVec(n, 1));
        for (int size = 0; size <= n; ++size) {
            for (const auto& sub : subsets_lex(n + 1, size)) {
                FanCone c;
                c.id = "s";
                for (int i : sub) c.id += "_" + std::to_string(i);
                for (int i : sub) c.rays.push_back(gens[i]);
                f.cones.push_back(std::move(c));
            }
        }
        f.finalize();
        return f;
    }

    // Permutohedral fan for ground set {0..e-1}, in the quotient coordinates
    // R^{e-1} with projection x -> (x_1 - x_0, ..., x_{e-1} - x_0).
    // Cones correspond to chains of nonempty proper subsets of the ground set.
    static Fan permutohedral(int e) {
        int n = e - 1;
        Fan f;
        f.ambient = n;
        auto vA = [&](uint64_t mask) {
            IVec full(e, 0);
            for (int i = 0; i < e; ++i)
                if ((mask >> i) & 1ull) full[i] = -1;
            IVec q(n);
            for (int i = 1; i < e; ++i) q[i - 1] = full[i] - full[0];
            return q;
        };
        std::vector<uint64_t> proper;
        for (uint64_t m = 1; m < (1ull << e) - 1; ++m) proper.push_back(m);
        // enumerate chains of proper subsets under strict inclusion
        std::vector<std::vector<uint64_t>> all_chains;
        std::vector<uint64_t> cur;
        std::function<void(size_t)> rec = [&](size_t start) {
            all_chains.push_back(cur);
            for (size_t i = start; i < proper.size(); ++i) {
                uint64_t m = proper[i];
                if (!cur.empty()) {
                    uint64_t prev = cur.back();
                    if ((prev & m) != prev || prev == m) continue; // need prev strictly contained in m
                }
                cur.push_back(m);
                rec(i + 1);
                cur.pop_back();
            }
        };
        rec(0);
        for (const auto& ch : all_chains) {
            FanCone c;
            c.id = "p";
            for (uint64_t m : ch) c.id += "_" + std::to_string(m);
            for (uint64_t m : ch) c.rays.push_back(primitive(vA(m)));
            f.cones.push_back(std::move(c));
        }
        f.finalize();
        return f;
    }

    int size() const { return static_cast<int>(cones.size()); }
    int zero_cone() const { return zero_; }
    int cone_dim(int i) const { return dims_[i]; }
    bool leq(int i, int j) const { return leq_[i][j]; }
    const std::vector<int>& subcones(int i) const { return subs_[i]; }
    bool pointed() const {
        for (const auto& c : cones)
            if (!c.lineality.empty()) return false;
        return true;
    }

    int find_cone(const Polyhedron& p) const {
        for (int i = 0; i < size(); ++i)
            if (cones[i].poly(ambient).same_set(p)) return i;
        return -1;
    }

    // Saturated-lattice data for the span of cone i (precomputed in finalize).
    const LatticeSplit& split(int i) const { return splits_[i]; }

    // Integer projection matrix Z(rho) -> Z(eta) for rho <= eta.
    IMat stratum_projection(int rho, int eta) const {
        const auto& sr = split(rho);
        const auto& se = split(eta);
        // lift from Z(rho)-coordinates via complement basis, then project
        IMat lift = imat_transpose(sr.complement_basis); // n x (n - dim rho)
        return imat_product(se.proj, lift);
    }

    // Derived face structure. Called after cones are set up.
    void finalize() {
        int m = size();
        dims_.assign(m, 0);
        for (int i = 0; i < m; ++i) dims_[i] = cones[i].dim(ambient);
        leq_.assign(m, std::vector<uint8_t>(m, 0));
        for (int i = 0; i < m; ++i) {
            Polyhedron pi = cones[i].poly(ambient);
            for (int j = 0; j < m; ++j) {
                if (dims_[i] > dims_[j]) continue;
                leq_[i][j] = cones[j].poly(ambient).contains_polyhedron(pi) ? 1 : 0;
            }
        }
        subs_.assign(m, {});
        zero_ = -1;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j)
                if (leq_[j][i]) subs_[i].push_back(j);
            if (cones[i].is_zero()) zero_ = i;
        }
        if (zero_ < 0) throw TroppatchError("NoZeroCone", "fan must contain the zero cone");
        splits_.clear();
        for (int i = 0; i < m; ++i) {
            IMat gens = cones[i].rays;
            for (const auto& l : cones[i].lineality) gens.push_back(l);
            splits_.push_back(lattice_split(gens, ambient));
        }
    }

    ValidationReport validate() const {
        ValidationReport rep;
        for (int i = 0; i < size(); ++i) {
            for (const auto& r : cones[i].rays)
                if (primitive(r) != r) rep.fail("NotPrimitive: cone " + cones[i].id);
            // geometric faces must be members
            auto faces = enumerate_faces(cones[i].poly(ambient));
            for (const auto& fp : faces) {
                bool found = false;
                for (int j = 0; j < size() && !found; ++j)
                    if (cones[j].poly(ambient).same_set(fp)) found = true;
                if (!found) rep.fail("NotFaceClosed: cone " + cones[i].id);
            }
        }
        // pairwise intersections are common faces
        for (int i = 0; i < size(); ++i) {
            for (int j = i + 1; j < size(); ++j) {
                if (!intersection_is_common_face(cones[i].poly(ambient), cones[j].poly(ambient)))
                    rep.fail("IntersectionNotFace: cones " + cones[i].id + ", " + cones[j].id);
            }
        }
        return rep;
    }

    // Star fan at cone rho, living in the complement coordinates of split(rho).
    Fan star(int rho) const {
        const auto& sp = split(rho);
        Fan st;
        st.ambient = ambient - sp.rank;
        for (int j = 0; j < size(); ++j) {
            if (!leq_[rho][j]) continue;
            FanCone c;
            c.id = cones[j].id;
            for (const auto& r : cones[j].rays) {
                IVec pr = apply_imat(sp.proj, r);
                if (!is_zero_vec(pr)) c.rays.push_back(primitive(pr));
            }
            for (const auto& l : cones[j].lineality) {
                IVec pl = apply_imat(sp.proj, l);
                if (!is_zero_vec(pl)) c.lineality.push_back(primitive(pl));
            }
            dedupe(c.rays);
            dedupe(c.lineality);
            st.cones.push_back(std::move(c));
        }
        st.finalize();
        return st;
    }

    // Exact test: cone of `p` contained in the support of this fan, assuming
    // the standing hypothesis that recession cones are unions of fan cones.
    bool supports_cone(const Polyhedron& rec_cone) const {
        for (int i = 0; i < size(); ++i)
            if (cones[i].poly(ambient).contains_polyhedron(rec_cone)) return true;
        return false;
    }

    static bool intersection_is_common_face(const Polyhedron& a, const Polyhedron& b) {
        // for cones: find common faces, locate the max one, verify coverage
        auto fa = enumerate_faces(a);
        auto fb = enumerate_faces(b);
        std::vector<Polyhedron> common;
        for (const auto& x : fa)
            for (const auto& y : fb)
                if (x.same_set(y)) { common.push_back(x); break; }
        if (common.empty()) {
            // must be disjoint apart from nothing: cones always share 0, so fail
            return false;
        }
        // maximal common face
        int best = 0;
        for (size_t i = 1; i < common.size(); ++i)
            if (common[i].dim() > common[best].dim()) best = static_cast<int>(i);
        for (size_t i = 0; i < common.size(); ++i)
            if (!common[best].contains_polyhedron(common[i])) return false;
        const Polyhedron& tau = common[best];
        // coverage: a ∩ b subset of tau, via supporting functionals on both sides
        for (const Polyhedron* side : {&a, &b}) {
            auto f = face_functional(*side, tau);
            if (!f) return false;
            const Polyhedron* other = (side == &a) ? &b : &a;
            if (meets_open_halfspace(*side, *other, *f)) return false;
        }
        return true;
    }

    // Is there a point in p1 ∩ p2 with lambda . x > c?
    static bool meets_open_halfspace(const Polyhedron& p1, const Polyhedron& p2, const FaceFunctional& f) {
        int n = p1.ambient;
        auto params = [&](const Polyhedron& p, int offset, int vars, std::vector<LinCon>& cons) {
            int nv = static_cast<int>(p.vertices.size());
            int nr = static_cast<int>(p.rays.size());
            int nl = static_cast<int>(p.lineality.size());
            for (int i = 0; i < nv + nr; ++i) {
                LinCon c;
                c.coef.assign(vars, Rat(0));
                c.coef[offset + i] = Rat(1);
                c.rel = Rel::GE;
                cons.push_back(std::move(c));
            }
            if (nv > 0) {
                LinCon s;
                s.coef.assign(vars, Rat(0));
                for (int i = 0; i < nv; ++i) s.coef[offset + i] = Rat(1);
                s.rhs = Rat(1);
                s.rel = Rel::EQ;
                cons.push_back(std::move(s));
            }
            return nv + nr + 2 * nl;
        };
        int w1 = static_cast<int>(p1.vertices.size() + p1.rays.size() + 2 * p1.lineality.size());
        int w2 = static_cast<int>(p2.vertices.size() + p2.rays.size() + 2 * p2.lineality.size());
        int vars = w1 + w2;
        std::vector<LinCon> cons;
        params(p1, 0, vars, cons);
        params(p2, w1, vars, cons);
        auto coord_expr = [&](const Polyhedron& p, int offset, int k, QVec& coef, Rat scale) {
            int nv = static_cast<int>(p.vertices.size());
            int nr = static_cast<int>(p.rays.size());
            int nl = static_cast<int>(p.lineality.size());
            for (int i = 0; i < nv; ++i) coef[offset + i] = coef[offset + i] + scale * p.vertices[i][k];
            for (int j = 0; j < nr; ++j) coef[offset + nv + j] = coef[offset + nv + j] + scale * Rat(p.rays[j][k]);
            for (int j = 0; j < nl; ++j) {
                coef[offset + nv + nr + 2 * j] = coef[offset + nv + nr + 2 * j] + scale * Rat(p.lineality[j][k]);
                coef[offset + nv + nr + 2 * j + 1] = coef[offset + nv + nr + 2 * j + 1] - scale * Rat(p.lineality[j][k]);
            }
        };
        // x(p1 params) == x(p2 params)
        for (int k = 0; k < n; ++k) {
            LinCon e;
            e.coef.assign(vars, Rat(0));
            coord_expr(p1, 0, k, e.coef, Rat(1));
            coord_expr(p2, w1, k, e.coef, Rat(-1));
            e.rhs = Rat(0);
            e.rel = Rel::EQ;
            cons.push_back(std::move(e));
        }
        // lambda . x > c on the p1 side
        LinCon strict;
        strict.coef.assign(vars, Rat(0));
        for (int k = 0; k < n; ++k) coord_expr(p1, 0, k, strict.coef, f.lambda[k]);
        strict.rhs = f.c;
        strict.rel = Rel::GT;
        cons.push_back(std::move(strict));
        return FourierMotzkin::feasible(cons, vars);
    }

private:
    std::vector<int> dims_;
    std::vector<std::vector<uint8_t>> leq_;
    std::vector<std::vector<int>> subs_;
    int zero_ = -1;
    std::vector<LatticeSplit> splits_;
};

} // namespace troppatch
