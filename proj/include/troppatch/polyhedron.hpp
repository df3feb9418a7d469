#pragma once

#include "feasibility.hpp"

#include <optional>
#include <string>
#include <vector>

namespace troppatch {

// Rational polyhedron in V-representation: conv(vertices) + cone(rays) + span(lineality).
// The V-representation is the single source of truth; no H-representation is ever built.
struct Polyhedron {
    int ambient = 0;
    std::vector<QVec> vertices;
    std::vector<IVec> rays;      // primitive integer vectors
    std::vector<IVec> lineality; // primitive integer vectors

    int dim() const {
        std::vector<QVec> rows;
        for (size_t i = 1; i < vertices.size(); ++i) {
            QVec d(ambient);
            for (int k = 0; k < ambient; ++k) d[k] = vertices[i][k] - vertices[0][k];
            rows.push_back(std::move(d));
        }
        for (const auto& r : rays) rows.push_back(qvec_from_ints(r));
        for (const auto& l : lineality) rows.push_back(qvec_from_ints(l));
        if (rows.empty()) return vertices.empty() ? -1 : 0;
        return qrank_rat(rows);
    }

    // Integer generators of the tangent direction space (not necessarily a lattice basis).
    IMat tangent_generators() const {
        IMat gens;
        for (size_t i = 1; i < vertices.size(); ++i) {
            // scale rational differences to integer vectors
            QVec d(ambient);
            BigInt l(1);
            for (int k = 0; k < ambient; ++k) {
                d[k] = vertices[i][k] - vertices[0][k];
                l = l * d[k].den() / BigInt::gcd(l, d[k].den());
            }
            IVec v(ambient);
            for (int k = 0; k < ambient; ++k)
                v[k] = (d[k].num() * (l / d[k].den())).to_ll();
            if (!is_zero_vec(v)) gens.push_back(primitive(v));
        }
        for (const auto& r : rays) gens.push_back(r);
        for (const auto& l : lineality) gens.push_back(l);
        return gens;
    }

    bool has_vertex() const { return !vertices.empty(); }

    bool is_bounded() const { return rays.empty() && lineality.empty(); }

    QVec relint_point() const {
        QVec p(ambient, Rat(0));
        if (!vertices.empty()) {
            for (const auto& v : vertices)
                for (int k = 0; k < ambient; ++k) p[k] = p[k] + v[k];
            Rat inv = Rat(1) / Rat(static_cast<long long>(vertices.size()));
            for (int k = 0; k < ambient; ++k) p[k] = p[k] * inv;
        }
        for (const auto& r : rays)
            for (int k = 0; k < ambient; ++k) p[k] = p[k] + Rat(r[k]);
        return p;
    }

    bool contains(const QVec& x) const {
        int nv = static_cast<int>(vertices.size());
        int nr = static_cast<int>(rays.size());
        int nl = static_cast<int>(lineality.size());
        int vars = nv + nr + 2 * nl; // lineality coefficients split into +/- parts
        std::vector<LinCon> cons;
        for (int i = 0; i < nv + nr; ++i) {
            LinCon c;
            c.coef.assign(vars, Rat(0));
            c.coef[i] = Rat(1);
            c.rhs = Rat(0);
            c.rel = Rel::GE;
            cons.push_back(std::move(c));
        }
        if (nv > 0) {
            LinCon s;
            s.coef.assign(vars, Rat(0));
            for (int i = 0; i < nv; ++i) s.coef[i] = Rat(1);
            s.rhs = Rat(1);
            s.rel = Rel::EQ;
            cons.push_back(std::move(s));
        }
        for (int k = 0; k < ambient; ++k) {
            LinCon e;
            e.coef.assign(vars, Rat(0));
            for (int i = 0; i < nv; ++i) e.coef[i] = vertices[i][k];
            for (int j = 0; j < nr; ++j) e.coef[nv + j] = Rat(rays[j][k]);
            for (int j = 0; j < nl; ++j) {
                e.coef[nv + nr + 2 * j] = Rat(lineality[j][k]);
                e.coef[nv + nr + 2 * j + 1] = Rat(-lineality[j][k]);
            }
            e.rhs = x[k];
            e.rel = Rel::EQ;
            cons.push_back(std::move(e));
        }
        if (nv == 0) {
            // affine space through origin spanned by rays+lineality only if x reachable
            if (rays.empty() && lineality.empty()) return false;
        }
        return FourierMotzkin::feasible(cons, vars);
    }

    // Membership of a direction vector in the recession cone.
    bool recession_contains(const IVec& d) const {
        int nr = static_cast<int>(rays.size());
        int nl = static_cast<int>(lineality.size());
        int vars = nr + 2 * nl;
        if (vars == 0) return is_zero_vec(d);
        std::vector<LinCon> cons;
        for (int i = 0; i < nr; ++i) {
            LinCon c;
            c.coef.assign(vars, Rat(0));
            c.coef[i] = Rat(1);
            c.rel = Rel::GE;
            cons.push_back(std::move(c));
        }
        for (int k = 0; k < ambient; ++k) {
            LinCon e;
            e.coef.assign(vars, Rat(0));
            for (int j = 0; j < nr; ++j) e.coef[j] = Rat(rays[j][k]);
            for (int j = 0; j < nl; ++j) {
                e.coef[nr + 2 * j] = Rat(lineality[j][k]);
                e.coef[nr + 2 * j + 1] = Rat(-lineality[j][k]);
            }
            e.rhs = Rat(d[k]);
            e.rel = Rel::EQ;
            cons.push_back(std::move(e));
        }
        return FourierMotzkin::feasible(cons, vars);
    }

    bool contains_polyhedron(const Polyhedron& other) const {
        for (const auto& v : other.vertices)
            if (!contains(v)) return false;
        for (const auto& r : other.rays)
            if (!recession_contains(r)) return false;
        for (const auto& l : other.lineality) {
            IVec neg(l.size());
            for (size_t i = 0; i < l.size(); ++i) neg[i] = -l[i];
            if (!recession_contains(l) || !recession_contains(neg)) return false;
        }
        return true;
    }

    bool same_set(const Polyhedron& other) const {
        return contains_polyhedron(other) && other.contains_polyhedron(*this);
    }
};

// A supporting functional lambda . x >= c on sigma with equality exactly on the face.
struct FaceFunctional {
    QVec lambda;
    Rat c;
};

// Verify tau is a face of sigma; on success return a supporting functional.
// Membership of sigma's generators in tau decides the required equality set.
inline std::optional<FaceFunctional> face_functional(const Polyhedron& sigma, const Polyhedron& tau) {
    int n = sigma.ambient;
    int vars = n + 1; // (lambda, c)
    std::vector<LinCon> cons;
    auto add = [&](const QVec& coef, Rel rel) {
        LinCon c;
        c.coef = coef;
        c.rhs = Rat(0);
        c.rel = rel;
        cons.push_back(std::move(c));
    };
    for (const auto& v : sigma.vertices) {
        QVec coef(vars, Rat(0));
        for (int k = 0; k < n; ++k) coef[k] = v[k];
        coef[n] = Rat(-1);
        add(coef, tau.contains(v) ? Rel::EQ : Rel::GT);
    }
    for (const auto& r : sigma.rays) {
        QVec coef(vars, Rat(0));
        for (int k = 0; k < n; ++k) coef[k] = Rat(r[k]);
        add(coef, tau.recession_contains(r) ? Rel::EQ : Rel::GT);
    }
    for (const auto& l : sigma.lineality) {
        QVec coef(vars, Rat(0));
        for (int k = 0; k < n; ++k) coef[k] = Rat(l[k]);
        add(coef, Rel::EQ);
    }
    // tau itself must sit inside sigma
    if (!sigma.contains_polyhedron(tau)) return std::nullopt;
    auto sol = FourierMotzkin::solve(cons, vars);
    if (!sol) return std::nullopt;
    FaceFunctional f;
    f.lambda.assign(sol->begin(), sol->begin() + n);
    f.c = (*sol)[n];
    return f;
}

// All faces of a polyhedron (including itself), from exact generator subsets.
// Intended for desk-scale cells with few generators.
inline std::vector<Polyhedron> enumerate_faces(const Polyhedron& p) {
    std::vector<Polyhedron> out;
    int nv = static_cast<int>(p.vertices.size());
    int nr = static_cast<int>(p.rays.size());
    if (nv == 0) { out.push_back(p); return out; } // affine-space cell: only improper face
    int n = p.ambient;
    int vars = n + 1;
    for (uint64_t vm = 1; vm < (1ull << nv); ++vm) {
        for (uint64_t rm = 0; rm < (1ull << nr); ++rm) {
            std::vector<LinCon> cons;
            for (int i = 0; i < nv; ++i) {
                LinCon c;
                c.coef.assign(vars, Rat(0));
                for (int k = 0; k < n; ++k) c.coef[k] = p.vertices[i][k];
                c.coef[n] = Rat(-1);
                c.rel = ((vm >> i) & 1ull) ? Rel::EQ : Rel::GT;
                cons.push_back(std::move(c));
            }
            for (int j = 0; j < nr; ++j) {
                LinCon c;
                c.coef.assign(vars, Rat(0));
                for (int k = 0; k < n; ++k) c.coef[k] = Rat(p.rays[j][k]);
                c.rel = ((rm >> j) & 1ull) ? Rel::EQ : Rel::GT;
                cons.push_back(std::move(c));
            }
            for (const auto& l : p.lineality) {
                LinCon c;
                c.coef.assign(vars, Rat(0));
                for (int k = 0; k < n; ++k) c.coef[k] = Rat(l[k]);
                c.rel = Rel::EQ;
                cons.push_back(std::move(c));
            }
            if (!FourierMotzkin::feasible(cons, vars)) continue;
            Polyhedron f;
            f.ambient = n;
            for (int i = 0; i < nv; ++i)
                if ((vm >> i) & 1ull) f.vertices.push_back(p.vertices[i]);
            for (int j = 0; j < nr; ++j)
                if ((rm >> j) & 1ull) f.rays.push_back(p.rays[j]);
            f.lineality = p.lineality;
            out.push_back(std::move(f));
        }
    }
    return out;
}

} // namespace troppatch
