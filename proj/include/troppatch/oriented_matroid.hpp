#pragma once

#include "matroid.hpp"

#include <set>
#include <string>
#include <vector>

namespace troppatch {

// Sign vector over {+1, -1, 0}, indexed by the ground set.
using SignVector = std::vector<int8_t>;

inline std::string sign_vector_string(const SignVector& s) {
    std::string out;
    for (int8_t v : s) out += (v > 0 ? '+' : (v < 0 ? '-' : '0'));
    return out;
}

inline SignVector sign_vector_parse(const std::string& s) {
    SignVector out;
    for (char c : s) {
        if (c == '+') out.push_back(1);
        else if (c == '-') out.push_back(-1);
        else if (c == '0') out.push_back(0);
        else throw TroppatchError("ParseError", "bad sign character");
    }
    return out;
}

inline uint32_t support_mask(const SignVector& s) {
    uint32_t m = 0;
    for (size_t i = 0; i < s.size(); ++i)
        if (s[i] != 0) m |= (1u << i);
    return m;
}

inline SignVector compose(const SignVector& x, const SignVector& y) {
    SignVector z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = x[i] != 0 ? x[i] : y[i];
    return z;
}

inline SignVector negate(const SignVector& x) {
    SignVector z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = -x[i];
    return z;
}

// Z conformal below T: Z_i in {0, T_i} for all i.
inline bool conformal_leq(const SignVector& z, const SignVector& t) {
    for (size_t i = 0; i < z.size(); ++i)
        if (z[i] != 0 && z[i] != t[i]) return false;
    return true;
}

// Oriented matroid stored extensionally as its covector set.
struct OrientedMatroid {
    int ground = 0;
    std::vector<SignVector> covectors; // sorted

    bool has(const SignVector& s) const {
        return std::binary_search(covectors.begin(), covectors.end(), s);
    }

    void normalize() {
        std::sort(covectors.begin(), covectors.end());
        covectors.erase(std::unique(covectors.begin(), covectors.end()), covectors.end());
    }

    uint32_t loop_mask() const {
        uint32_t loops = (ground == 32) ? 0xffffffffu : ((1u << ground) - 1);
        for (const auto& z : covectors) loops &= ~support_mask(z);
        return loops;
    }
};

// Axioms checked exhaustively: zero, symmetry, composition, elimination.
// Extracts the underlying matroid from the zero-set lattice on success.
struct OMValidation {
    ValidationReport report;
    Matroid underlying; // valid only when report.ok
};

inline Matroid matroid_from_flats(int ground, std::vector<uint32_t> flats) {
    std::sort(flats.begin(), flats.end());
    flats.erase(std::unique(flats.begin(), flats.end()), flats.end());
    uint32_t full = (ground == 32) ? 0xffffffffu : ((1u << ground) - 1);
    // smallest flat containing a = intersection of all flats containing a
    auto closure = [&](uint32_t a) {
        uint32_t inter = full;
        for (uint32_t f : flats)
            if ((a & f) == a) inter &= f;
        return inter;
    };
    // heights in the flat lattice give the rank function
    std::vector<int> height(flats.size(), 0);
    for (size_t rounds = 0; rounds < flats.size(); ++rounds) {
        bool changed = false;
        for (size_t i = 0; i < flats.size(); ++i)
            for (size_t j = 0; j < flats.size(); ++j) {
                if (i == j) continue;
                if ((flats[i] & flats[j]) == flats[i] && flats[i] != flats[j])
                    if (height[j] < height[i] + 1) { height[j] = height[i] + 1; changed = true; }
            }
        if (!changed) break;
    }
    auto rank_of_flat = [&](uint32_t f) {
        for (size_t i = 0; i < flats.size(); ++i)
            if (flats[i] == f) return height[i];
        throw TroppatchError("Internal", "flat missing");
    };
    int r = rank_of_flat(full);
    std::vector<std::vector<int>> bases;
    for (const auto& sub : subsets_lex(ground, r)) {
        uint32_t mask = 0;
        for (int e : sub) mask |= (1u << e);
        // independent iff adding each element grows the closure
        bool indep = true;
        uint32_t acc = 0;
        for (int e : sub) {
            if (closure(acc | (1u << e)) == closure(acc)) { indep = false; break; }
            acc |= (1u << e);
        }
        if (indep && rank_of_flat(closure(mask)) == r) bases.push_back(sub);
    }
    if (bases.empty()) throw TroppatchError("NotAMatroid", "no bases derived from flats");
    return Matroid::from_bases(ground, bases);
}

inline OMValidation validate_covectors(const OrientedMatroid& om) {
    OMValidation out;
    auto& rep = out.report;
    SignVector zero(om.ground, 0);
    if (!om.has(zero)) rep.fail("MissingZero: zero covector absent");
    for (const auto& z : om.covectors)
        if (!om.has(negate(z))) rep.fail("NotSymmetric: missing -" + sign_vector_string(z));
    for (const auto& x : om.covectors)
        for (const auto& y : om.covectors)
            if (!om.has(compose(x, y)))
                rep.fail("NotComposed: " + sign_vector_string(x) + " o " + sign_vector_string(y));
    // elimination
    for (const auto& x : om.covectors) {
        for (const auto& y : om.covectors) {
            for (int e = 0; e < om.ground; ++e) {
                if (!(x[e] != 0 && y[e] == -x[e])) continue;
                bool found = false;
                for (const auto& z : om.covectors) {
                    if (z[e] != 0) continue;
                    bool ok = true;
                    for (int f = 0; f < om.ground && ok; ++f) {
                        bool separating = (x[f] != 0 && y[f] == -x[f]);
                        if (!separating && z[f] != (x[f] != 0 ? x[f] : y[f])) ok = false;
                    }
                    if (ok) { found = true; break; }
                }
                if (!found)
                    rep.fail("NoElimination: " + sign_vector_string(x) + ", " + sign_vector_string(y) +
                             " at " + std::to_string(e));
            }
        }
    }
    if (!rep.ok) return out;
    uint32_t full = (om.ground == 32) ? 0xffffffffu : ((1u << om.ground) - 1);
    std::vector<uint32_t> flats;
    for (const auto& z : om.covectors) flats.push_back(full & ~support_mask(z));
    try {
        out.underlying = matroid_from_flats(om.ground, flats);
    } catch (const TroppatchError& e) {
        rep.fail(std::string("UnderlyingMatroid: ") + e.what());
    }
    return out;
}

// Covectors of the central hyperplane arrangement with normals = rows of a:
// all sign vectors (sign(a_i . x))_i realized by some x, decided exactly.
inline OrientedMatroid covectors_from_realization(const std::vector<QVec>& rows, int cols) {
    OrientedMatroid om;
    om.ground = static_cast<int>(rows.size());
    int n = om.ground;
    if (n > 16) throw TroppatchError("BadDimension", "too many rows for covector enumeration");
    std::vector<int8_t> signs(n, 0);
    std::vector<SignVector> found;
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            found.push_back(SignVector(signs.begin(), signs.end()));
            return;
        }
        for (int8_t s : {int8_t(0), int8_t(1), int8_t(-1)}) {
            signs[i] = s;
            // prune: partial system must stay feasible
            std::vector<LinCon> cons;
            for (int j = 0; j <= i; ++j) {
                LinCon c;
                c.coef = rows[j];
                c.rhs = Rat(0);
                if (signs[j] == 0) c.rel = Rel::EQ;
                else {
                    c.rel = Rel::GT;
                    if (signs[j] < 0)
                        for (auto& v : c.coef) v = -v;
                }
                cons.push_back(std::move(c));
            }
            if (FourierMotzkin::feasible(cons, cols)) rec(i + 1);
        }
        signs[i] = 0;
    };
    rec(0);
    om.covectors = std::move(found);
    om.normalize();
    return om;
}

inline std::vector<SignVector> topes(const OrientedMatroid& om) {
    uint32_t nonloops = ((om.ground == 32) ? 0xffffffffu : ((1u << om.ground) - 1)) & ~om.loop_mask();
    std::vector<SignVector> out;
    for (const auto& z : om.covectors)
        if (support_mask(z) == nonloops) out.push_back(z);
    // rank 0 on a nonempty ground set has no topes; the empty ground keeps its empty tope
    if (nonloops == 0 && om.ground > 0) out.clear();
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Restriction-to-A covectors (deletion of the complement).
inline std::vector<SignVector> restricted_covectors(const OrientedMatroid& om, uint32_t a,
                                                    uint32_t require_zero) {
    std::vector<SignVector> out;
    for (const auto& z : om.covectors) {
        bool ok = true;
        for (int i = 0; i < om.ground && ok; ++i)
            if (((require_zero >> i) & 1u) && z[i] != 0) ok = false;
        if (!ok) continue;
        SignVector r;
        for (int i = 0; i < om.ground; ++i)
            if ((a >> i) & 1u) r.push_back(z[i]);
        out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Phase-space member for the Bergman cone of a complete flag: topes of the
// direct sum of the minors M|F_j / F_{j-1}, written as epsilon vectors in
// (Z/2)^E via T = (-1)^epsilon, then canonicalized as an affine subspace.
inline Z2AffineSubspace phase_from_flag(const OrientedMatroid& om, const Matroid& underlying,
                                        const std::vector<uint32_t>& flag) {
    // flag: proper flats F_1 < ... < F_{k-1} plus E; ranks must step by one
    std::vector<uint32_t> chain = flag;
    if (chain.empty() || chain.back() != underlying.full_mask())
        throw TroppatchError("FlagNotMaximal", "flag must end at the full ground set");
    uint32_t prev = 0;
    int expected_rank = 1;
    for (uint32_t f : chain) {
        if ((prev & f) != prev || prev == f)
            throw TroppatchError("FlagNotMaximal", "flag not strictly increasing");
        if (underlying.closure(f) != f)
            throw TroppatchError("FlagNotMaximal", "flag member is not a flat");
        if (underlying.rk(f) != expected_rank)
            throw TroppatchError("FlagNotMaximal", "flag ranks must increase by one");
        prev = f;
        ++expected_rank;
    }
    if (expected_rank != underlying.rank + 1)
        throw TroppatchError("FlagNotMaximal", "flag does not reach full rank");

    // per-part tope sets
    std::vector<std::vector<int>> part_elems;
    std::vector<std::vector<SignVector>> part_topes;
    prev = 0;
    for (uint32_t f : chain) {
        uint32_t part = f & ~prev;
        std::vector<int> elems;
        for (int i = 0; i < om.ground; ++i)
            if ((part >> i) & 1u) elems.push_back(i);
        auto minors = restricted_covectors(om, part, prev);
        // topes of the minor: full support
        std::vector<SignVector> tp;
        for (const auto& z : minors) {
            bool full_support = true;
            for (int8_t v : z) full_support &= (v != 0);
            if (full_support) tp.push_back(z);
        }
        if (tp.empty()) throw TroppatchError("TopesNotAffine", "a flag minor has no topes");
        part_elems.push_back(std::move(elems));
        part_topes.push_back(std::move(tp));
        prev = f;
    }
    // product of tope sets -> epsilon points in (Z/2)^ground
    std::vector<uint64_t> points;
    std::vector<size_t> pick(part_topes.size(), 0);
    while (true) {
        uint64_t eps = 0;
        for (size_t j = 0; j < part_topes.size(); ++j) {
            const auto& t = part_topes[j][pick[j]];
            for (size_t k = 0; k < part_elems[j].size(); ++k)
                if (t[k] < 0) eps |= (1ull << part_elems[j][k]);
        }
        points.push_back(eps);
        size_t j = 0;
        while (j < pick.size()) {
            if (++pick[j] < part_topes[j].size()) break;
            pick[j] = 0;
            ++j;
        }
        if (j == pick.size()) break;
    }
    try {
        return Z2AffineSubspace::from_points(om.ground, points);
    } catch (const TroppatchError&) {
        throw TroppatchError("TopesNotAffine", "flag tope set is not an affine subspace");
    }
}

// Las Vergnas lattice: flats phi(Z) = complement of supp(Z) over covectors
// conformally below the tope, ordered by inclusion.
inline FinitePoset las_vergnas_lattice(const OrientedMatroid& om, const SignVector& tope) {
    auto tp = topes(om);
    if (!std::binary_search(tp.begin(), tp.end(), tope))
        throw TroppatchError("NotATope", sign_vector_string(tope));
    uint32_t full = (om.ground == 32) ? 0xffffffffu : ((1u << om.ground) - 1);
    std::vector<uint32_t> flats;
    for (const auto& z : om.covectors)
        if (conformal_leq(z, tope)) flats.push_back(full & ~support_mask(z));
    std::sort(flats.begin(), flats.end());
    flats.erase(std::unique(flats.begin(), flats.end()), flats.end());
    int m = static_cast<int>(flats.size());
    std::vector<std::string> labels;
    std::vector<std::vector<uint8_t>> leq(m, std::vector<uint8_t>(m, 0));
    for (int i = 0; i < m; ++i) {
        labels.push_back(FlatsLattice::mask_label(flats[i]));
        for (int j = 0; j < m; ++j)
            leq[i][j] = ((flats[i] & flats[j]) == flats[i]) ? 1 : 0;
    }
    return FinitePoset::from_leq(std::move(labels), std::move(leq));
}

// Proper part (strictly between bottom and top) of a bounded poset.
inline FinitePoset proper_part(const FinitePoset& p) {
    int bottom = -1, top = -1;
    for (int i = 0; i < p.size(); ++i) {
        bool is_bottom = true, is_top = true;
        for (int j = 0; j < p.size(); ++j) {
            if (!p.leq(i, j)) is_bottom = false;
            if (!p.leq(j, i)) is_top = false;
        }
        if (is_bottom) bottom = i;
        if (is_top) top = i;
    }
    std::vector<int> keep;
    for (int i = 0; i < p.size(); ++i)
        if (i != bottom && i != top) keep.push_back(i);
    std::vector<std::string> labels;
    std::vector<std::vector<uint8_t>> leq(keep.size(), std::vector<uint8_t>(keep.size(), 0));
    for (size_t a = 0; a < keep.size(); ++a) {
        labels.push_back(p.labels[keep[a]]);
        for (size_t b = 0; b < keep.size(); ++b) leq[a][b] = p.leq(keep[a], keep[b]) ? 1 : 0;
    }
    return FinitePoset::from_leq(std::move(labels), std::move(leq));
}

} // namespace troppatch
