#include <doctest.h>

#include <troppatch/json_io.hpp>
#include <troppatch/patchwork.hpp>

#include "helpers.hpp"

using namespace troppatch;
using namespace th;

namespace {

BergmanWithPhase line_with_phase() {
    auto om = covectors_from_realization(
        {qvec_from_ints({1, 0}), qvec_from_ints({0, 1}), qvec_from_ints({1, 1})}, 2);
    return bergman_fan_with_phase(om, true);
}

// fan subdivision of R^2 by the tropical line's rays: the smallest strongly
// unimodular P containing the line as a subcomplex
TropicalComplex line_envelope() {
    TropicalComplex p;
    p.ambient = 2;
    p.cells.push_back(mk_cell("o", mk_poly(2, {{0, 0}})));
    p.cells.push_back(mk_cell("f_1", mk_poly(2, {{0, 0}}, {{1, 1}}), {0}));
    p.cells.push_back(mk_cell("f_2", mk_poly(2, {{0, 0}}, {{-1, 0}}), {0}));
    p.cells.push_back(mk_cell("f_4", mk_poly(2, {{0, 0}}, {{0, -1}}), {0}));
    p.cells.push_back(mk_cell("c24", mk_poly(2, {{0, 0}}, {{-1, 0}, {0, -1}}), {0, 2, 3}));
    p.cells.push_back(mk_cell("c12", mk_poly(2, {{0, 0}}, {{1, 1}, {-1, 0}}), {0, 1, 2}));
    p.cells.push_back(mk_cell("c14", mk_poly(2, {{0, 0}}, {{1, 1}, {0, -1}}), {0, 1, 3}));
    p.finalize();
    return p;
}

} // namespace

TEST_CASE("real toric posets") {
    // complete fan of TP^1 in R^1: rays +-1
    Fan tp1;
    tp1.ambient = 1;
    tp1.cones.push_back({"0", {}, {}});
    tp1.cones.push_back({"pos", {{1}}, {}});
    tp1.cones.push_back({"neg", {{-1}}, {}});
    tp1.finalize();
    auto q = real_toric_poset(tp1);
    CHECK(q.size() == 4); // two copies of R and two boundary points

    // trivial fan in R^2: 4 incomparable strata
    auto q2 = real_toric_poset(Fan::trivial(2));
    CHECK(q2.size() == 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) CHECK_FALSE(q2.leq(i, j));

    // fan of T^1 (single ray): a lambda shape
    auto hf = th::half_line_fan();
    auto q3 = real_toric_poset(hf);
    CHECK(q3.size() == 3);
    int bottoms = 0;
    for (int i = 0; i < 3; ++i) {
        int ups = 0;
        for (int j = 0; j < 3; ++j)
            if (i != j && q3.leq(i, j)) ++ups;
        if (ups == 2) ++bottoms;
    }
    CHECK(bottoms == 1);
}

TEST_CASE("patchwork of the affine tropical line") {
    auto bw = line_with_phase();
    auto pw = build_patchwork(bw.complex, bw.phases);
    // 3 vertex-cells + 3 rays x 2 signs
    int verts = 0, edges = 0;
    for (int i = 0; i < pw.size(); ++i) {
        if (pw.cell_dim(i) == 0) ++verts;
        if (pw.cell_dim(i) == 1) ++edges;
    }
    CHECK(verts == 3);
    CHECK(edges == 6);
    CHECK(pw.euler_compact() == 3);
    CHECK(pw.euler_all() == -3);
    CHECK(check_closed_chain(pw).closed);

    // facet-cell count = facets x 2^d
    int facet_cells = 0, facets = 0;
    for (int i = 0; i < pw.size(); ++i)
        if (pw.cell_dim(i) == pw.dim) ++facet_cells;
    for (const auto& c : bw.complex.cells) facets += c.facet;
    CHECK(facet_cells == facets * 2);
}

TEST_CASE("patchwork of the compactified line is a hexagonal circle") {
    auto bw = line_with_phase();
    auto cc = compactify(bw.complex, Fan::tropical_projective(2));
    auto pw = build_patchwork(cc, bw.phases);
    // 3 vertex-cells + 6 edge-cells + 3 boundary cells (the two real branches
    // of each ray share their point at infinity)
    CHECK(pw.size() == 12);
    CHECK(pw.euler_all() == 0);
    CHECK(pw.euler_compact() == 0);
    CHECK(check_closed_chain(pw).closed);
    // every 0-cell lies in exactly two edges: a circle
    for (int i = 0; i < pw.size(); ++i) {
        if (pw.cell_dim(i) != 0) continue;
        int up = 0;
        for (int j = 0; j < pw.size(); ++j)
            if (j != i && pw.cell_dim(j) == 1 && pw.leq[i][j]) ++up;
        CHECK(up == 2);
    }
}

TEST_CASE("closedness fails exactly at the broken face for corrupted phases") {
    auto bw = line_with_phase();
    RealPhaseStructure broken = bw.phases;
    auto& h = broken.facet_phases.begin()->second;
    uint64_t shift = 1;
    while (h.direction_space_contains(shift)) shift <<= 1;
    h = Z2AffineSubspace(h.ambient_dim(), h.base_point() ^ shift, h.direction_basis());
    CHECK_FALSE(validate_phase(bw.complex, broken).ok);
    auto pw = build_patchwork(bw.complex, broken, false);
    auto res = check_closed_chain(pw);
    CHECK_FALSE(res.closed);
    CHECK(res.counterexample.find("o(") == 0); // the vertex cell breaks

    // empty complex edge case: a single point with a point phase is closed
    TropicalComplex pt;
    pt.ambient = 1;
    pt.cells.push_back(mk_cell("a", mk_poly(1, {{0}})));
    pt.finalize();
    RealPhaseStructure pe;
    pe.facet_phases.emplace("a", Z2AffineSubspace(1, 0, {}));
    auto ppw = build_patchwork(pt, pe);
    CHECK(check_closed_chain(ppw).closed);
}

TEST_CASE("q posets of the line inside its fan envelope") {
    auto bw = line_with_phase();
    auto p = line_envelope();
    CHECK(validate_complex(p).ok);
    std::vector<int> x_ids = {0, 1, 2, 3}; // o and the three rays
    auto q = q_posets(p, x_ids, bw.phases);
    // vertex: 4 classes; rays: 2 each; 2-cones: 1 each
    CHECK(q.q_p.size() == 13);
    CHECK(q.q_p.marked.size() == 6); // 3 at the vertex + 1 per ray

    // marked subposet sanity: each marked ray class lies below exactly the two
    // marked vertex classes given by the phase points of that ray
    for (int a : q.q_p.marked) {
        if (q.elements[a].first == 0) continue; // the vertex itself
        int above = 0;
        for (int b : q.q_p.marked)
            if (b != a && q.q_p.leq(a, b)) ++above;
        CHECK(above == 2);
    }
}

TEST_CASE("one-dimensional P with three marked points") {
    // P: vertices -1, 0, 1; edges between and two rays
    TropicalComplex p;
    p.ambient = 1;
    p.cells.push_back(mk_cell("vm", mk_poly(1, {{-1}})));
    p.cells.push_back(mk_cell("v0", mk_poly(1, {{0}})));
    p.cells.push_back(mk_cell("vp", mk_poly(1, {{1}})));
    p.cells.push_back(mk_cell("em", mk_poly(1, {{-1}, {0}}), {0, 1}));
    p.cells.push_back(mk_cell("ep", mk_poly(1, {{0}, {1}}), {1, 2}));
    p.cells.push_back(mk_cell("rm", mk_poly(1, {{-1}}, {{-1}}), {0}));
    p.cells.push_back(mk_cell("rp", mk_poly(1, {{1}}, {{1}}), {2}));
    p.finalize();
    CHECK(validate_complex(p).ok);

    // |Q(P)| = 2 per bounded cell (5 of them) + 1 per unbounded edge (2)
    RealPhaseStructure e;
    e.facet_phases.emplace("vm", Z2AffineSubspace(1, 0, {}));
    e.facet_phases.emplace("v0", Z2AffineSubspace(1, 1, {}));
    e.facet_phases.emplace("vp", Z2AffineSubspace(1, 0, {}));
    std::vector<int> x_ids = {0, 1, 2};
    auto q = q_posets(p, x_ids, e);
    CHECK(q.q_p.size() == 12);
    CHECK(q.q_p.marked.size() == 3);

    auto fib = positive_special_fibre_poset(p, x_ids, e);
    CHECK(fib.certificate.isomorphic);
}

TEST_CASE("positive special fibre certificate for the line envelope") {
    auto bw = line_with_phase();
    auto p = line_envelope();
    std::vector<int> x_ids = {0, 1, 2, 3};
    auto fib = positive_special_fibre_poset(p, x_ids, bw.phases);
    CHECK(fib.certificate.isomorphic);
    CHECK(fib.fibre.marked.size() == 6);

    // empty marking when X is empty
    RealPhaseStructure none;
    auto fib2 = positive_special_fibre_poset(p, {}, none);
    CHECK(fib2.certificate.isomorphic);
    CHECK(fib2.fibre.marked.empty());
}

TEST_CASE("error paths: pointedness, recession containment, invalid phases") {
    // real_toric_poset rejects fans with lineality
    Fan bad;
    bad.ambient = 1;
    bad.cones.push_back({"0", {}, {}});
    bad.cones.push_back({"line", {}, {{1}}});
    bad.finalize();
    CHECK_THROWS_AS(real_toric_poset(bad), TroppatchError);

    // compactify rejects a fan missing the recession cones
    auto bw = line_with_phase();
    CHECK_THROWS_AS(compactify(bw.complex, Fan::trivial(2)), TroppatchError);

    // build_patchwork rejects invalid phases unless forced
    RealPhaseStructure broken = bw.phases;
    auto& h = broken.facet_phases.begin()->second;
    uint64_t shift = 1;
    while (h.direction_space_contains(shift)) shift <<= 1;
    h = Z2AffineSubspace(h.ambient_dim(), h.base_point() ^ shift, h.direction_basis());
    CHECK_THROWS_AS(build_patchwork(bw.complex, broken), TroppatchError);

    // q_posets rejects cell sets that are not face-closed
    auto env = line_envelope();
    std::vector<int> not_closed = {1}; // a ray without its vertex
    CHECK_THROWS_AS(q_posets(env, not_closed, bw.phases), TroppatchError);
}

TEST_CASE("q poset of the half-line subdivision") {
    // P = {0, two half-lines} in R^1: the vertex carries two sign classes,
    // each half-line one
    TropicalComplex p;
    p.ambient = 1;
    p.cells.push_back(mk_cell("v", mk_poly(1, {{0}})));
    p.cells.push_back(mk_cell("hp", mk_poly(1, {{0}}, {{1}}), {0}));
    p.cells.push_back(mk_cell("hm", mk_poly(1, {{0}}, {{-1}}), {0}));
    p.finalize();
    RealPhaseStructure e;
    e.facet_phases.emplace("v", Z2AffineSubspace(1, 0, {}));
    auto q = q_posets(p, {0}, e);
    CHECK(q.q_p.size() == 4);
    CHECK(q.q_p.marked.size() == 1);
}

TEST_CASE("real toric poset of the projective plane fan") {
    auto q = real_toric_poset(Fan::tropical_projective(2));
    // 4 classes over the open stratum, 2 per ray, 1 per maximal cone
    CHECK(q.size() == 13);
}

TEST_CASE("patchworking commutes with subdivision on facet cells") {
    auto bw = line_with_phase();
    TropicalComplex fine;
    fine.ambient = 2;
    fine.cells.push_back(mk_cell("v", mk_poly(2, {{0, 0}})));
    fine.cells.push_back(mk_cell("w", mk_poly(2, {{1, 1}})));
    fine.cells.push_back(mk_cell("r0", mk_poly(2, {{0, 0}}, {{-1, 0}}), {0}));
    fine.cells.push_back(mk_cell("r1", mk_poly(2, {{0, 0}}, {{0, -1}}), {0}));
    fine.cells.push_back(mk_cell("r2a", mk_poly(2, {{0, 0}, {1, 1}}), {0, 1}));
    fine.cells.push_back(mk_cell("r2b", mk_poly(2, {{1, 1}}, {{1, 1}}), {1}));
    fine.finalize();
    auto ef = transfer_under_subdivision(bw.complex, bw.phases, fine);
    auto pw_coarse = build_patchwork(bw.complex, bw.phases);
    auto pw_fine = build_patchwork(fine, ef);
    // every fine facet cell (sigma', eps) has a coarse facet cell (sigma, eps)
    // with sigma' inside sigma: the fine patchwork subdivides the coarse one
    for (int i = 0; i < pw_fine.size(); ++i) {
        if (pw_fine.cell_dim(i) != pw_fine.dim) continue;
        auto [cell, eps] = pw_fine.cells[i];
        int host = coarse_cell_of(bw.complex, fine.cells[cell].poly.relint_point());
        REQUIRE(host >= 0);
        bool found = false;
        for (int j = 0; j < pw_coarse.size() && !found; ++j)
            found = (pw_coarse.cells[j].first == host && pw_coarse.cells[j].second == eps);
        CHECK(found);
    }
    // the Borel-Moore Euler characteristic is subdivision invariant
    CHECK(pw_fine.euler_all() == pw_coarse.euler_all());
}

TEST_CASE("bounded cubical and special fibre posets") {
    // P = {0, two half-lines} in R^1, X = P: three cells
    TropicalComplex p;
    p.ambient = 1;
    p.cells.push_back(mk_cell("v", mk_poly(1, {{0}})));
    p.cells.push_back(mk_cell("hp", mk_poly(1, {{0}}, {{1}}), {0}));
    p.cells.push_back(mk_cell("hm", mk_poly(1, {{0}}, {{-1}}), {0}));
    p.finalize();
    auto bc = bounded_cubical_poset(p, {0, 1, 2});
    CHECK(bc.poset.size() == 3);

    auto sf = special_fibre_poset(p, {0, 1, 2});
    CHECK(sf.versus_interval.isomorphic);
    CHECK(sf.versus_bounded_cubical.isomorphic);
    CHECK(sf.fibre.size() == 5); // Int(P) of a 3-cell complex

    // X = three points in the 1-dim P of the previous test: 3 incomparable cells
    TropicalComplex p2;
    p2.ambient = 1;
    p2.cells.push_back(mk_cell("vm", mk_poly(1, {{-1}})));
    p2.cells.push_back(mk_cell("v0", mk_poly(1, {{0}})));
    p2.cells.push_back(mk_cell("vp", mk_poly(1, {{1}})));
    p2.cells.push_back(mk_cell("em", mk_poly(1, {{-1}, {0}}), {0, 1}));
    p2.cells.push_back(mk_cell("ep", mk_poly(1, {{0}, {1}}), {1, 2}));
    p2.cells.push_back(mk_cell("rm", mk_poly(1, {{-1}}, {{-1}}), {0}));
    p2.cells.push_back(mk_cell("rp", mk_poly(1, {{1}}, {{1}}), {2}));
    p2.finalize();
    auto sf2 = special_fibre_poset(p2, {0, 1, 2});
    CHECK(sf2.fibre.size() == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK_FALSE(sf2.fibre.leq(i, j));
    CHECK(sf2.versus_interval.isomorphic);
    CHECK(sf2.versus_bounded_cubical.isomorphic);

    // a square complex: the bounded-cubical poset is the interval poset
    TropicalComplex sq;
    sq.ambient = 2;
    sq.cells.push_back(mk_cell("a", mk_poly(2, {{0, 0}})));
    sq.cells.push_back(mk_cell("b", mk_poly(2, {{1, 0}})));
    sq.cells.push_back(mk_cell("c", mk_poly(2, {{0, 1}})));
    sq.cells.push_back(mk_cell("d", mk_poly(2, {{1, 1}})));
    sq.cells.push_back(mk_cell("ab", mk_poly(2, {{0, 0}, {1, 0}}), {0, 1}));
    sq.cells.push_back(mk_cell("ac", mk_poly(2, {{0, 0}, {0, 1}}), {0, 2}));
    sq.cells.push_back(mk_cell("bd", mk_poly(2, {{1, 0}, {1, 1}}), {1, 3}));
    sq.cells.push_back(mk_cell("cd", mk_poly(2, {{0, 1}, {1, 1}}), {2, 3}));
    std::vector<int> all = {0, 1, 2, 3, 4, 5, 6, 7};
    sq.cells.push_back(mk_cell("sq", mk_poly(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}), all));
    sq.finalize();
    // note: the square cell is not strongly unimodular (not a simplex), so
    // bounded_cubical_poset must reject it
    CHECK_THROWS_AS(bounded_cubical_poset(sq, all), TroppatchError);
}

TEST_CASE("segment with a phase: two signed copies, open boundary") {
    // a single bounded segment admits no valid phase structure (its endpoints
    // see one facet each); the patchwork can still be built unvalidated
    TropicalComplex seg;
    seg.ambient = 1;
    seg.cells.push_back(mk_cell("p", mk_poly(1, {{0}})));
    seg.cells.push_back(mk_cell("q", mk_poly(1, {{1}})));
    seg.cells.push_back(mk_cell("e", mk_poly(1, {{0}, {1}}), {0, 1}));
    seg.finalize();
    RealPhaseStructure e;
    e.facet_phases.emplace("e", Z2AffineSubspace(1, 0, {1}));
    CHECK_FALSE(validate_phase(seg, e).ok);
    auto pw = build_patchwork(seg, e, false);
    CHECK(pw.size() == 6); // 2 edges and 2 signed copies of each endpoint
    auto res = check_closed_chain(pw);
    CHECK_FALSE(res.closed);
}

TEST_CASE("horizontal line inside the square subdivision") {
    // X = { O, A, O_W, OA, A_E }: a straight tropical line through the square
    #ifdef TROPPATCH_CORPUS_DIR
    Workspace ws;
    ws.load(std::string(TROPPATCH_CORPUS_DIR) + "/fig3_p.json");
    const auto& p = ws.complexes.at("fig3_p");
    std::vector<int> x_ids = {p.find_cell("O"), p.find_cell("A"), p.find_cell("O_W"),
                              p.find_cell("OA"), p.find_cell("A_E")};
    std::sort(x_ids.begin(), x_ids.end());
    RealPhaseStructure e;
    for (const char* id : {"O_W", "OA", "A_E"})
        e.facet_phases.emplace(id, Z2AffineSubspace(2, 0, {0b01}));
    auto x = subcomplex(p, x_ids);
    CHECK(validate_phase(x, e).ok);
    auto q = q_posets(p, x_ids, e);
    CHECK(q.q_p.size() == 72);
    CHECK(q.q_p.marked.size() == 8); // 2+2 at the vertices, 2 on OA, 1 per ray
    auto fib = positive_special_fibre_poset(p, x_ids, e);
    CHECK(fib.certificate.isomorphic);
    #endif
}
