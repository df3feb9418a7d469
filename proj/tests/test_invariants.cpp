#include <doctest.h>

#include <troppatch/invariants.hpp>

#include "helpers.hpp"

using namespace troppatch;
using namespace th;

namespace {

BergmanWithPhase line_with_phase() {
    auto om = covectors_from_realization(
        {qvec_from_ints({1, 0}), qvec_from_ints({0, 1}), qvec_from_ints({1, 1})}, 2);
    return bergman_fan_with_phase(om, true);
}

OrientedMatroid four_planes() {
    return covectors_from_realization({qvec_from_ints({1, 0, 0}), qvec_from_ints({0, 1, 0}),
                                       qvec_from_ints({0, 0, 1}), qvec_from_ints({1, 1, 1})},
                                      3);
}

} // namespace

TEST_CASE("betti bounds on the affine tropical line") {
    auto bw = line_with_phase();
    auto rep = betti_bounds(bw.complex, bw.phases, false);
    CHECK(rep.bounds_hold);
    CHECK(rep.patchwork_betti == std::vector<int>{3, 0});
    CHECK(rep.bound[0] == 3); // 1 + 2, equality
    CHECK(rep.slack[0] == 0);

    auto bm = betti_bounds(bw.complex, bw.phases, true);
    CHECK(bm.bounds_hold);
    CHECK(bm.patchwork_betti == std::vector<int>{0, 3});
    CHECK(bm.bound[1] == 3); // 2 + 1, equality
    CHECK(bm.slack[1] == 0);
}

TEST_CASE("euler characteristics equal tropical signatures") {
    auto bw = line_with_phase();
    auto es = euler_signature(bw.complex, bw.phases);
    CHECK(es.chi == 3);
    CHECK(es.sigma == 3);
    CHECK(es.chi_bm == -3);
    CHECK(es.sigma_bm == -3);
    CHECK(es.equal);
    CHECK(es.equal_bm);
    CHECK(es.chain_level_agree);

    // compactified line: a circle
    auto cc = compactify(bw.complex, Fan::tropical_projective(2));
    auto es2 = euler_signature(cc, bw.phases);
    CHECK(es2.chi == 0);
    CHECK(es2.sigma == 0);
    CHECK(es2.equal);
    CHECK(es2.equal_bm);

    // point with full phase: two signed copies
    TropicalComplex pt;
    pt.ambient = 1;
    pt.cells.push_back(mk_cell("a", mk_poly(1, {{0}})));
    pt.finalize();
    RealPhaseStructure pe;
    pe.facet_phases.emplace("a", Z2AffineSubspace(1, 0, {}));
    RealPhaseStructure pe2 = pe;
    // a second point with the opposite sign gives chi = 2 in total; model it
    // as a two-point complex carrying one point each
    TropicalComplex two;
    two.ambient = 1;
    two.cells.push_back(mk_cell("a", mk_poly(1, {{0}})));
    two.cells.push_back(mk_cell("b", mk_poly(1, {{1}})));
    two.finalize();
    RealPhaseStructure te;
    te.facet_phases.emplace("a", Z2AffineSubspace(1, 0, {}));
    te.facet_phases.emplace("b", Z2AffineSubspace(1, 1, {}));
    auto es3 = euler_signature(two, te);
    CHECK(es3.chi == 2);
    CHECK(es3.equal);
}

TEST_CASE("hirzebruch polynomials reproduce reduced characteristic polynomials") {
    auto bw = line_with_phase();
    auto chi_y = hirzebruch(bw.complex);
    CHECK(chi_y == IPoly{-2, 1}); // y - 2
    CHECK(chi_y == reduced_characteristic_polynomial(bw.matroid));

    auto om4 = four_planes();
    auto pw = bergman_fan_with_phase(om4, true);
    auto chi_y4 = hirzebruch(pw.complex);
    CHECK(chi_y4 == IPoly{3, -3, 1}); // y^2 - 3y + 3
    CHECK(chi_y4 == reduced_characteristic_polynomial(pw.matroid));

    // evaluating at y = -1 gives the Borel-Moore signature
    auto es = euler_signature(bw.complex, bw.phases);
    CHECK(poly_eval(chi_y, -1) == es.sigma_bm);
    auto es4 = euler_signature(pw.complex, pw.phases);
    CHECK(poly_eval(chi_y4, -1) == es4.sigma_bm);
}

TEST_CASE("betti bounds hold on the plane and the compactified line") {
    auto om4 = four_planes();
    auto pw = bergman_fan_with_phase(om4, true);
    for (bool bm : {false, true}) {
        auto rep = betti_bounds(pw.complex, pw.phases, bm);
        CHECK(rep.bounds_hold);
    }
    auto bw = line_with_phase();
    auto cc = compactify(bw.complex, Fan::tropical_projective(2));
    for (bool bm : {false, true}) {
        auto rep = betti_bounds(cc, bw.phases, bm);
        CHECK(rep.bounds_hold);
        // on the compact circle the two flavors agree
        CHECK(rep.patchwork_betti == std::vector<int>{1, 1});
    }
}

TEST_CASE("betti report alternating sums are internally consistent") {
    auto bw = line_with_phase();
    for (bool bm : {false, true}) {
        auto rep = betti_bounds(bw.complex, bw.phases, bm);
        long long chi = 0, sig = 0;
        for (int q = 0; q <= rep.dim; ++q) {
            long long sgn = (q % 2 == 0) ? 1 : -1;
            chi += sgn * rep.patchwork_betti[q];
            for (int p = 0; p <= rep.dim; ++p) sig += sgn * rep.fp_homology[p][q];
        }
        CHECK(rep.euler == chi);
        CHECK(rep.signature == sig);
        CHECK(rep.euler == rep.signature); // the spectral-sequence Euler identity
    }
}

TEST_CASE("thread cap does not change results") {
    auto bw = line_with_phase();
    auto base = betti_bounds(bw.complex, bw.phases, true);
    setenv("TROPPATCH_THREADS", "4", 1);
    auto threaded = betti_bounds(bw.complex, bw.phases, true);
    unsetenv("TROPPATCH_THREADS");
    CHECK(base.fp_homology == threaded.fp_homology);
    CHECK(base.patchwork_betti == threaded.patchwork_betti);
}

TEST_CASE("manifold profile of U23: RP^1 and S^0") {
    auto om = covectors_from_realization(
        {qvec_from_ints({1, 0}), qvec_from_ints({0, 1}), qvec_from_ints({1, 1})}, 2);
    auto profile = matroid_manifold_profile(Matroid::uniform(2, 3), om);
    CHECK(profile.patchwork_betti == std::vector<int>{1, 1});
    CHECK(profile.projective_space_match);
    CHECK(profile.sphere_profile == std::vector<int>{2});
    CHECK(profile.sphere_match);
    CHECK(profile.bm_top_concentrated);

    // mismatched matroid is rejected
    CHECK_THROWS_AS(matroid_manifold_profile(Matroid::uniform(3, 4), om), TroppatchError);
}

TEST_CASE("manifold profile of U12: RP^0 is a point") {
    auto om = covectors_from_realization({qvec_from_ints({1}), qvec_from_ints({2})}, 1);
    auto profile = matroid_manifold_profile(Matroid::from_bases(2, {{0}, {1}}), om);
    CHECK(profile.patchwork_betti == std::vector<int>{1});
    CHECK(profile.projective_space_match);
}

TEST_CASE("manifold profile of U34: RP^2 and S^1" * doctest::timeout(60)) {
    auto profile = matroid_manifold_profile(Matroid::uniform(3, 4), four_planes());
    CHECK(profile.patchwork_betti == std::vector<int>{1, 1, 1});
    CHECK(profile.projective_space_match);
    CHECK(profile.sphere_profile == std::vector<int>{1, 1});
    CHECK(profile.sphere_match);
    CHECK(profile.bm_top_concentrated);
}
