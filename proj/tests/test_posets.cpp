#include <doctest.h>

#include <troppatch/poset.hpp>

#include "helpers.hpp"

using namespace troppatch;
using namespace th;

namespace {

FinitePoset chain(int k) {
    std::vector<std::string> labels;
    std::vector<std::vector<uint8_t>> leq(k, std::vector<uint8_t>(k, 0));
    for (int i = 0; i < k; ++i) {
        labels.push_back("c" + std::to_string(i));
        for (int j = i; j < k; ++j) leq[i][j] = 1;
    }
    return FinitePoset::from_leq(labels, leq);
}

FinitePoset antichain(int k) {
    std::vector<std::string> labels;
    std::vector<std::vector<uint8_t>> leq(k, std::vector<uint8_t>(k, 0));
    for (int i = 0; i < k; ++i) {
        labels.push_back("a" + std::to_string(i));
        leq[i][i] = 1;
    }
    return FinitePoset::from_leq(labels, leq);
}

} // namespace

TEST_CASE("interval posets") {
    auto p = interval_poset(chain(2));
    CHECK(p.size() == 3); // [a,a],[b,b],[a,b]

    auto q = interval_poset(antichain(4));
    CHECK(q.size() == 4);

    // face poset of a segment: 2 vertices + 1 edge -> 5 intervals
    TropicalComplex seg;
    seg.ambient = 1;
    seg.cells.push_back(mk_cell("p", mk_poly(1, {{0}})));
    seg.cells.push_back(mk_cell("q", mk_poly(1, {{1}})));
    seg.cells.push_back(mk_cell("e", mk_poly(1, {{0}, {1}}), {0, 1}));
    seg.finalize();
    auto ip = interval_poset(face_poset(seg));
    CHECK(ip.size() == 5);

    // Int(P^op) equals Int(P)
    auto fp = face_poset(seg);
    auto iso = poset_isomorphic(interval_poset(fp.opposite()), ip);
    CHECK(iso.isomorphic);
}

TEST_CASE("order complexes") {
    auto k3 = order_complex(chain(3));
    // chains of a 3-chain: all nonempty subsets = a 2-simplex
    CHECK(k3.simplices.size() == 7);
    CHECK(k3.dim() == 2);

    auto two = order_complex(antichain(2));
    CHECK(two.simplices.size() == 2);
    CHECK(two.dim() == 0);

    // chain-count DP oracle vs order complex sizes
    auto p = interval_poset(chain(3));
    auto counts = p.chain_counts();
    auto oc = order_complex(p);
    std::vector<long long> by_size;
    for (const auto& s : oc.simplices) {
        if (by_size.size() < s.size()) by_size.resize(s.size(), 0);
        by_size[s.size() - 1]++;
    }
    CHECK(by_size == counts);
}

TEST_CASE("simplicial homology over GF(2)") {
    // hollow triangle = circle: betti [1,1]
    SimplicialComplex circle;
    circle.n_vertices = 3;
    circle.simplices = {{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}};
    CHECK(simplicial_betti_gf2(circle) == std::vector<int>{1, 1});

    // two points
    SimplicialComplex pts;
    pts.n_vertices = 2;
    pts.simplices = {{0}, {1}};
    CHECK(simplicial_betti_gf2(pts) == std::vector<int>{2});

    // filled triangle: contractible
    SimplicialComplex disc = circle;
    disc.simplices.push_back({0, 1, 2});
    CHECK(simplicial_betti_gf2(disc) == std::vector<int>{1, 0, 0});
}

TEST_CASE("poset isomorphism certificates and refutations") {
    auto p = chain(4);
    auto self = poset_isomorphic(p, p);
    CHECK(self.isomorphic);
    for (int i = 0; i < 4; ++i) CHECK(self.mapping[i] == i);

    auto no = poset_isomorphic(chain(3), antichain(3));
    CHECK_FALSE(no.isomorphic);
    CHECK(!no.refutation.empty());

    // symmetric: certificate inversion
    TropicalComplex seg;
    seg.ambient = 1;
    seg.cells.push_back(mk_cell("p", mk_poly(1, {{0}})));
    seg.cells.push_back(mk_cell("q", mk_poly(1, {{1}})));
    seg.cells.push_back(mk_cell("e", mk_poly(1, {{0}, {1}}), {0, 1}));
    seg.finalize();
    auto a = face_poset(seg);
    auto b = interval_poset(antichain(1)); // single point, not isomorphic
    CHECK_FALSE(poset_isomorphic(a, b).isomorphic);

    auto ab = poset_isomorphic(a, a.opposite().opposite());
    CHECK(ab.isomorphic);

    // marking must be preserved
    auto m1 = FinitePoset::from_leq({"x", "y"}, {{1, 0}, {0, 1}}, {0});
    auto m2 = FinitePoset::from_leq({"x", "y"}, {{1, 0}, {0, 1}}, {1});
    auto miso = poset_isomorphic(m1, m2);
    CHECK(miso.isomorphic);
    CHECK(miso.mapping[0] == 1);

    auto m3 = FinitePoset::from_leq({"x", "y"}, {{1, 0}, {0, 1}}, {0, 1});
    CHECK_FALSE(poset_isomorphic(m1, m3).isomorphic);
}

TEST_CASE("isomorphism is verified-transitive on a triple") {
    auto a = interval_poset(chain(3));
    auto b = a;
    auto c = a;
    auto ab = poset_isomorphic(a, b);
    auto bc = poset_isomorphic(b, c);
    auto ac = poset_isomorphic(a, c);
    REQUIRE(ab.isomorphic);
    REQUIRE(bc.isomorphic);
    REQUIRE(ac.isomorphic);
    // composing ab and bc yields an isomorphism a -> c (not necessarily ac's one)
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j)
            CHECK(a.leq(i, j) == c.leq(bc.mapping[ab.mapping[i]], bc.mapping[ab.mapping[j]]));
}
