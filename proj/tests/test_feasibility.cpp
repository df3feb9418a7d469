#include <doctest.h>

#include <troppatch/feasibility.hpp>
#include <troppatch/polyhedron.hpp>

using namespace troppatch;

namespace {

LinCon con(std::vector<long long> coef, long long rhs, Rel rel) {
    LinCon c;
    c.coef = qvec_from_ints(coef);
    c.rhs = Rat(rhs);
    c.rel = rel;
    return c;
}

} // namespace

TEST_CASE("fourier-motzkin feasibility with strict rows") {
    // x > 0, x < 1 feasible; witness strictly inside
    auto sol = FourierMotzkin::solve({con({1}, 0, Rel::GT), con({-1}, -1, Rel::GT)}, 1);
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] > Rat(0));
    CHECK((*sol)[0] < Rat(1));

    // x > 0, x <= 0 infeasible
    CHECK_FALSE(FourierMotzkin::feasible({con({1}, 0, Rel::GT), con({-1}, 0, Rel::GE)}, 1));

    // x >= 0, x <= 0 feasible with x = 0
    auto sol2 = FourierMotzkin::solve({con({1}, 0, Rel::GE), con({-1}, 0, Rel::GE)}, 1);
    REQUIRE(sol2.has_value());
    CHECK((*sol2)[0] == Rat(0));

    // equalities: x + y = 1, x - y = 0, x >= 0 -> x = y = 1/2
    auto sol3 = FourierMotzkin::solve(
        {con({1, 1}, 1, Rel::EQ), con({1, -1}, 0, Rel::EQ), con({1, 0}, 0, Rel::GE)}, 2);
    REQUIRE(sol3.has_value());
    CHECK((*sol3)[0] == Rat(1, 2));
    CHECK((*sol3)[1] == Rat(1, 2));

    // 2d strict cone membership: y > 0, x - y > 0, -x + 3y > 0
    auto sol4 = FourierMotzkin::solve(
        {con({0, 1}, 0, Rel::GT), con({1, -1}, 0, Rel::GT), con({-1, 3}, 0, Rel::GT)}, 2);
    REQUIRE(sol4.has_value());
    CHECK((*sol4)[1] > Rat(0));
    CHECK((*sol4)[0] > (*sol4)[1]);

    // infeasible equality system
    CHECK_FALSE(FourierMotzkin::feasible(
        {con({1, 1}, 1, Rel::EQ), con({2, 2}, 3, Rel::EQ)}, 2));
}

TEST_CASE("polyhedron membership and recession") {
    // unit triangle conv((0,0),(1,0),(0,1))
    Polyhedron t;
    t.ambient = 2;
    t.vertices = {qvec_from_ints({0, 0}), qvec_from_ints({1, 0}), qvec_from_ints({0, 1})};
    CHECK(t.dim() == 2);
    CHECK(t.contains(QVec{Rat(1, 3), Rat(1, 3)}));
    CHECK(t.contains(qvec_from_ints({1, 0})));
    CHECK_FALSE(t.contains(qvec_from_ints({1, 1})));
    CHECK(t.is_bounded());

    // half-line from (1,1) in direction (1,0)
    Polyhedron h;
    h.ambient = 2;
    h.vertices = {qvec_from_ints({1, 1})};
    h.rays = {{1, 0}};
    CHECK(h.dim() == 1);
    CHECK(h.contains(qvec_from_ints({5, 1})));
    CHECK_FALSE(h.contains(qvec_from_ints({0, 1})));
    CHECK(h.recession_contains({1, 0}));
    CHECK(h.recession_contains({0, 0}));
    CHECK_FALSE(h.recession_contains({-1, 0}));

    auto rp = h.relint_point();
    CHECK(h.contains(rp));
    CHECK(rp[0] == Rat(2));
}

TEST_CASE("face functionals and face enumeration") {
    Polyhedron square;
    square.ambient = 2;
    square.vertices = {qvec_from_ints({0, 0}), qvec_from_ints({1, 0}),
                       qvec_from_ints({0, 1}), qvec_from_ints({1, 1})};
    auto faces = enumerate_faces(square);
    // 4 vertices + 4 edges + itself
    CHECK(faces.size() == 9);

    Polyhedron edge;
    edge.ambient = 2;
    edge.vertices = {qvec_from_ints({0, 0}), qvec_from_ints({1, 0})};
    auto f = face_functional(square, edge);
    REQUIRE(f.has_value());
    // functional vanishes on the edge, positive on the rest
    Rat v00 = f->lambda[0] * Rat(0) + f->lambda[1] * Rat(0);
    Rat v11 = f->lambda[0] * Rat(1) + f->lambda[1] * Rat(1);
    CHECK(v00 == f->c);
    CHECK(v11 > f->c);

    // a diagonal is not a face
    Polyhedron diag;
    diag.ambient = 2;
    diag.vertices = {qvec_from_ints({0, 0}), qvec_from_ints({1, 1})};
    CHECK_FALSE(face_functional(square, diag).has_value());

    // wedge cone: faces are origin, two rays, itself
    Polyhedron wedge;
    wedge.ambient = 2;
    wedge.vertices = {qvec_from_ints({0, 0})};
    wedge.rays = {{1, 0}, {1, 1}};
    auto wf = enumerate_faces(wedge);
    CHECK(wf.size() == 4);
}

TEST_CASE("lattice split and saturation") {
    // span{(2,0)}: saturation is Z(1,0)
    auto ls = lattice_split({{2, 0}}, 2);
    CHECK(ls.rank == 1);
    REQUIRE(ls.tangent_basis.size() == 1);
    CHECK((ls.tangent_basis[0] == IVec{1, 0} || ls.tangent_basis[0] == IVec{-1, 0}));
    REQUIRE(ls.complement_basis.size() == 1);
    // projection kills the tangent and is unimodular on the complement
    CHECK(dot(ls.proj[0], ls.tangent_basis[0]) == 0);
    long long unit = dot(ls.proj[0], ls.complement_basis[0]);
    CHECK((unit == 1 || unit == -1));

    // span{(1,1,0),(0,1,1)} in Z^3
    auto ls2 = lattice_split({{1, 1, 0}, {0, 1, 1}}, 3);
    CHECK(ls2.rank == 2);
    CHECK(ls2.proj.size() == 1);
    CHECK(dot(ls2.proj[0], {1, 1, 0}) == 0);
    CHECK(dot(ls2.proj[0], {0, 1, 1}) == 0);
    CHECK(dot(ls2.proj[0], {1, 0, 0}) != 0);

    // minors gcd: [[2,0],[0,1]] has gcd 2; [[1,0],[0,1]] has gcd 1
    CHECK(minors_gcd({{2, 0}, {0, 1}}) == BigInt(2));
    CHECK(minors_gcd({{1, 0}, {0, 1}}) == BigInt(1));
    CHECK(minors_gcd({{0, 1}, {2, 1}}) == BigInt(2));
}
