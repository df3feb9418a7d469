#pragma once

#include <troppatch/complex.hpp>

#include <string>
#include <vector>

namespace th {

using namespace troppatch;

inline Polyhedron mk_poly(int ambient, std::vector<std::vector<long long>> verts,
                          IMat rays = {}, IMat lin = {}) {
    Polyhedron p;
    p.ambient = ambient;
    for (auto& v : verts) p.vertices.push_back(qvec_from_ints(v));
    p.rays = std::move(rays);
    p.lineality = std::move(lin);
    return p;
}

inline Cell mk_cell(std::string id, Polyhedron poly, std::vector<int> faces = {}) {
    Cell c;
    c.id = std::move(id);
    c.poly = std::move(poly);
    c.faces = std::move(faces);
    return c;
}

// The tropical line in R^2: vertex at the origin, rays (-1,0), (0,-1), (1,1).
inline TropicalComplex tropical_line() {
    TropicalComplex c;
    c.ambient = 2;
    c.cells.push_back(mk_cell("v", mk_poly(2, {{0, 0}})));
    c.cells.push_back(mk_cell("r0", mk_poly(2, {{0, 0}}, {{-1, 0}}), {0}));
    c.cells.push_back(mk_cell("r1", mk_poly(2, {{0, 0}}, {{0, -1}}), {0}));
    c.cells.push_back(mk_cell("r2", mk_poly(2, {{0, 0}}, {{1, 1}}), {0}));
    c.finalize();
    return c;
}

// Half line [0, inf) in R^1.
inline TropicalComplex half_line() {
    TropicalComplex c;
    c.ambient = 1;
    c.cells.push_back(mk_cell("v", mk_poly(1, {{0}})));
    c.cells.push_back(mk_cell("e", mk_poly(1, {{0}}, {{1}}), {0}));
    c.finalize();
    return c;
}

inline Fan half_line_fan() {
    Fan f;
    f.ambient = 1;
    f.cones.push_back({"0", {}, {}});
    f.cones.push_back({"pos", {{1}}, {}});
    f.finalize();
    return f;
}

} // namespace th
