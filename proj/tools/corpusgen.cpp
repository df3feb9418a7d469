// Writes the bundled corpus of example inputs. Everything is constructed
// programmatically so the files stay reproducible.

#include <troppatch/json_io.hpp>

#include <fstream>
#include <iostream>

using namespace troppatch;
using nlohmann::json;

namespace {

void dump(const std::string& dir, const std::string& name, const json& j) {
    std::ofstream f(dir + "/" + name);
    f << j.dump(2) << "\n";
    std::cout << name << "\n";
}

Cell cell(std::string id, Polyhedron p, std::vector<int> faces = {}) {
    Cell c;
    c.id = std::move(id);
    c.poly = std::move(p);
    c.faces = std::move(faces);
    return c;
}

Polyhedron poly(int amb, std::vector<std::vector<long long>> verts, IMat rays = {}) {
    Polyhedron p;
    p.ambient = amb;
    for (auto& v : verts) p.vertices.push_back(qvec_from_ints(v));
    p.rays = std::move(rays);
    return p;
}

// the subdivision of R^2 by the rays of the tropical line
TropicalComplex line_envelope() {
    TropicalComplex p;
    p.ambient = 2;
    p.cells.push_back(cell("o", poly(2, {{0, 0}})));
    p.cells.push_back(cell("f_1", poly(2, {{0, 0}}, {{1, 1}}), {0}));
    p.cells.push_back(cell("f_2", poly(2, {{0, 0}}, {{-1, 0}}), {0}));
    p.cells.push_back(cell("f_4", poly(2, {{0, 0}}, {{0, -1}}), {0}));
    p.cells.push_back(cell("c24", poly(2, {{0, 0}}, {{-1, 0}, {0, -1}}), {0, 2, 3}));
    p.cells.push_back(cell("c12", poly(2, {{0, 0}}, {{1, 1}, {-1, 0}}), {0, 1, 2}));
    p.cells.push_back(cell("c14", poly(2, {{0, 0}}, {{1, 1}, {0, -1}}), {0, 1, 3}));
    p.finalize();
    return p;
}

// one-dimensional degeneration picture: vertices -1, 0, 1 with rays outward
TropicalComplex fig2_p() {
    TropicalComplex p;
    p.ambient = 1;
    p.cells.push_back(cell("vm", poly(1, {{-1}})));
    p.cells.push_back(cell("v0", poly(1, {{0}})));
    p.cells.push_back(cell("vp", poly(1, {{1}})));
    p.cells.push_back(cell("em", poly(1, {{-1}, {0}}), {0, 1}));
    p.cells.push_back(cell("ep", poly(1, {{0}, {1}}), {1, 2}));
    p.cells.push_back(cell("rm", poly(1, {{-1}}, {{-1}}), {0}));
    p.cells.push_back(cell("rp", poly(1, {{1}}, {{1}}), {2}));
    p.finalize();
    return p;
}

// strongly unimodular subdivision of R^2: unit square with a diagonal,
// surrounded by strips and quadrants
TropicalComplex fig3_p() {
    TropicalComplex c;
    c.ambient = 2;
    auto add = [&](std::string id, Polyhedron p, std::vector<std::string> faces) {
        Cell cl;
        cl.id = std::move(id);
        cl.poly = std::move(p);
        for (const auto& f : faces) {
            int idx = -1;
            for (int i = 0; i < c.size(); ++i)
                if (c.cells[i].id == f) idx = i;
            cl.faces.push_back(idx);
        }
        c.cells.push_back(std::move(cl));
    };
    add("O", poly(2, {{0, 0}}), {});
    add("A", poly(2, {{1, 0}}), {});
    add("B", poly(2, {{0, 1}}), {});
    add("P", poly(2, {{1, 1}}), {});
    add("OA", poly(2, {{0, 0}, {1, 0}}), {"O", "A"});
    add("OB", poly(2, {{0, 0}, {0, 1}}), {"O", "B"});
    add("AP", poly(2, {{1, 0}, {1, 1}}), {"A", "P"});
    add("BP", poly(2, {{0, 1}, {1, 1}}), {"B", "P"});
    add("OP", poly(2, {{0, 0}, {1, 1}}), {"O", "P"});
    add("O_W", poly(2, {{0, 0}}, {{-1, 0}}), {"O"});
    add("O_S", poly(2, {{0, 0}}, {{0, -1}}), {"O"});
    add("A_S", poly(2, {{1, 0}}, {{0, -1}}), {"A"});
    add("A_E", poly(2, {{1, 0}}, {{1, 0}}), {"A"});
    add("B_W", poly(2, {{0, 1}}, {{-1, 0}}), {"B"});
    add("B_N", poly(2, {{0, 1}}, {{0, 1}}), {"B"});
    add("P_N", poly(2, {{1, 1}}, {{0, 1}}), {"P"});
    add("P_E", poly(2, {{1, 1}}, {{1, 0}}), {"P"});
    add("T1", poly(2, {{0, 0}, {1, 0}, {1, 1}}), {"O", "A", "P", "OA", "AP", "OP"});
    add("T2", poly(2, {{0, 0}, {0, 1}, {1, 1}}), {"O", "B", "P", "OB", "BP", "OP"});
    add("S_S", poly(2, {{0, 0}, {1, 0}}, {{0, -1}}), {"O", "A", "OA", "O_S", "A_S"});
    add("S_E", poly(2, {{1, 0}, {1, 1}}, {{1, 0}}), {"A", "P", "AP", "A_E", "P_E"});
    add("S_N", poly(2, {{0, 1}, {1, 1}}, {{0, 1}}), {"B", "P", "BP", "B_N", "P_N"});
    add("S_W", poly(2, {{0, 0}, {0, 1}}, {{-1, 0}}), {"O", "B", "OB", "O_W", "B_W"});
    add("Q_SW", poly(2, {{0, 0}}, {{-1, 0}, {0, -1}}), {"O", "O_W", "O_S"});
    add("Q_SE", poly(2, {{1, 0}}, {{0, -1}, {1, 0}}), {"A", "A_S", "A_E"});
    add("Q_NE", poly(2, {{1, 1}}, {{0, 1}, {1, 0}}), {"P", "P_N", "P_E"});
    add("Q_NW", poly(2, {{0, 1}}, {{-1, 0}, {0, 1}}), {"B", "B_W", "B_N"});
    c.finalize();
    return c;
}

// Harnack-signed smooth plane conic dual to the unimodular triangulation of 2*simplex
TropicalComplex conic() {
    TropicalComplex c;
    c.ambient = 2;
    c.cells.push_back(cell("v1", poly(2, {{0, 0}})));
    c.cells.push_back(cell("v2", poly(2, {{1, 1}})));
    c.cells.push_back(cell("v3", poly(2, {{2, 1}})));
    c.cells.push_back(cell("v4", poly(2, {{1, 2}})));
    c.cells.push_back(cell("e12", poly(2, {{0, 0}, {1, 1}}), {0, 1}));
    c.cells.push_back(cell("e23", poly(2, {{1, 1}, {2, 1}}), {1, 2}));
    c.cells.push_back(cell("e24", poly(2, {{1, 1}, {1, 2}}), {1, 3}));
    c.cells.push_back(cell("r1a", poly(2, {{0, 0}}, {{0, -1}}), {0}));
    c.cells.push_back(cell("r1b", poly(2, {{0, 0}}, {{-1, 0}}), {0}));
    c.cells.push_back(cell("r3a", poly(2, {{2, 1}}, {{0, -1}}), {2}));
    c.cells.push_back(cell("r3b", poly(2, {{2, 1}}, {{1, 1}}), {2}));
    c.cells.push_back(cell("r4a", poly(2, {{1, 2}}, {{-1, 0}}), {3}));
    c.cells.push_back(cell("r4b", poly(2, {{1, 2}}, {{1, 1}}), {3}));
    c.finalize();
    return c;
}

RealPhaseStructure conic_phase() {
    RealPhaseStructure e;
    e.facet_phases.emplace("e12", Z2AffineSubspace(2, 0b01, {0b11}));
    e.facet_phases.emplace("e23", Z2AffineSubspace(2, 0b00, {0b01}));
    e.facet_phases.emplace("e24", Z2AffineSubspace(2, 0b00, {0b10}));
    e.facet_phases.emplace("r1a", Z2AffineSubspace(2, 0b01, {0b10}));
    e.facet_phases.emplace("r1b", Z2AffineSubspace(2, 0b10, {0b01}));
    e.facet_phases.emplace("r3a", Z2AffineSubspace(2, 0b01, {0b10}));
    e.facet_phases.emplace("r3b", Z2AffineSubspace(2, 0b00, {0b11}));
    e.facet_phases.emplace("r4a", Z2AffineSubspace(2, 0b10, {0b01}));
    e.facet_phases.emplace("r4b", Z2AffineSubspace(2, 0b00, {0b11}));
    return e;
}

// refinement of the conic: the ray r3b split at (3,2)
TropicalComplex conic_fine() {
    TropicalComplex c = conic();
    std::vector<std::pair<std::string, Cell>> cells;
    std::map<std::string, std::vector<std::string>> face_ids;
    for (int i = 0; i < c.size(); ++i) {
        if (c.cells[i].id == "r3b") continue;
        cells.push_back({c.cells[i].id, c.cells[i]});
        std::vector<std::string> fs;
        for (int fidx : c.cells[i].faces) fs.push_back(c.cells[fidx].id);
        face_ids[c.cells[i].id] = fs;
    }
    cells.push_back({"v5", cell("v5", poly(2, {{3, 2}}))});
    cells.push_back({"e35", cell("e35", poly(2, {{2, 1}, {3, 2}}))});
    cells.push_back({"r5", cell("r5", poly(2, {{3, 2}}, {{1, 1}}))});
    face_ids["e35"] = {"v3", "v5"};
    face_ids["r5"] = {"v5"};
    std::map<std::string, int> index;
    for (size_t k = 0; k < cells.size(); ++k) index[cells[k].first] = static_cast<int>(k);
    TropicalComplex out;
    out.ambient = 2;
    for (auto& [id, cl] : cells) {
        cl.faces.clear();
        for (const auto& f : face_ids[id]) cl.faces.push_back(index.at(f));
        out.cells.push_back(cl);
    }
    out.finalize();
    return out;
}

// two tropical lines crossing at a 4-valent vertex (a singular curve)
TropicalComplex two_lines() {
    TropicalComplex x;
    x.ambient = 2;
    x.cells.push_back(cell("v", poly(2, {{0, 0}})));
    x.cells.push_back(cell("px", poly(2, {{0, 0}}, {{1, 0}}), {0}));
    x.cells.push_back(cell("mx", poly(2, {{0, 0}}, {{-1, 0}}), {0}));
    x.cells.push_back(cell("py", poly(2, {{0, 0}}, {{0, 1}}), {0}));
    x.cells.push_back(cell("my", poly(2, {{0, 0}}, {{0, -1}}), {0}));
    x.finalize();
    return x;
}

} // namespace

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "corpus";

    // oriented matroids from realizations
    json u23_om = {{"kind", "oriented_matroid"},
                   {"realization", json::array({json::array({1, 0}), json::array({0, 1}),
                                                json::array({1, 1})})}};
    dump(dir, "u23_om.json", u23_om);
    json u34_om = {{"kind", "oriented_matroid"},
                   {"realization",
                    json::array({json::array({1, 0, 0}), json::array({0, 1, 0}),
                                 json::array({0, 0, 1}), json::array({1, 1, 1})})}};
    dump(dir, "u34_om.json", u34_om);

    dump(dir, "u23_matroid.json", matroid_to_json(Matroid::uniform(2, 3)));
    dump(dir, "u34_matroid.json", matroid_to_json(Matroid::uniform(3, 4)));

    // Bergman fans with their oriented-matroid phases
    auto om23 = covectors_from_realization(
        {qvec_from_ints({1, 0}), qvec_from_ints({0, 1}), qvec_from_ints({1, 1})}, 2);
    auto bw23 = bergman_fan_with_phase(om23, true);
    dump(dir, "u23_line.json", complex_to_json(bw23.complex));
    dump(dir, "u23_phase.json", phase_to_json(bw23.phases, 2));

    auto om34 = covectors_from_realization({qvec_from_ints({1, 0, 0}), qvec_from_ints({0, 1, 0}),
                                            qvec_from_ints({0, 0, 1}), qvec_from_ints({1, 1, 1})},
                                           3);
    auto bw34 = bergman_fan_with_phase(om34, true);
    dump(dir, "u34_plane.json", complex_to_json(bw34.complex));
    dump(dir, "u34_phase.json", phase_to_json(bw34.phases, 3));

    // broken variant: one facet phase translated off its coset
    {
        RealPhaseStructure broken = bw23.phases;
        auto& h = broken.facet_phases.begin()->second;
        uint64_t shift = 1;
        while (h.direction_space_contains(shift)) shift <<= 1;
        h = Z2AffineSubspace(h.ambient_dim(), h.base_point() ^ shift, h.direction_basis());
        dump(dir, "u23_phase_broken.json", phase_to_json(broken, 2));
    }

    dump(dir, "tp2_fan.json", fan_to_json(Fan::tropical_projective(2)));
    dump(dir, "tp3_fan.json", fan_to_json(Fan::tropical_projective(3)));

    dump(dir, "line_env.json", complex_to_json(line_envelope()));
    dump(dir, "fig2_p.json", complex_to_json(fig2_p()));
    {
        RealPhaseStructure e;
        e.facet_phases.emplace("vm", Z2AffineSubspace(1, 0, {}));
        e.facet_phases.emplace("v0", Z2AffineSubspace(1, 1, {}));
        e.facet_phases.emplace("vp", Z2AffineSubspace(1, 0, {}));
        dump(dir, "fig2_phase.json", phase_to_json(e, 1));
    }
    dump(dir, "fig3_p.json", complex_to_json(fig3_p()));
    {
        // full phase structure on the plane itself
        RealPhaseStructure e;
        for (const auto& cell : fig3_p().cells)
            if (cell.facet)
                e.facet_phases.emplace(cell.id, Z2AffineSubspace(2, 0, {0b01, 0b10}));
        dump(dir, "fig3_phase.json", phase_to_json(e, 2));
    }

    dump(dir, "conic.json", complex_to_json(conic()));
    dump(dir, "conic_phase.json", phase_to_json(conic_phase(), 2));
    dump(dir, "conic_fine.json", complex_to_json(conic_fine()));
    {
        auto fine_phase =
            transfer_under_subdivision(conic(), conic_phase(), conic_fine());
        dump(dir, "conic_fine_phase.json", phase_to_json(fine_phase, 2));
        RealPhaseStructure broken = conic_phase();
        broken.facet_phases.at("e23") = Z2AffineSubspace(2, 0b10, {0b01});
        dump(dir, "conic_phase_broken.json", phase_to_json(broken, 2));
    }

    dump(dir, "twolines.json", complex_to_json(two_lines()));
    {
        RealPhaseStructure e;
        e.facet_phases.emplace("px", Z2AffineSubspace(2, 0b00, {0b01}));
        e.facet_phases.emplace("mx", Z2AffineSubspace(2, 0b10, {0b01}));
        e.facet_phases.emplace("py", Z2AffineSubspace(2, 0b00, {0b10}));
        e.facet_phases.emplace("my", Z2AffineSubspace(2, 0b01, {0b10}));
        dump(dir, "twolines_phase.json", phase_to_json(e, 2));
    }
    return 0;
}
