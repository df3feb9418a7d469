#pragma once

#include "invariants.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace troppatch {

using nlohmann::json;

inline std::string fnv1a_hex(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---------------------------------------------------------------------------
// Serializers. Rationals are encoded as strings "p/q"; bit vectors as 0/1
// arrays with coordinate i at index i.
// ---------------------------------------------------------------------------
inline json rat_to_json(const Rat& r) { return r.to_string(); }

inline Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    throw TroppatchError("SchemaError", "expected integer or \"p/q\" string");
}

inline json complex_to_json(const TropicalComplex& c) {
    json out;
    out["kind"] = "complex";
    out["ambient_dim"] = c.ambient;
    json cells = json::array();
    for (int i = 0; i < c.size(); ++i) {
        const Cell& cell = c.cells[i];
        json jc;
        jc["id"] = cell.id;
        json vs = json::array();
        for (const auto& v : cell.poly.vertices) {
            json jv = json::array();
            for (const auto& x : v) jv.push_back(rat_to_json(x));
            vs.push_back(jv);
        }
        jc["vertices"] = vs;
        jc["rays"] = cell.poly.rays;
        jc["lineality"] = cell.poly.lineality;
        json fs = json::array();
        for (int f : c.face_list(i)) fs.push_back(c.cells[f].id);
        jc["faces"] = fs;
        if (cell.sed != c.sigma.zero_cone()) jc["sedentarity"] = c.sigma.cones[cell.sed].id;
        cells.push_back(jc);
    }
    out["cells"] = cells;
    return out;
}

inline TropicalComplex complex_from_json(const json& j) {
    TropicalComplex c;
    c.ambient = j.at("ambient_dim").get<int>();
    std::map<std::string, int> index;
    for (const auto& jc : j.at("cells")) {
        Cell cell;
        cell.id = jc.at("id").get<std::string>();
        Polyhedron p;
        p.ambient = c.ambient;
        for (const auto& jv : jc.at("vertices")) {
            QVec v;
            for (const auto& x : jv) v.push_back(rat_from_json(x));
            if (static_cast<int>(v.size()) != c.ambient)
                throw TroppatchError("SchemaError", "vertex width mismatch");
            p.vertices.push_back(std::move(v));
        }
        if (jc.contains("rays")) p.rays = jc.at("rays").get<IMat>();
        if (jc.contains("lineality")) p.lineality = jc.at("lineality").get<IMat>();
        cell.poly = std::move(p);
        index[cell.id] = static_cast<int>(c.cells.size());
        c.cells.push_back(std::move(cell));
    }
    int k = 0;
    for (const auto& jc : j.at("cells")) {
        if (jc.contains("faces"))
            for (const auto& f : jc.at("faces")) {
                auto it = index.find(f.get<std::string>());
                if (it == index.end())
                    throw TroppatchError("SchemaError", "unknown face id " + f.get<std::string>());
                c.cells[k].faces.push_back(it->second);
            }
        ++k;
    }
    c.finalize();
    return c;
}

inline json fan_to_json(const Fan& f) {
    json out;
    out["kind"] = "fan";
    out["ambient_dim"] = f.ambient;
    json cones = json::array();
    for (const auto& c : f.cones) {
        json jc;
        jc["id"] = c.id;
        jc["rays"] = c.rays;
        jc["lineality"] = c.lineality;
        cones.push_back(jc);
    }
    out["cones"] = cones;
    return out;
}

inline Fan fan_from_json(const json& j) {
    Fan f;
    f.ambient = j.at("ambient_dim").get<int>();
    bool has_zero = false;
    for (const auto& jc : j.at("cones")) {
        FanCone c;
        c.id = jc.at("id").get<std::string>();
        if (jc.contains("rays")) c.rays = jc.at("rays").get<IMat>();
        if (jc.contains("lineality")) c.lineality = jc.at("lineality").get<IMat>();
        has_zero = has_zero || c.is_zero();
        f.cones.push_back(std::move(c));
    }
    if (!has_zero) f.cones.push_back({"0", {}, {}});
    f.finalize();
    return f;
}

inline json matroid_to_json(const Matroid& m) {
    json out;
    out["kind"] = "matroid";
    out["ground"] = m.ground;
    json bs = json::array();
    for (uint32_t b : m.bases) {
        json jb = json::array();
        for (int i = 0; i < m.ground; ++i)
            if ((b >> i) & 1u) jb.push_back(i);
        bs.push_back(jb);
    }
    out["bases"] = bs;
    return out;
}

inline Matroid matroid_from_json(const json& j) {
    return Matroid::from_bases(j.at("ground").get<int>(),
                               j.at("bases").get<std::vector<std::vector<int>>>());
}

inline json om_to_json(const OrientedMatroid& om) {
    json out;
    out["kind"] = "oriented_matroid";
    out["ground"] = om.ground;
    json cs = json::array();
    for (const auto& z : om.covectors) {
        json jz = json::array();
        for (int8_t v : z) jz.push_back(std::string(1, v > 0 ? '+' : (v < 0 ? '-' : '0')));
        cs.push_back(jz);
    }
    out["covectors"] = cs;
    return out;
}

struct OMInput {
    OrientedMatroid om;
    bool from_realization = false;
    bool chirotope_consistent = true; // report-only cross-check for realizations
};

inline OMInput om_from_json(const json& j) {
    OMInput out;
    if (j.contains("realization")) {
        std::vector<QVec> rows;
        int cols = -1;
        for (const auto& jr : j.at("realization")) {
            QVec row;
            for (const auto& x : jr) row.push_back(rat_from_json(x));
            if (cols < 0) cols = static_cast<int>(row.size());
            if (cols != static_cast<int>(row.size()))
                throw TroppatchError("SchemaError", "ragged realization matrix");
            rows.push_back(std::move(row));
        }
        out.om = covectors_from_realization(rows, cols);
        out.from_realization = true;
        // chirotope consistency report: independent column sets with nonzero
        // maximal minor must be exactly the bases of the underlying matroid
        auto val = validate_covectors(out.om);
        if (val.report.ok && cols == val.underlying.rank) {
            for (const auto& sub : subsets_lex(static_cast<int>(rows.size()), cols)) {
                IMat mat;
                bool integral = true;
                for (int r : sub) {
                    IVec iv;
                    for (const auto& x : rows[r]) {
                        if (!x.is_integer()) { integral = false; break; }
                        iv.push_back(x.num().to_ll());
                    }
                    if (!integral) break;
                    mat.push_back(iv);
                }
                if (!integral) continue;
                uint32_t mask = 0;
                for (int r : sub) mask |= (1u << r);
                bool nonzero = !(idet(mat) == BigInt(0));
                bool is_basis = std::binary_search(val.underlying.bases.begin(),
                                                   val.underlying.bases.end(), mask);
                if (nonzero != is_basis) out.chirotope_consistent = false;
            }
        }
    } else {
        out.om.ground = j.at("ground").get<int>();
        for (const auto& s : j.at("covectors")) {
            if (s.is_string()) {
                out.om.covectors.push_back(sign_vector_parse(s.get<std::string>()));
            } else {
                std::string flat;
                for (const auto& ch : s) flat += ch.get<std::string>();
                out.om.covectors.push_back(sign_vector_parse(flat));
            }
        }
        out.om.normalize();
    }
    return out;
}

inline json phase_to_json(const RealPhaseStructure& e, int ambient_dim) {
    json out;
    out["kind"] = "phase";
    out["ambient_dim"] = ambient_dim;
    json fp = json::object();
    for (const auto& [id, h] : e.facet_phases) {
        json jh;
        json base = json::array();
        for (int i = 0; i < h.ambient_dim(); ++i) base.push_back(static_cast<int>((h.base_point() >> i) & 1));
        jh["base"] = base;
        json dirs = json::array();
        for (uint64_t d : h.direction_basis()) {
            json jd = json::array();
            for (int i = 0; i < h.ambient_dim(); ++i) jd.push_back(static_cast<int>((d >> i) & 1));
            dirs.push_back(jd);
        }
        jh["directions"] = dirs;
        fp[id] = jh;
    }
    out["facet_phases"] = fp;
    return out;
}

struct PhaseInput {
    RealPhaseStructure phases;
    int ambient_dim = 0;
};

inline PhaseInput phase_from_json(const json& j) {
    PhaseInput out;
    out.ambient_dim = j.at("ambient_dim").get<int>();
    for (const auto& [id, jh] : j.at("facet_phases").items()) {
        uint64_t base = 0;
        auto jb = jh.at("base");
        for (size_t i = 0; i < jb.size(); ++i)
            if (jb[i].get<int>()) base |= (1ull << i);
        std::vector<uint64_t> dirs;
        if (jh.contains("directions"))
            for (const auto& jd : jh.at("directions")) {
                uint64_t d = 0;
                for (size_t i = 0; i < jd.size(); ++i)
                    if (jd[i].get<int>()) d |= (1ull << i);
                dirs.push_back(d);
            }
        out.phases.facet_phases.emplace(id, Z2AffineSubspace(out.ambient_dim, base, dirs));
    }
    return out;
}

inline json poset_to_json(const FinitePoset& p) {
    json out;
    out["kind"] = "poset";
    out["elements"] = p.labels;
    json covers = json::array();
    for (int i = 0; i < p.size(); ++i)
        for (int j : p.up_covers(i)) covers.push_back(json::array({i, j}));
    out["covers"] = covers;
    out["marked"] = p.marked;
    return out;
}

inline FinitePoset poset_from_json(const json& j) {
    auto labels = j.at("elements").get<std::vector<std::string>>();
    int m = static_cast<int>(labels.size());
    std::vector<std::vector<uint8_t>> leq(m, std::vector<uint8_t>(m, 0));
    for (int i = 0; i < m; ++i) leq[i][i] = 1;
    for (const auto& c : j.at("covers")) leq[c[0].get<int>()][c[1].get<int>()] = 1;
    // transitive closure
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
            if (leq[i][k])
                for (int l = 0; l < m; ++l)
                    if (leq[k][l]) leq[i][l] = 1;
    std::vector<int> marked;
    if (j.contains("marked")) marked = j.at("marked").get<std::vector<int>>();
    return FinitePoset::from_leq(std::move(labels), std::move(leq), std::move(marked));
}

// ---------------------------------------------------------------------------
// Workspace: named objects loaded from files, with provenance hashes.
// ---------------------------------------------------------------------------
struct Workspace {
    std::map<std::string, TropicalComplex> complexes;
    std::map<std::string, Fan> fans;
    std::map<std::string, Matroid> matroids;
    std::map<std::string, OMInput> oms;
    std::map<std::string, PhaseInput> phases;
    std::map<std::string, FinitePoset> posets;
    std::map<std::string, std::string> hashes; // name -> fnv64

    static std::string stem(const std::string& path) {
        auto slash = path.find_last_of('/');
        std::string base = (slash == std::string::npos) ? path : path.substr(slash + 1);
        auto dot = base.find_last_of('.');
        return (dot == std::string::npos) ? base : base.substr(0, dot);
    }

    // Loads a file, eagerly validating; returns the object name.
    std::string load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw TroppatchError("ParseError", "cannot open " + path);
        std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        json j;
        try {
            j = json::parse(bytes);
        } catch (const std::exception& ex) {
            throw TroppatchError("ParseError", path + ": " + ex.what());
        }
        std::string name = stem(path);
        hashes[name] = fnv1a_hex(bytes);
        std::string kind = j.value("kind", "");
        if (kind == "complex") {
            auto c = complex_from_json(j);
            auto rep = validate_complex(c);
            if (!rep.ok) throw TroppatchError("ValidationError", path + ": " + rep.violations.front());
            complexes.emplace(name, std::move(c));
        } else if (kind == "fan") {
            auto f = fan_from_json(j);
            auto rep = f.validate();
            if (!rep.ok) throw TroppatchError("ValidationError", path + ": " + rep.violations.front());
            fans.emplace(name, std::move(f));
        } else if (kind == "matroid") {
            matroids.emplace(name, matroid_from_json(j));
        } else if (kind == "oriented_matroid") {
            auto om = om_from_json(j);
            auto val = validate_covectors(om.om);
            if (!val.report.ok)
                throw TroppatchError("ValidationError", path + ": " + val.report.violations.front());
            oms.emplace(name, std::move(om));
        } else if (kind == "phase") {
            phases.emplace(name, phase_from_json(j));
        } else if (kind == "poset") {
            posets.emplace(name, poset_from_json(j));
        } else {
            throw TroppatchError("SchemaError", path + ": unknown kind '" + kind + "'");
        }
        return name;
    }
};

} // namespace troppatch
