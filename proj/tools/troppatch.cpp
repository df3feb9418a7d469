// troppatch: command-line driver for real phase structures, patchworks,
// tropical GF(2) homology, and poset certificates.

#include <CLI11.hpp>

#include <troppatch/json_io.hpp>
#include <troppatch/parallel.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace troppatch;
using nlohmann::json;

namespace {

struct Output {
    bool as_json = false;
    std::string out_file;
    json report;
    std::vector<std::pair<std::string, std::string>> table;

    void kv(const std::string& k, const std::string& v) { table.push_back({k, v}); }
    void kv(const std::string& k, long long v) { table.push_back({k, std::to_string(v)}); }
    void kv(const std::string& k, bool v) { table.push_back({k, v ? "yes" : "no"}); }

    void flush(const std::string& command, const Workspace& ws) {
        json inputs = json::object();
        for (const auto& [name, hash] : ws.hashes) inputs[name] = hash;
        json full;
        full["command"] = command;
        full["inputs"] = inputs;
        full["result"] = report;
        std::string dumped = full.dump(2) + "\n";
        if (!out_file.empty()) {
            std::ofstream f(out_file);
            f << dumped;
        }
        if (as_json) {
            std::cout << dumped;
        } else {
            for (const auto& [k, v] : table) std::cout << k << ": " << v << "\n";
        }
    }
};

std::string vec_str(const std::vector<int>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(v[i]);
    }
    return s + "]";
}

std::vector<std::string> load_files(Workspace& ws, const std::vector<std::string>& files) {
    std::vector<std::string> names;
    for (const auto& f : files) names.push_back(ws.load(f));
    return names;
}

const TropicalComplex& need_complex(Workspace& ws, const std::string& name) {
    auto it = ws.complexes.find(name);
    if (it == ws.complexes.end()) throw TroppatchError("MissingObject", "complex '" + name + "'");
    return it->second;
}

const PhaseInput& need_phase(Workspace& ws, const std::string& name) {
    auto it = ws.phases.find(name);
    if (it == ws.phases.end()) throw TroppatchError("MissingObject", "phase '" + name + "'");
    return it->second;
}

const Fan& need_fan(Workspace& ws, const std::string& name) {
    auto it = ws.fans.find(name);
    if (it == ws.fans.end()) throw TroppatchError("MissingObject", "fan '" + name + "'");
    return it->second;
}

TropicalComplex resolve_complex(Workspace& ws, const std::string& name, const std::string& fan) {
    TropicalComplex c = need_complex(ws, name);
    if (!fan.empty()) c = compactify(c, need_fan(ws, fan));
    return c;
}

std::vector<int> parse_cells(const TropicalComplex& c, const std::string& spec) {
    std::vector<int> ids;
    if (spec.empty()) {
        for (int i = 0; i < c.size(); ++i) ids.push_back(i);
        return ids;
    }
    size_t pos = 0;
    while (pos < spec.size()) {
        size_t next = spec.find(',', pos);
        if (next == std::string::npos) next = spec.size();
        std::string id = spec.substr(pos, next - pos);
        int idx = c.find_cell(id);
        if (idx < 0) throw TroppatchError("MissingObject", "cell '" + id + "'");
        ids.push_back(idx);
        pos = next + 1;
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

json iso_json(const IsoResult& iso) {
    json j;
    j["isomorphic"] = iso.isomorphic;
    if (iso.isomorphic) j["mapping"] = iso.mapping;
    else j["refutation"] = iso.refutation;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"combinatorial patchworking toolkit"};
    app.require_subcommand(1);

    bool as_json = false;
    std::string out_file;
    app.add_flag("--json", as_json, "print the JSON report on stdout");
    app.add_option("--out", out_file, "also write the JSON report to a file");

    std::vector<std::string> files;
    std::string fan_name, matroid_name, cosheaf_kind, cells_spec;
    bool bm = false, projective = false, force = false, emit_poset = false;
    int p_degree = 0;

    auto add_files = [&](CLI::App* cmd) {
        cmd->add_option("files", files, "input JSON files")->expected(-1);
    };

    auto* c_validate = app.add_subcommand("validate", "validate input objects");
    add_files(c_validate);

    auto* c_phase = app.add_subcommand("phase-check", "check a real phase structure");
    add_files(c_phase);
    c_phase->add_option("--fan", fan_name, "compactify inside this fan first");

    auto* c_patch = app.add_subcommand("patchwork", "build the patchwork complex");
    add_files(c_patch);
    c_patch->add_option("--fan", fan_name, "compactify inside this fan first");
    c_patch->add_flag("--emit-poset", emit_poset, "include the cell poset in the report");

    auto* c_closed = app.add_subcommand("closed-check", "certify the patchwork is a closed chain");
    add_files(c_closed);
    c_closed->add_option("--fan", fan_name, "compactify inside this fan first");
    c_closed->add_flag("--force", force, "build even from an invalid phase structure");

    auto* c_hom = app.add_subcommand("homology", "cosheaf homology dimensions");
    add_files(c_hom);
    c_hom->add_option("--cosheaf", cosheaf_kind, "fp | sign | kp")->required();
    c_hom->add_option("--p", p_degree, "wedge degree for fp/kp");
    c_hom->add_flag("--bm", bm, "Borel-Moore chain groups");
    c_hom->add_option("--fan", fan_name, "compactify inside this fan first");

    auto* c_betti = app.add_subcommand("betti-bounds", "patchwork Betti numbers vs tropical homology");
    add_files(c_betti);
    c_betti->add_flag("--bm", bm, "Borel-Moore variant");
    c_betti->add_option("--fan", fan_name, "compactify inside this fan first");

    auto* c_euler = app.add_subcommand("euler", "Euler characteristic vs tropical signature");
    add_files(c_euler);
    c_euler->add_option("--fan", fan_name, "compactify inside this fan first");

    auto* c_hirz = app.add_subcommand("hirzebruch", "tropical Hirzebruch polynomial");
    add_files(c_hirz);
    c_hirz->add_option("--fan", fan_name, "compactify inside this fan first");

    auto* c_bergman = app.add_subcommand("bergman", "Ardila-Klivans fan of a matroid");
    add_files(c_bergman);
    c_bergman->add_option("--matroid", matroid_name, "matroid object name or file")->required();
    c_bergman->add_flag("--projective", projective, "projective fan in R^E/(1..1)");

    auto* c_pfo = app.add_subcommand("phase-from-om", "Bergman fan with its oriented-matroid phases");
    add_files(c_pfo);
    c_pfo->add_flag("--projective", projective, "projective fan in R^E/(1..1)");

    auto* c_tope = app.add_subcommand("tope-count", "tope count with the Zaslavsky cross-check");
    add_files(c_tope);

    auto* c_compact = app.add_subcommand("compactify", "canonical compactification in a toric variety");
    add_files(c_compact);
    c_compact->add_option("--fan", fan_name, "ambient fan")->required();
    c_compact->add_flag("--emit-poset", emit_poset, "include the face poset in the report");

    auto* c_poset = app.add_subcommand("poset", "poset constructions and certificates");
    std::string poset_mode;
    c_poset->add_option("mode", poset_mode, "int | bc | special-fibre | q | iso")->required();
    add_files(c_poset);
    c_poset->add_option("--cells", cells_spec, "comma-separated cell ids of the subcomplex");

    CLI11_PARSE(app, argc, argv);

    Workspace ws;
    Output out;
    out.as_json = as_json;
    out.out_file = out_file;
    int exit_code = 0;

    try {
        auto names = load_files(ws, files);

        if (*c_validate) {
            json objects = json::object();
            bool all_ok = true;
            for (const auto& name : names) {
                json j;
                if (ws.complexes.count(name)) {
                    auto rep = validate_complex(ws.complexes.at(name));
                    j["ok"] = rep.ok;
                    j["violations"] = rep.violations;
                    j["warnings"] = rep.warnings;
                    all_ok = all_ok && rep.ok;
                } else {
                    // fans, matroids and OMs were validated eagerly at load
                    j["ok"] = true;
                }
                objects[name] = j;
                out.kv(name, j["ok"].get<bool>());
            }
            out.report["objects"] = objects;
            exit_code = all_ok ? 0 : 2;
            out.flush("validate", ws);
        } else if (*c_phase) {
            auto c = resolve_complex(ws, names.at(0), fan_name);
            const auto& e = need_phase(ws, names.at(1));
            auto rep = validate_phase(c, e.phases);
            out.report["ok"] = rep.ok;
            out.report["violations"] = rep.violations;
            out.kv("valid", rep.ok);
            for (const auto& v : rep.violations) out.kv("violation", v);
            exit_code = rep.ok ? 0 : 2;
            out.flush("phase-check", ws);
        } else if (*c_patch) {
            auto c = resolve_complex(ws, names.at(0), fan_name);
            const auto& e = need_phase(ws, names.at(1));
            auto pw = build_patchwork(c, e.phases);
            std::vector<int> by_dim(c.dim + 1, 0);
            for (int i = 0; i < pw.size(); ++i) by_dim[pw.cell_dim(i)]++;
            out.report["cells_by_dim"] = by_dim;
            out.report["cell_count"] = pw.size();
            out.report["euler_compact"] = pw.euler_compact();
            out.report["euler_all"] = pw.euler_all();
            if (emit_poset) out.report["poset"] = poset_to_json(pw.poset());
            out.kv("cells", static_cast<long long>(pw.size()));
            out.kv("cells_by_dim", vec_str(by_dim));
            out.kv("euler_compact", pw.euler_compact());
            out.kv("euler_borel_moore", pw.euler_all());
            out.flush("patchwork", ws);
        } else if (*c_closed) {
            auto c = resolve_complex(ws, names.at(0), fan_name);
            const auto& e = need_phase(ws, names.at(1));
            auto pw = build_patchwork(c, e.phases, !force);
            auto res = check_closed_chain(pw);
            out.report["closed"] = res.closed;
            if (!res.closed) out.report["counterexample"] = res.counterexample;
            out.kv("closed", res.closed);
            if (!res.closed) out.kv("counterexample", res.counterexample);
            exit_code = res.closed ? 0 : 2;
            out.flush("closed-check", ws);
        } else if (*c_hom) {
            auto c = resolve_complex(ws, names.at(0), fan_name);
            CellularCosheaf f;
            if (cosheaf_kind == "fp") {
                f = build_Fp(c, p_degree);
            } else if (cosheaf_kind == "sign") {
                f = build_sign_cosheaf(c, need_phase(ws, names.at(1)).phases);
            } else if (cosheaf_kind == "kp") {
                f = build_Kp(c, need_phase(ws, names.at(1)).phases, p_degree);
            } else {
                throw TroppatchError("UnknownCommand", "cosheaf kind '" + cosheaf_kind + "'");
            }
            auto dims = homology_dims(chain_complex(f, bm));
            out.report["cosheaf"] = cosheaf_kind;
            out.report["p"] = p_degree;
            out.report["borel_moore"] = bm;
            out.report["homology"] = dims;
            json stalks = json::object();
            for (int i = 0; i < c.size(); ++i) stalks[c.cells[i].id] = f.stalk_dim[i];
            out.report["stalk_dims"] = stalks;
            out.kv("homology", vec_str(dims));
            out.flush("homology", ws);
        } else if (*c_betti) {
            auto c = resolve_complex(ws, names.at(0), fan_name);
            const auto& e = need_phase(ws, names.at(1));
            auto rep = betti_bounds(c, e.phases, bm);
            out.report["borel_moore"] = bm;
            out.report["patchwork_betti"] = rep.patchwork_betti;
            out.report["e1_page"] = rep.fp_homology;
            out.report["bound"] = rep.bound;
            out.report["slack"] = rep.slack;
            out.report["bounds_hold"] = rep.bounds_hold;
            out.report["euler"] = rep.euler;
            out.report["signature"] = rep.signature;
            out.kv("patchwork_betti", vec_str(rep.patchwork_betti));
            out.kv("bound", vec_str(rep.bound));
            out.kv("slack", vec_str(rep.slack));
            out.kv("bounds_hold", rep.bounds_hold);
            exit_code = rep.bounds_hold ? 0 : 2;
            out.flush("betti-bounds", ws);
        } else if (*c_euler) {
            auto c = resolve_complex(ws, names.at(0), fan_name);
            const auto& e = need_phase(ws, names.at(1));
            auto es = euler_signature(c, e.phases);
            out.report["chi"] = es.chi;
            out.report["chi_bm"] = es.chi_bm;
            out.report["sigma"] = es.sigma;
            out.report["sigma_bm"] = es.sigma_bm;
            out.report["equal"] = es.equal;
            out.report["equal_bm"] = es.equal_bm;
            out.report["chain_level_agree"] = es.chain_level_agree;
            out.kv("chi", es.chi);
            out.kv("sigma", es.sigma);
            out.kv("equal", es.equal);
            out.kv("chi_bm", es.chi_bm);
            out.kv("sigma_bm", es.sigma_bm);
            out.kv("equal_bm", es.equal_bm);
            exit_code = (es.equal && es.equal_bm && es.chain_level_agree) ? 0 : 2;
            out.flush("euler", ws);
        } else if (*c_hirz) {
            auto c = resolve_complex(ws, names.at(0), fan_name);
            auto poly = hirzebruch(c);
            out.report["coefficients"] = poly;
            out.report["polynomial"] = poly_to_string(poly, "y");
            out.kv("chi_y", poly_to_string(poly, "y"));
            out.flush("hirzebruch", ws);
        } else if (*c_bergman) {
            if (ws.matroids.find(matroid_name) == ws.matroids.end() &&
                std::filesystem::exists(matroid_name))
                matroid_name = ws.load(matroid_name);
            auto it = ws.matroids.find(matroid_name);
            if (it == ws.matroids.end())
                throw TroppatchError("MissingObject", "matroid '" + matroid_name + "'");
            auto fan = bergman_fan(it->second, projective);
            std::vector<int> by_dim(fan.dim + 1, 0);
            for (const auto& cell : fan.cells) by_dim[cell.dim]++;
            out.report["complex"] = complex_to_json(fan);
            out.report["cells_by_dim"] = by_dim;
            out.report["facet_count"] = maximal_flat_chain_count(it->second);
            out.kv("cells_by_dim", vec_str(by_dim));
            out.kv("facets", maximal_flat_chain_count(it->second));
            out.flush("bergman", ws);
        } else if (*c_pfo) {
            auto it = ws.oms.find(names.at(0));
            if (it == ws.oms.end()) throw TroppatchError("MissingObject", "oriented matroid");
            auto bw = bergman_fan_with_phase(it->second.om, projective);
            out.report["complex"] = complex_to_json(bw.complex);
            out.report["phase"] = phase_to_json(bw.phases, bw.complex.ambient);
            out.report["matroid"] = matroid_to_json(bw.matroid);
            out.kv("cells", static_cast<long long>(bw.complex.size()));
            out.kv("facets", static_cast<long long>(bw.phases.facet_phases.size()));
            out.flush("phase-from-om", ws);
        } else if (*c_tope) {
            auto it = ws.oms.find(names.at(0));
            if (it == ws.oms.end()) throw TroppatchError("MissingObject", "oriented matroid");
            auto val = validate_covectors(it->second.om);
            auto t = topes(it->second.om);
            long long zas = poly_eval(characteristic_polynomial(val.underlying), -1);
            if (val.underlying.rank % 2) zas = -zas;
            out.report["topes"] = t.size();
            out.report["zaslavsky"] = zas;
            out.report["zaslavsky_match"] = (zas == static_cast<long long>(t.size()));
            if (it->second.from_realization)
                out.report["chirotope_consistent"] = it->second.chirotope_consistent;
            out.kv("topes", static_cast<long long>(t.size()));
            out.kv("zaslavsky_match", zas == static_cast<long long>(t.size()));
            exit_code = (zas == static_cast<long long>(t.size())) ? 0 : 2;
            out.flush("tope-count", ws);
        } else if (*c_compact) {
            const auto& c = need_complex(ws, names.at(0));
            const auto& fan = need_fan(ws, fan_name);
            auto cc = compactify(c, fan);
            auto abstract = compactification_poset_abstract(c, fan);
            auto cert = poset_isomorphic(face_poset(cc),
                                         FinitePoset::from_leq(abstract.labels, abstract.leq));
            std::vector<int> by_dim(cc.dim + 1, 0);
            for (const auto& cell : cc.cells) by_dim[cell.dim]++;
            out.report["cells_by_dim"] = by_dim;
            out.report["cell_count"] = cc.size();
            out.report["poset_certificate"] = iso_json(cert);
            out.report["complex"] = complex_to_json(cc);
            if (emit_poset) out.report["poset"] = poset_to_json(face_poset(cc));
            out.kv("cells", static_cast<long long>(cc.size()));
            out.kv("cells_by_dim", vec_str(by_dim));
            out.kv("poset_certified", cert.isomorphic);
            exit_code = cert.isomorphic ? 0 : 2;
            out.flush("compactify", ws);
        } else if (*c_poset) {
            if (poset_mode == "int") {
                const auto& c = need_complex(ws, names.at(0));
                auto ip = interval_poset(face_poset(c));
                out.report["poset"] = poset_to_json(ip);
                out.kv("elements", static_cast<long long>(ip.size()));
                out.flush("poset", ws);
            } else if (poset_mode == "bc") {
                const auto& c = need_complex(ws, names.at(0));
                auto ids = parse_cells(c, cells_spec);
                auto bc = bounded_cubical_poset(c, ids);
                out.report["poset"] = poset_to_json(bc.poset);
                out.kv("elements", static_cast<long long>(bc.poset.size()));
                out.flush("poset", ws);
            } else if (poset_mode == "special-fibre") {
                const auto& c = need_complex(ws, names.at(0));
                auto ids = parse_cells(c, cells_spec);
                auto sf = special_fibre_poset(c, ids);
                out.report["poset"] = poset_to_json(sf.fibre);
                out.report["interval_certificate"] = iso_json(sf.versus_interval);
                out.report["bounded_cubical_certificate"] = iso_json(sf.versus_bounded_cubical);
                out.kv("elements", static_cast<long long>(sf.fibre.size()));
                out.kv("interval_certified", sf.versus_interval.isomorphic);
                out.kv("bounded_cubical_certified", sf.versus_bounded_cubical.isomorphic);
                exit_code =
                    (sf.versus_interval.isomorphic && sf.versus_bounded_cubical.isomorphic) ? 0 : 2;
                out.flush("poset", ws);
            } else if (poset_mode == "q") {
                const auto& c = need_complex(ws, names.at(0));
                const auto& e = need_phase(ws, names.at(1));
                auto ids = parse_cells(c, cells_spec);
                auto q = q_posets(c, ids, e.phases);
                auto fib = positive_special_fibre_poset(c, ids, e.phases);
                out.report["q_poset"] = poset_to_json(q.q_p);
                out.report["q_size"] = q.q_p.size();
                out.report["marked_size"] = q.q_p.marked.size();
                out.report["positive_fibre_certificate"] = iso_json(fib.certificate);
                out.kv("q_size", static_cast<long long>(q.q_p.size()));
                out.kv("marked_size", static_cast<long long>(q.q_p.marked.size()));
                out.kv("positive_fibre_certified", fib.certificate.isomorphic);
                exit_code = fib.certificate.isomorphic ? 0 : 2;
                out.flush("poset", ws);
            } else if (poset_mode == "iso") {
                auto pa = ws.posets.find(names.at(0));
                auto pb = ws.posets.find(names.at(1));
                if (pa == ws.posets.end() || pb == ws.posets.end())
                    throw TroppatchError("MissingObject", "poset files required");
                auto iso = poset_isomorphic(pa->second, pb->second);
                out.report["certificate"] = iso_json(iso);
                out.kv("isomorphic", iso.isomorphic);
                if (!iso.isomorphic) out.kv("refutation", iso.refutation);
                exit_code = iso.isomorphic ? 0 : 2;
                out.flush("poset", ws);
            } else {
                throw TroppatchError("UnknownCommand", "poset mode '" + poset_mode + "'");
            }
        }
    } catch (const TroppatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
