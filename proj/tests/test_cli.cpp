#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <filesystem>
#include <string>
#include <vector>

// End-to-end checks through the installed binary: exit-code contract and
// byte-identical JSON reports across runs.

namespace {

const std::string kBin = TROPPATCH_CLI_BIN;
const std::string kCorpus = TROPPATCH_CORPUS_DIR;

std::string scratch(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

int run(const std::string& args, const std::string& out_file) {
    std::string cmd = kBin + " " + args + " > " + out_file + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("cli exit code contract") {
    std::string tmp = scratch("cli_test_out.txt");
    // success
    CHECK(run("validate " + kCorpus + "/u23_line.json", tmp) == 0);
    CHECK(run("euler " + kCorpus + "/u23_line.json " + kCorpus + "/u23_phase.json", tmp) == 0);
    // refuted / violated
    CHECK(run("phase-check " + kCorpus + "/u23_line.json " + kCorpus + "/u23_phase_broken.json",
              tmp) == 2);
    CHECK(run("closed-check --force " + kCorpus + "/u23_line.json " + kCorpus +
                  "/u23_phase_broken.json",
              tmp) == 2);
    // error: missing file
    CHECK(run("validate no_such_file.json", tmp) == 1);
    // error: schema violation
    {
        std::ofstream bad(scratch("cli_bad_input.json"));
        bad << "{\"kind\": \"complex\", \"ambient_dim\": 1, \"cells\": "
               "[{\"id\": \"r\", \"vertices\": [[\"0\"]], \"rays\": [[2]]}]}\n";
    }
    CHECK(run("validate cli_bad_input.json", tmp) == 1); // non-primitive ray
    {
        std::ofstream bad(scratch("cli_bad_matroid.json"));
        bad << "{\"kind\": \"matroid\", \"ground\": 4, \"bases\": [[0,1],[2,3]]}\n";
    }
    CHECK(run("validate cli_bad_matroid.json", tmp) == 1); // exchange fails
    {
        std::ofstream bad(scratch("cli_bad_kind.json"));
        bad << "{\"kind\": \"mystery\"}\n";
    }
    CHECK(run("validate cli_bad_kind.json", tmp) == 1); // unknown kind
}

TEST_CASE("cli reported values") {
    std::string tmp = scratch("cli_test_out.json");
    REQUIRE(run("--json homology --cosheaf fp --p 1 --bm " + kCorpus + "/u23_line.json", tmp) == 0);
    auto body = slurp(tmp);
    CHECK(body.find("\"homology\": [\n      0,\n      1\n    ]") != std::string::npos);

    REQUIRE(run("--json tope-count " + kCorpus + "/u34_om.json", tmp) == 0);
    body = slurp(tmp);
    CHECK(body.find("\"topes\": 14") != std::string::npos);
    CHECK(body.find("\"zaslavsky_match\": true") != std::string::npos);
    CHECK(body.find("\"chirotope_consistent\": true") != std::string::npos);

    REQUIRE(run("--json euler " + kCorpus + "/u23_line.json " + kCorpus + "/u23_phase.json",
                tmp) == 0);
    body = slurp(tmp);
    CHECK(body.find("\"chi\": 3") != std::string::npos);
    CHECK(body.find("\"sigma\": 3") != std::string::npos);
}

TEST_CASE("cli json reports are byte-identical across runs") {
    std::vector<std::string> cmds = {
        "--json euler " + kCorpus + "/u23_line.json " + kCorpus + "/u23_phase.json",
        "--json betti-bounds --bm " + kCorpus + "/conic.json " + kCorpus + "/conic_phase.json",
        "--json poset q " + kCorpus + "/line_env.json " + kCorpus +
            "/u23_phase.json --cells o,f_1,f_2,f_4",
        "--json compactify --fan tp2_fan " + kCorpus + "/u23_line.json " + kCorpus +
            "/tp2_fan.json",
        "--json phase-from-om --projective " + kCorpus + "/u23_om.json",
    };
    for (const auto& cmd : cmds) {
        REQUIRE(run(cmd, scratch("cli_run_a.json")) == 0);
        REQUIRE(run(cmd, scratch("cli_run_b.json")) == 0);
        CHECK(slurp(scratch("cli_run_a.json")) == slurp(scratch("cli_run_b.json")));
        CHECK(!slurp(scratch("cli_run_a.json")).empty());
    }
}

TEST_CASE("cli poset iso round trip") {
    std::string tmp = scratch("cli_test_out.json");
    REQUIRE(run("--json poset int " + kCorpus + "/fig2_p.json", tmp) == 0);
    CHECK(slurp(tmp).find("\"poset\"") != std::string::npos);
    // iso through the exported format
    std::ofstream f(scratch("cli_poset_self.json"));
    f << "{\"kind\":\"poset\",\"elements\":[\"a\",\"b\",\"c\"],\"covers\":[[0,2],[1,2]],\"marked\":[0]}\n";
    f.close();
    std::ofstream g(scratch("cli_poset_other.json"));
    g << "{\"kind\":\"poset\",\"elements\":[\"x\",\"y\",\"z\"],\"covers\":[[2,1],[0,1]],\"marked\":[2]}\n";
    g.close();
    CHECK(run("poset iso " + scratch("cli_poset_self.json") + " " + scratch("cli_poset_other.json"), tmp) == 0);
    std::ofstream h(scratch("cli_poset_chain.json"));
    h << "{\"kind\":\"poset\",\"elements\":[\"x\",\"y\",\"z\"],\"covers\":[[0,1],[1,2]],\"marked\":[0]}\n";
    h.close();
    CHECK(run("poset iso " + scratch("cli_poset_self.json") + " " + scratch("cli_poset_chain.json"), tmp) == 2);
}

TEST_CASE("cli reports identical at any thread count") {
    std::string base = "--json betti-bounds --bm " + kCorpus + "/conic.json " + kCorpus +
                       "/conic_phase.json";
    REQUIRE(run(base, scratch("cli_t1.json")) == 0);
    std::string threaded = "env TROPPATCH_THREADS=3 " + kBin + " " + base + " > " +
                           scratch("cli_t3.json") + " 2>/dev/null";
    REQUIRE(WEXITSTATUS(std::system(threaded.c_str())) == 0);
    CHECK(slurp(scratch("cli_t1.json")) == slurp(scratch("cli_t3.json")));
}

TEST_CASE("cli accepts covector oriented-matroid files in both spellings") {
    std::string tmp = scratch("cli_om_out.json");
    std::ofstream f(scratch("cli_om_arrays.json"));
    f << R"({"kind":"oriented_matroid","ground":1,"covectors":[["0"],["+"],["-"]]})" << "\n";
    f.close();
    std::ofstream g(scratch("cli_om_strings.json"));
    g << R"({"kind":"oriented_matroid","ground":1,"covectors":["0","+","-"]})" << "\n";
    g.close();
    CHECK(run("tope-count " + scratch("cli_om_arrays.json"), tmp) == 0);
    CHECK(run("tope-count " + scratch("cli_om_strings.json"), tmp) == 0);
}
