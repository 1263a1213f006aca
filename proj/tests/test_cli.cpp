#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string out_path = std::string(TEST_TMPDIR) + "/cli_out.json";
    std::string cmd = std::string(GKZ_BINARY) + " " + args + " > " + out_path + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    return RunResult{WEXITSTATUS(rc), ss.str()};
}

std::string problem(const std::string& name) {
    return std::string(PROBLEM_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("dim command on the segment problem") {
    auto r = run_cli("dim " + problem("segment.json"));
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["command"] == "dim");
    CHECK(j["result"]["dimension"] == "2");
    CHECK(j["input"]["beta"][0] == "1");
}

TEST_CASE("rank command on the rank-11 problem") {
    auto r = run_cli("rank " + problem("rank11.json"));
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["result"]["rank"] == "11");
    CHECK(j["result"]["volume"] == "9");
    CHECK(j["result"]["exceptional"] == true);
}

TEST_CASE("iso command distinguishes beta0 from a column") {
    auto r = run_cli("iso " + problem("rank11.json"));
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["result"]["isomorphic"] == false);
    REQUIRE(j["result"]["differing_faces"].size() == 1);
    CHECK(j["result"]["differing_faces"][0].empty());
}

TEST_CASE("series command emits exact terms") {
    auto r = run_cli("series " + problem("segment.json"));
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    const auto& exps = j["result"]["exponents"];
    REQUIRE(exps.size() == 2);
    CHECK(exps[0]["v"] == json::array({"0", "1", "0"}));
    CHECK(exps[0]["terms"].size() == 1);
    CHECK(exps[1]["v"] == json::array({"1/2", "0", "1/2"}));
    // coefficient of the first lattice step
    CHECK(exps[1]["terms"][1]["coeff"] == "1/8");
}

TEST_CASE("deterministic output") {
    auto a = run_cli("faces " + problem("rank11.json"));
    auto b = run_cli("faces " + problem("rank11.json"));
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("exit codes") {
    SUBCASE("parse error") {
        std::string bad = std::string(TEST_TMPDIR) + "/bad.json";
        std::ofstream(bad) << "{ not json";
        CHECK(run_cli("dim " + bad).exit_code == 1);
    }
    SUBCASE("missing field") {
        std::string path = std::string(TEST_TMPDIR) + "/nofield.json";
        std::ofstream(path) << R"({"A": [[1,1,1],[0,1,2]], "beta": ["1","1"]})";
        CHECK(run_cli("dim " + path).exit_code == 1);  // no w
    }
    SUBCASE("non-generic weight") {
        std::string path = std::string(TEST_TMPDIR) + "/flat.json";
        std::ofstream(path) << R"({"A": [[1,1,1],[0,1,2]], "beta": ["1","1"], "w": ["0","0","0"]})";
        CHECK(run_cli("dim " + path).exit_code == 2);
        // the perturbation flag makes the same input well-posed
        CHECK(run_cli("triangulate --perturb " + path).exit_code == 0);
    }
    SUBCASE("not a simplex") {
        std::string path = std::string(TEST_TMPDIR) + "/square.json";
        std::ofstream(path)
            << R"({"A": [[1,1,1,1],[0,1,0,1],[0,0,1,1]], "beta": ["1","0","0"]})";
        CHECK(run_cli("rank " + path).exit_code == 2);
    }
    SUBCASE("budget exhaustion") {
        // a five-thousand-term truncation against a zero budget
        CHECK(run_cli("series --budget 0 --order 10000 " + problem("segment.json")).exit_code ==
              3);
    }
}

TEST_CASE("verify gate passes") {
    auto r = run_cli("verify");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["result"]["all_pass"] == true);
    CHECK(j["result"]["checks"].size() >= 10);
}

TEST_CASE("stdin input and equal-parameter iso") {
    std::string path = std::string(TEST_TMPDIR) + "/iso_equal.json";
    std::ofstream(path) << R"({"A": [[1,1,1],[0,1,2]], "beta": ["1","1"], "beta2": ["1","1"]})";
    auto r = run_cli("iso - < " + path);
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["result"]["isomorphic"] == true);
    CHECK(j["result"]["differing_faces"].empty());
}

TEST_CASE("sweep with a window flag") {
    auto r = run_cli("sweep --window 0:3 " + problem("segment.json"));
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["result"]["window"] == json::array({0, 3}));
    CHECK(j["result"]["parameters"].empty());
}

TEST_CASE("oracle cross-check flag") {
    auto r = run_cli("triangulate --verify " + problem("segment.json"));
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["result"]["verified"] == true);

    auto r2 = run_cli("etau --verify " + problem("segment.json"));
    REQUIRE(r2.exit_code == 0);
    CHECK(json::parse(r2.out)["result"]["verified"] == true);
}
