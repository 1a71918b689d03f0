#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    std::string cmd = std::string(SFQO_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("sfqo_cli_test_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("missing config file: exit 2 and nothing written") {
    auto d = scratch("noconf");
    CHECK(run("optics --config /nonexistent.ini --out " + d.string()) == 2);
    CHECK_FALSE(fs::exists(d));
}

TEST_CASE("schema violations: exit 3") {
    auto d = scratch("bad");
    CHECK(run("optics --set optics.phi=abc --out " + d.string()) == 3);
    CHECK(run("optics --set optics.nope=1 --out " + d.string()) == 3);
    CHECK_FALSE(fs::exists(d));
}

TEST_CASE("under-resolved Fock truncation: exit 4") {
    auto d = scratch("conv");
    CHECK(run("ati-photon --set ati.n_max=40 --set ati.p_sqrt_up=0.3 --out " + d.string()) == 4);
    CHECK_FALSE(fs::exists(d));
}

TEST_CASE("outputs are reproducible and listed in the manifest") {
    auto a = scratch("rep_a"), b = scratch("rep_b");
    REQUIRE(run("css-photon --out " + a.string()) == 0);
    REQUIRE(run("css-photon --out " + b.string()) == 0);
    auto m = nlohmann::json::parse(slurp(a / "manifest.json"));
    CHECK(m["subcommand"] == "css-photon");
    std::size_t n = 0;
    for (const auto& e : fs::directory_iterator(a)) {
        ++n;
        auto name = e.path().filename().string();
        bool listed = false;
        for (const auto& o : m["outputs"]) listed |= (o == name);
        CHECK_MESSAGE(listed, name);
        CHECK(slurp(e.path()) == slurp(b / name));
    }
    CHECK(n == m["outputs"].size());
}

TEST_CASE("seed flag changes stochastic outputs only through the seed") {
    auto a = scratch("seed_a"), b = scratch("seed_b");
    std::string base = "tomo --set tomography.sweep_values=200 --set tomography.n_seeds=2 --set tomography.grid_points=21 ";
    REQUIRE(run(base + "--seed 1 --out " + a.string()) == 0);
    REQUIRE(run(base + "--seed 2 --out " + b.string()) == 0);
    auto ma = nlohmann::json::parse(slurp(a / "manifest.json"));
    auto mb = nlohmann::json::parse(slurp(b / "manifest.json"));
    CHECK(ma["seed"] == 1);
    CHECK(mb["seed"] == 2);
    CHECK(ma["config_hash"] != mb["config_hash"]);
}

TEST_CASE("configuration reference in docs matches the schema") {
    auto tmp = fs::temp_directory_path() / "sfqo_schema.md";
    std::string cmd = std::string(SFQO_CLI_PATH) + " schema > " + tmp.string();
    REQUIRE(std::system(cmd.c_str()) == 0);
    CHECK(slurp(tmp) == slurp(SFQO_DOCS_CONFIG));
}

TEST_CASE("example configs load and resolve") {
    for (const auto& e : fs::directory_iterator(SFQO_CONFIG_DIR)) {
        auto d = scratch("example_" + e.path().stem().string());
        CHECK_MESSAGE(run("optics --config " + e.path().string() + " --out " + d.string()) == 0, e.path().string());
    }
}
