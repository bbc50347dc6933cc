#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "rwre/io.hpp"

using namespace rwre;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("rwre-test-" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

fs::path write_file(const fs::path& p, const std::string& body) {
    std::ofstream out(p);
    out << body;
    return p;
}

}  // namespace

TEST_CASE("config loading and overrides") {
    TempDir tmp;
    fs::path cfg = write_file(tmp.path / "cfg.json",
                              R"({"experiment":"simulate","seed":7,"environment":{"kind":"homogeneous","d":2,"kappa":0.05,"alphabet":[[0.4,0.1,0.25,0.25]]}})");
    SUBCASE("plain load") {
        Json j = load_config(cfg.string(), {});
        CHECK(j["seed"] == 7);
        CHECK(j["environment"]["kind"] == "homogeneous");
    }
    SUBCASE("dot-path overrides, JSON and string values") {
        Json j = load_config(cfg.string(), {"seed=99", "environment.kappa=0.04", "note=hello"});
        CHECK(j["seed"] == 99);
        CHECK(j["environment"]["kappa"] == 0.04);
        CHECK(j["note"] == "hello");
    }
    SUBCASE("errors") {
        CHECK_THROWS(load_config((tmp.path / "missing.json").string(), {}));
        CHECK_THROWS(load_config(cfg.string(), {"no-equals-sign"}));
        write_file(tmp.path / "bad.json", "{nope");
        CHECK_THROWS(load_config((tmp.path / "bad.json").string(), {}));
    }
}

TEST_CASE("config hash is stable and content-sensitive") {
    Json a = Json::parse(R"({"x":1,"y":[1,2]})");
    Json b = Json::parse(R"({"x":1,"y":[1,2]})");
    Json c = Json::parse(R"({"x":2,"y":[1,2]})");
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a) != config_hash(c));
    CHECK(config_hash(a).size() == 16);
}

TEST_CASE("site parsing") {
    CHECK(site_from_json(Json::parse("[2,-1]"), "l") == Site{2, -1});
    CHECK_THROWS(site_from_json(Json::parse("[1.5,0]"), "l"));
    CHECK_THROWS(site_from_json(Json::parse("{}"), "l"));
    CHECK_THROWS(site_from_json(Json::parse("[]"), "l"));
}

TEST_CASE("environment parsing") {
    SUBCASE("each kind round-trips") {
        Json homog = Json::parse(
            R"({"kind":"homogeneous","d":2,"kappa":0.05,"alphabet":[[0.4,0.1,0.25,0.25]]})");
        EnvironmentSpec hs = environment_from_json(homog);
        CHECK(hs.kind == EnvKind::Homogeneous);
        CHECK(hs.alphabet.size() == 1);

        Json cont = Json::parse(R"({"kind":"iid-continuous","d":3,"kappa":0.04,"dirichlet_alpha":2.0,"seed":5})");
        EnvironmentSpec cs = environment_from_json(cont);
        CHECK(cs.kind == EnvKind::IidContinuous);
        CHECK(cs.d == 3);
        CHECK(cs.dirichlet_alpha == 2.0);
        CHECK(cs.seed == 5);

        Json fin = Json::parse(
            R"({"kind":"iid-finite-alphabet","d":2,"kappa":0.05,"alphabet":[[0.4,0.1,0.25,0.25],[0.1,0.4,0.25,0.25]],"weights":[0.7,0.3]})");
        EnvironmentSpec fsp = environment_from_json(fin);
        CHECK(fsp.alphabet.size() == 2);
        CHECK(fsp.weights == std::vector<double>{0.7, 0.3});

        Json mk = Json::parse(
            R"({"kind":"markov-finite-alphabet","d":2,"kappa":0.05,"alphabet":[[0.4,0.1,0.25,0.25],[0.1,0.4,0.25,0.25]],"weights":[0.5,0.5],"interaction":{"range":1,"g":60.0,"C":2.0,"coupling":1.5}})");
        EnvironmentSpec ms = environment_from_json(mk);
        REQUIRE(ms.interaction.has_value());
        CHECK(ms.interaction->g == 60.0);
        CHECK(ms.interaction->coupling == 1.5);
    }
    SUBCASE("errors name the offending field") {
        auto message_of = [](const Json& j) {
            try {
                environment_from_json(j);
            } catch (const std::exception& e) {
                return std::string(e.what());
            }
            return std::string{};
        };
        CHECK(message_of(Json::parse(R"({"kind":"nope"})")).find("environment.kind") !=
              std::string::npos);
        CHECK(message_of(Json::parse(R"({"kind":"homogeneous","d":2,"kappa":0.3})"))
                  .find("environment.kappa") != std::string::npos);
        CHECK(message_of(Json::parse(
                             R"({"kind":"homogeneous","d":2,"kappa":0.05,"alphabet":[[0.5,0.5]]})"))
                  .find("environment.alphabet[0]") != std::string::npos);
    }
}

TEST_CASE("csv writing") {
    TempDir tmp;
    fs::path p = tmp.path / "out.csv";
    write_csv(p, {"a", "b"}, {{"1", "2"}, {"3", "4"}});
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    CHECK(line == "a,b");
    std::getline(in, line);
    CHECK(line == "1,2");
    std::getline(in, line);
    CHECK(line == "3,4");
}

TEST_CASE("double formatting") {
    CHECK(fmt_double(0.25) == "0.25");
    CHECK(fmt_double(1e-9) == "1e-09");
    CHECK(fmt_double(3.0) == "3");
}

TEST_CASE("manifest contents") {
    TempDir tmp;
    Json cfg = Json::parse(R"({"seed":42,"workers":4,"experiment":"simulate"})");
    write_manifest(tmp.path, cfg, 1.5);
    std::ifstream in(tmp.path / "manifest.json");
    Json m = Json::parse(in);
    CHECK(m["config_hash"] == config_hash(cfg));
    CHECK(m["seed"] == 42);
    CHECK(m["workers"] == 4);
    CHECK(m["version"] == "1.0.0");
    CHECK(m["wall_time_s"] == 1.5);
}
