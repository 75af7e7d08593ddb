#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "quadmod/cli.hpp"
#include "quadmod/gleason.hpp"

using namespace quadmod;
using namespace quadmod::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    json doc;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "quadmod");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    json doc = out.str().empty() ? json() : json::parse(out.str());
    return {code, doc};
}

fs::path fresh_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("quadmod-test-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(d);
    return d;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("polynomial JSON round trip") {
    const IntPoly g = gleason(5);
    CHECK(intpoly_from_json(to_json(g)) == g);
    CHECK(from_coefficients_json(coefficients_json(g)) == g);
    CHECK(coefficients_json(IntPoly{1, 1, 2, 1}) == json::array({"1", "1", "2", "1"}));
    const std::vector<std::string> xy{"x", "y"};
    const MPoly m = MPoly::monomial(xy, {3, 1, 0, 0}, Int("-123456789012345678901234567890")) +
                    MPoly::constant(7, xy);
    CHECK(mpoly_from_json(to_json(m)) == m);
    for (const auto& t : to_json(m)["terms"])
        for (const auto& x : t) CHECK(x.is_string());
}

TEST_CASE("curve model round trip") {
    const auto m = pern::plane_model(2);
    const auto back = curve_model_from_json(curve_model_json(m));
    CHECK(back.pmodel == m.pmodel);
    CHECK(back.gamma == m.gamma);
    CHECK(back.certificate.exact == m.certificate.exact);
    CHECK(curve_model_json(back) == curve_model_json(m));
}

TEST_CASE("cache statuses") {
    const fs::path dir = fresh_dir("cache");
    Cache c(dir);
    CHECK_FALSE(c.load("gleason", 4));
    CHECK(c.last_status() == Cache::Status::Miss);
    c.store("gleason", 4, json::array({"1", "2"}));
    const auto hit = c.load("gleason", 4);
    CHECK(c.last_status() == Cache::Status::Hit);
    CHECK(*hit == json::array({"1", "2"}));

    Cache bumped(dir, "9.9.9");
    CHECK(bumped.key("gleason", 4) != c.key("gleason", 4));
    CHECK_FALSE(bumped.load("gleason", 4));
    CHECK(bumped.last_status() == Cache::Status::Miss);

    std::ofstream(c.file("gleason", 4), std::ios::trunc) << "{\"key\": \"quadmod/1.0.0/gleason/4\", \"checks";
    CHECK_FALSE(c.load("gleason", 4));
    CHECK(c.last_status() == Cache::Status::Corrupt);

    Cache off;
    CHECK_FALSE(off.load("gleason", 4));
    CHECK(off.last_status() == Cache::Status::Disabled);
    fs::remove_all(dir);
}

TEST_CASE("gleason subcommand") {
    const fs::path dir = fresh_dir("gleason");
    const Run first = run({"--cache-dir", dir.string(), "gleason", "3"});
    CHECK(first.code == kOk);
    CHECK(first.doc["command"] == "gleason");
    CHECK(first.doc["version"] == kVersion);
    CHECK(first.doc["cache"]["status"] == "miss");
    CHECK(first.doc["outputs"]["coefficients"] == json::array({"1", "1", "2", "1"}));

    const Run second = run({"--cache-dir", dir.string(), "gleason", "3"});
    CHECK(second.doc["cache"]["status"] == "hit");
    CHECK(second.doc["outputs"] == first.doc["outputs"]);

    Cache c(dir);
    std::ofstream(c.file("gleason", 3), std::ios::trunc) << "garbage";
    const Run third = run({"--cache-dir", dir.string(), "gleason", "3"});
    CHECK(third.code == kOk);
    CHECK(third.doc["cache"]["status"] == "corrupt");
    CHECK(third.doc["outputs"] == first.doc["outputs"]);
    CHECK(run({"--cache-dir", dir.string(), "gleason", "3"}).doc["cache"]["status"] == "hit");
    fs::remove_all(dir);
}

TEST_CASE("exit codes") {
    CHECK(run({"--no-cache", "gleason", "20"}).code == kResourceLimit);
    CHECK(run({"--no-cache", "fstar", "3"}).code == kUsage);
    CHECK(run({"--no-cache", "restrict", "1"}).code == kUsage);
    CHECK(run({"no-such-command"}).code == kUsage);
    CHECK(run({"--no-cache", "rpoints", "2"}).code == kUsage);
}

TEST_CASE("fstar report") {
    const Run r = run({"--no-cache", "fstar", "4"});
    CHECK(r.code == kOk);
    CHECK(r.doc["outputs"]["admissible"]["ok"] == true);
    CHECK(r.doc["outputs"]["cross_ratio"]["value"] == "-1");
    CHECK(r.doc["outputs"]["smoothness"]["verdict"] == "smooth, interior-adjacent");
}

TEST_CASE("rpoints report") {
    const Run r = run({"--no-cache", "rpoints", "3", "--height", "8"});
    CHECK(r.code == kOk);
    REQUIRE(r.doc["outputs"].is_array());
    REQUIRE(r.doc["outputs"].size() == 1);
    CHECK(r.doc["outputs"][0]["s1"] == "-6");
    CHECK(r.doc["outputs"][0]["s2"] == "8");
}

}
