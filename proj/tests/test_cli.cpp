#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "oracles.hpp"
#include "tauttrack/cli.hpp"
#include "tauttrack/taut.hpp"

using namespace tauttrack;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

cli::RunResult invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "tauttrack");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::run(cli::parse_args(static_cast<int>(argv.size()), argv.data()));
}

json invoke_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  auto res = invoke(args);
  auto doc = json::parse(res.report);
  CHECK(doc["status"] == res.status);
  return doc;
}

std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    out[fs::relative(e.path(), dir).string()] = ss.str();
  }
  return out;
}

std::string at(const fs::path& dir, const json& rel) { return (dir / rel.get<std::string>()).string(); }

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("tauttrack_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

std::vector<std::string> generate_args(const fs::path& dir) {
  return {"corpus", "generate", "--out", dir.string(), "--max-tets", "2", "--loops", "1", "--per-boundary", "3"};
}

const fs::path& corpus_dir() {
  static const fs::path dir = [] {
    auto d = scratch("corpus");
    unsetenv("TAUTTRACK_SEED");
    REQUIRE(invoke(generate_args(d)).status == cli::exit_pass);
    return d;
  }();
  return dir;
}

}  // namespace

TEST_CASE("taut enumerate matches the exhaustive filter") {
  auto fig8 = std::string(TAUTTRACK_DATA_DIR) + "/figure8.tri";
  auto doc = invoke_json({"taut", "enumerate", "--tri", fig8});
  auto expected = oracle::brute_force_taut(parse_triangulation(oracle::read_data("figure8.tri")));
  REQUIRE(doc["count"] == expected.size());
  for (size_t i = 0; i < expected.size(); ++i)
    for (size_t t = 0; t < expected[i].size(); ++t)
      CHECK(doc["structures"][i][t] == pi_pair_name(expected[i][t]));
}

TEST_CASE("input errors exit 2") {
  CHECK(invoke({"tri", "validate", "--tri", "/nonexistent/file.tri"}).status == cli::exit_input_error);
  CHECK(invoke({"taut", "verify", "--tri", std::string(TAUTTRACK_DATA_DIR) + "/figure8.tri"}).status ==
        cli::exit_input_error);
  auto bad = scratch("bad");
  fs::create_directories(bad);
  std::ofstream(bad / "bad.tri") << "tets 1\nglue 0 0 -> 0 0123\n";
  auto doc = invoke_json({"tri", "validate", "--tri", (bad / "bad.tri").string()});
  CHECK(doc["status"] == cli::exit_input_error);
  CHECK(doc.contains("error"));
  CHECK_THROWS_AS(invoke({"disk", "refute", "--kind", "sideways"}), InputError);
  CHECK_THROWS_AS(invoke({"tri"}), InputError);

  std::ostringstream out, err;
  const char* argv[] = {"tauttrack", "tri", "validate", "--tri", "/nonexistent"};
  CHECK(cli::main(5, argv, out, err) == cli::exit_input_error);
  CHECK(err.str().find("cannot read") != std::string::npos);
}

TEST_CASE("corpus generation is byte-deterministic") {
  auto first = tree(corpus_dir());
  auto again = scratch("again");
  REQUIRE(invoke(generate_args(again)).status == cli::exit_pass);
  CHECK(tree(again) == first);
  CHECK(first.count("manifest.json") == 1);

  auto other = scratch("other");
  setenv("TAUTTRACK_SEED", "5", 1);
  auto res = invoke(generate_args(other));
  unsetenv("TAUTTRACK_SEED");
  REQUIRE(res.status == cli::exit_pass);
  CHECK(json::parse(tree(other)["manifest.json"])["seed"] == 5);
}

TEST_CASE("generated corpus passes its own checks") {
  const auto& dir = corpus_dir();
  auto manifest = json::parse(tree(dir)["manifest.json"]);
  std::map<std::string, json> structures;
  for (const auto& s : manifest["structures"]) structures[s["name"]] = s;
  auto tri_of = [&](const std::string& structure) {
    return (dir / "tri" / (structure.substr(0, structure.find('/')) + ".tri")).string();
  };
  for (const auto& [name, s] : structures) {
    std::vector<std::string> args{"taut", "verify", "--tri", tri_of(name), "--taut", at(dir, s["taut"])};
    CHECK(invoke(args).status == cli::exit_pass);
  }

  int refuted = 0;
  for (const auto& c : manifest["cases"]) {
    const auto& s = structures[c["structure"]];
    for (const auto& d : c["diagrams"]) {
      std::vector<std::string> common{"--tri", tri_of(c["structure"]), "--taut", at(dir, s["taut"]),
                                      "--diagram", at(dir, d)};
      if (c["kind"] == "normal") {
        common.push_back("--coor");
        common.push_back(at(dir, s["coor"]));
      }
      auto audit = common;
      audit.insert(audit.begin(), {"disk", "audit"});
      auto doc = invoke_json(audit);
      CHECK(doc["index_pass"] == true);
      CHECK(doc["boundary"].empty());

      auto refute = common;
      refute.insert(refute.begin(), {"disk", "refute", "--kind", c["kind"].get<std::string>()});
      auto res = invoke_json(refute);
      CHECK(res["status"] == cli::exit_pass);
      CHECK_FALSE(res["refutation"]["transcript"].empty());
      if (c["kind"] == "vertical" && res["refutation"]["verdict"] == "refuted") {
        CHECK(res["refutation"]["stage"] == "parity");
        ++refuted;
      }
    }
  }
  CHECK(refuted > 0);
}

TEST_CASE("json output is stable") {
  auto fig8 = std::string(TAUTTRACK_DATA_DIR) + "/figure8.tri";
  std::vector<std::string> args{"tri", "validate", "--tri", fig8, "--format", "json"};
  auto a = invoke(args), b = invoke(args);
  CHECK(a.report == b.report);
  auto doc = json::parse(a.report);
  CHECK(doc["command"] == "tri validate");
  CHECK(doc["valid"] == true);
}

TEST_CASE("normal pipeline refuses an unverified co-orientation") {
  const auto& dir = corpus_dir();
  auto manifest = json::parse(tree(dir)["manifest.json"]);
  for (const auto& c : manifest["cases"]) {
    if (c["kind"] != "normal") continue;
    std::string structure = c["structure"];
    json s;
    for (const auto& e : manifest["structures"])
      if (e["name"] == structure) s = e;
    // Reversing a single face breaks transversality at its edges.
    std::ifstream in(at(dir, s["coor"]));
    std::string text, line;
    bool flipped_one = false;
    while (std::getline(in, line)) {
      if (!flipped_one && line.rfind("coor", 0) == 0) {
        line.back() = line.back() == '+' ? '-' : '+';
        flipped_one = true;
      }
      text += line + "\n";
    }
    auto flipped = scratch("flipped");
    fs::create_directories(flipped);
    std::ofstream(flipped / "flipped.coor") << text;
    auto tri = (dir / "tri" / (structure.substr(0, structure.find('/')) + ".tri")).string();
    auto doc = invoke_json({"loop", "raise", "--tri", tri, "--taut", at(dir, s["taut"]), "--coor",
                            (flipped / "flipped.coor").string(), "--loop", at(dir, c["loop"])});
    CHECK(doc["coorientation"]["verified"] == false);
    CHECK(doc["status"] == cli::exit_audit_failure);
    auto text_report = invoke({"loop", "raise", "--tri", tri, "--taut", at(dir, s["taut"]), "--coor",
                               (flipped / "flipped.coor").string(), "--loop", at(dir, c["loop"])});
    CHECK(text_report.report.find("cover build") != std::string::npos);
    return;
  }
  FAIL("no normal case in the corpus");
}
