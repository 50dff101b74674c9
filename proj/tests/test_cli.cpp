#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include <json.hpp>

#include "pdmodel/algebra_io.hpp"
#include "pdmodel/corpus.hpp"
#include "pdmodel/errors.hpp"

using namespace pdmodel;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / "pdmodel_cli_test";
  fs::create_directories(dir);
  return dir;
}

int cli(const std::string& args) {
  std::string cmd = std::string(PDMODEL_BINARY) + " " + args + " > " + (scratch() / "stdout").string() + " 2> " +
                    (scratch() / "stderr").string();
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("print and parse round trip for every corpus entry") {
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    std::string text = print_algebra(e.doc);
    AlgebraDocument back = parse_algebra(text);
    CHECK(*back.algebra == *e.doc.algebra);
    CHECK(back.n == e.doc.n);
    CHECK(print_algebra(back) == text);

    REQUIRE(cli("corpus " + e.name) == 0);
    CHECK(*parse_algebra(slurp(scratch() / "stdout")).algebra == *e.doc.algebra);
  }
}

TEST_CASE("parse errors") {
  std::string text = print_algebra(corpus_entry("surgery-8").doc);
  auto doc = nlohmann::json::parse(text);
  doc["d"][0]["to"][0][1] = "1/0";
  CHECK_THROWS_AS(parse_algebra(doc.dump()), ParseError);
  CHECK(cli("run " + write("zero_den.json", doc.dump()).string()) == 1);

  CHECK_THROWS_AS(parse_algebra("{\"field\": \"Q\"}"), ParseError);
  CHECK_THROWS_AS(parse_field("4"), ParseError);
  CHECK(parse_field("F_3") == Field::prime(3));
  CHECK(parse_field("Q") == Field::rationals());
  CHECK(cli("run " + (scratch() / "missing.json").string()) == 1);
  CHECK(cli("run corpus:no-such-entry") == 1);
}

TEST_CASE("run and verify every corpus entry through the binary") {
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    fs::path report = scratch() / (e.name + ".report.json");
    REQUIRE(cli("run corpus:" + e.name + " --format structured --output " + report.string()) == 0);
    auto rep = nlohmann::json::parse(slurp(report));
    CHECK(rep["verdict"] == "ok");
    CHECK(rep["route"] == (e.doc.n <= 6 ? "formal" : "surgery"));
    fs::path out = write(e.name + ".out.json", rep["output"].dump());
    CHECK(cli("verify " + out.string()) == 0);
  }
}

TEST_CASE("exit codes") {
  CHECK(cli("run corpus:sphere7 --n 6") == 2);
  CHECK(cli("verify corpus:surgery-8") == 2);
  CHECK(cli("verify corpus:sphere7-acyclic-junk") == 2);
  CHECK(cli("verify corpus:sphere7") == 0);
  CHECK(cli("verify corpus:sphere7 --skip-stage-checks") == 1);
  CHECK(cli("run corpus:surgery-8 --max-degree 9") == 1);
  CHECK(cli("run corpus:surgery-8 --max-degree 11") == 0);
  CHECK(cli("run corpus:surgery-8 --field 2") == 0);
  CHECK(cli("cohomology corpus:surgery-8") == 0);
  CHECK(cli("corpus --list") == 0);
  CHECK(cli("corpus no-such-entry") == 1);
  CHECK(cli("frobnicate") == 1);
}

TEST_CASE("verify classifies and reports a tampered output") {
  REQUIRE(cli("run corpus:surgery-8 --format structured") == 0);
  auto rep = nlohmann::json::parse(slurp(scratch() / "stdout"));
  auto out = rep["output"];
  // Rescale one degree-4 product landing on the top class.
  bool changed = false;
  for (auto& m : out["mul"]) {
    if (m["deg_a"] == 4 && m["deg_b"] == 4 && !m["value"].empty()) {
      m["value"][0][1] = "5";
      changed = true;
      break;
    }
  }
  REQUIRE(changed);
  CHECK(cli("verify " + write("tampered.json", out.dump()).string()) == 2);

  REQUIRE(cli("verify corpus:surgery-8 --format structured") == 2);
  auto v = nlohmann::json::parse(slurp(scratch() / "stdout"));
  CHECK(v["classification"].get<std::string>().find("chain-level not PD") != std::string::npos);
}
