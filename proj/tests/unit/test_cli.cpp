#include "support.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "koszul/flattening.hpp"
#include "koszul/io.hpp"

using koszul::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = koszul::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("bounds command") {
  const auto r = run({"bounds", "--n", "100", "--p", "3", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc.at("seed") == 0);
  bool saw_mr3 = false;
  bool saw_blaser = false;
  for (const auto& row : doc.at("rows")) {
    if (row.at("kind") == "mr:3") {
      CHECK(row.at("value") == "24900");
      saw_mr3 = true;
    }
    if (row.at("kind") == "blaser") {
      CHECK(row.at("value") == "24700");
      saw_blaser = true;
    }
  }
  CHECK(saw_mr3);
  CHECK(saw_blaser);

  const auto csv = run({"bounds", "--n", "24", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.find("mr_p2_refined,24,24,-,1368,1368,no") != std::string::npos);
  CHECK(csv.out.find("blaser,24,24,-,1368,1368,no") != std::string::npos);

  CHECK(run({"bounds", "--n", "0"}).code == 2);
  CHECK(run({"bounds"}).code == 2);
}

TEST_CASE("crossover command") {
  auto doc = json::parse(run({"crossover", "--a", "mr_p3_refined", "--b", "mr_p2_refined", "--format", "json"}).out);
  CHECK(doc.at("first_geq") == 120);
  const auto r = run({"crossover", "--a", "mr:3", "--b", "blaser"});
  CHECK(r.code == 0);
  CHECK(r.out.find("| 92 |") != std::string::npos);
  CHECK(r.out.find("132") != std::string::npos);
  doc = json::parse(run({"crossover", "--a", "blaser", "--b", "blaser", "--format", "json"}).out);
  CHECK(doc.at("first_geq") == 1);
  CHECK(doc.at("first_strict").is_null());
  CHECK(run({"crossover", "--a", "nonsense", "--b", "blaser"}).code == 2);
}

TEST_CASE("flatten command dumps parseable patterns") {
  const auto r = run({"flatten", "--p", "2", "--dump-symbolic"});
  REQUIRE(r.code == 0);
  CHECK(koszul::SymbolicBlockMatrix::parse(r.out) == koszul::reference_pattern(2));
  const auto q = run({"flatten", "--p", "2", "--part", "qqbar"});
  CHECK(koszul::SymbolicBlockMatrix::parse(q.out) == koszul::reference_commutator_pattern());
  const auto num = run({"flatten", "--p", "1", "--numeric", "--n", "2", "--format", "json", "--seed", "4"});
  REQUIRE(num.code == 0);
  const auto doc = json::parse(num.out);
  CHECK(doc.at("matrix").at("rows") == 6);
  CHECK(run({"flatten", "--p", "1", "--part", "bogus"}).code == 2);
}

TEST_CASE("certify command") {
  const std::string fixture = test_support::fixture_path("matmul_2_2_2.json");
  auto r = run({"certify", "--tensor", fixture, "--p", "1"});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc.at("bound") == 6);
  CHECK(doc.at("divisor") == 2);
  CHECK(doc.at("seed") == 0);
  CHECK(doc.at("alphas").size() == 3);

  doc = json::parse(run({"certify", "--matmul", "3,3,3"}).out);
  CHECK(doc.at("bound") == 14);
  doc = json::parse(run({"certify", "--tensor", test_support::fixture_path("zero_4_4_4.json")}).out);
  CHECK(doc.at("bound") == 0);

  r = run({"certify", "--tensor", fixture, "--p", "2"});
  CHECK(r.code == 3);
  CHECK(r.err.find("p too large") != std::string::npos);
  CHECK(run({"certify", "--tensor", test_support::fixture_path("missing.json")}).code == 2);
  CHECK(run({"certify", "--tensor", test_support::fixture_path("reference_p1_flattening.txt")}).code == 2);
}

TEST_CASE("verify command") {
  CHECK(run({"verify", "--suite", "strassen", "--n", "3", "--seed", "7"}).code == 0);
  CHECK(run({"verify", "--suite", "p2", "--n", "2"}).code == 0);
  CHECK(run({"verify", "--suite", "detlemmas"}).code == 0);
  const auto r = run({"verify", "--suite", "remark-imp", "--format", "json"});
  CHECK(r.code == 1);
  const auto doc = json::parse(r.out);
  CHECK(doc.at("passed") == false);
  CHECK(run({"verify", "--suite", "unknown"}).code == 2);
}

TEST_CASE("keylemma command") {
  const auto r = run({"keylemma", "--n", "3", "--p", "1"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc.at("validation").at("independent") == true);
  CHECK(doc.at("qqbar_det_nonzero") == true);
  CHECK(doc.at("alphas").size() == 3);
  CHECK(doc.at("vacuous") == true);
  CHECK(run({"keylemma", "--n", "3", "--p", "7"}).code == 2);
}

TEST_CASE("identical configurations give identical bytes") {
  const std::vector<std::vector<std::string>> configs{
      {"bounds", "--n", "37", "--format", "csv"},
      {"certify", "--matmul", "2,2,2", "--seed", "9", "--trials", "4"},
      {"verify", "--suite", "strassen", "--seed", "5", "--trials", "4"},
      {"keylemma", "--n", "4", "--p", "2", "--seed", "2"},
      {"flatten", "--p", "3", "--numeric", "--n", "2", "--seed", "8", "--format", "json"}};
  for (const auto& c : configs) {
    const auto a = run(c);
    const auto b = run(c);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(a.out.find("seed") != std::string::npos);
  }
}

TEST_CASE("output file option") {
  const auto path = std::filesystem::temp_directory_path() / "koszul_cli_test_output.json";
  std::filesystem::remove(path);
  const auto r = run({"bounds", "--n", "10", "--format", "json", "--output", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const auto doc = koszul::read_json_file(path);
  CHECK(doc.at("rows").size() > 0);
  std::filesystem::remove(path);
}

TEST_CASE("help and usage") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}
