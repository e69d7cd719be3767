#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <catch_amalgamated.hpp>

#include "cli_app.hpp"

using contractions::cli::run;

namespace {
  struct Result {
    int         code;
    std::string out;
    std::string err;
  };

  Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int                code = run(args, out, err);
    return {code, out.str(), err.str()};
  }

  bool has(std::string const& hay, std::string const& needle) {
    return hay.find(needle) != std::string::npos;
  }
}  // namespace

TEST_CASE("count reports computed against closed forms", "[cli]") {
  auto r = cli({"count", "--families", "reg-oct,e-orct", "--n", "1..5"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "reg-oct n=4 computed=18 claimed=18 source=formula match=true"));
  CHECK(has(r.out, "e-orct n=1 computed=1 claimed=1"));

  r = cli({"count", "--families", "reg-orct", "--n", "6"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "computed=116 claimed=116"));

  r = cli({"count", "--families", "e:*", "--n", "4", "--format", "json"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["rows"].size() == 4);
  CHECK(j["rows"][1]["p"] == 2);
  CHECK(j["rows"][1]["computed"] == 3);
  CHECK(has(j["rows"][1]["note"].get<std::string>(), "typo"));

  r = cli({"count", "--families", "ct", "--n", "1..4"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "source=none match=-"));

  r = cli({"count", "--families", "k:*", "--n", "1..5", "--method", "both"});
  CHECK(r.code == 0);
}

TEST_CASE("count csv", "[cli]") {
  auto r = cli({"count", "--families", "reg-oct", "--n", "2", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "n,family,p,computed,claimed,source,match"));
  CHECK(has(r.out, "2,reg-oct,,3,3,formula,true"));
}

TEST_CASE("rank reports and exit codes", "[cli]") {
  auto r = cli({"rank", "--families", "l:3", "--n", "4"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "l:3 n=4 computed=2 claimed=2 source=theorem match=true"));

  r = cli({"rank", "--families", "reg-orct", "--n", "5"});
  CHECK(r.code == 1);
  CHECK(has(r.out, "reg-orct n=5 computed=2 claimed=4"));

  r = cli({"rank", "--families", "e-orct", "--n", "4", "--format", "json"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["rows"][0]["claimed"].is_null());
  CHECK(has(j["rows"][0]["note"].get<std::string>(), "3"));
  CHECK(j["certificates"][0]["exhaustive_below"] == true);
  CHECK(j["certificates"][0].contains("factorizations"));

  r = cli({"rank", "--families", "reg-oct", "--n", "5", "--budget", "2"});
  CHECK(r.code == 3);
  CHECK(has(r.out, "inconclusive"));

  // Mismatch takes precedence over an inconclusive row.
  r = cli({"rank", "--families", "reg-orct,reg-oct", "--n", "5", "--budget", "3"});
  CHECK((r.code == 1 || r.code == 3));
}

TEST_CASE("reports are deterministic and ordered", "[cli]") {
  std::vector<std::string> args{"rank", "--families", "w:*,reg-oct,q:2",
                                "--n", "3..5", "--format", "json", "--jobs", "3"};
  auto a = cli(args), b = cli(args);
  CHECK(a.out == b.out);
  auto j = nlohmann::json::parse(a.out);
  std::vector<std::tuple<std::string, int, int>> keys;
  for (auto const& row : j["rows"]) {
    keys.emplace_back(row["family"], row["n"], row.value("p", 0));
  }
  CHECK(std::is_sorted(keys.begin(), keys.end()));
}

TEST_CASE("enumerate", "[cli]") {
  auto r = cli({"enumerate", "--family", "k:3", "--n", "4", "--format", "lines"});
  CHECK(r.code == 0);
  CHECK(r.out == "[1,1,2,3]\n[1,2,3,3]\n[2,2,3,4]\n[2,3,4,4]\n");

  r = cli({"enumerate", "--family", "e:2", "--n", "4", "--method", "both",
           "--format", "json"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).size() == 3);

  r = cli({"enumerate", "--family", "reg-orct", "--n", "2", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "n,family,index,literal,rank,flags"));
  CHECK(has(r.out, "2,reg-orct,2,\"[2,1]\",2,order_reversing|contraction|isometry"));

  r = cli({"enumerate", "--family", "ct", "--n", "9"});
  CHECK(r.code == 2);
  CHECK(has(r.err, "ScaleRefusal"));

  r = cli({"enumerate", "--family", "k:5", "--n", "4"});
  CHECK(r.code == 2);
  CHECK(has(r.err, "BadParameter"));
}

TEST_CASE("factorize", "[cli]") {
  auto r = cli({"factorize", "--n", "4", "--p", "2", "--element", "[1,2,2,2]",
                "--gens", "corners"});
  CHECK(r.code == 0);
  CHECK(r.out == "[3,4,4,4] · [1,1,1,2]\n");

  r = cli({"factorize", "--element", "[1,1,1,2]", "--gens", "[1,1,1,2] [3,4,4,4]"});
  CHECK(r.out == "[1,1,1,2]\n");

  r = cli({"factorize", "--element", "[2,3,3,4]", "--gens", "reg-oct:4"});
  CHECK(r.code == 0);
  CHECK(r.out == "unreachable\n");

  r = cli({"factorize", "--element", "[1,2,2,2]", "--gens", "genset-q", "--p",
           "2", "--mode", "rees", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["mode"] == "rees(2)");

  r = cli({"factorize", "--element", "[1,2", "--gens", "corners"});
  CHECK(r.code == 2);
  CHECK(has(r.err, "SyntaxError"));

  r = cli({"factorize", "--element", "[1,2,2]", "--gens", "reg-oct:4"});
  CHECK(r.code == 2);
  CHECK(has(r.err, "DegreeMismatch"));

  r = cli({"factorize", "--element", "[1,2,2,2]", "--gens", "corners"});
  CHECK(r.code == 2);
}

TEST_CASE("greens", "[cli]") {
  auto r = cli({"greens", "--family", "reg-orct", "--n", "3"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "R-classes:"));
  CHECK(has(r.out, "D-classes: 3"));

  r = cli({"greens", "--family", "e-orct", "--n", "3", "--relation",
           "invariants", "--format", "json"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["relation"] == "invariants");
  CHECK(j["structure"]["closed"] == true);

  r = cli({"greens", "--family", "k:2", "--n", "4"});
  CHECK(r.code == 2);
  CHECK(has(r.err, "NotClosed"));
}

TEST_CASE("verify combines the sweeps", "[cli]") {
  auto r = cli({"verify", "--n", "4", "--format", "json"});
  CHECK(r.code == 1);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["structure"].size() == 3);
  bool typo = false, unipotent = false;
  for (auto const& row : j["rows"]) {
    if (row.contains("note") && has(row["note"].get<std::string>(), "typo")) {
      typo = true;
    }
    if (row.value("claim", "") == "every L-class contains a unique idempotent") {
      unipotent = row["match"] == true;
    }
  }
  CHECK(typo);
  CHECK(unipotent);
}

TEST_CASE("usage errors", "[cli]") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"bogus"}).code == 2);
  CHECK(cli({"count", "--families", "reg-oct", "--n", "5..2"}).code == 2);
  CHECK(cli({"count", "--families", "nope", "--n", "3"}).code == 2);
  CHECK(cli({"count", "--n", "3"}).code == 2);
  CHECK(cli({"count", "--families", "oct", "--n", "3", "--method",
             "construct"}).code == 2);
  CHECK(cli({"count", "--families", "reg-oct", "--format", "xml"}).code == 2);
  CHECK(cli({"rank", "--families", "k:2", "--n", "4"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("cache directory flag", "[cli]") {
  auto const dir = std::filesystem::temp_directory_path()
                   / ("contractions-cli-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::vector<std::string> args{"rank", "--families", "reg-oct,l:2", "--n",
                                "4", "--cache-dir", dir.string(), "--format",
                                "json"};
  auto a = cli(args);
  CHECK(std::distance(std::filesystem::directory_iterator(dir),
                      std::filesystem::directory_iterator())
        >= 4);
  auto b = cli(args);
  CHECK(a.out == b.out);
  CHECK(b.err.empty());
  std::filesystem::remove_all(dir);
}
