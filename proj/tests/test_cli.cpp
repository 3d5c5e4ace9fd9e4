#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "statefiber/certificate.hpp"
#include "statefiber/graph_io.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = statefiber::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

const std::string kData = STATEFIBER_TEST_DATA;
const std::string kFigureEight = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
const std::string kBigonAB =
    "vertex 0 : 0 2\n"
    "vertex 1 : 3 1\n"
    "edge 0 A : 0 1\n"
    "edge 1 B : 2 3\n";
const std::string kTriangle =
    "vertex 0 : 0 5\n"
    "vertex 1 : 2 1\n"
    "vertex 2 : 4 3\n"
    "edge 0 A : 0 1\n"
    "edge 1 A : 2 3\n"
    "edge 2 A : 4 5\n";

}  // namespace

TEST_CASE("cli decide") {
  SUBCASE("figure-eight PD with its Seifert state") {
    const auto r = cli({"decide", "--format", "pd", "--state", "seifert"}, kFigureEight);
    CHECK(r.code == 0);
    CHECK(first_line(r.out) == "FIBER");
  }
  SUBCASE("PD format is detected") {
    CHECK(cli({"decide"}, kFigureEight).code == 0);
  }
  SUBCASE("distinct-label bigon") {
    const auto r = cli({"decide", "-"}, kBigonAB);
    CHECK(r.code == 1);
    CHECK(first_line(r.out) == "NOT_FIBER");
  }
  SUBCASE("odd cycle") {
    const auto r = cli({"decide"}, kTriangle);
    CHECK(r.code == 2);
    CHECK(first_line(r.out) == "NON_ORIENTABLE");
  }
  SUBCASE("cube from a file") {
    const auto r = cli({"decide", kData + "/cube.graph", "--json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["verdict"] == "FIBER");
    CHECK(j["pieces"][0]["rank"] == 5);
  }
  SUBCASE("seeded runs agree") {
    for (int s = 0; s < 5; ++s) CHECK(cli({"decide", kData + "/cube.graph", "--seed", std::to_string(s)}).code == 0);
  }
  SUBCASE("bad input is a usage error") {
    const auto r = cli({"decide"}, "vertex 0 : 0\nedge 0 C : 0 1\n");
    CHECK(r.code == statefiber::cli::kUsageError);
    CHECK(r.err.find("error:") != std::string::npos);
    CHECK(cli({"decide", "/nonexistent/file"}).code == statefiber::cli::kUsageError);
    CHECK(cli({"decide", "--format", "xml"}).code == statefiber::cli::kUsageError);
    CHECK(cli({}).code == statefiber::cli::kUsageError);
  }
  SUBCASE("help") { CHECK(cli({"--help"}).code == 0); }
}

TEST_CASE("cli certificates") {
  const std::string path = "cli_test_cert.json";
  auto r = cli({"decide", kData + "/cube.graph", "--trace", path});
  REQUIRE(r.code == 0);
  r = cli({"verify-certificate", path});
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "OK FIBER");

  std::ifstream f(path);
  auto j = nlohmann::json::parse(f);
  j["verdict"] = "NOT_FIBER";
  r = cli({"verify-certificate", "-"}, j.dump());
  CHECK(r.code == statefiber::cli::kInternalError);
  CHECK(cli({"verify-certificate", "-"}, "{not json").code == statefiber::cli::kUsageError);
  std::remove(path.c_str());

  r = cli({"fold", "--words", "u1^-1 u5 u1^-1; u2 u5^-1 u1; u3 u2^-1; u1 u4^-1 u3; u1 u3^-1 u4 u1^-1", "--json"});
  CHECK(r.code == 0);
  r = cli({"verify-certificate", "-"}, r.out);
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "OK rose");
}

TEST_CASE("cli batch keeps order and survives bad lines") {
  const std::string input = kFigureEight + "\n" +
                            "# comment\n" +
                            "X[1,2,3\n" +
                            kData + "/cube.graph\n" +
                            kFigureEight + " | AAAA\n";
  const auto r = cli({"decide", "--batch"}, input);
  std::istringstream ss(r.out);
  std::vector<nlohmann::json> rows;
  for (std::string line; std::getline(ss, line);) rows.push_back(nlohmann::json::parse(line));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0]["line"] == 1);
  CHECK(rows[0]["verdict"] == "FIBER");
  CHECK(rows[1]["line"] == 3);
  CHECK(rows[1]["error"] == "SYNTAX");
  CHECK(rows[2]["verdict"] == "FIBER");
  CHECK(rows[3]["line"] == 5);
  CHECK(rows[3].contains("verdict"));
  CHECK(r.code == statefiber::cli::kUsageError);
}

TEST_CASE("cli decompose") {
  const auto r = cli({"decompose", "--format", "pd"}, kFigureEight);
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "# 2 blocks");
  CHECK(r.out.find("# 0 irreducible") != std::string::npos);
  const auto cube = cli({"decompose", kData + "/cube.graph"}).out;
  // The irreducible piece is emitted in the graph format and parses back.
  const auto start = cube.find("vertex "), end = cube.find("\n# log");
  REQUIRE(start != std::string::npos);
  const auto piece = statefiber::parse_graph(cube.substr(start, end - start));
  CHECK(piece.edge_count() == 12);
  const auto j = nlohmann::json::parse(cli({"decompose", kData + "/cube.graph", "--json"}).out);
  CHECK(j["blocks"].size() == 1);
  CHECK(j["irreducible"].size() == 1);
}

TEST_CASE("cli fold") {
  CHECK(cli({"fold", "--words", "u1 u2; u2"}).code == 0);
  const auto r = cli({"fold", "--words", "u1 u1"});
  CHECK(r.code == 1);
  CHECK(r.out.find("not a rose") != std::string::npos);
  CHECK(cli({"fold", "-n", "3"}, "u1\nu2\nu3\n").code == 0);
  CHECK(cli({"fold", "--words", "u1 x"}).code == statefiber::cli::kUsageError);
}

TEST_CASE("cli family") {
  auto r = cli({"family", "--two-bridge", "-3,2,-2"});
  CHECK(r.code == 1);
  CHECK(first_line(r.out) == "NOT_FIBER");
  r = cli({"family", "--two-bridge", "-3,4,-2"});
  CHECK(first_line(r.out) == (r.code == 0 ? "FIBER" : "NOT_FIBER"));
  CHECK(cli({"family", "--cycle", "AABB"}).code == 1);
  CHECK(cli({"family", "--cycle", "AAAB"}).code == 0);
  CHECK(cli({"family", "--theta", "A,BBB,A"}).code == 0);
  r = cli({"family", "--pretzel", "2,-2,4"});
  CHECK(r.out.find("decider") != std::string::npos);
  r = cli({"family", "--enumerate", "cycles", "--max-length", "6", "--quiet"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0 disagreements") != std::string::npos);
  r = cli({"family", "--enumerate", "two-bridge", "--max-length", "3", "--max-abs", "3", "--quiet", "--json"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["disagreements"] == 0);
  CHECK(cli({"family"}).code == statefiber::cli::kUsageError);
}
