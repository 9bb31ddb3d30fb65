#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "qdual");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = qdual::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& leaf) {
  return (std::filesystem::temp_directory_path() / ("qdual_cli_" + leaf)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("list prints the catalog") {
  Run r = invoke({"list"});
  CHECK(r.code == 0);
  CHECK(r.out.find("ext-poincare-1+1\n") != std::string::npos);
  CHECK(r.out.find("kappa-poincare-1+1-timelike\n") != std::string::npos);
}

TEST_CASE("verify passes on every catalog model") {
  for (const char* m : {"kappa-poincare-1+1-timelike", "kappa-poincare-1+1-spacelike", "ext-galilei-1+1",
                        "ext-poincare-1+1", "ext-poincare-1+1-nw"}) {
    CAPTURE(m);
    Run r = invoke({"verify", m, "--json"});
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["schema"] == 1);
    CHECK(doc["pass"] == true);
    CHECK(!doc["checks"].empty());
  }
}

TEST_CASE("contracted model file round-trips through verify") {
  std::string path = temp_path("eg.model");
  Run c = invoke({"contract", "ext-poincare-1+1", "--map", "nonrel", "--output", path});
  REQUIRE(c.code == 0);
  Run v = invoke({"verify", path, "--json"});
  CHECK(v.code == 0);
  json doc = json::parse(v.out);
  CHECK(doc["model"] == "ext-poincare-1+1-nonrel");
  CHECK(doc["pass"] == true);

  Run j = invoke({"contract", "ext-poincare-1+1", "--map", "nonrel", "--json"});
  json cj = json::parse(j.out);
  CHECK(cj["model_file"] == slurp(path));
  CHECK(cj["fundamental_constants"]["alpha"] == 1);
  CHECK(cj["parameter_exponents"]["alpha"] == 1);
  std::remove(path.c_str());
}

TEST_CASE("json output is byte-identical across runs") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"dualize", "kappa-poincare-1+1-spacelike", "--json"},
           {"contract", "kappa-poincare-1+1-timelike", "--map", "nonrel", "--json"},
           {"realize", "ext-poincare-1+1", "--json"}}) {
    Run a = invoke(args), b = invoke(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("a corrupted coefficient fails verification with exit 1") {
  std::string file = json::parse(invoke({"contract", "ext-poincare-1+1", "--map", "nonrel", "--json"}).out)["model_file"];
  auto pos = file.find("[chi, th] = (1/2*alpha)");
  REQUIRE(pos != std::string::npos);
  file.replace(pos, std::string("[chi, th] = (1/2*alpha)").size(), "[chi, th] = (1/3*alpha)");
  std::string path = temp_path("bad.model");
  spit(path, file);
  Run r = invoke({"verify", path});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("usage and parse errors exit with 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"bogus"}).code == 2);
  CHECK(invoke({"verify"}).code == 2);
  CHECK(invoke({"verify", "ext-poincare-1+1", "--order", "x"}).code == 2);
  CHECK(invoke({"verify", "no-such-model"}).code == 2);
  CHECK(invoke({"verify", "ext-poincare-1+1", "--checks", "nonsense"}).code == 2);
  CHECK(invoke({"contract", "ext-poincare-1+1", "--map", "nonrel", "--mode", "sideways"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);

  std::string path = temp_path("broken.model");
  spit(path, "model broken\ngenerators: A B\n[A, B] = (((\n");
  Run r = invoke({"verify", path, "--json"});
  CHECK(r.code == 2);
  CHECK(json::parse(r.out)["error"]["kind"] == "parse");
  std::remove(path.c_str());
}

TEST_CASE("explicit exponents below the fundamental constant exit with 3") {
  std::string path = temp_path("div.map");
  spit(path, "[contraction slow]\nM = 2\nP0 = 0\nP1 = 1\nK = 1\nalpha = 0\n");
  Run r = invoke({"contract", "ext-poincare-1+1", "--map", path, "--mode", "explicit", "--json"});
  CHECK(r.code == 3);
  json doc = json::parse(r.out);
  CHECK(doc["error"]["kind"] == "divergent-limit");
  CHECK(doc["error"]["message"].get<std::string>().find("alpha") != std::string::npos);

  // The same file at the right speed for alpha is fine.
  spit(path, "[contraction ok]\nM = 2\nP0 = 0\nP1 = 1\nK = 1\nalpha = 1\n");
  Run ok = invoke({"contract", "ext-poincare-1+1", "--map", path, "--mode", "explicit", "--json"});
  CHECK(ok.code == 0);
  CHECK(json::parse(ok.out)["map"]["name"] == "ok");
  std::remove(path.c_str());
}

TEST_CASE("contraction levels stop where asked") {
  json alg = json::parse(invoke({"contract", "ext-poincare-1+1", "--map", "nonrel", "--level", "algebra", "--json"}).out);
  CHECK(alg.contains("contracted_lie_algebra"));
  CHECK(!alg.contains("contracted_cocommutator"));
  json bi = json::parse(invoke({"contract", "ext-poincare-1+1", "--map", "nonrel", "--level", "bialgebra", "--json"}).out);
  CHECK(bi.contains("contracted_cocommutator"));
  CHECK(!bi.contains("model_file"));
  Run t = invoke({"contract", "kappa-poincare-1+1-timelike", "--map", "nonrel", "--level", "tmatrix", "--json"});
  CHECK(t.code == 0);
  CHECK(json::parse(t.out)["pass"] == true);
}

TEST_CASE("classify solves the nine-parameter family") {
  Run r = invoke({"classify", "ext-poincare-1+1", "--json"});
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["family"]["params"].size() == 9);
  CHECK(!doc["groebner_basis"].empty());
  // Every Groebner element is quadratic or higher in the family parameters.
  for (const auto& p : doc["groebner_basis"])
    for (const auto& t : p["terms"]) {
      int deg = 0;
      for (const auto& [k, e] : t["powers"].items()) deg += e.get<int>();
      CHECK(deg >= 2);
    }
  Run bad = invoke({"classify", "ext-poincare-1+1", "--branch", "t1"});
  CHECK(bad.code == 2);
}

TEST_CASE("dualize recovers the kappa group relations in closed form") {
  Run r = invoke({"dualize", "kappa-poincare-1+1-timelike", "--json"});
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["pass"] == true);
  CHECK(doc["closed_forms"]["[chi, a0]"] == "2*w*sinh(chi)");
  CHECK(doc["closed_forms"]["[chi, a1]"] == "2*w*(cosh(chi) - 1)");
}

TEST_CASE("realize reads the model coproducts off the T-matrix") {
  Run r = invoke({"realize", "ext-poincare-1+1", "--json"});
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["exact_order"].get<int>() >= 6);
  CHECK(doc["readout"].size() == 4);
  CHECK(invoke({"realize", "ext-poincare-1+1", "--rep", "nope"}).code != 0);
}
