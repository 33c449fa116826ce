#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <fstream>
#include <sstream>

#include "common.hpp"
#include "doctest.h"
#include "surfinv/cli.hpp"

using namespace surfinv;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kConfig = SURFINV_EXAMPLE_JSON;

}  // namespace

TEST_CASE("reproduce-appendix prints the dimension vector") {
  auto r = run({"reproduce-appendix", "--config", kConfig});
  CHECK(r.code == 0);
  CHECK(r.out == "3 0 1 2 1 0 0\n");
}

TEST_CASE("classify prints the five cases and four fibre tuples") {
  auto r = run({"classify", "--h0", "1"});
  CHECK(r.code == 0);
  for (const char* needle :
       {"a) B' = G(-6,0)", "b)", "c)", "d)", "e) B' = G(-2,1), K_W^2 = 0 (Kod(W) = 1)",
        "(2,2,2): BF=4 genus=3", "(2,3): BF=12 genus=7", "(2,4): BF=8 genus=5",
        "(3,3): BF=6 genus=4", "EXCLUDED"})
    CHECK(r.out.find(needle) != std::string::npos);
}

TEST_CASE("unknown flags are a usage error") {
  auto r = run({"linsys", "--config", kConfig, "--bogus"});
  CHECK(r.code == 2);
}

TEST_CASE("linsys reports dimension and sections") {
  auto r = run({"linsys", "--config", kConfig, "--system", "C5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("dimension: 1") != std::string::npos);
  CHECK(r.out.find("section 1: x^5") != std::string::npos);

  auto rn = run({"linsys", "--config", kConfig, "--system", "N"});
  CHECK(rn.code == 0);
  CHECK(rn.out.find("dimension: 3") != std::string::npos);

  auto rbad = run({"linsys", "--config", kConfig, "--system", "nope"});
  CHECK(rbad.code == 2);
}

TEST_CASE("invariants text output") {
  auto r = run({"invariants", "--config", kConfig});
  CHECK(r.code == 0);
  CHECK(r.out.find("K^2=3") != std::string::npos);
  CHECK(r.out.find("W2: chi=1 p_g=0 q=0 Kod=1") != std::string::npos);
  CHECK(r.out.find("W3:") != std::string::npos);
  CHECK(r.out.find("verdict=rational") != std::string::npos);
  CHECK(r.out.find("I(p2)=12") != std::string::npos);
}

TEST_CASE("full-report text output") {
  auto r = run({"full-report", "--config", kConfig});
  CHECK(r.code == 0);
  CHECK(r.out.find("appendix dimensions: 3 0 1 2 1 0 0") != std::string::npos);
  CHECK(r.out.find("image degree: 6 (eliminant 6)") != std::string::npos);
  CHECK(r.out.find("bicanonical degree: 2") != std::string::npos);
  CHECK(r.out.find("genus-3 fibration: C.D = [2,0,4], genus 3") != std::string::npos);
}

TEST_CASE("byte-identical output for identical invocations") {
  auto a = run({"invariants", "--config", kConfig, "--json"});
  auto b = run({"invariants", "--config", kConfig, "--json"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  auto c = run({"classify", "--h0", "1", "--json"});
  auto d = run({"classify", "--h0", "1", "--json"});
  CHECK(c.out == d.out);
}

TEST_CASE("JSON report round-trips idempotently") {
  auto r = run({"invariants", "--config", kConfig, "--json"});
  CHECK(r.code == 0);
  Json parsed = Json::parse(r.out);
  CHECK(parsed.at("schema_version") == 1);
  std::string once = parsed.dump(2) + "\n";
  Json reparsed = Json::parse(once);
  CHECK(reparsed.dump(2) + "\n" == once);
  CHECK(once == r.out);
}

TEST_CASE("missing subcommand or config is a usage error") {
  auto r = run({});
  CHECK(r.code == 2);
  auto r2 = run({"invariants"});
  CHECK(r2.code == 2);
  auto r3 = run({"invariants", "--config", "/nonexistent.json"});
  CHECK(r3.code == 2);
  CHECK(r3.err.find("config error") != std::string::npos);
}

TEST_CASE("config schema violations carry JSON-pointer paths") {
  Json j;
  {
    std::ifstream in(kConfig);
    j = Json::parse(in);
  }

  SUBCASE("direction entry outside the declared field") {
    j["directions"][1][0][1] = Json::array({"1", "2", "3"});  // degree 2 entry in Q(r)
    try {
      parse_config(j);
      FAIL("expected field-membership rejection");
    } catch (const ConfigError& e) {
      std::string msg = e.what();
      CHECK(msg.find("/directions/1/0/1") != std::string::npos);
      CHECK(msg.find("outside the declared field") != std::string::npos);
    }
  }
  SUBCASE("malformed rational string") {
    j["points"][0][0] = "not-a-number";
    try {
      parse_config(j);
      FAIL("expected parse rejection");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("/points/0/0") != std::string::npos);
    }
  }
  SUBCASE("wrong class length") {
    j["classes"]["L1"]["mults"] = Json::array({1, 2, 3});
    try {
      parse_config(j);
      FAIL("expected length rejection");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("/classes/L1/mults") != std::string::npos);
    }
  }
}

TEST_CASE("computation failures exit with code 1") {
  // a loadable config whose degree-5 curve system is not one-dimensional
  Json j;
  {
    std::ifstream in(kConfig);
    j = Json::parse(in);
  }
  j["curves"]["C5"]["degree"] = 4;
  std::string path = "/tmp/surfinv_broken_config_test.json";
  {
    std::ofstream out(path);
    out << j.dump(2);
  }
  auto r = run({"invariants", "--config", path});
  CHECK(r.code == 1);
  CHECK(r.err.find("error") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("degree-1 minimal polynomial selects plain-rational mode") {
  Json j;
  j["schema_version"] = 1;
  j["field"] = {{"min_poly", Json::array({"0", "1"})}};
  j["points"] = Json::array({Json::array({Json::array({"0"}), Json::array({"0"})})});
  j["directions"] = Json::array({Json::array()});
  j["exceptional_groups"] = Json::array({Json::array({"E0"})});
  Json zero_class = {{"deg", 0}, {"mults", Json::array({0})}};
  j["classes"] = {{"D1", zero_class}, {"D2", zero_class}, {"D3", zero_class},
                  {"L1", zero_class}, {"L2", zero_class}, {"L3", zero_class}};
  Json curve = {{"degree", 1}, {"mults", Json::array({Json::array({1})})}};
  j["curves"] = {{"C5", curve}, {"C6", curve}};
  ExampleConfig cfg = parse_config(j);
  CHECK(cfg.field == nullptr);
  CHECK(cfg.geometry.points[0].first.is_rational());
}

TEST_CASE("SURFINV_THREADS is validated") {
  setenv("SURFINV_THREADS", "2", 1);
  CHECK(thread_cap() == 2);
  setenv("SURFINV_THREADS", "banana", 1);
  CHECK_THROWS_AS(thread_cap(), std::invalid_argument);
  setenv("SURFINV_THREADS", "0", 1);
  CHECK_THROWS_AS(thread_cap(), std::invalid_argument);
  unsetenv("SURFINV_THREADS");
  CHECK(thread_cap() >= 1);
}
