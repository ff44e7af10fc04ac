#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "sl2h/errors.hpp"
#include "sl2h/reports.hpp"

using namespace sl2h;
using namespace sl2h::reports;

namespace {
EngineConfig config(int p) {
  EngineConfig c;
  c.p = p;
  c.validate();
  return c;
}
}  // namespace

TEST_CASE("engine config") {
  EngineConfig c;
  c.validate();
  CHECK(c.precision >= 2 * c.lambda_max + c.level + 4);
  EngineConfig bad;
  bad.precision = 5;
  CHECK_THROWS_AS(bad.validate(), Error);
  EngineConfig two;
  two.p = 2;
  try {
    two.validate();
    FAIL("p = 2 accepted");
  } catch (const Error& e) {
    CHECK(e.is_resource());
  }
  EngineConfig tol;
  tol.tolerance = 1e-6;
  CHECK_THROWS_AS(tol.validate(), Error);
  EngineConfig fl;
  fl.scalar_mode = "float";
  fl.validate();
  CHECK(fl.tolerance.has_value());

  const char* path = "test_reports_cfg.txt";
  std::ofstream(path) << "# comment\np = 5\nlambda_max=3\nseed=11\n";
  EngineConfig f;
  apply_config(f, read_config_file(path));
  CHECK(f.p == 5);
  CHECK(f.lambda_max == 3);
  CHECK(f.seed == 11);
  std::ofstream(path) << "colour=blue\n";
  CHECK_THROWS_AS(apply_config(f, read_config_file(path)), Error);
  std::remove(path);
}

TEST_CASE("function specs") {
  auto cfg = config(3);
  auto T = std::make_shared<const Tree>(3, cfg.precision);
  CHECK(parse_f("zero", T).is_zero());
  CHECK(parse_f("indicator:K1", T) == indicator_K(T, 1));
  CHECK(parse_f("shell:1", T) == shell_indicator(T, 1));
  CHECK_THROWS_AS(parse_f("e_sigma:cusp9", T), Error);
  CHECK_THROWS_AS(parse_f("nonsense", T), Error);
  const char* path = "test_reports_f.txt";
  auto f = parse_f("e_sigma:cusp2", T);
  std::ofstream(path) << f.serialize();
  CHECK(parse_f(std::string("file:") + path, T) == f);
  std::remove(path);
}

TEST_CASE("wo reports") {
  auto r = report_wo(config(5), "indicator:K0", "[[2,0],[0,inv(2)]]");
  CHECK(r["value"] == "1");
  CHECK(r["anchor"] == "WO_g(f)=phi(0)");
  for (const auto& d : r["series"]["second_differences"]) CHECK(d == "0");
  CHECK(report_wo(config(3), "zero", "[[0,1],[-1,0]]")["value"] == "0");
  CHECK_THROWS_AS(report_wo(config(3), "indicator:K0", "[[3,0],[0,1/3]]"), Error);
}

TEST_CASE("wo agrees with char-verify") {
  auto cfg = config(3);
  auto w = report_wo(cfg, "e_sigma:cusp0", "[[0,1],[-1,0]]");
  auto cv = report_char_verify(cfg, "elliptic");
  bool found = false;
  for (const auto& pr : cv["pairs"])
    if (pr["sigma"] == "cusp0" && pr["g"] == "[[0,1],[-1,0]]") {
      CHECK(pr["O(e_sigma)"] == w["value"]);
      found = true;
    }
  CHECK(found);
  CHECK(cv["pass"] == true);
  EngineConfig two;
  two.p = 7;
  two.validate();
  CHECK_THROWS_AS(report_char_verify(two, "elliptic"), Error);
}

TEST_CASE("weightless reports") {
  auto r = report_weightless(config(3), "indicator:K0", 2);
  CHECK(r["weightless"] == false);
  CHECK(r.contains("witness"));
  CHECK(r["pass"] == false);
  auto e = report_weightless(config(5), "e_sigma:cusp1", 4);
  CHECK(e["weightless"] == true);
  CHECK(e["invariant"] == true);
}

TEST_CASE("tate and homology reports") {
  auto cfg = config(3);
  auto t = report_tate(cfg, "cocycle-identity", 100);
  CHECK(t["pass"] == true);
  CHECK(t["checks"]["cocycle-identity"]["identity_holds"] == 100);
  CHECK_THROWS_AS(report_tate(cfg, "nope", 1), Error);
  auto h = report_homology(cfg, "star", 2);
  CHECK(h["interior_exact"] == true);
  CHECK(h["composite_zero"] == true);
}

TEST_CASE("reports are deterministic") {
  auto cfg = config(5);
  CHECK(report_weightless(cfg, "e_sigma:cusp0", 3).dump() == report_weightless(cfg, "e_sigma:cusp0", 3).dump());
  CHECK(report_tate(cfg, "all", 20).dump() == report_tate(cfg, "all", 20).dump());
  auto other = cfg;
  other.seed = 8;
  CHECK(report_tate(cfg, "cocycle-identity", 5).dump() != report_tate(other, "cocycle-identity", 5).dump());
}
