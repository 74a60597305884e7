#include "toricsym/families.hpp"
#include "toricsym/verify.hpp"

#include <doctest.h>

#include <algorithm>

using namespace toricsym;

namespace {

bool failed(const std::vector<CriterionResult>& rs, const std::string& id) {
  return std::any_of(rs.begin(), rs.end(), [&](const CriterionResult& r) { return r.id == id && !r.passed; });
}

// dP6 with one extra ray: still S3-compatible as a fan file, but the wrong variety.
FamilyFan mutated_dp6(const FamilyDescriptor& d) {
  FamilyFan ff = make_family_fan(d);
  if (d.kind != FamilyKind::DP6) return ff;
  auto rays = ff.fan.rays();
  rays.push_back(rays[0] + rays[1]);
  ff.fan = build_surface_fan(ff.fan.lattice(), rays);
  return ff;
}

// Weights of P(1,1,1,1,m) read as m + 1.
FamilyFan mutated_weights(const FamilyDescriptor& d) {
  if (d.kind != FamilyKind::WeightedP1111m) return make_family_fan(d);
  FamilyDescriptor shifted = d;
  shifted.param = d.param + 1;
  FamilyFan ff = make_family_fan(shifted);
  ff.descriptor = d;
  return ff;
}

}  // namespace

TEST_CASE("every criterion passes") {
  auto rs = run_verify_paper();
  REQUIRE(rs.size() == criterion_ids().size());
  for (const auto& r : rs) {
    CAPTURE(format_result_line(r));
    CHECK(r.passed);
    CHECK(!r.anchor.empty());
  }
}

TEST_CASE("single criterion") {
  VerifyOptions o;
  o.only = "A7";
  auto rs = run_verify_paper(o);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].id == "A7");
  o.only = "A99";
  CHECK_THROWS_AS(run_verify_paper(o), std::invalid_argument);
}

TEST_CASE("injected faults are caught") {
  VerifyOptions o;
  o.builder = mutated_dp6;
  auto rs = run_verify_paper(o);
  CHECK(failed(rs, "A5"));
  CHECK(failed(rs, "A6"));
  o.builder = mutated_weights;
  rs = run_verify_paper(o);
  CHECK(failed(rs, "A3"));
}

TEST_CASE("result lines") {
  CriterionResult r{"A4", "cone invariants", true, "ok"};
  auto line = format_result_line(r);
  CHECK(line.rfind("A4", 0) == 0);
  CHECK(line.find("PASS") != std::string::npos);
  r.passed = false;
  CHECK(format_result_line(r).find("FAIL") != std::string::npos);
}
