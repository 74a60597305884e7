#include "toricsym/families.hpp"
#include "toricsym/io.hpp"

#include <doctest.h>

using namespace toricsym;

namespace {

std::string data(const std::string& name) { return std::string(TORICSYM_TEST_DATA) + "/" + name; }

Fan load_fan(const std::string& name) { return fan_from_json(read_json_file(data(name))); }

}  // namespace

TEST_CASE("integers in json") {
  CHECK(integer_to_json(Integer(7)).is_number_integer());
  Integer big("-123456789012345678901234567890");
  Json j = integer_to_json(big);
  CHECK(j.is_string());
  CHECK(integer_from_json(j) == big);
  CHECK(integer_from_json(Json("42")) == 42);
  CHECK_THROWS_AS(integer_from_json(Json(1.5)), ParseError);
  CHECK_THROWS_AS(integer_from_json(Json("4x")), ParseError);
  CHECK_THROWS_AS(integer_from_json(Json(true)), ParseError);
  IntMatrix m{{1, 2}, {3, 4}};
  CHECK(matrix_from_json(matrix_to_json(m)) == m);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1,2],[3]]")), ParseError);
}

TEST_CASE("fan files") {
  auto n1 = load_fan("dp6_n1.json");
  CHECK(n1.lattice() == Lattice::root_a2());
  CHECK(fan_isomorphism(n1, make_family_fan("dp6:n1").fan));
  CHECK(maps_fan_to(n1, make_family_fan("dp6:n1").fan, IntMatrix::identity(2)));
  CHECK(maps_fan_to(load_fan("dp6_n2.json"), make_family_fan("dp6:n2").fan, IntMatrix::identity(2)));
  auto p3 = load_fan("p3.json");
  CHECK(validate_fan(p3).smooth);
  CHECK(validate_fan(p3).complete);
  auto big = load_fan("big.json");
  CHECK(validate_fan(big).smooth);
  CHECK(fan_isomorphism(big, load_fan("p2.json")));
  CHECK_THROWS_AS(load_fan("float.json"), ParseError);
  CHECK_THROWS_AS(load_fan("missing.json"), ParseError);
  CHECK_THROWS_AS(load_fan("broken.json"), FanError);
  CHECK_THROWS_AS(fan_from_json(Json::parse(R"({"lattice": "standard:3", "rays": [[1,0,0]]})")), ParseError);
  CHECK_THROWS_AS(fan_from_json(Json::parse(R"({"lattice": "N1", "rays": [[1,0,0]]})")), FanError);
  CHECK_THROWS_AS(fan_from_json(Json::parse(R"({"rays": [[1,0]]})")), ParseError);
}

TEST_CASE("fan round trips") {
  for (const char* name : {"projective:3", "dp6:n1", "dp6:n2", "bundle-p1xp1:2", "singular-hexagon", "p1111m:3"}) {
    CAPTURE(name);
    auto f = make_family_fan(name).fan;
    Json j = fan_to_json(f);
    Fan back = fan_from_json(Json::parse(j.dump()));
    CHECK(back.rays() == f.rays());
    CHECK(back.cones() == f.cones());
    CHECK(back.lattice() == f.lattice());
  }
  // Ambient output for A2 lattices.
  Json j = fan_to_json(make_family_fan("dp6:n1").fan);
  CHECK(j["rays"][0].size() == 3);
}

TEST_CASE("action files") {
  auto n1 = load_fan("dp6_n1.json");
  auto spec = action_from_json(read_json_file(data("s3.json")), n1.lattice());
  CHECK(spec.generators.size() == 2);
  CHECK(!spec.galois);
  CHECK(action_from_generators(n1, spec.generators).order() == 6);
  auto tau = action_from_json(read_json_file(data("s3_tau.json")), n1.lattice());
  REQUIRE(tau.galois);
  CHECK(*tau.galois == -IntMatrix::identity(2));
  auto again = action_from_json(Json::parse(action_to_json(tau).dump()), n1.lattice());
  CHECK(again.generators == tau.generators);
  CHECK(again.galois == tau.galois);
  CHECK_THROWS_AS(action_from_json(Json::parse(R"({"generators": "s3"})"), Lattice::standard(2)), ParseError);
  CHECK_THROWS_AS(action_from_json(Json::parse(R"({"generators": ["spin"]})"), n1.lattice()), ParseError);
  CHECK_THROWS_AS(action_from_json(Json::parse(R"({"generators": [[[1,0,0]]]})"), n1.lattice()), ParseError);
  auto neg = action_from_json(Json::parse(R"({"generators": ["negation"]})"), Lattice::standard(2));
  CHECK(neg.generators == std::vector<IntMatrix>{-IntMatrix::identity(2)});
}

TEST_CASE("field files") {
  auto f = field_from_json(read_json_file(data("qsqrt-7.json")));
  CHECK(f.d == -7);
  CHECK(!satisfies_star(f));
  auto bad = field_from_json(read_json_file(data("bad_witness.json")));
  CHECK(!verify_negative_one_witness(bad));
  CHECK_THROWS_AS(field_from_json(Json::parse(R"({"name": "x", "kind": "p-adic"})")), ParseError);
}

TEST_CASE("reports") {
  auto n1 = load_fan("dp6_n1.json");
  Json r = check_report(n1, s3_action(n1), std::nullopt);
  CHECK(r["smooth"] == true);
  CHECK(r["action"]["invariant_picard_number"] == 1);
  CHECK(r["block_sizes"] == Json::parse("[1,1,1,1,1,1]"));
  std::string text = render_plain(r);
  CHECK(text.find("smooth: true") != std::string::npos);
  Json o = orbit_report(n1, s3_action(n1));
  CHECK(o.dump().find("orbits") != std::string::npos);
}
