#include "oracles.hpp"
#include "toricsym/families.hpp"
#include "toricsym/fan.hpp"
#include "toricsym/mmp.hpp"

#include <doctest.h>

using namespace toricsym;

namespace {

const Lattice z2 = Lattice::standard(2);

IntVector v(std::initializer_list<long> xs) { return make_vector(xs); }

}  // namespace

TEST_CASE("surface fans from rays") {
  SUBCASE("P2") {
    Fan f = build_surface_fan(z2, {v({1, 0}), v({0, 1}), v({-1, -1})});
    CHECK(f.ray_count() == 3);
    CHECK(f.cones().size() == 3);
    auto rep = validate_fan(f);
    CHECK(rep.simplicial);
    CHECK(rep.complete);
    CHECK(rep.smooth);
  }
  SUBCASE("rays are made primitive") {
    Fan f = build_surface_fan(z2, {v({2, 0}), v({0, 1}), v({-1, -1})});
    CHECK(f.ray_index(v({1, 0})).has_value());
    CHECK(!f.ray_index(v({2, 0})).has_value());
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(build_surface_fan(z2, {v({1, 0}), v({0, 1})}), FanError);
    try {
      build_surface_fan(z2, {v({1, 0}), v({0, 1}), v({-1, 1})});
      FAIL("expected an incomplete-fan error");
    } catch (const FanError& e) {
      CHECK(e.kind() == FanErrorKind::Incomplete);
      CHECK(e.reason() == "incomplete");
    }
    CHECK_THROWS_AS(build_surface_fan(z2, {v({1, 0}), v({2, 0}), v({0, 1}), v({-1, -1})}), FanError);
    CHECK_THROWS_AS(build_surface_fan(z2, {v({0, 0}), v({0, 1}), v({-1, -1}), v({1, 0})}), FanError);
  }
  SUBCASE("canonical order starts at the least ray and runs counterclockwise") {
    Fan f = build_surface_fan(z2, {v({0, 1}), v({1, 0}), v({-1, -1})});
    CHECK(f.ray(0) == v({-1, -1}));
    for (std::size_t i = 0; i < f.ray_count(); ++i)
      CHECK(cross(f.ray(i), f.ray((i + 1) % f.ray_count())) > 0);
  }
}

TEST_CASE("lattice coordinates") {
  const Lattice n1 = Lattice::root_a2(), n2 = Lattice::weight_a2();
  CHECK(lattice_coords(n1, v({3, -1, -2})) == v({3, 2}));
  CHECK(lattice_coords(n1, v({3, -2, -1})) == v({3, 1}));
  CHECK(lattice_coords(n2, v({0, 0, 1})) == v({-1, -1}));
  CHECK_THROWS_AS(lattice_coords(n1, v({1, 0, 0})), FanError);
  for (const auto& lat : {n1, n2})
    for (long a = -3; a <= 3; ++a)
      for (long b = -3; b <= 3; ++b) CHECK(lattice_coords(lat, ambient_vector(lat, v({a, b}))) == v({a, b}));
  // The ambient S3 action agrees with the coordinate matrices.
  for (const auto& lat : {n1, n2}) {
    auto gens = s3_generators(lat);
    CHECK((gens[0] * gens[0]).is_identity());
    CHECK((gens[1] * gens[1] * gens[1]).is_identity());
    IntVector amb = lat.kind == LatticeKind::RootA2 ? v({3, -1, -2}) : v({2, 5, -1});
    IntVector swapped{amb[1], amb[0], amb[2]};
    CHECK(gens[0] * lattice_coords(lat, amb) == lattice_coords(lat, swapped));
  }
  CHECK(Lattice::parse("standard:3") == Lattice::standard(3));
  CHECK(Lattice::parse("N1") == n1);
  CHECK_THROWS(Lattice::parse("standard:0"));
}

TEST_CASE("validation of named fans") {
  auto hex = make_family_fan("singular-hexagon").fan;
  auto rep = validate_fan(hex);
  CHECK(rep.simplicial);
  CHECK(rep.complete);
  CHECK(!rep.smooth);
  const Lattice n1 = Lattice::root_a2();
  auto i = *hex.ray_index(lattice_coords(n1, v({3, -1, -2})));
  auto j = *hex.ray_index(lattice_coords(n1, v({3, -2, -1})));
  Cone c{std::min(i, j), std::max(i, j)};
  CHECK(cone_invariant_factors(hex, c) == std::vector<Integer>{1, 3});
  CHECK(oracle::determinantal_invariants(hex.cone_matrix(c)) == std::vector<Integer>{1, 3});

  for (long a = -2; a <= 3; ++a) {
    auto f = make_family_fan(FamilyDescriptor{FamilyKind::BundleOverP3, a}).fan;
    auto r = validate_fan(f);
    CHECK(r.simplicial);
    CHECK(r.complete);
    CHECK(r.smooth);
    for (const auto& cone : f.cones()) CHECK(abs(oracle::cofactor_det(f.cone_matrix(cone))) == 1);
  }
}

TEST_CASE("completeness in rank 3 and above") {
  auto p3 = make_family_fan("projective:3").fan;
  CHECK(validate_fan(p3).complete);
  auto cones = p3.cones();
  cones.pop_back();
  auto holed = Fan::from_cones(p3.lattice(), p3.rays(), cones);
  CHECK(!validate_fan(holed).complete);
  // All cones on one side: a fan covering only part of space.
  auto half = Fan::from_cones(Lattice::standard(3), {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1})}, {{0, 1, 2}});
  CHECK(!validate_fan(half).complete);
  CHECK(validate_fan(make_family_fan("p1111m:3").fan).complete);
  CHECK(!validate_fan(make_family_fan("p1111m:3").fan).smooth);
  CHECK(validate_fan(make_family_fan("projective:1").fan).complete);
}

TEST_CASE("cone construction errors") {
  const Lattice z3 = Lattice::standard(3);
  CHECK_THROWS_AS(Fan::from_cones(z3, {v({1, 0, 0}), v({0, 1, 0})}, {{0, 5}}), FanError);
  CHECK_THROWS_AS(Fan::from_cones(z3, {v({1, 0, 0}), v({2, 0, 0})}, {{0}}), FanError);
  CHECK_THROWS_AS(Fan::from_cones(z3, {v({1, 0, 0}), v({0, 1, 0}), v({1, 1, 0})}, {{0, 1, 2}}), FanError);
  CHECK_THROWS_AS(Fan::from_cones(z3, {v({1, 0, 0}), v({0, 1, 0})}, {{0, 1}, {1, 0}}), FanError);
}

TEST_CASE("fan isomorphisms") {
  auto p2 = p2_fan();
  auto all = fan_isomorphisms(p2, p2);
  CHECK(all.size() == 6);
  CHECK(fan_isomorphism(p2, p2)->is_identity());
  CHECK(!fan_isomorphism(p2, p1xp1_fan()));
  auto n1 = make_family_fan("dp6:n1").fan, n2 = make_family_fan("dp6:n2").fan;
  auto g = fan_isomorphism(n1, n2);
  REQUIRE(g);
  CHECK(is_unimodular(*g));
  CHECK(maps_fan_to(n1, n2, *g));
  CHECK(!fan_isomorphism(n1, make_family_fan("singular-hexagon").fan));
}

TEST_CASE("fan isomorphism is an equivalence on random fans") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 30; ++t) {
    Fan f = random_smooth_surface_fan(rng, 7);
    IntMatrix g = oracle::random_unimodular(rng, 2, 6), h = oracle::random_unimodular(rng, 2, 6);
    std::vector<IntVector> gr, hr;
    for (const auto& r : f.rays()) gr.push_back(g * r);
    Fan fg = build_surface_fan(z2, gr);
    for (const auto& r : fg.rays()) hr.push_back(h * r);
    Fan fhg = build_surface_fan(z2, hr);
    CHECK(fan_isomorphism(f, f));
    auto a = fan_isomorphism(f, fg);
    REQUIRE(a);
    CHECK(maps_fan_to(f, fg, *a));
    auto b = fan_isomorphism(fg, f);
    REQUIRE(b);
    CHECK(maps_fan_to(fg, f, *b));
    CHECK(fan_isomorphism(f, fhg));
  }
}

TEST_CASE("automorphism counts against brute force") {
  for (const char* name : {"projective:2", "p1xp1", "dp6:n1", "dp6:n2", "hirzebruch:0", "hirzebruch:1", "hirzebruch:2",
                           "p11a:2", "singular-hexagon"}) {
    CAPTURE(name);
    auto f = make_family_fan(name).fan;
    CHECK(fan_isomorphisms(f, f).size() == oracle::brute_surface_automorphisms(f, 3));
  }
}

TEST_CASE("smooth implies simplicial on named fans") {
  for (const auto& line : family_catalogue()) CHECK(!line.empty());
  for (const char* name : {"projective:2", "projective:4", "hirzebruch:3", "p11a:2", "p1111m:4", "bundle-p3:-1",
                           "bundle-p1xp1:2", "p1xp1", "dp6:n1", "dp6:n2", "weil-p1", "singular-hexagon"}) {
    auto rep = validate_fan(make_family_fan(name).fan);
    CHECK(rep.complete);
    CHECK(rep.simplicial);
    if (rep.smooth) CHECK(rep.simplicial);
  }
}
