#include "toricsym/divisors.hpp"
#include "toricsym/families.hpp"
#include "toricsym/mmp.hpp"

#include <doctest.h>

#include <algorithm>

using namespace toricsym;

namespace {

const Lattice z2 = Lattice::standard(2);

IntVector v(std::initializer_list<long> xs) { return make_vector(xs); }

Integer a_of(const Fan& f, const IntVector& ray) { return self_intersection_profile(f).a[*f.ray_index(ray)]; }

Fan twelve_ray_fan() {
  return build_surface_fan(z2, {v({1, 0}), v({2, 1}), v({1, 1}), v({1, 2}), v({0, 1}), v({-1, 1}), v({-1, 0}),
                                v({-2, -1}), v({-1, -1}), v({-1, -2}), v({0, -1}), v({1, -1})});
}

bool adjacent(const SelfIntersectionProfile& p, std::size_t i, std::size_t j) {
  const auto& o = p.cyclic_order;
  const std::size_t n = o.size();
  auto pi = std::find(o.begin(), o.end(), i) - o.begin();
  auto pj = std::find(o.begin(), o.end(), j) - o.begin();
  return (pi + 1) % n == static_cast<std::size_t>(pj) || (pj + 1) % n == static_cast<std::size_t>(pi);
}

}  // namespace

TEST_CASE("self-intersection profiles") {
  auto p2 = self_intersection_profile(p2_fan());
  for (const auto& a : p2.a) CHECK(a == -1);
  for (const auto& s : p2.self_intersection) CHECK(s == 1);
  auto hex = self_intersection_profile(hexagon_fan());
  for (const auto& a : hex.a) CHECK(a == 1);
  for (long k = 0; k <= 3; ++k) {
    auto f = make_family_fan(FamilyDescriptor{FamilyKind::Hirzebruch, k}).fan;
    auto p = self_intersection_profile(f);
    std::vector<Integer> around;
    for (auto i : p.cyclic_order) around.push_back(p.self_intersection[i]);
    // Some rotation reads (0, k, 0, -k).
    bool found = false;
    for (std::size_t r = 0; r < 4; ++r) {
      std::rotate(around.begin(), around.begin() + 1, around.end());
      found = found || around == std::vector<Integer>{0, k, 0, -k};
    }
    CHECK(found);
  }
  // v_{i-1} + v_{i+1} = a_i v_i on random fans.
  std::mt19937_64 rng(19);
  for (int t = 0; t < 30; ++t) {
    Fan f = random_smooth_surface_fan(rng, 9);
    auto p = self_intersection_profile(f);
    const auto& o = p.cyclic_order;
    for (std::size_t k = 0; k < o.size(); ++k) {
      const auto& prev = f.ray(o[(k + o.size() - 1) % o.size()]);
      const auto& next = f.ray(o[(k + 1) % o.size()]);
      CHECK(prev + next == scaled(f.ray(o[k]), p.a[o[k]]));
    }
  }
  CHECK_THROWS_AS(self_intersection_profile(make_family_fan("singular-hexagon").fan), MMPError);
  CHECK_THROWS_AS(self_intersection_profile(make_family_fan("projective:3").fan), MMPError);
}

TEST_CASE("contractible orbits") {
  auto n1 = make_family_fan("dp6:n1").fan, n2 = make_family_fan("dp6:n2").fan;
  CHECK(contractible_orbits(n1, s3_action(n1)).empty());
  auto orbits = contractible_orbits(n2, s3_action(n2));
  CHECK(orbits.size() == 2);
  for (const auto& o : orbits) CHECK(o.size() == 3);
  CHECK(contractible_orbits(p2_fan(), trivial_action(p2_fan())).empty());
  // Trivial action on the hexagon: every ray is its own orbit.
  CHECK(contractible_orbits(hexagon_fan(), trivial_action(hexagon_fan())).size() == 6);
}

TEST_CASE("contracting an orbit") {
  Fan bl = build_surface_fan(z2, {v({1, 0}), v({1, 1}), v({0, 1}), v({-1, -1})});
  CHECK(a_of(bl, v({1, 1})) == 1);
  Fan down = contract_orbit(bl, {*bl.ray_index(v({1, 1}))});
  CHECK(fan_isomorphism(down, p2_fan()));

  Fan twelve = twelve_ray_fan();
  std::vector<std::size_t> outer;
  for (const auto& r : {v({2, 1}), v({1, 2}), v({-1, 1}), v({-2, -1}), v({-1, -2}), v({1, -1})})
    outer.push_back(*twelve.ray_index(r));
  std::sort(outer.begin(), outer.end());
  auto g = fan_automorphisms(twelve);
  auto orbits = contractible_orbits(twelve, g);
  REQUIRE(orbits.size() == 1);
  CHECK(orbits.front() == outer);
  CHECK(fan_isomorphism(contract_orbit(twelve, outer), hexagon_fan()));

  Fan hex = hexagon_fan();
  try {
    contract_orbit(hex, {0, 1});
    FAIL("adjacent rays should not contract together");
  } catch (const MMPError& e) {
    CHECK(e.kind == MMPError::Kind::NotContractible);
  }
  CHECK_THROWS_AS(contract_orbit(p2_fan(), {0}), MMPError);
}

TEST_CASE("terminal labels") {
  CHECK(classify_terminal(p2_fan(), trivial_action(p2_fan())).kind == TerminalLabel::Kind::P2);
  auto n1 = make_family_fan("dp6:n1").fan;
  CHECK(classify_terminal(n1, s3_action(n1)).kind == TerminalLabel::Kind::DP6Terminal);
  CHECK(classify_terminal(p1xp1_fan(), trivial_action(p1xp1_fan())).kind == TerminalLabel::Kind::P1xP1);
  auto f2 = make_family_fan("hirzebruch:2").fan;
  auto label = classify_terminal(f2, trivial_action(f2));
  CHECK(label.kind == TerminalLabel::Kind::Hirzebruch);
  CHECK(label.hirzebruch_a == 2);
  auto traces = run_equivariant_mmp(f2, trivial_action(f2), MMPMode::FirstOrbit);
  REQUIRE(traces.size() == 1);
  CHECK(traces[0].steps.empty());
  CHECK(traces[0].label == label);
  auto f1 = make_family_fan("hirzebruch:1").fan;
  auto t1 = run_equivariant_mmp(f1, trivial_action(f1), MMPMode::FirstOrbit);
  CHECK(t1[0].steps.size() == 1);
  CHECK(t1[0].label.kind == TerminalLabel::Kind::P2);
}

TEST_CASE("runs on the hexagon lattices") {
  auto n2 = make_family_fan("dp6:n2").fan;
  for (auto mode : {MMPMode::FirstOrbit, MMPMode::ExploreAll}) {
    auto traces = run_equivariant_mmp(n2, s3_action(n2), mode);
    CHECK(traces.size() == (mode == MMPMode::FirstOrbit ? 1u : 2u));
    for (const auto& t : traces) {
      CHECK(t.steps.size() == 1);
      CHECK(t.label.kind == TerminalLabel::Kind::P2);
      CHECK(t.steps[0].contracted.size() == 3);
    }
  }
  auto n1 = make_family_fan("dp6:n1").fan;
  auto t = run_equivariant_mmp(n1, s3_action(n1), MMPMode::ExploreAll);
  REQUIRE(t.size() == 1);
  CHECK(t[0].steps.empty());
  CHECK(t[0].label.kind == TerminalLabel::Kind::DP6Terminal);
}

TEST_CASE("adjacent (-1)-rays have opposite outer neighbours") {
  CHECK(check_adjacent_minus_one_rule(hexagon_fan()).size() == 6);
  CHECK(check_adjacent_minus_one_rule(p2_fan()).empty());
  Fan five = build_surface_fan(z2, {v({1, 0}), v({1, 1}), v({0, 1}), v({-1, 0}), v({0, -1})});
  auto facts = check_adjacent_minus_one_rule(five);
  CHECK(facts.size() == 2);
  for (const auto& f : facts) CHECK(is_zero(f.v0 + f.v3));
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) CHECK_NOTHROW(check_adjacent_minus_one_rule(random_smooth_surface_fan(rng, 10)));
}

TEST_CASE("trace invariants on random fans") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 40; ++t) {
    Fan f = random_smooth_surface_fan(rng, 9);
    auto g = fan_automorphisms(f);
    for (const auto& trace : run_equivariant_mmp(f, g, MMPMode::ExploreAll)) {
      std::size_t rays = f.ray_count();
      for (const auto& step : trace.steps) {
        CHECK(step.before.ray_count() == rays);
        auto p = self_intersection_profile(step.before);
        std::vector<std::size_t> idx;
        for (const auto& r : step.contracted) idx.push_back(*step.before.ray_index(r));
        for (auto i : idx) CHECK(p.self_intersection[i] == -1);
        for (auto i : idx)
          for (auto j : idx)
            if (i != j) CHECK(!adjacent(p, i, j));
        rays -= step.contracted.size();
      }
      CHECK(trace.terminal.ray_count() == rays);
      CHECK(validate_fan(trace.terminal).smooth);
      CHECK(contractible_orbits(trace.terminal, restrict_action(g, trace.terminal)).empty());
      // Picard rank drops by the orbit size at every step.
      CHECK(class_group(trace.terminal).group.free_rank == rays - 2);
    }
  }
}
