#include "oracles.hpp"
#include "toricsym/divisors.hpp"
#include "toricsym/families.hpp"
#include "toricsym/mmp.hpp"

#include <doctest.h>

#include <algorithm>

using namespace toricsym;

namespace {

const Lattice z2 = Lattice::standard(2);

Fan transformed(const Fan& f, const IntMatrix& g) {
  std::vector<IntVector> rays;
  for (const auto& r : f.rays()) rays.push_back(g * r);
  return build_surface_fan(z2, rays);
}

std::vector<IntVector> sorted_rays(const Fan& f) {
  auto r = f.rays();
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

TEST_CASE("class group data is invariant under change of basis") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 60; ++t) {
    Fan f = random_smooth_surface_fan(rng, 9);
    Fan h = transformed(f, oracle::random_unimodular(rng, 2, 5));
    auto cf = class_group(f), ch = class_group(h);
    CHECK(cf.group == ch.group);
    CHECK(cf.group.free_rank == f.ray_count() - 2);
    CHECK(cf.group.torsion.empty());
    CHECK(ray_blocks(f).sizes == ray_blocks(h).sizes);
    CHECK(relation_lattice(f).basis.size() == relation_lattice(h).basis.size());
  }
}

TEST_CASE("automorphism groups are conjugate under change of basis") {
  std::mt19937_64 rng(103);
  for (int t = 0; t < 40; ++t) {
    Fan f = random_smooth_surface_fan(rng, 8);
    IntMatrix g = oracle::random_unimodular(rng, 2, 4);
    Fan h = transformed(f, g);
    auto af = fan_automorphisms(f), ah = fan_automorphisms(h);
    CHECK(af.order() == ah.order());
    auto orbits_f = ray_orbits(af), orbits_h = ray_orbits(ah);
    CHECK(orbits_f.size() == orbits_h.size());
    CHECK(invariant_picard_number(f, af) == invariant_picard_number(h, ah));
    for (const auto& o : orbits_f) CHECK(af.order() % o.size() == 0);
    long rho = invariant_picard_number(f, af);
    CHECK(rho >= 1);
    CHECK(rho <= static_cast<long>(f.ray_count()) - 2);
  }
}

TEST_CASE("blowing up then contracting returns the fan") {
  std::mt19937_64 rng(107);
  for (int t = 0; t < 60; ++t) {
    Fan f = random_smooth_surface_fan(rng, 8);
    auto p = self_intersection_profile(f);
    std::uniform_int_distribution<std::size_t> pick(0, f.ray_count() - 1);
    const std::size_t k = pick(rng);
    const auto& a = f.ray(p.cyclic_order[k]);
    const auto& b = f.ray(p.cyclic_order[(k + 1) % f.ray_count()]);
    auto rays = f.rays();
    rays.push_back(a + b);
    Fan up = build_surface_fan(z2, rays);
    CHECK(validate_fan(up).smooth);
    std::size_t e = *up.ray_index(a + b);
    CHECK(self_intersection_profile(up).self_intersection[e] == -1);
    Fan down = contract_orbit(up, {e});
    CHECK(sorted_rays(down) == sorted_rays(f));
  }
}

TEST_CASE("mmp outcome is invariant under change of basis") {
  std::mt19937_64 rng(109);
  for (int t = 0; t < 30; ++t) {
    Fan f = random_smooth_surface_fan(rng, 8);
    Fan h = transformed(f, oracle::random_unimodular(rng, 2, 4));
    auto tf = run_equivariant_mmp(f, fan_automorphisms(f), MMPMode::ExploreAll);
    auto th = run_equivariant_mmp(h, fan_automorphisms(h), MMPMode::ExploreAll);
    CHECK(tf.size() == th.size());
    auto summary = [](const std::vector<MMPTrace>& ts) {
      std::vector<std::pair<std::string, std::size_t>> s;
      for (const auto& t : ts) s.emplace_back(t.label.to_string(), t.steps.size());
      std::sort(s.begin(), s.end());
      return s;
    };
    CHECK(summary(tf) == summary(th));
  }
}

TEST_CASE("S3-orbit fans are S3-invariant") {
  std::mt19937_64 rng(113);
  std::uniform_int_distribution<long> coord(-3, 3);
  for (const auto& lat : {Lattice::root_a2(), Lattice::weight_a2()}) {
    int built = 0;
    for (int t = 0; t < 200 && built < 25; ++t) {
      IntVector seed = make_vector({coord(rng), coord(rng), coord(rng)});
      if (lat.kind == LatticeKind::RootA2) seed[2] = -seed[0] - seed[1];
      if (is_zero(seed)) continue;
      Fan f;
      try {
        f = s3_orbit_fan(lat, {seed}, true);
      } catch (const FanError&) {
        continue;
      }
      ++built;
      auto g = s3_action(f);
      CHECK(g.order() == 6);
      for (const auto& m : g.elements) CHECK(preserves_fan(f, m));
      CHECK(centralizer_in_gl(g).exhaustive);
    }
    CHECK(built > 0);
  }
}
