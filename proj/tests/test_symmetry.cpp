#include "toricsym/divisors.hpp"
#include "toricsym/families.hpp"
#include "toricsym/mmp.hpp"
#include "toricsym/symmetry.hpp"

#include <doctest.h>

#include <algorithm>

using namespace toricsym;

namespace {

std::vector<std::size_t> orbit_sizes(const GroupAction& g) {
  std::vector<std::size_t> s;
  for (const auto& o : ray_orbits(g)) s.push_back(o.size());
  std::sort(s.begin(), s.end());
  return s;
}

void check_action_consistent(const Fan& f, const GroupAction& g) {
  for (std::size_t k = 0; k < g.order(); ++k) {
    const IntMatrix& m = g.elements[k];
    CHECK(preserves_fan(f, m));
    for (std::size_t i = 0; i < f.ray_count(); ++i) CHECK(m * f.ray(i) == f.ray(g.ray_perms[k][i]));
    for (const auto& b : g.elements) CHECK(std::binary_search(g.elements.begin(), g.elements.end(), m * b));
  }
  for (const auto& o : ray_orbits(g)) CHECK(g.order() % o.size() == 0);
}

}  // namespace

TEST_CASE("automorphism groups") {
  CHECK(fan_automorphisms(p1xp1_fan()).order() == 8);
  CHECK(fan_automorphisms(hexagon_fan()).order() == 12);
  CHECK(fan_automorphisms(p2_fan()).order() == 6);
  for (const char* name : {"dp6:n1", "hirzebruch:2", "singular-hexagon"}) {
    auto f = make_family_fan(name).fan;
    check_action_consistent(f, fan_automorphisms(f));
  }
}

TEST_CASE("actions from generators") {
  auto n2 = make_family_fan("dp6:n2").fan;
  auto g = s3_action(n2);
  CHECK(g.order() == 6);
  CHECK(g.faithful_on_rays);
  check_action_consistent(n2, g);
  CHECK(trivial_action(p2_fan()).order() == 1);
  CHECK(action_from_generators(p2_fan(), {IntMatrix::identity(2)}).order() == 1);
  auto n1 = make_family_fan("dp6:n1").fan;
  auto with_tau = with_galois(n1, s3_action(n1), GaloisDatum{-IntMatrix::identity(2), "quadratic"});
  CHECK(with_tau.order() == 12);
  check_action_consistent(n1, with_tau);
}

TEST_CASE("generator errors") {
  auto p2 = p2_fan();
  CHECK_THROWS_AS(action_from_generators(p2, {IntMatrix{{2, 0}, {0, 1}}}), SymmetryError);
  CHECK_THROWS_AS(action_from_generators(p2, {IntMatrix{{0, -1}, {1, 0}}}), SymmetryError);
  // Order-6 rotation of the hexagon against a cap of 3.
  try {
    action_from_generators(hexagon_fan(), {IntMatrix{{1, -1}, {1, 0}}}, {}, 3);
    FAIL("expected closure cap");
  } catch (const SymmetryError& e) {
    CHECK(e.kind == SymmetryError::Kind::ClosureExceedsBound);
  }
}

TEST_CASE("orbits and invariant Picard numbers") {
  auto n2 = make_family_fan("dp6:n2").fan, n1 = make_family_fan("dp6:n1").fan;
  auto g2 = s3_action(n2), g1 = s3_action(n1);
  CHECK(orbit_sizes(g2) == std::vector<std::size_t>{3, 3});
  CHECK(orbit_sizes(g1) == std::vector<std::size_t>{6});
  CHECK(orbit_sizes(trivial_action(p2_fan())) == std::vector<std::size_t>{1, 1, 1});
  CHECK(invariant_picard_number(n1, g1) == 1);
  CHECK(invariant_picard_number(n2, g2) == 2);
  CHECK(invariant_picard_number(p2_fan(), trivial_action(p2_fan())) == 1);
  CHECK(fixed_space_dimension(g1) == 0);
  CHECK(fixed_space_dimension(g2) == 0);
  for (const char* name : {"hirzebruch:1", "bundle-p3:2", "p1111m:2", "dp6:n1"}) {
    auto f = make_family_fan(name).fan;
    CHECK(invariant_picard_number(f, trivial_action(f)) == static_cast<long>(class_group(f).group.free_rank));
  }
}

TEST_CASE("centralizers") {
  const std::vector<IntMatrix> pm = {-IntMatrix::identity(2), IntMatrix::identity(2)};
  for (const char* name : {"dp6:n1", "dp6:n2"}) {
    auto f = make_family_fan(name).fan;
    auto c = centralizer_in_gl(s3_action(f));
    CHECK(c.exhaustive);
    CHECK(c.elements == pm);
  }
  auto p1 = make_family_fan("projective:1").fan;
  auto c = centralizer_in_gl(trivial_action(p1));
  CHECK(c.exhaustive);
  CHECK(c.elements == std::vector<IntMatrix>{IntMatrix{{-1}}, IntMatrix{{1}}});
  // Trivial group in rank 2: commutant is everything; bounded search only.
  auto big = centralizer_in_gl(trivial_action(p2_fan()), 1);
  CHECK(!big.exhaustive);
  CHECK(big.commutant_basis.size() == 4);
  CHECK(std::all_of(big.elements.begin(), big.elements.end(), [](const IntMatrix& m) { return is_unimodular(m); }));
  CHECK_THROWS_AS(centralizer_in_gl(trivial_action(make_family_fan("projective:4").fan)), SymmetryError);
}

TEST_CASE("Galois forms") {
  auto hex = make_family_fan("q22:n1");
  auto g = s3_action(hex.fan);
  REQUIRE(hex.galois);
  CHECK(classify_galois_form(hex.fan, g, *hex.galois) == FormClass::NegationTwist);
  auto weil = make_family_fan("weil-p1");
  REQUIRE(weil.galois);
  CHECK(classify_galois_form(weil.fan, trivial_action(weil.fan), *weil.galois) == FormClass::FactorSwap);
  CHECK(classify_galois_form(p2_fan(), trivial_action(p2_fan()), GaloisDatum{IntMatrix::identity(2)}) == FormClass::Split);
  // An involution that is neither -I nor a block swap.
  CHECK(classify_galois_form(p1xp1_fan(), trivial_action(p1xp1_fan()), GaloisDatum{IntMatrix{{-1, 0}, {0, 1}}}) ==
        FormClass::Other);
  // The swap does not commute with the order-4 rotation.
  auto rot = action_from_generators(p1xp1_fan(), {IntMatrix{{0, -1}, {1, 0}}});
  CHECK_THROWS_AS(classify_galois_form(p1xp1_fan(), rot, *weil.galois), SymmetryError);
  CHECK_THROWS_AS(classify_galois_form(p2_fan(), trivial_action(p2_fan()), GaloisDatum{IntMatrix{{0, -1}, {1, -1}}}),
                  SymmetryError);
  CHECK(to_string(FormClass::FactorSwap) == "factor-swap");
}

TEST_CASE("no S3 acts on a four-ray surface fan") {
  std::mt19937_64 rng(13);
  std::vector<Fan> fans = {p1xp1_fan()};
  for (long a = 0; a <= 4; ++a) fans.push_back(make_family_fan(FamilyDescriptor{FamilyKind::Hirzebruch, a}).fan);
  for (int t = 0; t < 40; ++t) {
    Fan f = random_smooth_surface_fan(rng, 4);
    if (f.ray_count() == 4) fans.push_back(f);
  }
  for (const auto& f : fans) CHECK(fan_automorphisms(f).order() % 3 != 0);
}
