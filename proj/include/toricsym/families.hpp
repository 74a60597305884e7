#pragma once

// Named fans, the S3-orbit fan builder on N1/N2, the invariant-fan
// enumerator, and the encoded symmetric-action tables.

#include "toricsym/fan.hpp"
#include "toricsym/symmetry.hpp"

#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace toricsym {

enum class FamilyKind {
  ProjectiveSpace,   // projective:n
  Hirzebruch,        // hirzebruch:a
  WeightedP11a,      // p11a:a
  WeightedP1111m,    // p1111m:m
  BundleOverP3,      // bundle-p3:a
  BundleOverP1xP1,   // bundle-p1xp1:a
  P1xP1,             // p1xp1
  DP6,               // dp6:n1 | dp6:n2
  Q22,               // q22:n1 | q22:n2
  WeilRestrictionP1, // weil-p1
  SingularHexagon,   // singular-hexagon
};

struct FamilyDescriptor {
  FamilyKind kind = FamilyKind::ProjectiveSpace;
  long param = 0;
  Lattice lattice = Lattice::weight_a2();  // DP6 / Q22 only

  // "name" or "name:param"; throws std::invalid_argument.
  static FamilyDescriptor parse(std::string_view text);
  std::string to_string() const;
};

struct FamilyFan {
  FamilyDescriptor descriptor;
  Fan fan;
  std::optional<GaloisDatum> galois;
};

FamilyFan make_family_fan(const FamilyDescriptor& d);
inline FamilyFan make_family_fan(std::string_view text) { return make_family_fan(FamilyDescriptor::parse(text)); }

// One line per family: grammar and a short description.
std::vector<std::string> family_catalogue();

// Rays = S3-orbits of the ambient seeds (and their negatives if asked),
// primitivized and deduplicated.
Fan s3_orbit_fan(const Lattice& lattice, const std::vector<IntVector>& seeds, bool include_negation);

struct EnumerationOptions {
  Lattice lattice = Lattice::weight_a2();
  long height = 1;
  std::size_t max_rays = 6;
  bool require_smooth = true;
  bool include_negation = false;
};

// All S3-orbit fans over seed sets of primitive vectors with ambient
// coordinates in [-height, height], up to fan isomorphism, sorted by
// (ray count, rays).
std::vector<Fan> enumerate_invariant_fans(const EnumerationOptions& opts);

// Smooth complete surface fan in Z^2 obtained from P2 or a Hirzebruch fan by
// random torus-fixed-point blow-ups, then a random change of basis.
Fan random_smooth_surface_fan(std::mt19937_64& rng, std::size_t max_rays);

// Encoded conclusions about maximal symmetric-group actions.
struct CriteriaQuery {
  enum class Kind { S6OnWeightedP1111m, S6OnBundleOverP3, MaxDegree };
  enum class BaseField { Complex, StarField };
  Kind kind = Kind::MaxDegree;
  long param = 0;  // m, a, or the dimension n
  BaseField field = BaseField::Complex;
};

struct CriteriaAnswer {
  std::optional<bool> admits_action;
  std::optional<long> max_degree;
  std::vector<std::string> varieties;
  bool infinite_family = false;
};

CriteriaAnswer symmetric_action_criteria(const CriteriaQuery& q);

struct DiagonalObstructionReport {
  long a = 0;
  Fan subdivision_1;  // diagonal through (1,0,a) and (-1,0,0)
  Fan subdivision_2;  // diagonal through (0,1,a) and (0,-1,0)
  Fan six_ray_fan;
  IntMatrix swap;
  bool swap_exchanges_subdivisions = false;
  bool swap_fixes_a_subdivision = false;
  bool swap_preserves_six_ray_fan = false;
  // Whether the subdivisions are genuine complete simplicial fans (the
  // quadrangular cone degenerates to a half-space boundary when a = 0).
  bool subdivisions_are_fans = false;
};

DiagonalObstructionReport check_diagonal_obstruction(long a);

// The group of affine maps x -> s x + t of N/2N, with s from the S3 action
// and t in N/2N, realized as permutations of the four points.
struct KleinSemidirectCheck {
  std::size_t order = 0;
  std::size_t center_size = 0;
  std::size_t s3_image_order = 0;  // S3 acting on the three nonzero points
};

KleinSemidirectCheck klein_semidirect_s3_check(const Lattice& lattice);

}  // namespace toricsym
