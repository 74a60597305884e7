#pragma once

#include "toricsym/intlin.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricsym {

enum class LatticeKind { Standard, RootA2, WeightA2 };

// Z^n, or one of the two rank-2 lattices carrying the coordinate-permutation
// action of S3:
//   RootA2   N1 = {(x,y,z) in Z^3 : x+y+z = 0}, basis f1 = (1,-1,0), f2 = (0,1,-1)
//   WeightA2 N2 = Z^3 / Z(1,1,1),            basis [e1], [e2]
struct Lattice {
  LatticeKind kind = LatticeKind::Standard;
  std::size_t rank = 0;

  static Lattice standard(std::size_t n) { return {LatticeKind::Standard, n}; }
  static Lattice root_a2() { return {LatticeKind::RootA2, 2}; }
  static Lattice weight_a2() { return {LatticeKind::WeightA2, 2}; }

  bool is_a2() const { return kind != LatticeKind::Standard; }
  // Length of the ambient vectors accepted by lattice_coords.
  std::size_t ambient_dimension() const { return is_a2() ? 3 : rank; }
  // "standard:n", "rootA2", "weightA2"
  std::string name() const;
  static Lattice parse(const std::string& name);

  bool operator==(const Lattice&) const = default;
};

enum class FanErrorKind {
  RankMismatch,
  TooFewRays,
  ZeroRay,
  ParallelRays,
  Incomplete,
  BadCone,
  NotSimplicial,
  NotSmooth,
  NotInLattice,
  Internal,
};

class FanError : public std::runtime_error {
public:
  FanError(FanErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  FanErrorKind kind() const { return kind_; }
  // Short machine-readable reason, e.g. "incomplete".
  std::string reason() const;

private:
  FanErrorKind kind_;
};

IntVector lattice_coords(const Lattice& lattice, const IntVector& ambient);
// Inverse of lattice_coords; for WeightA2 the representative with z = 0.
IntVector ambient_vector(const Lattice& lattice, const IntVector& coords);

// Matrix (in lattice coordinates) of the ambient coordinate permutation
// x_i -> x_{perm[i]}-slot, i.e. the image of e_i is e_{perm[i]}.
IntMatrix coordinate_permutation(const Lattice& lattice, const std::array<int, 3>& perm);
// Transposition (0 1) and 3-cycle (0 1 2).
std::vector<IntMatrix> s3_generators(const Lattice& lattice);

// Sorted ray-index set.
using Cone = std::vector<std::size_t>;

class Fan {
public:
  Fan() = default;

  // Primitivizes rays, rejects zero and parallel rays, bad cone indices and
  // cones whose rays are linearly dependent.
  static Fan from_cones(const Lattice& lattice, std::vector<IntVector> rays, std::vector<Cone> cones);
  // No validation beyond shapes. Used for configurations that are not fans
  // (e.g. degenerate subdivisions examined combinatorially).
  static Fan unchecked(const Lattice& lattice, std::vector<IntVector> rays, std::vector<Cone> cones);

  const Lattice& lattice() const { return lattice_; }
  std::size_t rank() const { return lattice_.rank; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const IntVector& ray(std::size_t i) const { return rays_[i]; }
  std::size_t ray_count() const { return rays_.size(); }
  const std::vector<Cone>& cones() const { return cones_; }

  std::optional<std::size_t> ray_index(const IntVector& v) const;
  // Rank x k matrix whose columns are the cone's rays.
  IntMatrix cone_matrix(const Cone& cone) const;
  // Rank x n matrix of all rays.
  IntMatrix ray_matrix() const;

  bool operator==(const Fan&) const = default;

private:
  Fan(Lattice lattice, std::vector<IntVector> rays, std::vector<Cone> cones)
      : lattice_(lattice), rays_(std::move(rays)), cones_(std::move(cones)) {}

  Lattice lattice_;
  std::vector<IntVector> rays_;
  std::vector<Cone> cones_;
};

// Surface fan from rays alone: rays primitivized, ordered counterclockwise
// starting from the lexicographically least one, cones = adjacent pairs.
// Throws FanError(Incomplete) when some angular gap is >= pi.
Fan build_surface_fan(const Lattice& lattice, std::vector<IntVector> rays);

// Counterclockwise order of the rays of a rank-2 fan, starting from the
// lexicographically least ray.
std::vector<std::size_t> counterclockwise_order(const std::vector<IntVector>& rays);

struct FanReport {
  bool simplicial = false;
  bool complete = false;
  bool smooth = false;
  std::optional<std::vector<std::size_t>> surface_cyclic_order;
};

FanReport validate_fan(const Fan& fan);

std::vector<Integer> cone_invariant_factors(const Fan& fan, const Cone& cone);

// g maps ray i to ray perm[i] for every i, or nullopt.
std::optional<std::vector<std::size_t>> ray_permutation(const Fan& from, const Fan& to, const IntMatrix& g);
// g maps the rays of `from` bijectively onto those of `to` and cones onto cones.
bool maps_fan_to(const Fan& from, const Fan& to, const IntMatrix& g);
inline bool preserves_fan(const Fan& fan, const IntMatrix& g) { return maps_fan_to(fan, fan, g); }

// All unimodular g with g(F1) = F2, sorted ascending.
std::vector<IntMatrix> fan_isomorphisms(const Fan& f1, const Fan& f2);
// The element of fan_isomorphisms closest to the identity: least g - I with
// entries compared by absolute value, then sign.
std::optional<IntMatrix> fan_isomorphism(const Fan& f1, const Fan& f2);

// Rank-2 helpers.
Integer cross(const IntVector& a, const IntVector& b);

}  // namespace toricsym
