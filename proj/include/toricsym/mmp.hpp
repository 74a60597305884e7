#pragma once

// Equivariant minimal model program on smooth complete toric surfaces,
// carried out on the fan: a step removes a group orbit of pairwise
// non-adjacent (-1)-rays.

#include "toricsym/fan.hpp"
#include "toricsym/symmetry.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace toricsym {

struct MMPError : std::runtime_error {
  enum class Kind { NotSmoothSurface, NotContractible, ResultNotSmooth, Internal };
  MMPError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  Kind kind;
};

// v_{i-1} + v_{i+1} = a_i v_i around the cyclic order; D_i^2 = -a_i.
// Indices refer to the fan's own ray indices.
struct SelfIntersectionProfile {
  std::vector<std::size_t> cyclic_order;
  std::vector<Integer> a;                  // per ray index
  std::vector<Integer> self_intersection;  // per ray index
};

SelfIntersectionProfile self_intersection_profile(const Fan& fan);

// Orbits made of (-1)-rays, no two of them adjacent.
std::vector<std::vector<std::size_t>> contractible_orbits(const Fan& fan, const GroupAction& g);

// Removes the rays and re-validates smoothness and completeness.
Fan contract_orbit(const Fan& fan, const std::vector<std::size_t>& orbit);
// Removes the rays with no smoothness requirement; the rest must still form
// a complete surface fan.
Fan remove_rays_unchecked(const Fan& fan, const std::vector<std::size_t>& rays);

struct TerminalLabel {
  enum class Kind { P2, DP6Terminal, P1xP1, Hirzebruch, Other };
  Kind kind = Kind::Other;
  long hirzebruch_a = 0;

  bool operator==(const TerminalLabel&) const = default;
  std::string to_string() const;
};

TerminalLabel classify_terminal(const Fan& fan, const GroupAction& g);

struct MMPStep {
  Fan before;
  std::vector<IntVector> contracted;  // rays removed, in ray order of `before`
};

struct MMPTrace {
  std::vector<MMPStep> steps;
  Fan terminal;
  TerminalLabel label;
};

enum class MMPMode { FirstOrbit, ExploreAll };

// FirstOrbit: a single trace, always contracting the orbit that holds the
// lexicographically least ray among all contractible rays. ExploreAll: every
// branch, in the same preference order.
std::vector<MMPTrace> run_equivariant_mmp(const Fan& fan, const GroupAction& g, MMPMode mode);

struct AdjacentMinusOneFact {
  IntVector v0, v1, v2, v3;  // consecutive rays, v1 and v2 are (-1)-rays
};

// For every adjacent pair of (-1)-rays with outer neighbours v0, v3, checks
// v0 + v3 = 0. Throws MMPError(Internal) on a violation.
std::vector<AdjacentMinusOneFact> check_adjacent_minus_one_rule(const Fan& fan);

// Reference fans used by classify_terminal.
Fan p2_fan();
Fan p1xp1_fan();
Fan hexagon_fan();

}  // namespace toricsym
