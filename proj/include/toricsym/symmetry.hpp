#pragma once

#include "toricsym/fan.hpp"
#include "toricsym/intlin.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace toricsym {

struct SymmetryError : std::runtime_error {
  enum class Kind { NotUnimodular, NotFanPreserving, ClosureExceedsBound, NotCommuting, NotInvolution, RankTooLarge, Empty };
  SymmetryError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  Kind kind;
};

// A finite group of lattice automorphisms preserving a fan. Matrices are
// authoritative; ray permutations are derived from them.
struct GroupAction {
  std::size_t rank = 0;
  std::vector<IntMatrix> elements;                 // sorted ascending, closed
  std::vector<std::vector<std::size_t>> ray_perms; // ray_perms[k][i] = image of ray i under elements[k]
  std::vector<IntMatrix> generators;
  std::vector<std::string> generator_names;
  // Distinct elements induce distinct ray permutations.
  bool faithful_on_rays = true;

  std::size_t order() const { return elements.size(); }
};

inline constexpr std::size_t kDefaultClosureCap = 10000;

GroupAction action_from_generators(const Fan& fan, const std::vector<IntMatrix>& gens,
                                   std::vector<std::string> names = {}, std::size_t cap = kDefaultClosureCap);
GroupAction trivial_action(const Fan& fan);
// Aut(N, fan) by exhaustive search.
GroupAction fan_automorphisms(const Fan& fan);
// The same matrices acting on another fan (e.g. after a contraction).
GroupAction restrict_action(const GroupAction& g, const Fan& fan);
// Standard S3 action by coordinate permutations on an A2 lattice fan.
GroupAction s3_action(const Fan& fan);

std::vector<std::vector<std::size_t>> ray_orbits(const GroupAction& g);
// dim of {v in N_R : g v = v for all g}.
std::size_t fixed_space_dimension(const GroupAction& g);
// Orbit count minus fixed-space dimension.
long invariant_picard_number(const Fan& fan, const GroupAction& g);

struct CentralizerResult {
  std::vector<IntMatrix> commutant_basis;  // Z-basis of {X : X g = g X}
  std::vector<IntMatrix> elements;         // unimodular members found, sorted
  // True when `elements` is provably all of the centralizer in GL(N); this
  // holds when the commutant is one-dimensional. Otherwise elements come
  // from a bounded coefficient box.
  bool exhaustive = false;
};

CentralizerResult centralizer_in_gl(const GroupAction& g, long coefficient_bound = 2);

struct GaloisDatum {
  IntMatrix tau;
  std::string extension = "L/k";
};

enum class FormClass { Split, NegationTwist, FactorSwap, Other };
std::string to_string(FormClass c);

// Throws SymmetryError(NotFanPreserving / NotInvolution / NotCommuting).
FormClass classify_galois_form(const Fan& fan, const GroupAction& g, const GaloisDatum& tau);

// Group generated by g's generators together with tau.
GroupAction with_galois(const Fan& fan, const GroupAction& g, const GaloisDatum& tau);

}  // namespace toricsym
