#pragma once

// Class group of a toric variety from its fan via
//   0 -> M -> (+)_i Z D_i -> Cl(X) -> 0,   u |-> sum_i <u, v_i> D_i,
// the partition of the rays by divisor class, the lattice of linear
// relations among the rays, and the dual-vector derivation of the relation
// forced on a block of linearly equivalent rays.

#include "toricsym/fan.hpp"
#include "toricsym/intlin.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace toricsym {

struct DivisorError : std::runtime_error {
  enum class Kind { RaysDoNotSpan, NotABlock, TorsionObstruction, UnequalBlockCoefficients, NotUnique };
  DivisorError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  Kind kind;
};

struct ClassGroup {
  FGAbelianGroup group;
  std::vector<ClassCoords> ray_classes;  // [D_i] per ray
};

// n x rank matrix with rows v_i, so that P u = (<u, v_i>)_i.
IntMatrix pairing_matrix(const Fan& fan);

ClassGroup class_group(const Fan& fan);

struct RayBlockPartition {
  std::vector<std::vector<std::size_t>> blocks;  // sizes descending, then by least index
  std::vector<std::size_t> sizes;
};

RayBlockPartition ray_blocks(const Fan& fan);

// Independent route to linear equivalence: D_i ~ D_j iff some u in M has
// <u, v_i> = 1, <u, v_j> = -1 and <u, v_k> = 0 otherwise.
bool classes_equal_by_solve(const Fan& fan, std::size_t i, std::size_t j);

struct RelationLattice {
  std::vector<IntVector> basis;  // each c satisfies sum_i c_i v_i = 0
};

RelationLattice relation_lattice(const Fan& fan);

struct BlockRelation {
  std::vector<std::size_t> block;  // sorted
  std::size_t anchor = 0;
  // u_j for every block ray j != anchor, in block order.
  std::vector<IntVector> dual_vectors;
  IntVector relation;  // over all rays; block coefficients equal and positive
};

// The anchor defaults to the last ray of the block.
BlockRelation derive_block_relation(const Fan& fan, const std::vector<std::size_t>& block,
                                    std::optional<std::size_t> anchor = std::nullopt);

}  // namespace toricsym
