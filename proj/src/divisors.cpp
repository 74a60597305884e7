#include "toricsym/divisors.hpp"

#include <algorithm>
#include <map>

namespace toricsym {

IntMatrix pairing_matrix(const Fan& fan) { return IntMatrix::from_rows(fan.rays(), fan.rank()); }

namespace {

void require_spanning(const Fan& fan, const IntMatrix& p) {
  if (rank(p) != fan.rank())
    throw DivisorError(DivisorError::Kind::RaysDoNotSpan, "rays do not span N_R; the class group sequence is not exact");
}

IntVector unit(std::size_t n, std::size_t i) {
  IntVector e(n, Integer(0));
  e[i] = 1;
  return e;
}

}  // namespace

ClassGroup class_group(const Fan& fan) {
  IntMatrix p = pairing_matrix(fan);
  require_spanning(fan, p);
  Cokernel coker = cokernel_group(p);
  ClassGroup cg{coker.group, {}};
  for (std::size_t i = 0; i < fan.ray_count(); ++i) cg.ray_classes.push_back(coker.projection(unit(fan.ray_count(), i)));
  return cg;
}

RayBlockPartition ray_blocks(const Fan& fan) {
  ClassGroup cg = class_group(fan);
  std::map<ClassCoords, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < fan.ray_count(); ++i) by_class[cg.ray_classes[i]].push_back(i);
  RayBlockPartition part;
  for (auto& [cls, members] : by_class) part.blocks.push_back(members);
  std::sort(part.blocks.begin(), part.blocks.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  for (const auto& b : part.blocks) part.sizes.push_back(b.size());
  return part;
}

bool classes_equal_by_solve(const Fan& fan, std::size_t i, std::size_t j) {
  if (i == j) return true;
  IntMatrix p = pairing_matrix(fan);
  IntVector t(fan.ray_count(), Integer(0));
  t[i] = 1;
  t[j] = -1;
  return solve_integral(p, t).has_value();
}

RelationLattice relation_lattice(const Fan& fan) { return RelationLattice{kernel_basis(fan.ray_matrix())}; }

BlockRelation derive_block_relation(const Fan& fan, const std::vector<std::size_t>& block_in,
                                    std::optional<std::size_t> anchor_in) {
  using Kind = DivisorError::Kind;
  std::vector<std::size_t> block = block_in;
  std::sort(block.begin(), block.end());
  if (block.size() < 2) throw DivisorError(Kind::NotABlock, "block must contain at least two rays");
  const auto part = ray_blocks(fan);
  if (std::find(part.blocks.begin(), part.blocks.end(), block) == part.blocks.end())
    throw DivisorError(Kind::NotABlock, "ray set is not a linear-equivalence block");
  const std::size_t anchor = anchor_in.value_or(block.back());
  if (!std::binary_search(block.begin(), block.end(), anchor))
    throw DivisorError(Kind::NotABlock, "anchor is not in the block");

  const std::size_t n = fan.ray_count();
  IntMatrix p = pairing_matrix(fan);
  require_spanning(fan, p);

  BlockRelation out;
  out.block = block;
  out.anchor = anchor;
  for (auto j : block) {
    if (j == anchor) continue;
    IntVector target(n, Integer(0));
    target[j] = 1;
    target[anchor] = -1;
    auto u = solve_integral(p, target);
    if (!u)
      throw DivisorError(Kind::TorsionObstruction, "no u in M with D_" + std::to_string(j) + " - D_" +
                                                       std::to_string(anchor) + " = div(u)");
    if (p * *u != target) throw DivisorError(Kind::TorsionObstruction, "dual vector failed verification");
    out.dual_vectors.push_back(*u);
  }
  if (rank(IntMatrix::from_rows(out.dual_vectors, fan.rank())) != out.dual_vectors.size())
    throw DivisorError(Kind::TorsionObstruction, "dual vectors are linearly dependent");

  // Rays outside the block pair to zero with every u_j, so they lie in the
  // common orthogonal complement. Keep a linearly independent subset.
  std::vector<std::size_t> support = block;
  std::vector<std::size_t> extra;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::binary_search(block.begin(), block.end(), i)) continue;
    for (const auto& u : out.dual_vectors)
      if (dot(u, fan.ray(i)) != 0) throw DivisorError(Kind::TorsionObstruction, "ray outside block pairs nontrivially");
    auto trial = extra;
    trial.push_back(i);
    if (rank(fan.cone_matrix(trial)) == trial.size()) extra = trial;
  }
  support.insert(support.end(), extra.begin(), extra.end());
  auto ker = kernel_basis(fan.cone_matrix(support));
  if (ker.size() != 1)
    throw DivisorError(Kind::NotUnique, "relations on the block and its complement span rank " + std::to_string(ker.size()));
  IntVector c = ker.front();
  for (std::size_t k = 1; k < block.size(); ++k)
    if (c[k] != c[0]) throw DivisorError(Kind::UnequalBlockCoefficients, "block coefficients differ: " + to_string(c));
  if (c[0] < 0) c = -c;
  out.relation.assign(n, Integer(0));
  for (std::size_t k = 0; k < support.size(); ++k) out.relation[support[k]] = c[k];
  return out;
}

}  // namespace toricsym
