#include "toricsym/symmetry.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace toricsym {

namespace {

GroupAction finish(const Fan& fan, std::set<IntMatrix> elems, std::vector<IntMatrix> gens, std::vector<std::string> names) {
  GroupAction g;
  g.rank = fan.rank();
  g.elements.assign(elems.begin(), elems.end());
  for (const auto& m : g.elements) {
    auto perm = ray_permutation(fan, fan, m);
    if (!perm || !preserves_fan(fan, m))
      throw SymmetryError(SymmetryError::Kind::NotFanPreserving, "element " + m.to_string() + " does not preserve the fan");
    g.ray_perms.push_back(std::move(*perm));
  }
  std::set<std::vector<std::size_t>> distinct(g.ray_perms.begin(), g.ray_perms.end());
  g.faithful_on_rays = distinct.size() == g.ray_perms.size();
  g.generators = std::move(gens);
  g.generator_names = std::move(names);
  return g;
}

}  // namespace

GroupAction action_from_generators(const Fan& fan, const std::vector<IntMatrix>& gens, std::vector<std::string> names,
                                   std::size_t cap) {
  const std::size_t d = fan.rank();
  for (const auto& m : gens) {
    if (m.rows() != d || m.cols() != d || !is_unimodular(m))
      throw SymmetryError(SymmetryError::Kind::NotUnimodular, "generator " + m.to_string() + " is not unimodular");
    if (!preserves_fan(fan, m))
      throw SymmetryError(SymmetryError::Kind::NotFanPreserving, "generator " + m.to_string() + " does not preserve the fan");
  }
  if (names.size() < gens.size())
    for (std::size_t i = names.size(); i < gens.size(); ++i) names.push_back("g" + std::to_string(i));
  std::set<IntMatrix> seen{IntMatrix::identity(d)};
  std::deque<IntMatrix> queue{IntMatrix::identity(d)};
  while (!queue.empty()) {
    IntMatrix x = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : gens) {
      IntMatrix y = s * x;
      if (seen.insert(y).second) {
        if (seen.size() > cap)
          throw SymmetryError(SymmetryError::Kind::ClosureExceedsBound,
                              "group closure exceeds " + std::to_string(cap) + " elements");
        queue.push_back(std::move(y));
      }
    }
  }
  return finish(fan, std::move(seen), gens, std::move(names));
}

GroupAction trivial_action(const Fan& fan) { return action_from_generators(fan, {}, {}); }

GroupAction fan_automorphisms(const Fan& fan) {
  auto all = fan_isomorphisms(fan, fan);
  std::set<IntMatrix> elems(all.begin(), all.end());
  // The isomorphism set of a fan with itself is already a group.
  for (const auto& a : all)
    for (const auto& b : all)
      if (!elems.count(a * b)) throw SymmetryError(SymmetryError::Kind::Empty, "automorphism set not closed");
  return finish(fan, std::move(elems), all, {});
}

GroupAction restrict_action(const GroupAction& g, const Fan& fan) {
  std::set<IntMatrix> elems(g.elements.begin(), g.elements.end());
  return finish(fan, std::move(elems), g.generators, g.generator_names);
}

GroupAction s3_action(const Fan& fan) {
  return action_from_generators(fan, s3_generators(fan.lattice()), {"(0 1)", "(0 1 2)"});
}

std::vector<std::vector<std::size_t>> ray_orbits(const GroupAction& g) {
  if (g.ray_perms.empty()) return {};
  const std::size_t n = g.ray_perms.front().size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& p : g.ray_perms)
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t a = find(i), b = find(p[i]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<long> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(orbits.size());
      orbits.emplace_back();
    }
    orbits[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return orbits;
}

std::size_t fixed_space_dimension(const GroupAction& g) {
  const std::size_t d = g.rank;
  std::vector<IntVector> rows;
  const IntMatrix id = IntMatrix::identity(d);
  for (const auto& m : g.elements) {
    IntMatrix diff = m - id;
    for (std::size_t i = 0; i < d; ++i) rows.push_back(diff.row(i));
  }
  if (rows.empty()) return d;
  return kernel_basis(IntMatrix::from_rows(rows, d)).size();
}

long invariant_picard_number(const Fan&, const GroupAction& g) {
  return static_cast<long>(ray_orbits(g).size()) - static_cast<long>(fixed_space_dimension(g));
}

CentralizerResult centralizer_in_gl(const GroupAction& g, long coefficient_bound) {
  const std::size_t d = g.rank;
  if (d > 3) throw SymmetryError(SymmetryError::Kind::RankTooLarge, "centralizer search supports rank <= 3");
  // Unknown X flattened row-major; equation (X s - s X)_{ac} = 0.
  std::vector<IntVector> eqs;
  for (const auto& s : g.elements)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t c = 0; c < d; ++c) {
        IntVector row(d * d, Integer(0));
        for (std::size_t b = 0; b < d; ++b) {
          row[a * d + b] += s(b, c);
          row[b * d + c] -= s(a, b);
        }
        eqs.push_back(std::move(row));
      }
  std::vector<IntVector> basis_flat =
      eqs.empty() ? std::vector<IntVector>{} : kernel_basis(IntMatrix::from_rows(eqs, d * d));
  if (eqs.empty())
    for (std::size_t k = 0; k < d * d; ++k) {
      IntVector e(d * d, Integer(0));
      e[k] = 1;
      basis_flat.push_back(e);
    }
  CentralizerResult out;
  auto unflatten = [d](const IntVector& v) {
    IntMatrix m(d, d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) m(a, b) = v[a * d + b];
    return m;
  };
  for (const auto& v : basis_flat) out.commutant_basis.push_back(unflatten(v));

  std::set<IntMatrix> found;
  const std::size_t k = basis_flat.size();
  if (k == 1) {
    // X = c B with c^d det(B) = +-1 forces c = +-1.
    const IntMatrix& b = out.commutant_basis.front();
    if (is_unimodular(b)) {
      found.insert(b);
      found.insert(-b);
    }
    out.exhaustive = true;
  } else {
    std::vector<long> coeff(k, -coefficient_bound);
    for (;;) {
      IntVector flat(d * d, Integer(0));
      for (std::size_t t = 0; t < k; ++t)
        for (std::size_t e = 0; e < d * d; ++e) flat[e] += coeff[t] * basis_flat[t][e];
      IntMatrix x = unflatten(flat);
      if (is_unimodular(x)) found.insert(x);
      std::size_t t = 0;
      while (t < k && coeff[t] == coefficient_bound) coeff[t++] = -coefficient_bound;
      if (t == k) break;
      ++coeff[t];
    }
    out.exhaustive = false;
  }
  out.elements.assign(found.begin(), found.end());
  return out;
}

std::string to_string(FormClass c) {
  switch (c) {
    case FormClass::Split: return "split";
    case FormClass::NegationTwist: return "negation-twist";
    case FormClass::FactorSwap: return "factor-swap";
    case FormClass::Other: return "other";
  }
  return "other";
}

namespace {

// Permutation matrix of a fixed-point-free involution: exchanges the
// coordinate blocks {i : i < sigma(i)} and {sigma(i)}.
bool is_block_swap(const IntMatrix& t) {
  const std::size_t d = t.rows();
  if (d == 0 || d % 2 != 0) return false;
  std::vector<std::size_t> sigma(d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) {
      const Integer& x = t(i, j);
      if (x == 0) continue;
      if (x != 1 || sigma[j] != d) return false;
      sigma[j] = i;
    }
  for (std::size_t j = 0; j < d; ++j)
    if (sigma[j] == d || sigma[j] == j || sigma[sigma[j]] != j) return false;
  return true;
}

}  // namespace

FormClass classify_galois_form(const Fan& fan, const GroupAction& g, const GaloisDatum& datum) {
  const IntMatrix& t = datum.tau;
  const std::size_t d = fan.rank();
  if (t.rows() != d || t.cols() != d || !is_unimodular(t))
    throw SymmetryError(SymmetryError::Kind::NotUnimodular, "Galois matrix is not unimodular of the lattice rank");
  if (!(t * t).is_identity()) throw SymmetryError(SymmetryError::Kind::NotInvolution, "Galois matrix has order > 2");
  if (!preserves_fan(fan, t)) throw SymmetryError(SymmetryError::Kind::NotFanPreserving, "Galois matrix does not preserve the fan");
  for (const auto& s : g.elements)
    if (s * t != t * s)
      throw SymmetryError(SymmetryError::Kind::NotCommuting,
                          "Galois matrix does not commute with " + s.to_string() + "; the action cannot descend");
  if (t.is_identity()) return FormClass::Split;
  if ((-t).is_identity()) return FormClass::NegationTwist;
  if (is_block_swap(t)) return FormClass::FactorSwap;
  return FormClass::Other;
}

GroupAction with_galois(const Fan& fan, const GroupAction& g, const GaloisDatum& tau) {
  auto gens = g.generators;
  auto names = g.generator_names;
  gens.push_back(tau.tau);
  names.push_back("tau");
  return action_from_generators(fan, gens, names);
}

}  // namespace toricsym
