#include "toricsym/mmp.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace toricsym {

Fan p2_fan() {
  return build_surface_fan(Lattice::standard(2), {make_vector({1, 0}), make_vector({0, 1}), make_vector({-1, -1})});
}

Fan p1xp1_fan() {
  return build_surface_fan(Lattice::standard(2),
                           {make_vector({1, 0}), make_vector({0, 1}), make_vector({-1, 0}), make_vector({0, -1})});
}

Fan hexagon_fan() {
  return build_surface_fan(Lattice::standard(2), {make_vector({1, 0}), make_vector({1, 1}), make_vector({0, 1}),
                                                  make_vector({-1, 0}), make_vector({-1, -1}), make_vector({0, -1})});
}

SelfIntersectionProfile self_intersection_profile(const Fan& fan) {
  if (fan.rank() != 2) throw MMPError(MMPError::Kind::NotSmoothSurface, "fan is not a surface fan");
  FanReport rep = validate_fan(fan);
  if (!rep.complete || !rep.smooth)
    throw MMPError(MMPError::Kind::NotSmoothSurface, "fan is not a smooth complete surface fan");
  SelfIntersectionProfile p;
  p.cyclic_order = *rep.surface_cyclic_order;
  const std::size_t n = p.cyclic_order.size();
  p.a.assign(fan.ray_count(), Integer(0));
  p.self_intersection.assign(fan.ray_count(), Integer(0));
  for (std::size_t k = 0; k < n; ++k) {
    const IntVector& prev = fan.ray(p.cyclic_order[(k + n - 1) % n]);
    const IntVector& cur = fan.ray(p.cyclic_order[k]);
    const IntVector& next = fan.ray(p.cyclic_order[(k + 1) % n]);
    IntVector sum = prev + next;
    // Smooth adjacent cones make sum a multiple of cur.
    std::size_t c = cur[0] != 0 ? 0 : 1;
    Integer a = sum[c] / cur[c];
    if (scaled(cur, a) != sum)
      throw MMPError(MMPError::Kind::Internal, "neighbour sum " + to_string(sum) + " is not a multiple of " + to_string(cur));
    p.a[p.cyclic_order[k]] = a;
    p.self_intersection[p.cyclic_order[k]] = -a;
  }
  return p;
}

namespace {

// Position of every ray index in the cyclic order.
std::vector<std::size_t> positions(const std::vector<std::size_t>& order) {
  std::vector<std::size_t> pos(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
  return pos;
}

bool adjacent(std::size_t p, std::size_t q, std::size_t n) { return (p + 1) % n == q || (q + 1) % n == p; }

IntVector least_ray(const Fan& fan, const std::vector<std::size_t>& rays) {
  IntVector best = fan.ray(rays.front());
  for (auto i : rays)
    if (fan.ray(i) < best) best = fan.ray(i);
  return best;
}

}  // namespace

std::vector<std::vector<std::size_t>> contractible_orbits(const Fan& fan, const GroupAction& g) {
  const SelfIntersectionProfile prof = self_intersection_profile(fan);
  const GroupAction act = g.ray_perms.empty() || g.ray_perms.front().size() != fan.ray_count() ? restrict_action(g, fan) : g;
  const auto pos = positions(prof.cyclic_order);
  const std::size_t n = fan.ray_count();
  std::vector<std::vector<std::size_t>> out;
  for (const auto& orbit : ray_orbits(act)) {
    bool ok = std::all_of(orbit.begin(), orbit.end(), [&](std::size_t i) { return prof.a[i] == 1; });
    for (std::size_t x = 0; ok && x < orbit.size(); ++x)
      for (std::size_t y = x + 1; y < orbit.size(); ++y)
        if (adjacent(pos[orbit[x]], pos[orbit[y]], n)) {
          ok = false;
          break;
        }
    if (ok) out.push_back(orbit);
  }
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return least_ray(fan, a) < least_ray(fan, b); });
  return out;
}

Fan remove_rays_unchecked(const Fan& fan, const std::vector<std::size_t>& rays) {
  std::set<std::size_t> drop(rays.begin(), rays.end());
  std::vector<IntVector> keep;
  for (std::size_t i = 0; i < fan.ray_count(); ++i)
    if (!drop.count(i)) keep.push_back(fan.ray(i));
  return build_surface_fan(fan.lattice(), std::move(keep));
}

Fan contract_orbit(const Fan& fan, const std::vector<std::size_t>& orbit) {
  FanReport rep = validate_fan(fan);
  if (fan.rank() != 2 || !rep.complete) throw MMPError(MMPError::Kind::NotSmoothSurface, "fan is not a complete surface fan");
  const auto pos = positions(*rep.surface_cyclic_order);
  const std::size_t n = fan.ray_count();
  for (auto i : orbit)
    if (i >= n) throw MMPError(MMPError::Kind::NotContractible, "ray index out of range");
  for (std::size_t x = 0; x < orbit.size(); ++x)
    for (std::size_t y = x + 1; y < orbit.size(); ++y)
      if (adjacent(pos[orbit[x]], pos[orbit[y]], n))
        throw MMPError(MMPError::Kind::NotContractible, "orbit contains adjacent rays " + to_string(fan.ray(orbit[x])) +
                                                            " and " + to_string(fan.ray(orbit[y])));
  Fan out;
  try {
    out = remove_rays_unchecked(fan, orbit);
  } catch (const FanError& e) {
    throw MMPError(MMPError::Kind::ResultNotSmooth, std::string("contraction leaves no complete fan: ") + e.what());
  }
  FanReport after = validate_fan(out);
  if (!after.smooth || !after.complete)
    throw MMPError(MMPError::Kind::ResultNotSmooth, "contracted fan is not smooth");
  return out;
}

std::string TerminalLabel::to_string() const {
  switch (kind) {
    case Kind::P2: return "P2";
    case Kind::DP6Terminal: return "DP6Terminal";
    case Kind::P1xP1: return "P1xP1";
    case Kind::Hirzebruch: return "Hirzebruch(" + std::to_string(hirzebruch_a) + ")";
    case Kind::Other: break;
  }
  return "Other";
}

TerminalLabel classify_terminal(const Fan& fan, const GroupAction&) {
  using K = TerminalLabel::Kind;
  if (fan.rank() != 2) return {};
  static const Fan p2 = p2_fan(), p1p1 = p1xp1_fan(), hex = hexagon_fan();
  if (fan_isomorphism(fan, p2)) return {K::P2, 0};
  if (fan_isomorphism(fan, p1p1)) return {K::P1xP1, 0};
  if (fan_isomorphism(fan, hex)) return {K::DP6Terminal, 0};
  if (fan.ray_count() == 4) {
    FanReport rep = validate_fan(fan);
    if (rep.smooth && rep.complete) {
      auto prof = self_intersection_profile(fan);
      const auto& ord = prof.cyclic_order;
      for (std::size_t s = 0; s < 2; ++s) {
        const Integer& z0 = prof.self_intersection[ord[s]];
        const Integer& x = prof.self_intersection[ord[s + 1]];
        const Integer& z1 = prof.self_intersection[ord[s + 2]];
        const Integer& y = prof.self_intersection[ord[(s + 3) % 4]];
        if (z0 == 0 && z1 == 0 && x == -y && x != 0) return {K::Hirzebruch, Integer(abs(x)).get_si()};
      }
    }
  }
  return {};
}

std::vector<MMPTrace> run_equivariant_mmp(const Fan& fan, const GroupAction& g, MMPMode mode) {
  std::vector<MMPTrace> traces;
  std::vector<MMPStep> path;
  std::function<void(const Fan&, const GroupAction&)> walk = [&](const Fan& f, const GroupAction& act) {
    auto orbits = contractible_orbits(f, act);
    if (orbits.empty()) {
      traces.push_back(MMPTrace{path, f, classify_terminal(f, act)});
      return;
    }
    if (mode == MMPMode::FirstOrbit) orbits.resize(1);
    for (const auto& orbit : orbits) {
      auto sorted = orbit;
      std::sort(sorted.begin(), sorted.end());
      MMPStep step{f, {}};
      for (auto i : sorted) step.contracted.push_back(f.ray(i));
      Fan next = contract_orbit(f, sorted);
      if (next.ray_count() >= f.ray_count()) throw MMPError(MMPError::Kind::Internal, "ray count did not decrease");
      GroupAction next_act = restrict_action(act, next);
      path.push_back(std::move(step));
      walk(next, next_act);
      path.pop_back();
    }
  };
  GroupAction start = g.ray_perms.empty() || g.ray_perms.front().size() != fan.ray_count() ? restrict_action(g, fan) : g;
  walk(fan, start);
  return traces;
}

std::vector<AdjacentMinusOneFact> check_adjacent_minus_one_rule(const Fan& fan) {
  const auto prof = self_intersection_profile(fan);
  const auto& ord = prof.cyclic_order;
  const std::size_t n = ord.size();
  std::vector<AdjacentMinusOneFact> facts;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t i1 = ord[k], i2 = ord[(k + 1) % n];
    if (prof.a[i1] != 1 || prof.a[i2] != 1) continue;
    AdjacentMinusOneFact f{fan.ray(ord[(k + n - 1) % n]), fan.ray(i1), fan.ray(i2), fan.ray(ord[(k + 2) % n])};
    if (!is_zero(f.v0 + f.v3))
      throw MMPError(MMPError::Kind::Internal, "adjacent (-1)-rays " + to_string(f.v1) + ", " + to_string(f.v2) +
                                                   " have neighbours that do not cancel");
    facts.push_back(std::move(f));
  }
  return facts;
}

}  // namespace toricsym
