#include "toricsym/families.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace toricsym {

namespace {

struct FamilyName {
  FamilyKind kind;
  const char* name;
  bool takes_param;
  const char* blurb;
};

constexpr FamilyName kFamilies[] = {
    {FamilyKind::ProjectiveSpace, "projective", true, "projective:n      P^n, rays e_1..e_n and -(e_1+...+e_n)"},
    {FamilyKind::Hirzebruch, "hirzebruch", true, "hirzebruch:a      Hirzebruch surface, rays (1,0),(0,1),(-1,a),(0,-1)"},
    {FamilyKind::WeightedP11a, "p11a", true, "p11a:a            weighted plane P(1,1,a), rays (1,0),(0,1),(-1,-a)"},
    {FamilyKind::WeightedP1111m, "p1111m", true, "p1111m:m          weighted P(1,1,1,1,m) in Z^4"},
    {FamilyKind::BundleOverP3, "bundle-p3", true, "bundle-p3:a       P(O + O(a)) over P^3 in Z^4"},
    {FamilyKind::BundleOverP1xP1, "bundle-p1xp1", true, "bundle-p1xp1:a    P(O(a,a) + O) over P^1 x P^1 in Z^3"},
    {FamilyKind::P1xP1, "p1xp1", false, "p1xp1             P^1 x P^1"},
    {FamilyKind::DP6, "dp6", true, "dp6:n1|n2         degree-6 del Pezzo fan on N1 or N2"},
    {FamilyKind::Q22, "q22", true, "q22:n1|n2         dP6 fan with Galois matrix -I"},
    {FamilyKind::WeilRestrictionP1, "weil-p1", false, "weil-p1           P^1 x P^1 with the factor swap as Galois matrix"},
    {FamilyKind::SingularHexagon, "singular-hexagon", false, "singular-hexagon  S3-orbit of (3,-1,-2) on N1"},
};

const FamilyName& entry(FamilyKind k) {
  for (const auto& f : kFamilies)
    if (f.kind == k) return f;
  throw std::logic_error("unknown family kind");
}

bool uses_lattice_param(FamilyKind k) { return k == FamilyKind::DP6 || k == FamilyKind::Q22; }

IntVector v(std::initializer_list<long> xs) { return make_vector(xs); }

std::vector<Cone> all_subsets(std::size_t n, std::size_t k) {
  std::vector<Cone> out;
  std::vector<bool> pick(n, false);
  std::fill(pick.end() - static_cast<long>(k), pick.end(), true);
  do {
    Cone c;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) c.push_back(i);
    out.push_back(std::move(c));
  } while (std::next_permutation(pick.begin(), pick.end()));
  std::sort(out.begin(), out.end());
  return out;
}

Fan projective_space(long n) {
  if (n < 1) throw std::invalid_argument("projective:n needs n >= 1");
  const auto d = static_cast<std::size_t>(n);
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < d; ++i) {
    IntVector e(d, Integer(0));
    e[i] = 1;
    rays.push_back(e);
  }
  rays.push_back(IntVector(d, Integer(-1)));
  if (d == 2) return build_surface_fan(Lattice::standard(2), rays);
  return Fan::from_cones(Lattice::standard(d), rays, all_subsets(d + 1, d));
}

Fan bundle_over_p3(long a) {
  std::vector<IntVector> rays = {v({1, 0, 0, 0}), v({0, 1, 0, 0}), v({0, 0, 1, 0}), v({-1, -1, -1, a}),
                                 v({0, 0, 0, 1}), v({0, 0, 0, -1})};
  std::vector<Cone> cones;
  for (const auto& base : all_subsets(4, 3))
    for (std::size_t top : {4u, 5u}) {
      Cone c = base;
      c.push_back(top);
      cones.push_back(c);
    }
  return Fan::from_cones(Lattice::standard(4), rays, cones);
}

std::vector<IntVector> bundle_p1xp1_rays(long a) {
  return {v({1, 0, a}), v({-1, 0, 0}), v({0, 1, a}), v({0, -1, 0}), v({0, 0, 1}), v({0, 0, -1})};
}

Fan bundle_over_p1xp1(long a) {
  std::vector<Cone> cones;
  for (std::size_t x : {0u, 1u})
    for (std::size_t y : {2u, 3u})
      for (std::size_t z : {4u, 5u}) cones.push_back({x, y, z});
  return Fan::from_cones(Lattice::standard(3), bundle_p1xp1_rays(a), cones);
}

Fan weighted_p1111m(long m) {
  if (m < 1) throw std::invalid_argument("p1111m:m needs m >= 1");
  std::vector<IntVector> rays = {v({1, 0, 0, 0}), v({0, 1, 0, 0}), v({0, 0, 1, 0}), v({-1, -1, -1, -m}),
                                 v({0, 0, 0, 1})};
  return Fan::from_cones(Lattice::standard(4), rays, all_subsets(5, 4));
}

Fan dp6(const Lattice& lat) {
  if (lat.kind == LatticeKind::RootA2) return s3_orbit_fan(lat, {v({1, -1, 0})}, false);
  if (lat.kind == LatticeKind::WeightA2) return s3_orbit_fan(lat, {v({1, 0, 0}), v({0, 0, -1})}, false);
  throw std::invalid_argument("dp6 needs lattice n1 or n2");
}

}  // namespace

FamilyDescriptor FamilyDescriptor::parse(std::string_view text) {
  std::string s(text);
  std::string name = s, arg;
  bool has_arg = false;
  if (auto colon = s.find(':'); colon != std::string::npos) {
    name = s.substr(0, colon);
    arg = s.substr(colon + 1);
    has_arg = true;
  }
  for (const auto& f : kFamilies) {
    if (name != f.name) continue;
    FamilyDescriptor d;
    d.kind = f.kind;
    if (uses_lattice_param(f.kind)) {
      d.lattice = has_arg ? Lattice::parse(arg) : Lattice::weight_a2();
      if (!d.lattice.is_a2()) throw std::invalid_argument("family " + name + " needs lattice n1 or n2");
      return d;
    }
    if (f.takes_param != has_arg)
      throw std::invalid_argument(f.takes_param ? "family " + name + " needs a parameter" : "family " + name + " takes no parameter");
    if (has_arg) {
      std::size_t used = 0;
      try {
        d.param = std::stol(arg, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != arg.size()) throw std::invalid_argument("bad family parameter '" + arg + "'");
    }
    return d;
  }
  throw std::invalid_argument("unknown family '" + name + "'");
}

std::string FamilyDescriptor::to_string() const {
  const auto& f = entry(kind);
  if (uses_lattice_param(kind)) return std::string(f.name) + ":" + (lattice.kind == LatticeKind::RootA2 ? "n1" : "n2");
  if (!f.takes_param) return f.name;
  return std::string(f.name) + ":" + std::to_string(param);
}

std::vector<std::string> family_catalogue() {
  std::vector<std::string> out;
  for (const auto& f : kFamilies) out.emplace_back(f.blurb);
  return out;
}

FamilyFan make_family_fan(const FamilyDescriptor& d) {
  const Lattice z2 = Lattice::standard(2);
  FamilyFan out{d, {}, std::nullopt};
  switch (d.kind) {
    case FamilyKind::ProjectiveSpace: out.fan = projective_space(d.param); break;
    case FamilyKind::Hirzebruch:
      out.fan = build_surface_fan(z2, {v({1, 0}), v({0, 1}), v({-1, d.param}), v({0, -1})});
      break;
    case FamilyKind::WeightedP11a:
      if (d.param < 1) throw std::invalid_argument("p11a:a needs a >= 1");
      out.fan = build_surface_fan(z2, {v({1, 0}), v({0, 1}), v({-1, -d.param})});
      break;
    case FamilyKind::WeightedP1111m: out.fan = weighted_p1111m(d.param); break;
    case FamilyKind::BundleOverP3: out.fan = bundle_over_p3(d.param); break;
    case FamilyKind::BundleOverP1xP1: out.fan = bundle_over_p1xp1(d.param); break;
    case FamilyKind::P1xP1: out.fan = build_surface_fan(z2, {v({1, 0}), v({0, 1}), v({-1, 0}), v({0, -1})}); break;
    case FamilyKind::DP6: out.fan = dp6(d.lattice); break;
    case FamilyKind::Q22:
      out.fan = dp6(d.lattice);
      out.galois = GaloisDatum{-IntMatrix::identity(2), "quadratic"};
      break;
    case FamilyKind::WeilRestrictionP1:
      out.fan = build_surface_fan(z2, {v({1, 0}), v({0, 1}), v({-1, 0}), v({0, -1})});
      out.galois = GaloisDatum{IntMatrix{{0, 1}, {1, 0}}, "quadratic"};
      break;
    case FamilyKind::SingularHexagon: out.fan = s3_orbit_fan(Lattice::root_a2(), {v({3, -1, -2})}, false); break;
  }
  return out;
}

Fan s3_orbit_fan(const Lattice& lattice, const std::vector<IntVector>& seeds, bool include_negation) {
  if (!lattice.is_a2()) throw FanError(FanErrorKind::RankMismatch, "S3-orbit fans live on N1 or N2");
  std::set<IntVector> rays;
  for (const auto& seed : seeds) {
    IntVector coords = lattice_coords(lattice, seed);
    if (is_zero(coords)) throw FanError(FanErrorKind::ZeroRay, "seed " + to_string(seed) + " is zero in the lattice");
    coords = primitive(coords);
    std::array<int, 3> perm{0, 1, 2};
    do {
      IntVector w = coordinate_permutation(lattice, perm) * coords;
      rays.insert(w);
      if (include_negation) rays.insert(-w);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return build_surface_fan(lattice, std::vector<IntVector>(rays.begin(), rays.end()));
}

namespace {

// Cheap isomorphism invariant of a complete surface fan: the cyclic sequence
// of cone determinants up to rotation and reflection.
std::vector<Integer> cone_signature(const Fan& fan) {
  std::vector<Integer> dets;
  for (const auto& c : fan.cones()) dets.push_back(abs(determinant(fan.cone_matrix(c))));
  std::sort(dets.begin(), dets.end());
  return dets;
}

}  // namespace

std::vector<Fan> enumerate_invariant_fans(const EnumerationOptions& opts) {
  const Lattice& lat = opts.lattice;
  if (!lat.is_a2()) throw FanError(FanErrorKind::RankMismatch, "enumeration runs on N1 or N2");
  if (opts.height < 1) throw std::invalid_argument("height must be >= 1");
  const long h = opts.height;

  std::vector<IntMatrix> group;
  {
    std::array<int, 3> perm{0, 1, 2};
    do group.push_back(coordinate_permutation(lat, perm));
    while (std::next_permutation(perm.begin(), perm.end()));
    if (opts.include_negation) {
      const std::size_t n = group.size();
      for (std::size_t i = 0; i < n; ++i) group.push_back(-group[i]);
    }
  }

  // Primitive lattice vectors with a bounded ambient representative.
  std::set<IntVector> candidates;
  for (long x = -h; x <= h; ++x)
    for (long y = -h; y <= h; ++y)
      for (long z = -h; z <= h; ++z) {
        if (lat.kind == LatticeKind::RootA2 && x + y + z != 0) continue;
        IntVector c = lattice_coords(lat, v({x, y, z}));
        if (is_zero(c) || !is_primitive(c)) continue;
        candidates.insert(c);
      }

  std::vector<std::vector<IntVector>> orbits;
  std::set<IntVector> placed;
  for (const auto& c : candidates) {
    if (placed.count(c)) continue;
    std::set<IntVector> orb;
    for (const auto& g : group) orb.insert(g * c);
    placed.insert(orb.begin(), orb.end());
    orbits.emplace_back(orb.begin(), orb.end());
  }

  std::vector<Fan> found;
  std::vector<std::size_t> chosen;
  std::vector<IntVector> rays;
  auto consider = [&]() {
    if (rays.size() < 3) return;
    Fan f;
    try {
      f = build_surface_fan(lat, rays);
    } catch (const FanError&) {
      return;
    }
    if (opts.require_smooth && !validate_fan(f).smooth) return;
    found.push_back(std::move(f));
  };
  // Subsets of orbits in increasing index order, bounded by total ray count.
  auto recurse = [&](auto&& self, std::size_t start) -> void {
    for (std::size_t i = start; i < orbits.size(); ++i) {
      if (rays.size() + orbits[i].size() > opts.max_rays) continue;
      chosen.push_back(i);
      rays.insert(rays.end(), orbits[i].begin(), orbits[i].end());
      consider();
      self(self, i + 1);
      rays.resize(rays.size() - orbits[i].size());
      chosen.pop_back();
    }
  };
  recurse(recurse, 0);

  std::sort(found.begin(), found.end(), [](const Fan& a, const Fan& b) {
    if (a.ray_count() != b.ray_count()) return a.ray_count() < b.ray_count();
    return a.rays() < b.rays();
  });
  std::vector<Fan> reps;
  std::map<std::pair<std::size_t, std::vector<Integer>>, std::vector<std::size_t>> buckets;
  for (auto& f : found) {
    auto key = std::make_pair(f.ray_count(), cone_signature(f));
    auto& bucket = buckets[key];
    bool dup = std::any_of(bucket.begin(), bucket.end(), [&](std::size_t r) { return fan_isomorphism(f, reps[r]).has_value(); });
    if (dup) continue;
    bucket.push_back(reps.size());
    reps.push_back(std::move(f));
  }
  return reps;
}

Fan random_smooth_surface_fan(std::mt19937_64& rng, std::size_t max_rays) {
  if (max_rays < 3) throw std::invalid_argument("max_rays must be >= 3");
  std::uniform_int_distribution<int> start_pick(0, max_rays >= 4 ? 4 : 0);
  const int s = start_pick(rng);
  std::vector<IntVector> rays;
  if (s == 0)
    rays = {v({1, 0}), v({0, 1}), v({-1, -1})};
  else
    rays = {v({1, 0}), v({0, 1}), v({-1, s - 1}), v({0, -1})};
  Fan fan = build_surface_fan(Lattice::standard(2), rays);
  std::uniform_int_distribution<std::size_t> target_pick(fan.ray_count(), max_rays);
  const std::size_t target = target_pick(rng);
  while (fan.ray_count() < target) {
    auto order = counterclockwise_order(fan.rays());
    std::uniform_int_distribution<std::size_t> k_pick(0, order.size() - 1);
    std::size_t k = k_pick(rng);
    auto next = fan.rays();
    next.push_back(fan.ray(order[k]) + fan.ray(order[(k + 1) % order.size()]));
    fan = build_surface_fan(Lattice::standard(2), std::move(next));
  }
  // Random change of basis by a few elementary moves.
  IntMatrix g = IntMatrix::identity(2);
  std::uniform_int_distribution<int> move(0, 3);
  for (int step = 0; step < 4; ++step) {
    switch (move(rng)) {
      case 0: g.add_row_multiple(0, 1, 1); break;
      case 1: g.add_row_multiple(1, 0, -1); break;
      case 2: g.swap_rows(0, 1); break;
      default: g.negate_row(0); break;
    }
  }
  std::vector<IntVector> moved;
  for (const auto& r : fan.rays()) moved.push_back(g * r);
  return build_surface_fan(Lattice::standard(2), std::move(moved));
}

CriteriaAnswer symmetric_action_criteria(const CriteriaQuery& q) {
  using K = CriteriaQuery::Kind;
  CriteriaAnswer ans;
  switch (q.kind) {
    case K::S6OnWeightedP1111m:
      if (q.param < 1) throw std::invalid_argument("m must be >= 1");
      ans.admits_action = q.param % 2 == 0;
      return ans;
    case K::S6OnBundleOverP3:
      ans.admits_action = q.param % 2 == 0;
      return ans;
    case K::MaxDegree: break;
  }
  const long n = q.param;
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  if (q.field == CriteriaQuery::BaseField::Complex) {
    switch (n) {
      case 1: ans.max_degree = 4; ans.varieties = {"P^1"}; break;
      case 2: ans.max_degree = 5; ans.varieties = {"P^1 x P^1"}; break;
      case 3: ans.max_degree = 6; ans.varieties = {"P^3"}; break;
      case 4:
        ans.max_degree = 6;
        ans.varieties = {"P^4", "P^2 x P^2", "P(O + O(2a)) over P^3", "P(1,1,1,1,2m)"};
        ans.infinite_family = true;
        break;
      default: ans.max_degree = n + 2; ans.varieties = {"P^" + std::to_string(n)}; break;
    }
    return ans;
  }
  switch (n) {
    case 1: ans.max_degree = 3; ans.varieties = {"P^1"}; break;
    case 2:
      ans.max_degree = 4;
      ans.infinite_family = true;
      break;
    default: ans.max_degree = n + 2; ans.varieties = {"P^" + std::to_string(n)}; break;
  }
  return ans;
}

DiagonalObstructionReport check_diagonal_obstruction(long a) {
  DiagonalObstructionReport r;
  r.a = a;
  // 0:(1,0,a) 1:(-1,0,0) 2:(0,1,a) 3:(0,-1,0) 4:(0,0,1) 5:(0,0,-1)
  const auto rays = bundle_p1xp1_rays(a);
  const std::vector<Cone> lower = {{0, 2, 5}, {1, 2, 5}, {1, 3, 5}, {0, 3, 5}};
  std::vector<Cone> c1 = lower, c2 = lower;
  c1.push_back({0, 1, 2});
  c1.push_back({0, 1, 3});
  c2.push_back({0, 2, 3});
  c2.push_back({1, 2, 3});
  std::vector<IntVector> five(rays.begin(), rays.begin() + 4);
  five.push_back(rays[5]);
  auto reindex = [](std::vector<Cone> cs) {
    for (auto& c : cs) {
      for (auto& i : c)
        if (i == 5) i = 4;
      std::sort(c.begin(), c.end());
    }
    std::sort(cs.begin(), cs.end());
    return cs;
  };
  c1 = reindex(c1);
  c2 = reindex(c2);
  const Lattice z3 = Lattice::standard(3);
  r.subdivision_1 = Fan::unchecked(z3, five, c1);
  r.subdivision_2 = Fan::unchecked(z3, five, c2);
  r.six_ray_fan = Fan::unchecked(z3, rays, make_family_fan(FamilyDescriptor{FamilyKind::BundleOverP1xP1, a}).fan.cones());
  r.swap = IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
  r.swap_exchanges_subdivisions =
      maps_fan_to(r.subdivision_1, r.subdivision_2, r.swap) && maps_fan_to(r.subdivision_2, r.subdivision_1, r.swap);
  r.swap_fixes_a_subdivision = preserves_fan(r.subdivision_1, r.swap) || preserves_fan(r.subdivision_2, r.swap);
  r.swap_preserves_six_ray_fan = preserves_fan(r.six_ray_fan, r.swap);
  try {
    Fan g1 = Fan::from_cones(z3, five, c1), g2 = Fan::from_cones(z3, five, c2);
    FanReport x = validate_fan(g1), y = validate_fan(g2);
    r.subdivisions_are_fans = x.complete && x.simplicial && y.complete && y.simplicial;
  } catch (const FanError&) {
    r.subdivisions_are_fans = false;
  }
  return r;
}

KleinSemidirectCheck klein_semidirect_s3_check(const Lattice& lattice) {
  if (lattice.rank != 2) throw FanError(FanErrorKind::RankMismatch, "needs a rank-2 lattice");
  // Points of N/2N as bit pairs.
  auto index = [](long x, long y) { return static_cast<int>(((x % 2 + 2) % 2) + 2 * ((y % 2 + 2) % 2)); };
  using Perm = std::array<int, 4>;
  std::vector<Perm> gens;
  for (const auto& s : s3_generators(lattice)) {
    Perm p{};
    for (long y = 0; y < 2; ++y)
      for (long x = 0; x < 2; ++x) {
        IntVector w = s * v({x, y});
        p[index(x, y)] = index(w[0].get_si(), w[1].get_si());
      }
    gens.push_back(p);
  }
  const std::size_t linear_gens = gens.size();
  for (long t : {1L, 2L}) {
    Perm p{};
    for (int i = 0; i < 4; ++i) p[i] = i ^ static_cast<int>(t);
    gens.push_back(p);
  }
  auto compose = [](const Perm& a, const Perm& b) {
    Perm c{};
    for (int i = 0; i < 4; ++i) c[i] = a[b[i]];
    return c;
  };
  auto closure = [&](std::size_t count) {
    std::set<Perm> seen{{0, 1, 2, 3}};
    std::deque<Perm> queue{{0, 1, 2, 3}};
    while (!queue.empty()) {
      Perm x = queue.front();
      queue.pop_front();
      for (std::size_t k = 0; k < count; ++k) {
        Perm y = compose(gens[k], x);
        if (seen.insert(y).second) queue.push_back(y);
      }
    }
    return seen;
  };
  KleinSemidirectCheck out;
  auto all = closure(gens.size());
  out.order = all.size();
  for (const auto& z : all)
    if (std::all_of(all.begin(), all.end(), [&](const Perm& g) { return compose(z, g) == compose(g, z); }))
      ++out.center_size;
  out.s3_image_order = closure(linear_gens).size();
  return out;
}

}  // namespace toricsym
