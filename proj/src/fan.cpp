#include "toricsym/fan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace toricsym {

std::string Lattice::name() const {
  switch (kind) {
    case LatticeKind::RootA2: return "rootA2";
    case LatticeKind::WeightA2: return "weightA2";
    case LatticeKind::Standard: break;
  }
  return "standard:" + std::to_string(rank);
}

Lattice Lattice::parse(const std::string& name) {
  if (name == "rootA2" || name == "N1" || name == "n1") return root_a2();
  if (name == "weightA2" || name == "N2" || name == "n2") return weight_a2();
  const std::string prefix = "standard:";
  if (name.rfind(prefix, 0) == 0) {
    const std::string digits = name.substr(prefix.size());
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      std::size_t n = std::stoul(digits);
      if (n >= 1) return standard(n);
    }
  }
  throw std::invalid_argument("unknown lattice \"" + name + "\"");
}

std::string FanError::reason() const {
  switch (kind_) {
    case FanErrorKind::RankMismatch: return "rank-mismatch";
    case FanErrorKind::TooFewRays: return "too-few-rays";
    case FanErrorKind::ZeroRay: return "zero-ray";
    case FanErrorKind::ParallelRays: return "parallel-rays";
    case FanErrorKind::Incomplete: return "incomplete";
    case FanErrorKind::BadCone: return "bad-cone";
    case FanErrorKind::NotSimplicial: return "not-simplicial";
    case FanErrorKind::NotSmooth: return "not-smooth";
    case FanErrorKind::NotInLattice: return "not-in-lattice";
    case FanErrorKind::Internal: return "internal";
  }
  return "unknown";
}

IntVector lattice_coords(const Lattice& lattice, const IntVector& v) {
  if (v.size() != lattice.ambient_dimension())
    throw FanError(FanErrorKind::RankMismatch, "vector " + to_string(v) + " has wrong length for " + lattice.name());
  switch (lattice.kind) {
    case LatticeKind::Standard: return v;
    case LatticeKind::RootA2:
      if (v[0] + v[1] + v[2] != 0)
        throw FanError(FanErrorKind::NotInLattice, to_string(v) + " has nonzero coordinate sum; not in N1");
      // a f1 + b f2 = (a, b - a, -b)
      return IntVector{v[0], -v[2]};
    case LatticeKind::WeightA2: return IntVector{v[0] - v[2], v[1] - v[2]};
  }
  return v;
}

IntVector ambient_vector(const Lattice& lattice, const IntVector& c) {
  if (c.size() != lattice.rank) throw FanError(FanErrorKind::RankMismatch, "coordinate vector has wrong length");
  switch (lattice.kind) {
    case LatticeKind::Standard: return c;
    case LatticeKind::RootA2: return IntVector{c[0], c[1] - c[0], -c[1]};
    case LatticeKind::WeightA2: return IntVector{c[0], c[1], Integer(0)};
  }
  return c;
}

IntMatrix coordinate_permutation(const Lattice& lattice, const std::array<int, 3>& perm) {
  if (!lattice.is_a2()) throw std::invalid_argument("coordinate_permutation: lattice carries no S3 action");
  IntMatrix m(2, 2);
  for (std::size_t j = 0; j < 2; ++j) {
    IntVector basis_ambient = ambient_vector(lattice, j == 0 ? make_vector({1, 0}) : make_vector({0, 1}));
    IntVector image(3, Integer(0));
    for (std::size_t i = 0; i < 3; ++i) image[static_cast<std::size_t>(perm[i])] = basis_ambient[i];
    IntVector c = lattice_coords(lattice, image);
    m(0, j) = c[0];
    m(1, j) = c[1];
  }
  return m;
}

std::vector<IntMatrix> s3_generators(const Lattice& lattice) {
  return {coordinate_permutation(lattice, {1, 0, 2}), coordinate_permutation(lattice, {1, 2, 0})};
}

namespace {

std::vector<IntVector> normalized_rays(const Lattice& lattice, std::vector<IntVector> rays) {
  std::set<IntVector> seen;
  for (auto& r : rays) {
    if (r.size() != lattice.rank)
      throw FanError(FanErrorKind::RankMismatch, "ray " + to_string(r) + " does not have length " + std::to_string(lattice.rank));
    if (is_zero(r)) throw FanError(FanErrorKind::ZeroRay, "zero vector is not a ray");
    r = primitive(r);
    if (!seen.insert(r).second) throw FanError(FanErrorKind::ParallelRays, "parallel duplicate ray " + to_string(r));
  }
  return rays;
}

}  // namespace

Fan Fan::from_cones(const Lattice& lattice, std::vector<IntVector> rays, std::vector<Cone> cones) {
  rays = normalized_rays(lattice, std::move(rays));
  Fan f(lattice, std::move(rays), {});
  std::set<Cone> seen;
  for (auto& c : cones) {
    std::sort(c.begin(), c.end());
    if (c.empty() || std::adjacent_find(c.begin(), c.end()) != c.end())
      throw FanError(FanErrorKind::BadCone, "cone with empty or repeated ray indices");
    if (c.back() >= f.rays_.size()) throw FanError(FanErrorKind::BadCone, "cone references a missing ray");
    if (toricsym::rank(f.cone_matrix(c)) != c.size())
      throw FanError(FanErrorKind::NotSimplicial, "cone rays are linearly dependent; only simplicial cones are supported");
    if (!seen.insert(c).second) throw FanError(FanErrorKind::BadCone, "duplicate cone");
  }
  f.cones_ = std::move(cones);
  return f;
}

Fan Fan::unchecked(const Lattice& lattice, std::vector<IntVector> rays, std::vector<Cone> cones) {
  for (auto& c : cones) std::sort(c.begin(), c.end());
  return Fan(lattice, std::move(rays), std::move(cones));
}

std::optional<std::size_t> Fan::ray_index(const IntVector& v) const {
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (rays_[i] == v) return i;
  return std::nullopt;
}

IntMatrix Fan::cone_matrix(const Cone& cone) const {
  std::vector<IntVector> cols;
  cols.reserve(cone.size());
  for (auto i : cone) cols.push_back(rays_[i]);
  return IntMatrix::from_columns(cols, rank());
}

IntMatrix Fan::ray_matrix() const { return IntMatrix::from_columns(rays_, rank()); }

Integer cross(const IntVector& a, const IntVector& b) { return a[0] * b[1] - a[1] * b[0]; }

namespace {

// 0 for directions in [0, pi) measured from `start`, 1 for [pi, 2 pi).
int half_plane(const IntVector& start, const IntVector& v) {
  Integer c = cross(start, v);
  if (c > 0) return 0;
  if (c < 0) return 1;
  return dot(start, v) > 0 ? 0 : 1;
}

}  // namespace

std::vector<std::size_t> counterclockwise_order(const std::vector<IntVector>& rays) {
  std::vector<std::size_t> idx(rays.size());
  std::iota(idx.begin(), idx.end(), 0);
  if (rays.empty()) return idx;
  std::size_t start = *std::min_element(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return rays[a] < rays[b]; });
  const IntVector& s = rays[start];
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    int ha = half_plane(s, rays[a]), hb = half_plane(s, rays[b]);
    if (ha != hb) return ha < hb;
    return cross(rays[a], rays[b]) > 0;
  });
  return idx;
}

Fan build_surface_fan(const Lattice& lattice, std::vector<IntVector> rays) {
  if (lattice.rank != 2) throw FanError(FanErrorKind::RankMismatch, "surface fans need a rank-2 lattice");
  if (rays.size() < 3) throw FanError(FanErrorKind::TooFewRays, "a complete surface fan needs at least 3 rays");
  rays = normalized_rays(lattice, std::move(rays));
  std::vector<IntVector> sorted;
  for (auto i : counterclockwise_order(rays)) sorted.push_back(rays[i]);
  const std::size_t n = sorted.size();
  for (std::size_t i = 0; i < n; ++i) {
    const IntVector& a = sorted[i];
    const IntVector& b = sorted[(i + 1) % n];
    if (cross(a, b) <= 0)
      throw FanError(FanErrorKind::Incomplete,
                     "angular gap between " + to_string(a) + " and " + to_string(b) + " is at least pi");
  }
  std::vector<Cone> cones;
  for (std::size_t i = 0; i < n; ++i) {
    Cone c{i, (i + 1) % n};
    std::sort(c.begin(), c.end());
    cones.push_back(c);
  }
  return Fan::from_cones(lattice, std::move(sorted), std::move(cones));
}

std::vector<Integer> cone_invariant_factors(const Fan& fan, const Cone& cone) {
  return smith_normal_form(fan.cone_matrix(cone)).invariant_factors();
}

namespace {

bool surface_complete(const Fan& fan, std::vector<std::size_t>& order) {
  order = counterclockwise_order(fan.rays());
  const std::size_t n = order.size();
  if (n < 3) return false;
  std::set<Cone> expected;
  for (std::size_t i = 0; i < n; ++i) {
    const IntVector& a = fan.ray(order[i]);
    const IntVector& b = fan.ray(order[(i + 1) % n]);
    if (cross(a, b) <= 0) return false;
    Cone c{order[i], order[(i + 1) % n]};
    std::sort(c.begin(), c.end());
    expected.insert(c);
  }
  std::set<Cone> actual(fan.cones().begin(), fan.cones().end());
  return actual == expected;
}

// Sign of det of the columns (w_0..w_{k-1}, x) for a rank-k wall.
int side_of_wall(const Fan& fan, const Cone& wall, const IntVector& x) {
  std::vector<IntVector> cols;
  for (auto i : wall) cols.push_back(fan.ray(i));
  cols.push_back(x);
  return sgn(determinant(IntMatrix::from_columns(cols, fan.rank())));
}

// Number of maximal cones whose interior contains p; nullopt when p lies on
// the boundary of some cone.
std::optional<std::size_t> cones_containing(const Fan& fan, const IntVector& p) {
  std::size_t count = 0;
  for (const auto& c : fan.cones()) {
    IntMatrix b = fan.cone_matrix(c);
    Integer det = determinant(b);
    bool inside = true;
    for (std::size_t j = 0; j < c.size(); ++j) {
      IntMatrix bj = b;
      for (std::size_t i = 0; i < fan.rank(); ++i) bj(i, j) = p[i];
      int s = sgn(determinant(bj)) * sgn(det);
      if (s == 0) return std::nullopt;
      if (s < 0) inside = false;
    }
    if (inside) ++count;
  }
  return count;
}

// Wall condition: pure full-dimensional, every facet in exactly two maximal
// cones lying on opposite sides of it, connected dual graph, and exactly
// one cone over a generic point.
bool higher_rank_complete(const Fan& fan) {
  const std::size_t d = fan.rank();
  if (fan.cones().empty()) return false;
  for (const auto& c : fan.cones())
    if (c.size() != d) return false;
  std::map<Cone, std::vector<std::pair<std::size_t, std::size_t>>> walls;  // facet -> (cone, dropped ray)
  for (std::size_t k = 0; k < fan.cones().size(); ++k) {
    const Cone& c = fan.cones()[k];
    for (std::size_t drop = 0; drop < c.size(); ++drop) {
      Cone f;
      for (std::size_t t = 0; t < c.size(); ++t)
        if (t != drop) f.push_back(c[t]);
      walls[f].push_back({k, c[drop]});
    }
  }
  std::vector<std::size_t> parent(fan.cones().size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [f, sides] : walls) {
    if (sides.size() != 2) return false;
    int s0 = side_of_wall(fan, f, fan.ray(sides[0].second));
    int s1 = side_of_wall(fan, f, fan.ray(sides[1].second));
    if (s0 == 0 || s1 == 0 || s0 == s1) return false;
    parent[find(sides[0].first)] = find(sides[1].first);
  }
  for (std::size_t k = 0; k < parent.size(); ++k)
    if (find(k) != find(0)) return false;
  // Generic probe points (1, K, K^2, ...) for growing K.
  for (long base = 1009; base < 1009 + 64; base += 7) {
    IntVector p(d);
    Integer x = 1;
    for (std::size_t i = 0; i < d; ++i) {
      p[i] = (i % 2 == 0) ? x : Integer(-x);
      x *= base;
    }
    if (auto n = cones_containing(fan, p)) return *n == 1;
  }
  throw FanError(FanErrorKind::Internal, "no generic probe point found");
}

}  // namespace

FanReport validate_fan(const Fan& fan) {
  FanReport r;
  const std::size_t d = fan.rank();
  r.simplicial = !fan.cones().empty();
  for (const auto& c : fan.cones())
    if (c.size() != d || rank(fan.cone_matrix(c)) != d) r.simplicial = false;
  r.smooth = r.simplicial;
  if (r.smooth)
    for (const auto& c : fan.cones()) {
      auto f = cone_invariant_factors(fan, c);
      if (!std::all_of(f.begin(), f.end(), [](const Integer& x) { return x == 1; })) {
        r.smooth = false;
        break;
      }
    }
  if (d == 2) {
    std::vector<std::size_t> order;
    r.complete = surface_complete(fan, order);
    r.surface_cyclic_order = order;
  } else if (d == 1) {
    r.complete = fan.ray_count() == 2 && fan.ray(0)[0] == -fan.ray(1)[0] && fan.cones().size() == 2;
  } else {
    r.complete = r.simplicial && higher_rank_complete(fan);
  }
  return r;
}

std::optional<std::vector<std::size_t>> ray_permutation(const Fan& from, const Fan& to, const IntMatrix& g) {
  if (from.ray_count() != to.ray_count()) return std::nullopt;
  std::map<IntVector, std::size_t> index;
  for (std::size_t i = 0; i < to.ray_count(); ++i) index.emplace(to.ray(i), i);
  std::vector<std::size_t> perm(from.ray_count());
  std::vector<bool> hit(to.ray_count(), false);
  for (std::size_t i = 0; i < from.ray_count(); ++i) {
    auto it = index.find(g * from.ray(i));
    if (it == index.end() || hit[it->second]) return std::nullopt;
    hit[it->second] = true;
    perm[i] = it->second;
  }
  return perm;
}

namespace {

bool cones_map(const Fan& from, const Fan& to, const std::vector<std::size_t>& perm) {
  if (from.cones().size() != to.cones().size()) return false;
  std::set<Cone> target(to.cones().begin(), to.cones().end());
  for (const auto& c : from.cones()) {
    Cone img;
    for (auto i : c) img.push_back(perm[i]);
    std::sort(img.begin(), img.end());
    if (!target.count(img)) return false;
  }
  return true;
}

}  // namespace

bool maps_fan_to(const Fan& from, const Fan& to, const IntMatrix& g) {
  if (g.rows() != to.rank() || g.cols() != from.rank()) return false;
  auto perm = ray_permutation(from, to, g);
  return perm && cones_map(from, to, *perm);
}

std::vector<IntMatrix> fan_isomorphisms(const Fan& f1, const Fan& f2) {
  std::vector<IntMatrix> out;
  const std::size_t d = f1.rank();
  if (d != f2.rank() || f1.ray_count() != f2.ray_count() || f1.cones().size() != f2.cones().size()) return out;

  // Source basis: a full-dimensional simplicial cone if there is one (its
  // image must then be a cone of f2), else greedy independent rays.
  std::vector<std::size_t> basis;
  bool basis_is_cone = false;
  for (const auto& c : f1.cones())
    if (c.size() == d && rank(f1.cone_matrix(c)) == d) {
      basis = c;
      basis_is_cone = true;
      break;
    }
  if (!basis_is_cone) {
    for (std::size_t i = 0; i < f1.ray_count() && basis.size() < d; ++i) {
      auto trial = basis;
      trial.push_back(i);
      if (rank(f1.cone_matrix(trial)) == trial.size()) basis = trial;
    }
    if (basis.size() < d) return out;
  }
  const SNFResult snf = smith_normal_form(f1.cone_matrix(basis));
  const auto diag = snf.diagonal();

  auto try_images = [&](const std::vector<std::size_t>& images) {
    std::vector<IntVector> cols;
    for (auto j : images) cols.push_back(f2.ray(j));
    IntMatrix t = IntMatrix::from_columns(cols, d) * snf.V_inv;
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) {
        if (t(i, j) % diag[j] != 0) return;
        t(i, j) /= diag[j];
      }
    IntMatrix g = t * snf.U_inv;
    if (!is_unimodular(g)) return;
    if (maps_fan_to(f1, f2, g)) out.push_back(std::move(g));
  };

  if (basis_is_cone) {
    for (const auto& c : f2.cones()) {
      if (c.size() != d) continue;
      std::vector<std::size_t> images = c;
      do try_images(images);
      while (std::next_permutation(images.begin(), images.end()));
    }
  } else {
    std::vector<std::size_t> images(d, 0);
    std::function<void(std::size_t)> rec;
    std::vector<bool> used(f2.ray_count(), false);
    rec = [&](std::size_t k) {
      if (k == d) {
        try_images(images);
        return;
      }
      for (std::size_t j = 0; j < f2.ray_count(); ++j) {
        if (used[j]) continue;
        used[j] = true;
        images[k] = j;
        rec(k + 1);
        used[j] = false;
      }
    };
    rec(0);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<IntMatrix> fan_isomorphism(const Fan& f1, const Fan& f2) {
  auto all = fan_isomorphisms(f1, f2);
  if (all.empty()) return std::nullopt;
  // Least g - I, entries compared by (|x|, sign): the identity wins when present.
  auto key = [](const IntMatrix& g) {
    std::vector<std::pair<Integer, bool>> k;
    for (std::size_t r = 0; r < g.rows(); ++r)
      for (std::size_t c = 0; c < g.cols(); ++c) {
        Integer x = g(r, c) - (r == c ? 1 : 0);
        k.emplace_back(abs(x), x < 0);
      }
    return k;
  };
  return *std::min_element(all.begin(), all.end(), [&](const IntMatrix& a, const IntMatrix& b) { return key(a) < key(b); });
}

}  // namespace toricsym
