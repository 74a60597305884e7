#include "toricsym/verify.hpp"

#include "toricsym/divisors.hpp"
#include "toricsym/mmp.hpp"
#include "toricsym/qfield.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace toricsym {

namespace {

// Collects failures; the first few go into the detail line.
struct Tally {
  std::size_t checks = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
  CriterionResult result(const std::string& id, const std::string& summary) const {
    CriterionResult r{id, criterion_anchor(id), failures.empty(), {}};
    if (failures.empty()) {
      r.detail = summary + " (" + std::to_string(checks) + " checks)";
    } else {
      r.detail = std::to_string(failures.size()) + " of " + std::to_string(checks) + " checks failed: " + failures.front();
      if (failures.size() > 1) r.detail += "; " + failures[1];
    }
    return r;
  }
};

FamilyDescriptor desc(const std::string& text) { return FamilyDescriptor::parse(text); }

std::string join(const std::vector<std::size_t>& xs) {
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + ")";
}

std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  for (int m = 1; m <= 4; ++m) {
    out.push_back("projective:" + std::to_string(m));
    out.push_back("p1111m:" + std::to_string(m));
    out.push_back("p11a:" + std::to_string(m));
  }
  for (int a = -2; a <= 2; ++a) {
    out.push_back("hirzebruch:" + std::to_string(a));
    out.push_back("bundle-p3:" + std::to_string(a));
    out.push_back("bundle-p1xp1:" + std::to_string(a));
  }
  for (const char* s : {"p1xp1", "dp6:n1", "dp6:n2", "q22:n1", "q22:n2", "weil-p1", "singular-hexagon"}) out.push_back(s);
  return out;
}

CriterionResult a1(const VerifyOptions& o) {
  Tally t;
  auto rank_law = [&](const Fan& f, const std::string& name) {
    try {
      const auto cl = class_group(f).group;
      const long expected = static_cast<long>(f.ray_count()) - static_cast<long>(f.rank());
      t.expect(static_cast<long>(cl.free_rank) == expected,
               name + ": rank Cl = " + std::to_string(cl.free_rank) + ", expected " + std::to_string(expected));
    } catch (const std::exception& e) {
      t.expect(false, name + ": " + e.what());
    }
  };
  for (const auto& name : corpus_names()) {
    try {
      rank_law(o.builder(desc(name)).fan, name);
    } catch (const std::exception& e) {
      t.expect(false, name + ": " + e.what());
    }
  }
  std::mt19937_64 rng(o.random_seed);
  for (int k = 0; k < 200; ++k) rank_law(random_smooth_surface_fan(rng, 10), "random fan #" + std::to_string(k));
  return t.result("A1", "named families and 200 random smooth surface fans");
}

CriterionResult a2(const VerifyOptions& o) {
  Tally t;
  std::vector<std::pair<std::string, std::vector<std::size_t>>> cases = {{"projective:4", {5}}};
  // m = 1 is P^4 itself, where every ray lies in one block.
  cases.push_back({"p1111m:1", {5}});
  for (int m = 2; m <= 4; ++m) cases.push_back({"p1111m:" + std::to_string(m), {4, 1}});
  for (int a = -2; a <= 2; ++a) {
    const std::string s = std::to_string(a);
    cases.push_back({"bundle-p3:" + s, a != 0 ? std::vector<std::size_t>{4, 1, 1} : std::vector<std::size_t>{4, 2}});
    cases.push_back({"bundle-p1xp1:" + s, a != 0 ? std::vector<std::size_t>{2, 2, 1, 1} : std::vector<std::size_t>{2, 2, 2}});
    cases.push_back({"hirzebruch:" + s, a != 0 ? std::vector<std::size_t>{2, 1, 1} : std::vector<std::size_t>{2, 2}});
  }
  for (const auto& [name, want] : cases) {
    try {
      const Fan f = o.builder(desc(name)).fan;
      const auto part = ray_blocks(f);
      t.expect(part.sizes == want, name + ": blocks " + join(part.sizes) + ", expected " + join(want));
      // Same partition through the solve-based equivalence test.
      for (std::size_t i = 0; i < f.ray_count(); ++i)
        for (std::size_t j = i + 1; j < f.ray_count(); ++j) {
          bool same_block = false;
          for (const auto& b : part.blocks)
            if (std::count(b.begin(), b.end(), i) && std::count(b.begin(), b.end(), j)) same_block = true;
          if (same_block != classes_equal_by_solve(f, i, j))
            t.expect(false, name + ": rays " + std::to_string(i) + "," + std::to_string(j) + " disagree with the solve test");
        }
    } catch (const std::exception& e) {
      t.expect(false, name + ": " + e.what());
    }
  }
  return t.result("A2", std::to_string(cases.size()) + " fans");
}

void check_relation(Tally& t, const std::string& name, const Fan& f, const IntVector& want) {
  const auto part = ray_blocks(f);
  const BlockRelation rel = derive_block_relation(f, part.blocks.front());
  t.expect(rel.relation == want || rel.relation == -want,
           name + ": relation " + to_string(rel.relation) + ", expected " + to_string(want));
  // <u_j, v_i> = delta_ij - delta_{i,anchor}
  std::size_t k = 0;
  for (auto j : rel.block) {
    if (j == rel.anchor) continue;
    const IntVector& u = rel.dual_vectors[k++];
    for (std::size_t i = 0; i < f.ray_count(); ++i) {
      const bool in_block = std::count(rel.block.begin(), rel.block.end(), i) > 0;
      if (!in_block) continue;
      Integer expect = Integer(i == j ? 1 : 0) - Integer(i == rel.anchor ? 1 : 0);
      t.expect(dot(u, f.ray(i)) == expect, name + ": <u_" + std::to_string(j) + ", v_" + std::to_string(i) + "> is wrong");
    }
  }
  if (!rel.dual_vectors.empty())
    t.expect(rank(IntMatrix::from_rows(rel.dual_vectors, f.rank())) == rel.dual_vectors.size(),
             name + ": dual vectors are dependent");
}

CriterionResult a3(const VerifyOptions& o) {
  Tally t;
  for (long m = 1; m <= 4; ++m) {
    const std::string name = "p1111m:" + std::to_string(m);
    try {
      check_relation(t, name, o.builder(desc(name)).fan, make_vector({1, 1, 1, 1, m}));
    } catch (const std::exception& e) {
      t.expect(false, name + ": " + e.what());
    }
  }
  for (long a = -2; a <= 2; ++a) {
    const std::string name = "bundle-p3:" + std::to_string(a);
    try {
      check_relation(t, name, o.builder(desc(name)).fan, make_vector({1, 1, 1, 1, -a, 0}));
    } catch (const std::exception& e) {
      t.expect(false, name + ": " + e.what());
    }
  }
  return t.result("A3", "m in 1..4, a in -2..2");
}

CriterionResult a4(const VerifyOptions& o) {
  Tally t;
  try {
    const Fan f = o.builder(desc("singular-hexagon")).fan;
    const Lattice n1 = Lattice::root_a2();
    auto i = f.ray_index(lattice_coords(n1, make_vector({3, -1, -2})));
    auto j = f.ray_index(lattice_coords(n1, make_vector({3, -2, -1})));
    t.expect(i && j, "rays (3,-1,-2) and (3,-2,-1) are not both in the fan");
    if (i && j) {
      Cone c{std::min(*i, *j), std::max(*i, *j)};
      t.expect(std::count(f.cones().begin(), f.cones().end(), c) == 1, "the two rays do not span a cone of the fan");
      auto inv = cone_invariant_factors(f, c);
      t.expect(inv == std::vector<Integer>{1, 3}, "invariant factors are not (1,3)");
    }
    t.expect(!validate_fan(f).smooth, "fan reported smooth");
  } catch (const std::exception& e) {
    t.expect(false, e.what());
  }
  return t.result("A4", "invariant factors (1,3)");
}

CriterionResult a5(const VerifyOptions& o) {
  Tally t;
  const std::vector<std::pair<std::string, std::size_t>> cases = {
      {"p1xp1", 8}, {"dp6:n1", 12}, {"dp6:n2", 12}, {"projective:2", 6}};
  for (const auto& [name, want] : cases) {
    try {
      const std::size_t got = fan_automorphisms(o.builder(desc(name)).fan).order();
      t.expect(got == want, name + ": |Aut| = " + std::to_string(got) + ", expected " + std::to_string(want));
    } catch (const std::exception& e) {
      t.expect(false, name + ": " + e.what());
    }
  }
  return t.result("A5", "orders 8, 12, 12, 6");
}

std::vector<std::size_t> orbit_sizes(const GroupAction& g) {
  std::vector<std::size_t> s;
  for (const auto& o : ray_orbits(g)) s.push_back(o.size());
  std::sort(s.begin(), s.end());
  return s;
}

CriterionResult a6(const VerifyOptions& o) {
  Tally t;
  try {
    const Fan f = o.builder(desc("dp6:n2")).fan;
    const GroupAction g = s3_action(f);
    t.expect(orbit_sizes(g) == std::vector<std::size_t>{3, 3}, "N2: orbit sizes " + join(orbit_sizes(g)));
    for (auto mode : {MMPMode::FirstOrbit, MMPMode::ExploreAll}) {
      const auto traces = run_equivariant_mmp(f, g, mode);
      const std::string m = mode == MMPMode::FirstOrbit ? "first-orbit" : "explore-all";
      t.expect(!traces.empty(), "N2 " + m + ": no trace");
      t.expect(mode == MMPMode::ExploreAll || traces.size() == 1, "N2 first-orbit: more than one trace");
      for (const auto& tr : traces) {
        t.expect(tr.steps.size() == 1, "N2 " + m + ": " + std::to_string(tr.steps.size()) + " steps");
        t.expect(tr.label.kind == TerminalLabel::Kind::P2, "N2 " + m + ": terminal " + tr.label.to_string());
      }
    }
  } catch (const std::exception& e) {
    t.expect(false, std::string("N2: ") + e.what());
  }
  try {
    const Fan f = o.builder(desc("dp6:n1")).fan;
    const GroupAction g = s3_action(f);
    t.expect(orbit_sizes(g) == std::vector<std::size_t>{6}, "N1: orbit sizes " + join(orbit_sizes(g)));
    for (auto mode : {MMPMode::FirstOrbit, MMPMode::ExploreAll}) {
      const auto traces = run_equivariant_mmp(f, g, mode);
      t.expect(traces.size() == 1, "N1: expected a single trace");
      for (const auto& tr : traces) {
        t.expect(tr.steps.empty(), "N1: MMP took a step");
        t.expect(tr.label.kind == TerminalLabel::Kind::DP6Terminal, "N1: terminal " + tr.label.to_string());
      }
    }
  } catch (const std::exception& e) {
    t.expect(false, std::string("N1: ") + e.what());
  }
  return t.result("A6", "N2 -> P2 in one step, N1 terminal");
}

struct Census {
  std::vector<Fan> plain;     // S3-invariant, smooth
  std::vector<Fan> negation;  // S3 x {+-I}-invariant, smooth
};

const Census& census() {
  static const Census c = [] {
    Census out;
    for (auto lat : {Lattice::root_a2(), Lattice::weight_a2()})
      for (bool neg : {false, true}) {
        EnumerationOptions opts{lat, 2, 12, true, neg};
        auto fans = enumerate_invariant_fans(opts);
        auto& dst = neg ? out.negation : out.plain;
        dst.insert(dst.end(), fans.begin(), fans.end());
      }
    return out;
  }();
  return c;
}

CriterionResult a7(const VerifyOptions&) {
  Tally t;
  std::size_t branches = 0;
  auto run = [&](const Fan& f, bool with_tau) {
    const std::string name = f.lattice().name() + " " + std::to_string(f.ray_count()) + "-ray fan" + (with_tau ? " with -I" : "");
    try {
      GroupAction g = s3_action(f);
      if (with_tau) g = with_galois(f, g, GaloisDatum{-IntMatrix::identity(2), "quadratic"});
      for (const auto& tr : run_equivariant_mmp(f, g, MMPMode::ExploreAll)) {
        ++branches;
        const auto k = tr.label.kind;
        t.expect(k == TerminalLabel::Kind::P2 || k == TerminalLabel::Kind::DP6Terminal, name + ": terminal " + tr.label.to_string());
        if (with_tau && tr.terminal.ray_count() == 6)
          t.expect(k == TerminalLabel::Kind::DP6Terminal, name + ": 6-ray terminal labelled " + tr.label.to_string());
        const long rho = invariant_picard_number(tr.terminal, restrict_action(g, tr.terminal));
        t.expect(rho == 1 || rho == 2, name + ": terminal has invariant Picard number " + std::to_string(rho));
      }
    } catch (const std::exception& e) {
      t.expect(false, name + ": " + e.what());
    }
  };
  const Census& c = census();
  t.expect(!c.plain.empty() && !c.negation.empty(), "census is empty");
  for (const auto& f : c.plain) run(f, false);
  for (const auto& f : c.negation) run(f, true);
  return t.result("A7", std::to_string(c.plain.size() + c.negation.size()) + " census fans, " + std::to_string(branches) +
                            " branches");
}

CriterionResult a8(const VerifyOptions&) {
  Tally t;
  std::size_t pairs = 0;
  const Census& c = census();
  for (const auto* list : {&c.plain, &c.negation})
    for (const auto& f : *list) {
      try {
        pairs += check_adjacent_minus_one_rule(f).size();
        t.expect(true, "");
      } catch (const std::exception& e) {
        t.expect(false, e.what());
      }
    }
  return t.result("A8", std::to_string(pairs) + " adjacent (-1)-pairs");
}

CriterionResult a9(const VerifyOptions&) {
  Tally t;
  const std::vector<IntMatrix> want = {-IntMatrix::identity(2), IntMatrix::identity(2)};
  for (auto lat : {Lattice::root_a2(), Lattice::weight_a2()}) {
    try {
      const Fan f = lat.kind == LatticeKind::RootA2 ? s3_orbit_fan(lat, {make_vector({1, -1, 0})}, false)
                                                    : s3_orbit_fan(lat, {make_vector({1, 0, 0}), make_vector({0, 0, -1})}, false);
      const auto c = centralizer_in_gl(s3_action(f));
      t.expect(c.exhaustive, lat.name() + ": search not exhaustive");
      t.expect(c.elements == want, lat.name() + ": centralizer has " + std::to_string(c.elements.size()) + " elements");
    } catch (const std::exception& e) {
      t.expect(false, lat.name() + ": " + e.what());
    }
  }
  return t.result("A9", "{I, -I} on N1 and N2");
}

CriterionResult a10(const VerifyOptions&) {
  Tally t;
  try {
    for (const char* name : {"Q", "R"}) t.expect(satisfies_star(builtin_field(name)), std::string(name) + " fails (star)");
    for (const char* name : {"Q(sqrt-3)", "Q(sqrt-1)"}) {
      const auto& f = builtin_field(name);
      t.expect(verify_negative_one_witness(f), std::string(name) + ": witness does not verify");
      t.expect(!satisfies_star(f), std::string(name) + " satisfies (star)");
    }
    const auto& w = *builtin_field("Q(sqrt-3)").witness;
    const QuadElement half = QuadElement::rational(Rational(1, 2));
    const QuadElement s = QuadElement::sqrt_of(Integer(-3));
    const QuadElement x = (QuadElement::rational(1) + s) * half, y = (QuadElement::rational(1) - s) * half;
    t.expect(w.first == x && w.second == y, "Q(sqrt-3) witness is not ((1+sqrt-3)/2, (1-sqrt-3)/2)");
    t.expect(x * x + y * y == QuadElement::rational(-1), "((1+sqrt-3)/2)^2 + ((1-sqrt-3)/2)^2 != -1");
  } catch (const std::exception& e) {
    t.expect(false, e.what());
  }
  return t.result("A10", "Q, R pass; Q(sqrt-3), Q(sqrt-1) fail by witness");
}

CriterionResult a11(const VerifyOptions&) {
  Tally t;
  for (long a = 0; a <= 2; ++a) {
    const std::string s = "a=" + std::to_string(a);
    try {
      const auto r = check_diagonal_obstruction(a);
      t.expect(r.swap_exchanges_subdivisions, s + ": swap does not exchange the subdivisions");
      t.expect(!r.swap_fixes_a_subdivision, s + ": swap fixes a subdivision");
      t.expect(r.swap_preserves_six_ray_fan, s + ": swap does not preserve the six-ray fan");
    } catch (const std::exception& e) {
      t.expect(false, s + ": " + e.what());
    }
  }
  return t.result("A11", "a in 0..2");
}

CriterionResult a12(const VerifyOptions&) {
  Tally t;
  using Q = CriteriaQuery;
  for (long k = 1; k <= 6; ++k) {
    const bool even = k % 2 == 0;
    auto p = symmetric_action_criteria({Q::Kind::S6OnWeightedP1111m, k, Q::BaseField::Complex});
    t.expect(p.admits_action == even, "S6 on P(1,1,1,1," + std::to_string(k) + ")");
    auto b = symmetric_action_criteria({Q::Kind::S6OnBundleOverP3, k, Q::BaseField::Complex});
    t.expect(b.admits_action == even, "S6 on the P^3 bundle, a=" + std::to_string(k));
  }
  const std::map<long, long> complex_degree = {{1, 4}, {2, 5}, {3, 6}, {4, 6}, {5, 7}};
  const std::map<long, long> star_degree = {{1, 3}, {2, 4}, {3, 5}, {4, 6}, {5, 7}};
  for (long n = 1; n <= 5; ++n) {
    auto c = symmetric_action_criteria({Q::Kind::MaxDegree, n, Q::BaseField::Complex});
    t.expect(c.max_degree == complex_degree.at(n), "complex table, n=" + std::to_string(n));
    auto s = symmetric_action_criteria({Q::Kind::MaxDegree, n, Q::BaseField::StarField});
    t.expect(s.max_degree == star_degree.at(n), "star-field table, n=" + std::to_string(n));
    t.expect(s.infinite_family == (n == 2), "star-field infinite family flag, n=" + std::to_string(n));
    if (n != 2) t.expect(s.varieties == std::vector<std::string>{"P^" + std::to_string(n)}, "star-field variety, n=" + std::to_string(n));
  }
  const auto four = symmetric_action_criteria({Q::Kind::MaxDegree, 4, Q::BaseField::Complex});
  t.expect(four.varieties.size() == 4, "complex table, n=4 lists " + std::to_string(four.varieties.size()) + " varieties");
  return t.result("A12", "parity on 1..6, tables on n in 1..5");
}

using Runner = CriterionResult (*)(const VerifyOptions&);

const std::vector<std::pair<std::string, Runner>>& runners() {
  static const std::vector<std::pair<std::string, Runner>> r = {
      {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4},   {"A5", a5},   {"A6", a6},
      {"A7", a7}, {"A8", a8}, {"A9", a9}, {"A10", a10}, {"A11", a11}, {"A12", a12}};
  return r;
}

}  // namespace

const std::vector<std::string>& criterion_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, fn] : runners()) out.push_back(id);
    return out;
  }();
  return ids;
}

std::string criterion_anchor(const std::string& id) {
  static const std::map<std::string, std::string> anchors = {
      {"A1", "rank Cl = #rays - rank N"},
      {"A2", "linear-equivalence block sizes"},
      {"A3", "relation forced on the largest block"},
      {"A4", "singular hexagon cone of index 3"},
      {"A5", "fan automorphism group orders"},
      {"A6", "two S3-actions on the hexagon fan"},
      {"A7", "equivariant MMP census"},
      {"A8", "adjacent (-1)-rays have opposite outer neighbours"},
      {"A9", "centralizer of S3 in GL(N)"},
      {"A10", "condition (star) on sample fields"},
      {"A11", "coordinate swap versus diagonal subdivisions"},
      {"A12", "parity criteria and maximal-degree tables"},
  };
  auto it = anchors.find(id);
  return it == anchors.end() ? std::string() : it->second;
}

std::vector<CriterionResult> run_verify_paper(const VerifyOptions& opts) {
  if (opts.only && criterion_anchor(*opts.only).empty()) throw std::invalid_argument("unknown criterion " + *opts.only);
  std::vector<CriterionResult> out;
  for (const auto& [id, fn] : runners()) {
    if (opts.only && *opts.only != id) continue;
    try {
      out.push_back(fn(opts));
    } catch (const std::exception& e) {
      out.push_back({id, criterion_anchor(id), false, std::string("uncaught: ") + e.what()});
    }
  }
  return out;
}

std::string format_result_line(const CriterionResult& r) {
  std::ostringstream os;
  os << r.id << (r.id.size() < 3 ? "  " : " ") << (r.passed ? "PASS" : "FAIL") << "  " << r.anchor << ": " << r.detail;
  return os.str();
}

}  // namespace toricsym
