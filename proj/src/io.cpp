#include "toricsym/io.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace toricsym {

Json integer_to_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t start = !s.empty() && (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size() || s.find_first_not_of("0123456789", start) != std::string::npos)
      throw ParseError("not an integer: \"" + s + "\"");
    return Integer(s[0] == '+' ? s.substr(1) : s);
  }
  throw ParseError("expected an integer, got " + j.dump());
}

Json vector_to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_to_json(x));
  return out;
}

IntVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an integer list, got " + j.dump());
  IntVector v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

Json matrix_to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r)));
  return out;
}

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a non-empty matrix, got " + j.dump());
  std::vector<IntVector> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r));
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw ParseError("ragged matrix " + j.dump());
  return IntMatrix::from_rows(rows, rows.front().size());
}

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

Fan fan_from_json(const Json& j) {
  const Json& lat_j = field(j, "lattice");
  if (!lat_j.is_string()) throw ParseError("lattice must be a string");
  Lattice lat;
  try {
    lat = Lattice::parse(lat_j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  std::vector<IntVector> rays;
  for (const auto& r : field(j, "rays")) {
    IntVector v = vector_from_json(r);
    if (lat.is_a2() && v.size() == 3)
      v = lattice_coords(lat, v);
    else if (v.size() != lat.rank)
      throw ParseError("ray " + r.dump() + " has the wrong length for " + lat.name());
    rays.push_back(std::move(v));
  }
  if (!j.contains("max_cones")) {
    if (lat.rank != 2) throw ParseError("max_cones is required for rank " + std::to_string(lat.rank));
    return build_surface_fan(lat, std::move(rays));
  }
  std::vector<Cone> cones;
  for (const auto& c : j.at("max_cones")) {
    if (!c.is_array()) throw ParseError("cone must be an index list, got " + c.dump());
    Cone cone;
    for (const auto& i : c) {
      if (!i.is_number_unsigned() && !(i.is_number_integer() && i.get<long long>() >= 0))
        throw ParseError("cone index must be a non-negative integer, got " + i.dump());
      cone.push_back(i.get<std::size_t>());
    }
    cones.push_back(std::move(cone));
  }
  return Fan::from_cones(lat, std::move(rays), std::move(cones));
}

Json fan_to_json(const Fan& fan) {
  Json out;
  out["lattice"] = fan.lattice().name();
  Json rays = Json::array();
  for (const auto& r : fan.rays()) rays.push_back(vector_to_json(ambient_vector(fan.lattice(), r)));
  out["rays"] = rays;
  Json cones = Json::array();
  for (const auto& c : fan.cones()) cones.push_back(c);
  out["max_cones"] = cones;
  return out;
}

ActionSpec action_from_json(const Json& j, const Lattice& lattice) {
  if (!j.is_object()) throw ParseError("action document must be an object");
  ActionSpec a;
  auto add_named = [&](const std::string& name) {
    if (name == "s3") {
      if (!lattice.is_a2()) throw ParseError("\"s3\" generators need lattice rootA2 or weightA2");
      for (const auto& g : s3_generators(lattice)) a.generators.push_back(g);
      a.names.push_back("(0 1)");
      a.names.push_back("(0 1 2)");
    } else if (name == "negation") {
      a.generators.push_back(-IntMatrix::identity(lattice.rank));
      a.names.push_back("-I");
    } else {
      throw ParseError("unknown generator name \"" + name + "\"");
    }
  };
  if (j.contains("generators")) {
    const Json& gens = j.at("generators");
    if (gens.is_string()) {
      add_named(gens.get<std::string>());
    } else if (gens.is_array()) {
      std::vector<std::string> explicit_names;
      if (j.contains("names"))
        for (const auto& n : j.at("names")) explicit_names.push_back(n.get<std::string>());
      for (const auto& g : gens) {
        if (g.is_string()) {
          add_named(g.get<std::string>());
          continue;
        }
        IntMatrix m = matrix_from_json(g);
        if (m.rows() != lattice.rank || m.cols() != lattice.rank)
          throw ParseError("generator " + g.dump() + " is not " + std::to_string(lattice.rank) + "x" +
                           std::to_string(lattice.rank));
        const std::size_t k = a.generators.size();
        a.names.push_back(k < explicit_names.size() ? explicit_names[k] : "g" + std::to_string(k));
        a.generators.push_back(std::move(m));
      }
    } else {
      throw ParseError("generators must be a list or a name");
    }
  }
  if (j.contains("galois")) {
    IntMatrix t = matrix_from_json(j.at("galois"));
    if (t.rows() != lattice.rank || t.cols() != lattice.rank) throw ParseError("galois matrix has the wrong size");
    a.galois = std::move(t);
  }
  return a;
}

Json action_to_json(const ActionSpec& a) {
  Json out;
  Json gens = Json::array();
  for (const auto& g : a.generators) gens.push_back(matrix_to_json(g));
  out["generators"] = gens;
  out["names"] = a.names;
  if (a.galois) out["galois"] = matrix_to_json(*a.galois);
  return out;
}

FieldDescriptor field_from_json(const Json& j) {
  FieldDescriptor f;
  f.name = field(j, "name").get<std::string>();
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "rationals")
    f.kind = FieldKind::Rationals;
  else if (kind == "reals")
    f.kind = FieldKind::Reals;
  else if (kind == "quadratic")
    f.kind = FieldKind::Quadratic;
  else
    throw ParseError("unknown field kind \"" + kind + "\"");
  if (f.kind == FieldKind::Quadratic) f.d = integer_from_json(field(j, "d"));
  auto flag = [&](const char* key) {
    const Json& b = field(j, key);
    if (!b.is_boolean()) throw ParseError(std::string(key) + " must be a boolean");
    return b.get<bool>();
  };
  f.star_clause2 = flag("star_clause2");
  f.star_clause3 = flag("star_clause3");
  if (j.contains("witness")) {
    const Json& w = j.at("witness");
    if (!w.is_array() || w.size() != 2) throw ParseError("witness must be a pair of expressions");
    try {
      f.witness = std::make_pair(quad_eval(w[0].get<std::string>(), f.d), quad_eval(w[1].get<std::string>(), f.d));
    } catch (const FieldError& e) {
      throw ParseError(std::string("bad witness: ") + e.what());
    }
  }
  return f;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    Json j = Json::parse(in);
    bool has_float = false;
    std::function<void(const Json&)> scan = [&](const Json& x) {
      if (x.is_number_float()) has_float = true;
      if (x.is_structured())
        for (const auto& y : x) scan(y);
    };
    scan(j);
    if (has_float) throw ParseError(path + ": floating-point numbers are not allowed");
    return j;
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Json group_to_json(const FGAbelianGroup& g) {
  Json out;
  out["free_rank"] = g.free_rank;
  Json t = Json::array();
  for (const auto& x : g.torsion) t.push_back(integer_to_json(x));
  out["torsion"] = t;
  out["text"] = g.to_string();
  return out;
}

namespace {

Json rays_json(const Fan& fan, const std::vector<std::size_t>& idx) {
  Json out = Json::array();
  for (auto i : idx) out.push_back(vector_to_json(ambient_vector(fan.lattice(), fan.ray(i))));
  return out;
}

}  // namespace

Json orbit_report(const Fan& fan, const GroupAction& g) {
  Json out;
  out["group_order"] = g.order();
  out["faithful_on_rays"] = g.faithful_on_rays;
  Json orbits = Json::array();
  for (const auto& o : ray_orbits(g)) orbits.push_back(rays_json(fan, o));
  out["orbits"] = orbits;
  out["fixed_space_dimension"] = fixed_space_dimension(g);
  out["invariant_picard_number"] = invariant_picard_number(fan, g);
  return out;
}

Json check_report(const Fan& fan, const std::optional<GroupAction>& g, const std::optional<GaloisDatum>& galois) {
  Json out;
  const FanReport rep = validate_fan(fan);
  out["lattice"] = fan.lattice().name();
  out["rays"] = fan.ray_count();
  out["simplicial"] = rep.simplicial;
  out["complete"] = rep.complete;
  out["smooth"] = rep.smooth;
  out["class_group"] = group_to_json(class_group(fan).group);
  const auto blocks = ray_blocks(fan);
  out["block_sizes"] = blocks.sizes;
  Json bl = Json::array();
  for (const auto& b : blocks.blocks) bl.push_back(rays_json(fan, b));
  out["blocks"] = bl;
  Json rel = Json::array();
  for (const auto& c : relation_lattice(fan).basis) rel.push_back(vector_to_json(c));
  out["relations"] = rel;
  if (g) {
    out["action"] = orbit_report(fan, *g);
    if (galois) out["action"]["form_class"] = to_string(classify_galois_form(fan, *g, *galois));
  }
  return out;
}

Json trace_to_json(const MMPTrace& t) {
  Json out;
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    Json step;
    Json snap = Json::array();
    for (const auto& r : s.before.rays()) snap.push_back(vector_to_json(ambient_vector(s.before.lattice(), r)));
    step["rays"] = snap;
    Json gone = Json::array();
    for (const auto& r : s.contracted) gone.push_back(vector_to_json(ambient_vector(s.before.lattice(), r)));
    step["contracted"] = gone;
    steps.push_back(step);
  }
  out["steps"] = steps;
  Json term = Json::array();
  for (const auto& r : t.terminal.rays()) term.push_back(vector_to_json(ambient_vector(t.terminal.lattice(), r)));
  out["terminal_rays"] = term;
  out["label"] = t.label.to_string();
  return out;
}

namespace {

bool is_flat(const Json& j) {
  if (!j.is_array()) return !j.is_object();
  for (const auto& x : j)
    if (x.is_object()) return false;
    else if (x.is_array() && !std::all_of(x.begin(), x.end(), [](const Json& y) { return y.is_primitive(); })) return false;
  return true;
}

std::string inline_value(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (!j.is_array()) return j.dump();
  std::string s = "[";
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (i) s += j[i].is_array() ? " " : ",";
    if (j[i].is_array()) {
      s += "(";
      for (std::size_t k = 0; k < j[i].size(); ++k) s += (k ? "," : "") + inline_value(j[i][k]);
      s += ")";
    } else {
      s += inline_value(j[i]);
    }
  }
  return s + "]";
}

void render(const Json& j, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_flat(v)) {
        os << pad << k << ": " << inline_value(v) << "\n";
      } else {
        os << pad << k << ":\n";
        render(v, indent + 2, os);
      }
    }
  } else if (j.is_array()) {
    std::size_t n = 0;
    for (const auto& v : j) {
      if (is_flat(v)) {
        os << pad << "- " << inline_value(v) << "\n";
      } else {
        os << pad << "- [" << n << "]\n";
        render(v, indent + 2, os);
      }
      ++n;
    }
  } else {
    os << pad << inline_value(j) << "\n";
  }
}

}  // namespace

std::string render_plain(const Json& j) {
  std::ostringstream os;
  render(j, 0, os);
  return os.str();
}

}  // namespace toricsym
