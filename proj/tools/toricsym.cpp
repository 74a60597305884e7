// toricsym: command-line front end.
//
// Exit codes: 0 success, 1 verification failure, 2 parse error,
// 3 precondition failure (with a machine-readable reason).

#include "toricsym/divisors.hpp"
#include "toricsym/families.hpp"
#include "toricsym/io.hpp"
#include "toricsym/mmp.hpp"
#include "toricsym/qfield.hpp"
#include "toricsym/symmetry.hpp"
#include "toricsym/verify.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

using namespace toricsym;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kParse = 2, kPrecondition = 3 };

struct Precondition : std::runtime_error {
  Precondition(std::string reason, const std::string& what) : std::runtime_error(what), reason(std::move(reason)) {}
  std::string reason;
};

bool machine = false;

void emit(const Json& j) {
  if (machine)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << render_plain(j);
}

std::string reason_of(const DivisorError& e) {
  switch (e.kind) {
    case DivisorError::Kind::RaysDoNotSpan: return "rays-do-not-span";
    case DivisorError::Kind::NotABlock: return "not-a-block";
    case DivisorError::Kind::TorsionObstruction: return "torsion-obstruction";
    case DivisorError::Kind::UnequalBlockCoefficients: return "unequal-block-coefficients";
    case DivisorError::Kind::NotUnique: return "not-unique";
  }
  return "divisor";
}

std::string reason_of(const SymmetryError& e) {
  switch (e.kind) {
    case SymmetryError::Kind::NotUnimodular: return "not-unimodular";
    case SymmetryError::Kind::NotFanPreserving: return "not-fan-preserving";
    case SymmetryError::Kind::ClosureExceedsBound: return "closure-exceeds-bound";
    case SymmetryError::Kind::NotCommuting: return "not-commuting";
    case SymmetryError::Kind::NotInvolution: return "not-involution";
    case SymmetryError::Kind::RankTooLarge: return "rank-too-large";
    case SymmetryError::Kind::Empty: return "empty";
  }
  return "symmetry";
}

std::string reason_of(const MMPError& e) {
  switch (e.kind) {
    case MMPError::Kind::NotSmoothSurface: return "not-smooth-surface";
    case MMPError::Kind::NotContractible: return "not-contractible";
    case MMPError::Kind::ResultNotSmooth: return "result-not-smooth";
    case MMPError::Kind::Internal: return "internal";
  }
  return "mmp";
}

int report_error(int code, const std::string& reason, const std::string& message) {
  if (machine) {
    Json j;
    j["error"] = code == kParse ? "parse" : "precondition";
    j["reason"] = reason;
    j["message"] = message;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cerr << "error: " << reason << ": " << message << "\n";
  }
  return code;
}

// Maps library exceptions onto the exit-code contract.
template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    return report_error(kParse, "parse", e.what());
  } catch (const Precondition& e) {
    return report_error(kPrecondition, e.reason, e.what());
  } catch (const FanError& e) {
    return report_error(kPrecondition, e.reason(), e.what());
  } catch (const DivisorError& e) {
    return report_error(kPrecondition, reason_of(e), e.what());
  } catch (const SymmetryError& e) {
    return report_error(kPrecondition, reason_of(e), e.what());
  } catch (const MMPError& e) {
    return report_error(kPrecondition, reason_of(e), e.what());
  } catch (const FieldError& e) {
    return report_error(kPrecondition, "field", e.what());
  }
}

Fan load_fan(const std::string& path) { return fan_from_json(read_json_file(path)); }

ActionSpec load_action(const std::string& path, const Lattice& lat) { return action_from_json(read_json_file(path), lat); }

GroupAction build_action(const Fan& fan, const ActionSpec& a) { return action_from_generators(fan, a.generators, a.names); }

FamilyDescriptor parse_family(const std::string& text) {
  try {
    return FamilyDescriptor::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

FamilyFan build_family(const FamilyDescriptor& d) {
  try {
    return make_family_fan(d);
  } catch (const std::invalid_argument& e) {
    throw Precondition("invalid-parameter", e.what());
  }
}

Lattice parse_lattice(const std::string& s) {
  try {
    return Lattice::parse(s);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toolkit for toric varieties with symmetric-group actions"};
  app.require_subcommand(1);
  std::string format = "plain";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"plain", "machine"}));

  // check
  auto* check = app.add_subcommand("check", "Validate a fan and report class group, blocks and relations");
  std::string fan_path, action_path;
  check->add_option("fan", fan_path, "Fan file")->required();
  check->add_option("action", action_path, "Action file");

  // orbits
  auto* orbits = app.add_subcommand("orbits", "Ray orbits and invariant Picard number of an action");
  std::string orbits_fan, orbits_action;
  orbits->add_option("fan", orbits_fan, "Fan file")->required();
  orbits->add_option("action", orbits_action, "Action file")->required();

  // mmp
  auto* mmp = app.add_subcommand("mmp", "Run the equivariant MMP on a smooth complete surface fan");
  std::string mmp_fan, mmp_action, mmp_galois;
  bool explore_all = false;
  mmp->add_option("fan", mmp_fan, "Fan file")->required();
  mmp->add_option("action", mmp_action, "Action file");
  mmp->add_flag("--explore-all", explore_all, "Follow every contractible orbit");
  mmp->add_option("--galois", mmp_galois, "File whose \"galois\" matrix joins the group");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "S3-invariant surface fans on N1 or N2");
  std::string lattice_name = "weightA2";
  long height = 1;
  std::size_t max_rays = 6;
  bool smooth = false, negation = false;
  enumerate->add_option("--lattice", lattice_name, "rootA2 | weightA2 (or N1 | N2)");
  enumerate->add_option("--height", height, "Bound on ambient coordinates")->check(CLI::PositiveNumber);
  enumerate->add_option("--max-rays", max_rays, "Bound on the ray count")->check(CLI::Range(3, 1000));
  enumerate->add_flag("--smooth", smooth, "Keep smooth fans only");
  enumerate->add_flag("--negation", negation, "Close seed orbits under -I");

  // families
  auto* families = app.add_subcommand("families", "Named fans");
  families->require_subcommand(1);
  auto* fam_list = families->add_subcommand("list", "List family names and parameters");
  auto* fam_emit = families->add_subcommand("emit", "Print the fan document of a named family");
  std::string family_text;
  bool emit_action = false;
  fam_emit->add_option("family", family_text, "name or name:param")->required();
  fam_emit->add_flag("--action", emit_action, "Print the action document (S3 generators, Galois matrix) instead");

  // verify-paper
  auto* verify = app.add_subcommand("verify-paper", "Run the acceptance criteria");
  std::string only;
  verify->add_option("--only", only, "Run a single criterion, e.g. A7");

  // star
  auto* star = app.add_subcommand("star", "Evaluate condition (star) on a field");
  std::string field_arg;
  star->add_option("field", field_arg, "Built-in field name or a field descriptor file");
  bool list_fields = false;
  star->add_flag("--list", list_fields, "List the built-in fields");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }
  machine = format == "machine";

  if (*check) {
    return guarded([&] {
      Fan fan = load_fan(fan_path);
      std::optional<GroupAction> g;
      std::optional<GaloisDatum> galois;
      if (!action_path.empty()) {
        ActionSpec a = load_action(action_path, fan.lattice());
        g = build_action(fan, a);
        if (a.galois) galois = GaloisDatum{*a.galois, "L/k"};
      }
      emit(check_report(fan, g, galois));
      return kOk;
    });
  }

  if (*orbits) {
    return guarded([&] {
      Fan fan = load_fan(orbits_fan);
      ActionSpec a = load_action(orbits_action, fan.lattice());
      GroupAction g = build_action(fan, a);
      Json out = orbit_report(fan, g);
      if (a.galois) out["form_class"] = to_string(classify_galois_form(fan, g, GaloisDatum{*a.galois, "L/k"}));
      emit(out);
      return kOk;
    });
  }

  if (*mmp) {
    return guarded([&] {
      Fan fan = load_fan(mmp_fan);
      GroupAction g = trivial_action(fan);
      std::optional<IntMatrix> tau;
      if (!mmp_action.empty()) {
        ActionSpec a = load_action(mmp_action, fan.lattice());
        g = build_action(fan, a);
        tau = a.galois;
      }
      if (!mmp_galois.empty()) {
        ActionSpec gal = load_action(mmp_galois, fan.lattice());
        if (!gal.galois) throw ParseError(mmp_galois + ": no \"galois\" matrix");
        tau = gal.galois;
      }
      if (tau) {
        GaloisDatum d{*tau, "L/k"};
        classify_galois_form(fan, g, d);
        g = with_galois(fan, g, d);
      }
      auto traces = run_equivariant_mmp(fan, g, explore_all ? MMPMode::ExploreAll : MMPMode::FirstOrbit);
      Json out;
      out["group_order"] = g.order();
      Json list = Json::array();
      for (const auto& t : traces) list.push_back(trace_to_json(t));
      out["traces"] = list;
      emit(out);
      return kOk;
    });
  }

  if (*enumerate) {
    return guarded([&] {
      EnumerationOptions opts{parse_lattice(lattice_name), height, max_rays, smooth, negation};
      if (!opts.lattice.is_a2()) throw ParseError("enumerate needs lattice rootA2 or weightA2");
      auto fans = enumerate_invariant_fans(opts);
      Json out;
      out["count"] = fans.size();
      Json list = Json::array();
      for (const auto& f : fans) {
        Json entry = fan_to_json(f);
        entry["smooth"] = validate_fan(f).smooth;
        list.push_back(entry);
      }
      out["fans"] = list;
      emit(out);
      return kOk;
    });
  }

  if (*families) {
    return guarded([&] {
      if (*fam_list) {
        for (const auto& line : family_catalogue()) std::cout << line << "\n";
        return kOk;
      }
      FamilyFan ff = build_family(parse_family(family_text));
      if (emit_action) {
        ActionSpec a;
        if (ff.fan.lattice().is_a2()) {
          a.generators = s3_generators(ff.fan.lattice());
          a.names = {"(0 1)", "(0 1 2)"};
        }
        if (ff.galois) a.galois = ff.galois->tau;
        std::cout << action_to_json(a).dump(2) << "\n";
      } else {
        std::cout << fan_to_json(ff.fan).dump(2) << "\n";
      }
      return kOk;
    });
  }

  if (*verify) {
    VerifyOptions opts;
    if (!only.empty()) {
      if (criterion_anchor(only).empty()) return report_error(kParse, "parse", "unknown criterion " + only);
      opts.only = only;
    }
    auto results = run_verify_paper(opts);
    bool all = true;
    Json list = Json::array();
    for (const auto& r : results) {
      all = all && r.passed;
      if (machine) {
        Json j;
        j["id"] = r.id;
        j["anchor"] = r.anchor;
        j["passed"] = r.passed;
        j["detail"] = r.detail;
        list.push_back(j);
      } else {
        std::cout << format_result_line(r) << "\n";
      }
    }
    if (machine) {
      Json out;
      out["criteria"] = list;
      out["passed"] = all;
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << (all ? "all criteria passed" : "verification FAILED") << "\n";
    }
    return all ? kOk : kVerifyFailed;
  }

  if (*star) {
    return guarded([&] {
      if (list_fields) {
        for (const auto& f : builtin_fields()) std::cout << f.name << "\n";
        return kOk;
      }
      if (field_arg.empty()) throw ParseError("star needs a field name or file");
      FieldDescriptor f;
      if (std::filesystem::exists(field_arg)) {
        f = field_from_json(read_json_file(field_arg));
      } else {
        try {
          f = builtin_field(field_arg);
        } catch (const std::exception&) {
          throw ParseError("unknown field \"" + field_arg + "\" (not a built-in name or a readable file)");
        }
      }
      Json out;
      out["field"] = f.name;
      out["star_clause2"] = f.star_clause2;
      out["star_clause3"] = f.star_clause3;
      const bool witness_ok = f.witness ? verify_negative_one_witness(f) : false;
      out["witness_verifies"] = witness_ok;
      out["satisfies_star"] = satisfies_star(f);
      emit(out);
      return f.witness && !witness_ok ? kVerifyFailed : kOk;
    });
  }
  return kOk;
}
