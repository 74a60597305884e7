#pragma once

// The acceptance suite A1..A12. Each criterion recomputes its claim from the
// library and compares against stated values; failures are reported, never
// thrown.

#include "toricsym/families.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace toricsym {

struct CriterionResult {
  std::string id;
  std::string anchor;
  bool passed = false;
  std::string detail;
};

using FamilyBuilder = std::function<FamilyFan(const FamilyDescriptor&)>;

struct VerifyOptions {
  std::optional<std::string> only;
  // Replaced in tests to inject faults into the named-family constructors.
  FamilyBuilder builder = [](const FamilyDescriptor& d) { return make_family_fan(d); };
  std::uint64_t random_seed = 20240611;
};

const std::vector<std::string>& criterion_ids();
std::string criterion_anchor(const std::string& id);

// Throws std::invalid_argument for an unknown `only` id.
std::vector<CriterionResult> run_verify_paper(const VerifyOptions& opts = {});

std::string format_result_line(const CriterionResult& r);

}  // namespace toricsym
