#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spheresep/harness.hpp"

namespace spheresep::io {

using Json = nlohmann::ordered_json;

/// A parsed instance document:
///
///   { "n": 2,
///     "w1": [[x, y, z], ...],
///     "w2": [[x, y, z], ...],
///     "tolerances": { "margin_tol": 1e-9, ... } }   // optional
///
/// Rows are normalized on load; rows that needed rescaling are listed in
/// `warnings`.
struct Instance {
  int n = 0;
  std::vector<UnitPoint> w1;
  std::vector<UnitPoint> w2;
  ToleranceConfig tolerances;
  std::vector<std::string> warnings;

  SphericalBody body1() const { return SphericalBody(w1, tolerances); }
  SphericalBody body2() const { return SphericalBody(w2, tolerances); }
};

/// Throws Error(MalformedInput) naming the offending key and, for JSON
/// syntax errors, the byte offset.
Instance parse_instance(const std::string& text, const ToleranceConfig& defaults = {});
Instance load_instance(const std::filesystem::path& path, const ToleranceConfig& defaults = {});

Json instance_to_json(const SphericalBody& b1, const SphericalBody& b2);

Json point_to_json(const UnitPoint& p);

/// Result document. Keys, in order: status, witness, margin,
/// common_point, lambda, mu, trace (each only when meaningful).
Json result_to_json(const SeparationCertificate& cert, const ProofTrace* trace = nullptr);
Json ambiguous_result(const std::string& reason);

Json report_to_json(const harness::CampaignReport& report);

/// Stable text form: two-space indentation and a trailing newline.
std::string dump(const Json& doc);

}  // namespace spheresep::io
