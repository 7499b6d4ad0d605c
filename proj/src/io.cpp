#include "spheresep/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace spheresep::io {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedInput, what); }

std::vector<UnitPoint> parse_rows(const Json& doc, const char* key, int n,
                                  std::vector<std::string>& warnings) {
  if (!doc.contains(key)) malformed(std::string("missing key \"") + key + "\"");
  const Json& rows = doc.at(key);
  if (!rows.is_array() || rows.empty()) {
    malformed(std::string("\"") + key + "\" must be a nonempty list of coordinate lists");
  }
  std::vector<UnitPoint> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string where = std::string(key) + "[" + std::to_string(i) + "]";
    const Json& row = rows[i];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n + 1)) {
      malformed(where + " must list exactly n+1 = " + std::to_string(n + 1) + " numbers");
    }
    Vector v(n + 1);
    for (int m = 0; m <= n; ++m) {
      if (!row[m].is_number()) malformed(where + "[" + std::to_string(m) + "] is not a number");
      v[m] = row[m].get<double>();
    }
    const double norm = v.norm();
    if (!std::isfinite(norm) || norm < 1e-6) {
      malformed(where + " has norm " + format_number(norm) + " (below 1e-6)");
    }
    if (std::abs(norm - 1.0) > 1e-12) {
      warnings.push_back(where + " normalized (norm was " + format_number(norm) + ")");
    }
    out.push_back(normalize(v));
  }
  return out;
}

void read_tolerance(const Json& tol, const char* key, double& field) {
  if (!tol.contains(key)) return;
  if (!tol.at(key).is_number()) malformed(std::string("tolerances.") + key + " is not a number");
  field = tol.at(key).get<double>();
}

Json vector_to_json(const Vector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

}  // namespace

Instance parse_instance(const std::string& text, const ToleranceConfig& defaults) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    malformed(std::string("not a valid document: ") + e.what());
  }
  if (!doc.is_object()) malformed("top level must be an object");
  if (!doc.contains("n") || !doc.at("n").is_number_integer()) malformed("key \"n\" must be an integer");
  Instance inst;
  inst.n = doc.at("n").get<int>();
  if (inst.n < 1) malformed("key \"n\" must be at least 1");
  inst.tolerances = defaults;
  if (doc.contains("tolerances")) {
    const Json& tol = doc.at("tolerances");
    if (!tol.is_object()) malformed("\"tolerances\" must be an object");
    for (const auto& [key, value] : tol.items()) {
      if (key != "unit_tol" && key != "margin_tol" && key != "lp_tol" && key != "offset_tol" &&
          key != "max_iter") {
        malformed("unknown key tolerances." + key);
      }
    }
    read_tolerance(tol, "unit_tol", inst.tolerances.unit_tol);
    read_tolerance(tol, "margin_tol", inst.tolerances.margin_tol);
    read_tolerance(tol, "lp_tol", inst.tolerances.lp_tol);
    read_tolerance(tol, "offset_tol", inst.tolerances.offset_tol);
    if (tol.contains("max_iter")) {
      if (!tol.at("max_iter").is_number_integer()) malformed("tolerances.max_iter is not an integer");
      inst.tolerances.max_iter = tol.at("max_iter").get<int>();
    }
    try {
      inst.tolerances.validate();
    } catch (const Error& e) {
      malformed(std::string("tolerances: ") + e.what());
    }
  }
  for (const auto& [key, value] : doc.items()) {
    if (key != "n" && key != "w1" && key != "w2" && key != "tolerances") malformed("unknown key \"" + key + "\"");
  }
  inst.w1 = parse_rows(doc, "w1", inst.n, inst.warnings);
  inst.w2 = parse_rows(doc, "w2", inst.n, inst.warnings);
  return inst;
}

Instance load_instance(const std::filesystem::path& path, const ToleranceConfig& defaults) {
  std::ifstream in(path, std::ios::binary);
  if (!in) malformed("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), defaults);
}

Json point_to_json(const UnitPoint& p) { return vector_to_json(p.coords()); }

Json instance_to_json(const SphericalBody& b1, const SphericalBody& b2) {
  Json doc;
  doc["n"] = b1.sphere_dim();
  Json w1 = Json::array();
  for (const auto& g : b1.generators()) w1.push_back(point_to_json(g));
  Json w2 = Json::array();
  for (const auto& g : b2.generators()) w2.push_back(point_to_json(g));
  doc["w1"] = std::move(w1);
  doc["w2"] = std::move(w2);
  return doc;
}

Json result_to_json(const SeparationCertificate& cert, const ProofTrace* trace) {
  Json doc;
  if (cert.kind == CertificateKind::Disjoint) {
    doc["status"] = "disjoint";
    if (cert.witness) {
      doc["witness"] = point_to_json(*cert.witness);
      doc["margin"] = cert.margin;
    }
  } else {
    doc["status"] = "intersecting";
    if (cert.common_point) doc["common_point"] = point_to_json(*cert.common_point);
    doc["lambda"] = cert.lambda;
    doc["mu"] = cert.mu;
  }
  if (trace) {
    Json offsets = Json::array();
    for (const auto& h : trace->hyperplanes) offsets.push_back(h.offset);
    Json t;
    t["epsilon0"] = trace->epsilon0;
    t["offsets"] = std::move(offsets);
    t["deltas"] = trace->deltas;
    t["iterations"] = trace->iterations;
    doc["trace"] = std::move(t);
  }
  return doc;
}

Json ambiguous_result(const std::string& reason) {
  Json doc;
  doc["status"] = "ambiguous";
  doc["reason"] = reason;
  return doc;
}

Json report_to_json(const harness::CampaignReport& report) {
  auto finite_or_null = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
  Json doc;
  doc["instances"] = report.instances;
  doc["agreements"] = report.agreements;
  doc["ambiguous"] = report.ambiguous;
  doc["disagreements"] = report.disagreements;
  doc["disjoint"] = report.disjoint;
  doc["intersecting"] = report.intersecting;
  Json checks;
  checks["witness_soundness"] = report.witness_checks;
  checks["proof_path"] = report.proof_path_runs;
  checks["wedge_convexity"] = report.convexity_checks;
  checks["openness_probe"] = report.openness_probes;
  checks["empty_wedge"] = report.empty_wedge_checks;
  doc["checks"] = std::move(checks);
  Json extremes;
  extremes["min_witness_margin"] = finite_or_null(report.min_witness_margin);
  extremes["min_probe_margin"] = finite_or_null(report.min_probe_margin);
  extremes["max_contraction_rounds"] = report.max_contraction_rounds;
  extremes["max_final_offset"] = report.max_final_offset;
  extremes["min_epsilon0"] = finite_or_null(report.min_epsilon0);
  doc["extremes"] = std::move(extremes);
  Json failures = Json::array();
  for (const auto& f : report.failures) {
    Json item;
    item["index"] = f.index;
    item["seed"] = f.seed;
    item["check"] = f.check;
    item["detail"] = f.detail;
    failures.push_back(std::move(item));
  }
  doc["failures"] = std::move(failures);
  return doc;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace spheresep::io
