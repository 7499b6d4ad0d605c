#include "spheresep/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "spheresep/io.hpp"
#include "spheresep/plot.hpp"

namespace spheresep::cli {

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedInput:
      return kMalformed;
    case ErrorCode::EpsilonSearchFailed:
    case ErrorCode::ContractionStalled:
    case ErrorCode::WitnessInvalid:
      return kProofFailed;
    default:
      return kAmbiguous;
  }
}

std::vector<int> parse_int_list(const std::string& text, const char* flag) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string token;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) {
      throw Error(ErrorCode::MalformedInput, std::string(flag) + ": bad integer \"" + s + "\"");
    }
    return v;
  };
  while (std::getline(ss, token, ',')) {
    const auto dots = token.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(token));
    } else {
      const int lo = to_int(token.substr(0, dots));
      const int hi = to_int(token.substr(dots + 2));
      if (lo > hi) throw Error(ErrorCode::MalformedInput, std::string(flag) + ": empty range " + token);
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    }
  }
  if (out.empty()) throw Error(ErrorCode::MalformedInput, std::string(flag) + ": empty list");
  return out;
}

struct Overrides {
  std::optional<double> margin_tol;
  std::optional<double> offset_tol;

  ToleranceConfig apply(ToleranceConfig cfg) const {
    if (margin_tol) cfg.margin_tol = *margin_tol;
    if (offset_tol) cfg.offset_tol = *offset_tol;
    try {
      cfg.validate();
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedInput, e.what());
    }
    return cfg;
  }
};

io::Instance load(const std::string& path, const Overrides& overrides, std::ostream& err) {
  io::Instance inst = io::load_instance(path);
  inst.tolerances = overrides.apply(inst.tolerances);
  for (const auto& w : inst.warnings) err << "warning: " << w << "\n";
  return inst;
}

int cmd_check(const std::string& path, const Overrides& overrides, std::ostream& out,
              std::ostream& err) {
  const io::Instance inst = load(path, overrides, err);
  const ToleranceConfig& cfg = inst.tolerances;
  const SphericalBody b1 = inst.body1();
  const SphericalBody b2 = inst.body2();
  const PrimalOutcome primal = primal_intersect(b1, b2, cfg);
  if (primal.intersecting) {
    out << io::dump(io::result_to_json(primal.certificate));
    return kIntersecting;
  }
  // Disjoint by the primal oracle; attach a pole from the witness LP.
  try {
    const SeparationCertificate cert = dual_witness(b1, b2, cfg);
    out << io::dump(io::result_to_json(cert));
    return cert.kind == CertificateKind::Disjoint ? kDisjoint : kIntersecting;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NumericallyAmbiguous) throw;
    out << io::dump(io::ambiguous_result(e.what()));
    return kAmbiguous;
  }
}

int cmd_witness(const std::string& path, const std::string& method, const Overrides& overrides,
                std::ostream& out, std::ostream& err) {
  const io::Instance inst = load(path, overrides, err);
  const ToleranceConfig& cfg = inst.tolerances;
  const SphericalBody b1 = inst.body1();
  const SphericalBody b2 = inst.body2();

  if (method == "proof-path") {
    if (primal_intersect(b1, b2, cfg).intersecting) {
      // The construction needs disjoint bodies; report the common point.
      out << io::dump(io::result_to_json(dual_witness(b1, b2, cfg)));
      return kIntersecting;
    }
    const ProofPathResult proof = proof_path_witness(b1, b2, cfg);
    if (!wedge_membership(b1, b2, *proof.certificate.witness, cfg).member) {
      throw Error(ErrorCode::WitnessInvalid, "constructive witness failed revalidation");
    }
    out << io::dump(io::result_to_json(proof.certificate, &proof.trace));
    return kDisjoint;
  }

  try {
    const SeparationCertificate cert = dual_witness(b1, b2, cfg);
    if (cert.kind == CertificateKind::Disjoint &&
        !wedge_membership(b1, b2, *cert.witness, cfg).member) {
      throw Error(ErrorCode::NumericallyAmbiguous, "witness failed revalidation");
    }
    out << io::dump(io::result_to_json(cert));
    return cert.kind == CertificateKind::Disjoint ? kDisjoint : kIntersecting;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NumericallyAmbiguous) throw;
    out << io::dump(io::ambiguous_result(e.what()));
    return kAmbiguous;
  }
}

int cmd_plot(const std::string& path, const std::string& output, const Overrides& overrides,
             std::ostream& err) {
  const io::Instance inst = load(path, overrides, err);
  const plot::Scene scene = plot::build_scene(inst.body1(), inst.body2(), inst.tolerances);
  std::ofstream file(output, std::ios::binary);
  if (!file) throw Error(ErrorCode::MalformedInput, "cannot write " + output);
  file << io::dump(plot::scene_to_json(scene));
  return kDisjoint;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spherical separation: disjointness, separating poles, witness wedges"};
  app.require_subcommand(1);
  Overrides overrides;
  double margin_flag = 0, offset_flag = 0;
  auto* margin_opt = app.add_option("--tol-margin", margin_flag, "override margin_tol")->expected(1);
  auto* offset_opt = app.add_option("--tol-offset", offset_flag, "override offset_tol")->expected(1);

  std::string path;
  auto* check = app.add_subcommand("check", "decide whether the two bodies meet");
  check->add_option("file", path, "instance document")->required();

  std::string method = "lp";
  auto* witness = app.add_subcommand("witness", "compute a separating pole");
  witness->add_option("file", path, "instance document")->required();
  witness->add_option("--method", method, "lp or proof-path")
      ->check(CLI::IsMember({"lp", "proof-path"}));

  harness::CampaignConfig campaign;
  std::string dims = "1,2,3,5", sizes = "1..12";
  auto* fuzz = app.add_subcommand("fuzz", "run the primal/dual equivalence campaign");
  fuzz->add_option("--count", campaign.count, "number of instances")->check(CLI::NonNegativeNumber);
  fuzz->add_option("--dims", dims, "sphere dimensions, e.g. 1,2,3,5 or 1..4");
  fuzz->add_option("--sizes", sizes, "generator counts, e.g. 1..12");
  fuzz->add_option("--seed", campaign.seed, "campaign seed");
  fuzz->add_option("--spread", campaign.spread, "body spread angle in radians");
  fuzz->add_option("--threads", campaign.threads, "worker threads (0 = hardware)");

  std::string output;
  auto* plot_cmd = app.add_subcommand("plot", "write an S^2 scene for external plotting");
  plot_cmd->add_option("file", path, "instance document")->required();
  plot_cmd->add_option("-o,--output", output, "scene file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kDisjoint;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kMalformed;
  }
  if (margin_opt->count()) overrides.margin_tol = margin_flag;
  if (offset_opt->count()) overrides.offset_tol = offset_flag;

  try {
    if (*check) return cmd_check(path, overrides, out, err);
    if (*witness) return cmd_witness(path, method, overrides, out, err);
    if (*plot_cmd) return cmd_plot(path, output, overrides, err);

    campaign.dims = parse_int_list(dims, "--dims");
    campaign.sizes = parse_int_list(sizes, "--sizes");
    campaign.tolerances = overrides.apply(campaign.tolerances);
    for (int d : campaign.dims) {
      if (d < 1) throw Error(ErrorCode::MalformedInput, "--dims entries must be >= 1");
    }
    for (int s : campaign.sizes) {
      if (s < 1) throw Error(ErrorCode::MalformedInput, "--sizes entries must be >= 1");
    }
    const harness::CampaignReport report = harness::run_equivalence_campaign(campaign);
    out << io::dump(io::report_to_json(report));
    err << "fuzz: " << report.instances << " instances in " << report.wall_seconds << " s\n";
    return report.ok() ? kDisjoint : kDisagreement;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace spheresep::cli
