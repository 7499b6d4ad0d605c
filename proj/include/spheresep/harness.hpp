#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spheresep/separation.hpp"

namespace spheresep::harness {

enum class Mode { ForceDisjoint, ForceIntersecting, Unconstrained };

const char* to_string(Mode mode);

struct InstanceSpec {
  int n = 2;
  int k1 = 3;
  int k2 = 3;
  /// Largest angle between a generator and its body's centre; below pi/2.
  double spread = 0.4;
  std::uint64_t seed = 0;
  Mode mode = Mode::Unconstrained;

  void validate() const;
};

/// Two bodies of generators scattered within `spread` of a random centre
/// each. Equal InstanceSpecs give equal bodies. Throws GenerationFailed
/// when the requested mode cannot be met within the retry budget.
std::pair<SphericalBody, SphericalBody> generate(const InstanceSpec& spec,
                                                 const ToleranceConfig& cfg = {});

struct CampaignConfig {
  int count = 0;
  std::vector<int> dims{1, 2, 3, 5};
  std::vector<int> sizes{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  std::uint64_t seed = 42;
  double spread = 0.4;
  /// Samples in each openness probe.
  int probe_samples = 50;
  /// Random poles tested against intersecting instances.
  int empty_wedge_samples = 32;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
  ToleranceConfig tolerances;
};

struct Failure {
  int index = 0;
  std::uint64_t seed = 0;
  std::string check;
  std::string detail;
};

/// Tallies of one campaign. An instance lands in `disagreements` when the
/// primal and dual oracles disagree or any follow-up check on it fails;
/// `failures` names the check.
struct CampaignReport {
  int instances = 0;
  int agreements = 0;
  int ambiguous = 0;
  int disagreements = 0;

  int disjoint = 0;
  int intersecting = 0;

  int witness_checks = 0;
  int proof_path_runs = 0;
  int convexity_checks = 0;
  int openness_probes = 0;
  int empty_wedge_checks = 0;

  double min_witness_margin = 0.0;
  double min_probe_margin = 0.0;
  int max_contraction_rounds = 0;
  double max_final_offset = 0.0;
  double min_epsilon0 = 0.0;

  std::vector<Failure> failures;
  /// Not part of the emitted report; it varies between runs.
  double wall_seconds = 0.0;

  bool ok() const noexcept { return disagreements == 0; }
};

/// Per-instance seed derived from the campaign seed.
std::uint64_t instance_seed(std::uint64_t campaign_seed, int index);

/// Instance i uses dims/sizes drawn from its seed and cycles through
/// Unconstrained, ForceDisjoint, ForceIntersecting. Primal and dual verdicts
/// are compared, with the dual optimum t classifying the instance as
/// disjoint (t > 10 margin_tol), intersecting (t <= lp_tol), or ambiguous.
/// Disjoint instances additionally go through witness soundness, the
/// constructive witness, the convexity grid between the two witnesses and
/// the openness probe; intersecting ones through certificate
/// reconstruction and random-pole emptiness of the wedge.
CampaignReport run_equivalence_campaign(const CampaignConfig& config);

}  // namespace spheresep::harness
