#include "spheresep/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <thread>

namespace spheresep::harness {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Vector random_unit(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> gauss;
  Vector v(dim);
  do {
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = gauss(rng);
  } while (v.norm() < 1e-6);
  return v / v.norm();
}

Vector random_tangent(std::mt19937_64& rng, const Vector& at) {
  std::normal_distribution<double> gauss;
  Vector v(at.size());
  do {
    for (Eigen::Index i = 0; i < at.size(); ++i) v[i] = gauss(rng);
    v -= at.dot(v) * at;
  } while (v.norm() < 1e-6);
  return v / v.norm();
}

// Point at geodesic distance `angle` from `centre` along tangent `dir`.
Vector geodesic_step(const Vector& centre, const Vector& dir, double angle) {
  return std::cos(angle) * centre + std::sin(angle) * dir;
}

std::vector<UnitPoint> scatter(std::mt19937_64& rng, const Vector& centre, int count, double spread,
                               const ToleranceConfig& cfg) {
  std::uniform_real_distribution<double> angle(0.0, spread);
  std::vector<UnitPoint> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    out.push_back(normalize(geodesic_step(centre, random_tangent(rng, centre), angle(rng)), cfg));
  }
  return out;
}

}  // namespace

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::ForceDisjoint: return "ForceDisjoint";
    case Mode::ForceIntersecting: return "ForceIntersecting";
    case Mode::Unconstrained: return "Unconstrained";
  }
  return "Unknown";
}

void InstanceSpec::validate() const {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
  if (k1 < 1 || k2 < 1) throw Error(ErrorCode::InvalidArgument, "generator counts must be positive");
  if (!(spread > 0.0 && spread < std::numbers::pi / 2)) {
    throw Error(ErrorCode::InvalidArgument, "spread must lie in (0, pi/2)");
  }
}

std::pair<SphericalBody, SphericalBody> generate(const InstanceSpec& spec,
                                                 const ToleranceConfig& cfg) {
  spec.validate();
  std::mt19937_64 rng(splitmix64(spec.seed));
  const Eigen::Index dim = spec.n + 1;
  constexpr int kRetries = 64;

  for (int attempt = 0; attempt < kRetries; ++attempt) {
    const Vector c1 = random_unit(rng, dim);
    Vector c2;
    switch (spec.mode) {
      case Mode::Unconstrained:
        c2 = random_unit(rng, dim);
        break;
      case Mode::ForceDisjoint: {
        // Caps of radius `spread` around centres farther apart than
        // 2 * spread are disjoint, and so are the hulls inside them.
        const double min_gap = std::min(2.0 * spec.spread + 0.05, std::numbers::pi - 0.01);
        std::uniform_real_distribution<double> gap(min_gap, std::numbers::pi);
        c2 = geodesic_step(c1, random_tangent(rng, c1), gap(rng));
        break;
      }
      case Mode::ForceIntersecting: {
        std::uniform_real_distribution<double> gap(0.0, 1.8 * spec.spread);
        c2 = geodesic_step(c1, random_tangent(rng, c1), gap(rng));
        break;
      }
    }
    c2 /= c2.norm();

    std::vector<UnitPoint> g1 = scatter(rng, c1, spec.k1, spec.spread, cfg);
    std::vector<UnitPoint> g2 = scatter(rng, c2, spec.k2, spec.spread, cfg);
    if (spec.mode == Mode::ForceIntersecting) {
      // Midpoint of the centres lies within `spread` of both.
      const UnitPoint shared = normalize(c1 + c2, cfg);
      g1.front() = shared;
      g2.front() = shared;
    }

    std::optional<std::pair<SphericalBody, SphericalBody>> bodies;
    try {
      bodies.emplace(SphericalBody(std::move(g1), cfg), SphericalBody(std::move(g2), cfg));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DuplicateGenerator) continue;
      throw;
    }
    if (spec.mode == Mode::Unconstrained) return std::move(*bodies);

    const bool meet = primal_intersect(bodies->first, bodies->second, cfg).intersecting;
    if (meet == (spec.mode == Mode::ForceIntersecting)) return std::move(*bodies);
  }
  throw Error(ErrorCode::GenerationFailed,
              std::string("no ") + to_string(spec.mode) + " instance within the retry budget");
}

std::uint64_t instance_seed(std::uint64_t campaign_seed, int index) {
  return splitmix64(campaign_seed ^ splitmix64(static_cast<std::uint64_t>(index)));
}

namespace {

// Outcome of one campaign instance, merged in index order afterwards.
struct InstanceOutcome {
  enum class Verdict { Agreement, Ambiguous, Disagreement } verdict = Verdict::Agreement;
  bool disjoint = false;
  bool intersecting = false;
  int witness_checks = 0;
  int proof_path_runs = 0;
  int convexity_checks = 0;
  int openness_probes = 0;
  int empty_wedge_checks = 0;
  double witness_margin = std::numeric_limits<double>::infinity();
  double probe_margin = std::numeric_limits<double>::infinity();
  int contraction_rounds = 0;
  double final_offset = 0.0;
  double epsilon0 = std::numeric_limits<double>::infinity();
  std::vector<Failure> failures;
};

class InstanceRunner {
 public:
  InstanceRunner(const CampaignConfig& config, int index)
      : config_(config), cfg_(config.tolerances), index_(index),
        seed_(instance_seed(config.seed, index)) {}

  InstanceOutcome run() {
    std::mt19937_64 rng(seed_);
    InstanceSpec spec;
    spec.n = config_.dims[rng() % config_.dims.size()];
    spec.k1 = config_.sizes[rng() % config_.sizes.size()];
    spec.k2 = config_.sizes[rng() % config_.sizes.size()];
    spec.spread = config_.spread;
    spec.seed = rng();
    spec.mode = static_cast<Mode>((index_ + 2) % 3);  // Unconstrained first

    try {
      const auto [b1, b2] = generate(spec, cfg_);
      classify(b1, b2);
    } catch (const Error& e) {
      fail("instance", e.what());
    }
    return std::move(out_);
  }

 private:
  void fail(const std::string& check, const std::string& detail) {
    out_.verdict = InstanceOutcome::Verdict::Disagreement;
    out_.failures.push_back({index_, seed_, check, detail});
  }

  void classify(const SphericalBody& b1, const SphericalBody& b2) {
    const PrimalOutcome primal = primal_intersect(b1, b2, cfg_);
    const WitnessLp raw = witness_lp(b1, b2, cfg_);

    if (raw.t > 10.0 * cfg_.margin_tol) {
      if (primal.intersecting) {
        fail("equivalence", "primal finds a common point but the witness LP reaches t = " +
                                format_number(raw.t));
        return;
      }
      out_.disjoint = true;
      check_disjoint(b1, b2);
    } else if (raw.t <= cfg_.lp_tol) {
      if (!primal.intersecting) {
        fail("equivalence", "primal proves disjointness but the witness LP tops out at t = " +
                                format_number(raw.t));
        return;
      }
      out_.intersecting = true;
      check_intersecting(b1, b2, primal.certificate);
    } else {
      out_.verdict = InstanceOutcome::Verdict::Ambiguous;
    }
  }

  void check_disjoint(const SphericalBody& b1, const SphericalBody& b2) {
    // Witness soundness by direct dot products.
    SeparationCertificate cert;
    try {
      cert = dual_witness(b1, b2, cfg_);
    } catch (const Error& e) {
      fail("witness", e.what());
      return;
    }
    ++out_.witness_checks;
    if (cert.kind != CertificateKind::Disjoint || !cert.witness) {
      fail("witness", "dual_witness did not return a separating pole");
      return;
    }
    const UnitPoint& p = *cert.witness;
    double lo1 = std::numeric_limits<double>::infinity();
    double hi2 = -std::numeric_limits<double>::infinity();
    for (const auto& q : b1.generators()) lo1 = std::min(lo1, p.dot(q));
    for (const auto& r : b2.generators()) hi2 = std::max(hi2, p.dot(r));
    if (!(cert.margin > cfg_.margin_tol && lo1 >= cert.margin && hi2 <= -cert.margin)) {
      fail("witness", "certificate margin " + format_number(cert.margin) +
                          " not realised: min P.Q = " + format_number(lo1) +
                          ", max P.R = " + format_number(hi2));
    }
    out_.witness_margin = cert.margin;

    // Constructive witness.
    std::optional<UnitPoint> constructive;
    ++out_.proof_path_runs;
    try {
      const ProofPathResult proof = proof_path_witness(b1, b2, cfg_);
      check_trace(proof.trace);
      if (!wedge_membership(b1, b2, *proof.certificate.witness, cfg_).member) {
        fail("proof_path", "constructive witness is not a wedge member");
      }
      constructive = *proof.certificate.witness;
    } catch (const Error& e) {
      fail("proof_path", e.what());
    }

    // Spherical convexity of the wedge along the segment of two members.
    if (constructive) {
      ++out_.convexity_checks;
      for (int i = 0; i <= 10; ++i) {
        const double t = i / 10.0;
        const UnitPoint mix = normalize(t * p.coords() + (1.0 - t) * constructive->coords(), cfg_);
        if (!wedge_membership(b1, b2, mix, cfg_).member) {
          fail("convexity", "combination at t = " + format_number(t) + " left the wedge");
          break;
        }
      }
    }

    ++out_.openness_probes;
    const double probe = wedge_openness_probe(b1, b2, p, config_.probe_samples, seed_, cfg_);
    out_.probe_margin = probe;
    if (!(probe > 0.0)) {
      fail("openness", "perturbed pole margin " + format_number(probe));
    }
  }

  void check_trace(const ProofTrace& trace) {
    const auto& planes = trace.hyperplanes;
    for (std::size_t i = 1; i < planes.size(); ++i) {
      if (!(std::abs(planes[i].offset) < std::abs(planes[i - 1].offset))) {
        fail("proof_path", "offset magnitude did not decrease at round " + std::to_string(i));
        return;
      }
    }
    const double last = std::abs(planes.back().offset);
    if (!(last < cfg_.offset_tol) || trace.iterations > cfg_.max_iter) {
      fail("proof_path", "final offset " + format_number(last) + " after " +
                             std::to_string(trace.iterations) + " rounds");
    }
    out_.contraction_rounds = trace.iterations;
    out_.final_offset = last;
    out_.epsilon0 = trace.epsilon0;
  }

  void check_intersecting(const SphericalBody& b1, const SphericalBody& b2,
                          const SeparationCertificate& cert) {
    Vector side1 = Vector::Zero(b1.generators().front().ambient_dim());
    Vector side2 = side1;
    for (std::size_t j = 0; j < b1.size(); ++j) side1 += cert.lambda[j] * b1.generators()[j].coords();
    for (std::size_t j = 0; j < b2.size(); ++j) side2 += cert.mu[j] * b2.generators()[j].coords();
    const bool nonneg = std::all_of(cert.lambda.begin(), cert.lambda.end(), [](double v) { return v >= 0; }) &&
                        std::all_of(cert.mu.begin(), cert.mu.end(), [](double v) { return v >= 0; });
    const double gap = (normalize(side1, cfg_).coords() - normalize(side2, cfg_).coords()).norm();
    if (!nonneg || !(gap <= 10.0 * cfg_.lp_tol)) {
      fail("reconstruction", "common point mismatch " + format_number(gap));
    }

    ++out_.empty_wedge_checks;
    std::mt19937_64 rng(seed_ ^ 0x5bd1e995ULL);
    for (int i = 0; i < config_.empty_wedge_samples; ++i) {
      const UnitPoint pole(random_unit(rng, side1.size()));
      if (wedge_membership(b1, b2, pole, cfg_).member) {
        fail("empty_wedge", "random pole separates intersecting bodies");
        break;
      }
    }
  }

  const CampaignConfig& config_;
  ToleranceConfig cfg_;
  int index_;
  std::uint64_t seed_;
  InstanceOutcome out_;
};

}  // namespace

CampaignReport run_equivalence_campaign(const CampaignConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  config.tolerances.validate();
  if (config.count < 0) throw Error(ErrorCode::InvalidArgument, "count must be nonnegative");
  if (config.count > 0 && (config.dims.empty() || config.sizes.empty())) {
    throw Error(ErrorCode::InvalidArgument, "dims and sizes must be nonempty");
  }

  std::vector<InstanceOutcome> outcomes(config.count);
  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max(1, config.count));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < config.count; i = next++) outcomes[i] = InstanceRunner(config, i).run();
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  CampaignReport report;
  report.min_witness_margin = std::numeric_limits<double>::infinity();
  report.min_probe_margin = std::numeric_limits<double>::infinity();
  report.min_epsilon0 = std::numeric_limits<double>::infinity();
  for (auto& o : outcomes) {
    ++report.instances;
    switch (o.verdict) {
      case InstanceOutcome::Verdict::Agreement: ++report.agreements; break;
      case InstanceOutcome::Verdict::Ambiguous: ++report.ambiguous; break;
      case InstanceOutcome::Verdict::Disagreement: ++report.disagreements; break;
    }
    report.disjoint += o.disjoint;
    report.intersecting += o.intersecting;
    report.witness_checks += o.witness_checks;
    report.proof_path_runs += o.proof_path_runs;
    report.convexity_checks += o.convexity_checks;
    report.openness_probes += o.openness_probes;
    report.empty_wedge_checks += o.empty_wedge_checks;
    report.min_witness_margin = std::min(report.min_witness_margin, o.witness_margin);
    report.min_probe_margin = std::min(report.min_probe_margin, o.probe_margin);
    report.max_contraction_rounds = std::max(report.max_contraction_rounds, o.contraction_rounds);
    report.max_final_offset = std::max(report.max_final_offset, o.final_offset);
    report.min_epsilon0 = std::min(report.min_epsilon0, o.epsilon0);
    for (auto& f : o.failures) report.failures.push_back(std::move(f));
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace spheresep::harness
