#include "spheresep/plot.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace spheresep::plot {

namespace {

double cross(const Vector& o, const Vector& a, const Vector& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain over 2-D points; returns hull vertex indices in
// counter-clockwise order with collinear points dropped.
std::vector<std::size_t> hull_indices(const std::vector<Vector>& pts) {
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return pts[i][0] < pts[j][0] || (pts[i][0] == pts[j][0] && pts[i][1] < pts[j][1]);
  });
  if (order.size() < 3) return order;

  std::vector<std::size_t> hull(2 * order.size());
  std::size_t k = 0;
  for (std::size_t i : order) {
    while (k >= 2 && cross(pts[hull[k - 2]], pts[hull[k - 1]], pts[i]) <= 1e-12) --k;
    hull[k++] = i;
  }
  for (std::size_t idx = order.size() - 1, lower = k + 1; idx-- > 0;) {
    const std::size_t i = order[idx];
    while (k >= lower && cross(pts[hull[k - 2]], pts[hull[k - 1]], pts[i]) <= 1e-12) --k;
    hull[k++] = i;
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

std::size_t Scene::point_count() const {
  std::size_t total = boundary.size() + (witness ? 1 : 0);
  for (const auto& b : bodies) {
    total += b.generators.size();
    for (const auto& arc : b.arcs) total += arc.size();
  }
  return total;
}

std::vector<UnitPoint> sample_arc(const UnitPoint& a, const UnitPoint& b, int samples) {
  std::vector<UnitPoint> out;
  out.reserve(samples);
  const double theta = std::acos(std::clamp(a.dot(b), -1.0, 1.0));
  const double s = std::sin(theta);
  for (int i = 0; i < samples; ++i) {
    const double f = samples > 1 ? static_cast<double>(i) / (samples - 1) : 0.0;
    if (s < 1e-9) {
      out.push_back(normalize((1.0 - f) * a.coords() + f * b.coords()));
    } else {
      out.push_back(normalize(std::sin((1.0 - f) * theta) / s * a.coords() +
                              std::sin(f * theta) / s * b.coords()));
    }
  }
  return out;
}

std::vector<UnitPoint> sample_great_circle(const UnitPoint& pole, int samples) {
  const TangentFrame frame = orthonormal_frame(pole);
  std::vector<UnitPoint> out;
  out.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / samples;
    // On S^1 the "circle" degenerates to the two points +-basis.
    Vector x = std::cos(angle) * frame.basis().col(0);
    if (frame.dim() > 1) x += std::sin(angle) * frame.basis().col(1);
    out.push_back(normalize(x));
  }
  return out;
}

Scene build_scene(const SphericalBody& b1, const SphericalBody& b2, const ToleranceConfig& cfg) {
  if (b1.sphere_dim() != 2 || b2.sphere_dim() != 2) {
    throw Error(ErrorCode::UnsupportedDimension, "scenes are drawn on S^2 only");
  }
  Scene scene;
  for (const SphericalBody* body : {&b1, &b2}) {
    BodyScene bs;
    bs.generators = body->generators();
    const TangentFrame frame = orthonormal_frame(hemisphericity_witness(*body, cfg));
    const TangentPolytope image = project_body(*body, frame, cfg);
    const std::vector<std::size_t> hull = hull_indices(image.vertices);
    if (hull.size() == 2) {
      bs.arcs.push_back(sample_arc(bs.generators[hull[0]], bs.generators[hull[1]], kArcSamples));
    } else if (hull.size() > 2) {
      for (std::size_t i = 0; i < hull.size(); ++i) {
        bs.arcs.push_back(sample_arc(bs.generators[hull[i]], bs.generators[hull[(i + 1) % hull.size()]],
                                     kArcSamples));
      }
    }
    scene.bodies.push_back(std::move(bs));
  }

  try {
    const SeparationCertificate cert = dual_witness(b1, b2, cfg);
    if (cert.kind == CertificateKind::Disjoint) {
      scene.witness = cert.witness;
      scene.boundary = sample_great_circle(*cert.witness, kBoundarySamples);
    } else {
      scene.common_point = cert.common_point;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NumericallyAmbiguous) throw;
  }
  return scene;
}

io::Json scene_to_json(const Scene& scene) {
  auto points = [](const std::vector<UnitPoint>& pts) {
    io::Json arr = io::Json::array();
    for (const auto& p : pts) arr.push_back(io::point_to_json(p));
    return arr;
  };
  io::Json doc;
  doc["n"] = 2;
  io::Json bodies = io::Json::array();
  std::size_t generator_count = 0, arc_count = 0;
  for (const auto& b : scene.bodies) {
    io::Json body;
    body["generators"] = points(b.generators);
    io::Json arcs = io::Json::array();
    for (const auto& arc : b.arcs) arcs.push_back(points(arc));
    body["arcs"] = std::move(arcs);
    bodies.push_back(std::move(body));
    generator_count += b.generators.size();
    arc_count += b.arcs.size();
  }
  doc["bodies"] = std::move(bodies);
  doc["witness"] = scene.witness ? io::point_to_json(*scene.witness) : io::Json(nullptr);
  doc["boundary"] = points(scene.boundary);
  if (scene.common_point) doc["common_point"] = io::point_to_json(*scene.common_point);
  io::Json counts;
  counts["generators"] = generator_count;
  counts["arcs"] = arc_count;
  counts["arc_samples"] = kArcSamples;
  counts["boundary_samples"] = scene.boundary.size();
  counts["points"] = scene.point_count();
  doc["counts"] = std::move(counts);
  return doc;
}

}  // namespace spheresep::plot
