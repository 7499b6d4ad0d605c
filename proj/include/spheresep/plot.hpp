#pragma once

#include <optional>
#include <vector>

#include "spheresep/io.hpp"

namespace spheresep::plot {

inline constexpr int kArcSamples = 32;
inline constexpr int kBoundarySamples = 128;

struct BodyScene {
  std::vector<UnitPoint> generators;
  /// Great-circle arcs between consecutive vertices of the body's hull
  /// boundary, kArcSamples points each, endpoints included.
  std::vector<std::vector<UnitPoint>> arcs;
};

/// Plot data for an instance on S^2.
///
/// Point count: sum of generators + kArcSamples * (number of arcs)
/// + (witness ? 1 + kBoundarySamples : 0).
struct Scene {
  std::vector<BodyScene> bodies;
  std::optional<UnitPoint> witness;
  /// Great circle {x : witness . x = 0}.
  std::vector<UnitPoint> boundary;
  std::optional<UnitPoint> common_point;

  std::size_t point_count() const;
};

/// Throws UnsupportedDimension unless both bodies live on S^2.
Scene build_scene(const SphericalBody& b1, const SphericalBody& b2, const ToleranceConfig& cfg = {});

/// Samples of the minor great-circle arc from a to b, endpoints included.
std::vector<UnitPoint> sample_arc(const UnitPoint& a, const UnitPoint& b, int samples);

/// Evenly spaced samples of the great circle with pole p.
std::vector<UnitPoint> sample_great_circle(const UnitPoint& pole, int samples);

io::Json scene_to_json(const Scene& scene);

}  // namespace spheresep::plot
