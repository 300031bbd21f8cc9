#pragma once

#include <utility>
#include <vector>

#include "qcp/complex_matrix.hpp"

namespace qcp {

struct PolygonResult {
  double t = 0.0;                 // Euclidean distance from the origin to the hull
  std::pair<int, int> edge{0, 0}; // indices (into the input list) of the closest hull edge / vertex
  bool origin_inside = false;
};

// Distance from the origin to the convex hull of unit-modulus points.
// Duplicate points (within 1e-12 in both coordinates) are collapsed onto the
// lowest original index; ties between equally close edges resolve to the
// lexicographically smallest index pair. When the origin is inside the hull
// the distance is 0 and `edge` names the closest boundary edge.
PolygonResult distance_to_polygon(const std::vector<cxd>& points);

// A convex combination of at most three input points that equals the origin
// (weights >= 0 summing to 1). Only valid when the origin lies in the hull.
std::vector<std::pair<int, double>> zero_overlap_weights(const std::vector<cxd>& points);

}  // namespace qcp
