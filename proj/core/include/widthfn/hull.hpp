#pragma once

#include <vector>

#include "widthfn/vec.hpp"

namespace widthfn {

// Supporting hyperplane <normal, x> <= offset of a full-dimensional polytope,
// with unit normal pointing outward.  vertex_ids index the owning hull's
// vertex list; 2-d facets are edges (2 ids), higher dimensions use simplicial
// facets, so one geometric face may appear as several coplanar entries.
struct Facet {
  Vec normal;
  double offset = 0.0;
  std::vector<int> vertex_ids;
};

struct Hull {
  int dim = 0;
  std::vector<Vec> vertices;  // extreme points only; 2-d: counter-clockwise
  std::vector<Facet> facets;
};

// Extreme points in counter-clockwise order; duplicates and collinear interior
// points are dropped.  Throws std::invalid_argument on < 3 extreme points.
std::vector<Vec> convex_hull_2d_ccw(std::vector<Vec> pts);

// Any dimension >= 2.  Throws std::invalid_argument when the points do not
// affinely span R^n.
Hull convex_hull(const std::vector<Vec>& pts);

}  // namespace widthfn
