#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "widthfn/body.hpp"
#include "widthfn/sphere.hpp"

namespace widthfn {

// Length of the chord cut from the body by the line through `o` along `dir`
// (zero when the line misses the body).  Exact interval clipping for
// polytopes and slab-balls, quadratic roots for ellipsoids.
double chord_length(const Body& body, const Vec& o, const UnitDirection& dir);

struct PointDiameterSample {
  Vec o;
  double e = 0.0;
  UnitDirection best_direction;
};

// Largest chord cut by any line through `o`; `o` may be inside, on, or
// outside the body.  2-d polytopes: exact maximum over the lines through `o`
// and a vertex plus the lines through `o` parallel to a pair of parallel
// edges.  Everything else: 512-direction sweep with golden-section multistart
// refinement to 1e-8 in the direction parameter.
PointDiameterSample e_of(const Body& body, const Vec& o);

// Minimum of e over an inclusive grid x grid lattice on the square box of
// half-side `search_radius` centered on the body (2-d only).  Reports the
// lattice minimum; the underlying infimum may be unattained.
double epsilon_estimate(const Body& body, double search_radius, int grid);

struct ContinuityVerdict {
  Vec o;
  bool continuous = false;
  double e_value = 0.0;
  double farthest_value = 0.0;
  double gap = 0.0;  // max(0, e_value - farthest_value)
};

// Classifies whether e is continuous at the boundary point `o`: it is exactly
// when the largest chord through `o` is realized with `o` as an endpoint,
// i.e. e(o) equals the distance from `o` to the farthest body point.
// Throws std::invalid_argument when `o` is not on the boundary.
ContinuityVerdict continuity_check(const Body& body, const Vec& o,
                                   double tol = 1e-6);

// Largest distance from `o` to a point of the body (polytopes: max over
// vertices, exact).
double farthest_distance(const Body& body, const Vec& o);

// Max of e over `count` points sampled uniformly in the ball B(o, radius);
// a one-sided probe of upper semicontinuity.
double usc_probe(const Body& body, const Vec& o, double radius, int count,
                 std::uint64_t seed);

struct GridBounds {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
};

struct EkGrid {
  GridBounds bounds;
  int nx = 0, ny = 0;
  std::vector<double> values;  // row-major, x fastest
  double at(int ix, int iy) const { return values[iy * nx + ix]; }
};

// e at every cell center of an nx x ny partition of `bounds` (2-d bodies).
EkGrid ek_grid(const Body& body, const GridBounds& bounds, int nx, int ny);

// CSV with header "x,y,e", one row per cell center, x fastest, 17
// significant digits.
void write_ek_csv(const EkGrid& grid, std::ostream& out);

}  // namespace widthfn
