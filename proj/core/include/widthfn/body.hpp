#pragma once

#include <string>
#include <variant>
#include <vector>

#include "widthfn/hull.hpp"
#include "widthfn/sphere.hpp"
#include "widthfn/vec.hpp"

namespace widthfn {

inline constexpr double kContactTol = 1e-9;

// Full-dimensional bounded polytope given by its vertices.  Construction
// reduces the input to extreme points and caches both the boundary facets and
// the facets of the difference body K + (-K), which back the diameter and
// thickness queries.
class Polytope {
 public:
  explicit Polytope(std::vector<Vec> vertices);

  int dim() const { return own_.dim; }
  const std::vector<Vec>& vertices() const { return own_.vertices; }
  const std::vector<Facet>& facets() const { return own_.facets; }
  const Hull& difference_hull() const { return diff_; }
  double scale() const { return scale_; }

  bool contains(const Vec& x, double tol = kContactTol) const;

 private:
  Hull own_;
  Hull diff_;
  double scale_;
};

// Centered axis-aligned ellipsoid with the given semiaxes.
class Ellipsoid {
 public:
  explicit Ellipsoid(std::vector<double> semiaxes);
  int dim() const { return static_cast<int>(semiaxes_.size()); }
  const std::vector<double>& semiaxes() const { return semiaxes_; }

 private:
  std::vector<double> semiaxes_;
};

class Ball {
 public:
  Ball(double radius, Vec center);
  int dim() const { return static_cast<int>(center_.size()); }
  double radius() const { return radius_; }
  const Vec& center() const { return center_; }

 private:
  double radius_;
  Vec center_;
};

// Unit ball cut by the slab |x_1| <= h.  For h >= 1 the slab is inactive and
// the body coincides with the unit ball.
class SlabBall {
 public:
  SlabBall(double half_width, int dim);
  int dim() const { return dim_; }
  double half_width() const { return half_width_; }

 private:
  double half_width_;
  int dim_;
};

using Body = std::variant<Polytope, Ellipsoid, Ball, SlabBall>;

int dimension(const Body& body);

// Characteristic length used to scale relative tolerances.
double body_scale(const Body& body);

// Accepts {"type":"polytope","vertices":[[...],...]},
// {"type":"ellipsoid","semiaxes":[...]},
// {"type":"ball","radius":r,"center":[...]},
// {"type":"slab_ball","half_width":h,"dim":n}.
// Throws std::invalid_argument on malformed input.
Body parse_body(const std::string& json_text);

struct ContactSet {
  std::vector<Vec> points;       // witnesses attaining the support value
  std::vector<int> vertex_ids;   // polytopes only
};

struct SupportResult {
  double value = 0.0;
  ContactSet contact;
};

SupportResult support(const Body& body, const UnitDirection& u,
                      double tol = kContactTol);

ContactSet contact_set(const Polytope& p, const UnitDirection& u,
                       double tol = kContactTol);

// Closed arc of outward normal angles at a vertex of a 2-d polytope,
// [lo, hi] with hi - lo in (0, pi).
struct AngleInterval {
  double lo = 0.0, hi = 0.0;
  bool contains(double angle, double tol = 1e-12) const;
};

AngleInterval normal_cone_2d(const Polytope& p, int vertex_id);

Polytope difference_body(const Polytope& p);

}  // namespace widthfn
