#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "widthfn/vec.hpp"

namespace widthfn {

// Direction on the unit sphere of R^n.  Directions u and -u describe the same
// line through the origin; the distance below treats them as equal.
class UnitDirection {
 public:
  explicit UnitDirection(Vec v);

  int dim() const { return static_cast<int>(v_.size()); }
  const Vec& coords() const { return v_; }
  double operator[](std::size_t i) const { return v_[i]; }

  UnitDirection negated() const;

  static UnitDirection axis(int dim, int k);

 private:
  Vec v_;
};

// Angle between the lines spanned by u and v: arccos|<u,v>|, in [0, pi/2].
double projective_distance(const UnitDirection& u, const UnitDirection& v);

// min(|u-v|, |u+v|), the sign-insensitive chordal distance.
double euclid_min_distance(const UnitDirection& u, const UnitDirection& v);

// Shortest great-circle arc between two non-collinear directions.
class GeodesicArc {
 public:
  GeodesicArc(UnitDirection a, UnitDirection b);

  // t in [0,1]; point(0) == a, point(1) == b, constant speed.
  UnitDirection point(double t) const;
  double angle() const { return angle_; }
  const UnitDirection& a() const { return a_; }
  const UnitDirection& b() const { return b_; }

 private:
  UnitDirection a_, b_;
  double angle_;
};

// Unit tangent at u pointing along the geodesic toward v.
Vec tangent_toward(const UnitDirection& u, const UnitDirection& v);

// Walk distance `angle` from u along unit tangent t (t orthogonal to u).
UnitDirection geodesic_step(const UnitDirection& u, const Vec& t, double angle);

// Deterministic counter-based stream: the value at (seed, index) never depends
// on evaluation order, so parallel or partial consumption reproduces exactly.
struct CounterRng {
  CounterRng(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64();
  double next_unit();           // (0, 1]
  double next_gauss();
  double next_symmetric();      // [-1, 1)

  std::uint64_t state;
  bool have_spare = false;
  double spare = 0.0;
};

// index-th direction of the stream for `seed`; uniform on the sphere.
UnitDirection direction_at(int dim, std::uint64_t seed, std::uint64_t index);

std::vector<UnitDirection> sample_directions(int dim, int count,
                                             std::uint64_t seed);

struct DirectionPair {
  UnitDirection u, v;
};

// Pairs with projective distance >= min_rho (redraws the partner otherwise).
std::vector<DirectionPair> sample_pairs(int dim, int count, std::uint64_t seed,
                                        double min_rho = 1e-6);

// Deterministic sweep of the upper half circle, nested under doubling counts:
// the first k entries do not depend on `count`.
std::vector<UnitDirection> sweep_directions_2d(int count);

}  // namespace widthfn
