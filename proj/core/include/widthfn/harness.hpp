#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "widthfn/body.hpp"
#include "widthfn/metrics.hpp"
#include "widthfn/sphere.hpp"

namespace widthfn {

enum class MetricMode { Projective, EuclidMin };
enum class DeltaKind { Width, Diameter };

struct PairStats {
  UnitDirection u, v;
  double rho = 0.0;      // denominator actually used
  double delta_w = 0.0;  // |w(u) - w(v)| / rho
  double delta_d = 0.0;  // |d(u) - d(v)| / rho
};

// Difference quotients of width and directional diameter over one pair.
// Throws std::invalid_argument when the directions are collinear within
// 1e-9 of the chosen metric.
PairStats delta_ratios(const Body& body, const UnitDirection& u,
                       const UnitDirection& v,
                       MetricMode mode = MetricMode::Projective);

struct BoundViolation {
  Vec u, v;
  std::string bound;  // which bound was exceeded: m, n, m_hat, n_hat
  double ratio = 0.0;
  double bound_value = 0.0;
};

struct VerificationReport {
  std::string body_id;
  std::uint64_t seed = 0;
  int pairs = 0;
  MetricMode metric = MetricMode::Projective;
  double tol = 0.0;      // additive slack actually applied
  double min_rho = 0.0;  // pair-sampling separation floor
  double delta = 0.0, omega = 0.0;
  double m = 0.0, n = 0.0;
  bool hat_available = false;  // polytope-only sup bounds present
  bool hat_exact = false;      // candidate set provably complete (2-d)
  double m_hat = 0.0, n_hat = 0.0;
  double max_delta_w = 0.0, max_delta_d = 0.0;
  long violations_m = 0, violations_n = 0;
  long violations_m_hat = 0, violations_n_hat = 0;
  std::vector<BoundViolation> violating_pairs;
  double runtime_seconds = 0.0;
};

// Samples `pairs` direction pairs and checks every difference quotient
// against the global bounds (and the polytope sup bounds when available).
// Violations are recorded, never thrown.  tol < 0 selects the default
// 1e-9 * diameter.  min_rho is the smallest admitted pair separation (the
// ratio denominator).  The euclidean-min mode only reports ratios; bounds
// are asserted in the projective metric.
VerificationReport verify_bounds(const Body& body, int pairs,
                                 std::uint64_t seed, double tol = -1.0,
                                 MetricMode mode = MetricMode::Projective,
                                 double min_rho = 1e-6);

// Stable-key-order JSON document for a report ("report_v1").
std::string report_json(const VerificationReport& report);

// Estimated supremum of the width (or diameter) difference quotient: a
// random pass followed by `stages` rounds of refinement around the incumbent
// pair with halving perturbation radii.  Nondecreasing in `stages`.
double sup_delta_estimate(const Body& body, DeltaKind kind, int stages = 12,
                          std::uint64_t seed = 42);

struct DerivativeEstimate {
  UnitDirection u;
  DeltaKind kind = DeltaKind::Width;
  std::vector<double> meshes;
  std::vector<double> values;     // max quotient per mesh
  double extrapolated = 0.0;      // Richardson step on the last two meshes
};

// Finite-difference estimate of the local modulus at u: per mesh h, the max
// quotient over straddling and one-sided geodesic pairs at 64 orientations.
DerivativeEstimate derivative_estimate(
    const Body& body, const UnitDirection& u, DeltaKind kind,
    std::vector<double> meshes = {1e-2, 1e-3, 1e-4, 1e-5});

struct SharpnessRow {
  double omega = 0.0;
  double width_deriv = 0.0, width_expected = 0.0;
  double diameter_deriv = 0.0, diameter_expected = 0.0;
};

// Slab-ball family normalized to diameter 2: the width derivative at e1
// should meet sqrt(4 - omega^2) and the diameter derivative at the critical
// direction (omega/2, sqrt(1 - omega^2/4)) should meet
// (2/omega) sqrt(4 - omega^2).  Each omega must lie in (0, 2].
std::vector<SharpnessRow> sharpness_suite(const std::vector<double>& omegas);

// Regular `sides`-gon circumscribing the radius-r circle, tangent at angle 0.
// Doubling `sides` keeps the tangency angles nested, so the polygons shrink
// monotonically onto the disc.
Polytope circumscribed_regular_polygon(double radius, int sides);

struct MonotoneRow {
  int sides = 0;
  double w_at_u = 0.0;    // width of the polygon at the fixed direction
  double s_at_uj = 0.0;   // contact spread at the drifting direction
  double r_at_uj = 0.0;   // diametral strip bound at the drifting direction
  double s_diff = 0.0;    // s_poly(u_j) - s_disc(u)
  double r_diff = 0.0;    // r_poly(u_j) - r_disc(u)
};

struct MonotoneReport {
  UnitDirection u;
  std::vector<MonotoneRow> rows;
};

// Circumscribed-polygon family around a centered disc: widths at u decrease
// to the disc width, the contact spread approaches it from above, and the
// strip bound never drops below it.  u is seeded; u_j drifts onto u.
MonotoneReport monotone_approx_suite(const Ball& disc,
                                     const std::vector<int>& sides,
                                     std::uint64_t seed);

}  // namespace widthfn
