#pragma once

#include <vector>

#include "widthfn/body.hpp"
#include "widthfn/sphere.hpp"

namespace widthfn {

// Distance between the two supporting hyperplanes orthogonal to u.
double width(const Body& body, const UnitDirection& u);

// Length of the longest chord parallel to u (radial function of the
// difference body).  Polytopes use ray shooting against the cached difference
// facets; smooth bodies use closed forms.
double dir_diameter(const Body& body, const UnitDirection& u);

struct ChordWitness {
  double length = 0.0;
  Vec a, b;
};

// Independent route for polytopes: a dense LP over convex weights of the two
// chord endpoints.  Falls back to ray shooting if the solver stalls.
ChordWitness dir_diameter_lp(const Polytope& p, const UnitDirection& u);

struct GlobalDiameter {
  double value = 0.0;
  Vec a, b;  // a realizing chord
};
GlobalDiameter global_diameter(const Body& body);

struct ThicknessResult {
  double value = 0.0;
  UnitDirection direction;
};
ThicknessResult thickness(const Body& body);

struct LipschitzConstants {
  double m = 0.0;  // for the width function
  double n = 0.0;  // for the directional diameter
};
// Requires 0 < omega <= delta.
LipschitzConstants lipschitz_constants(double delta, double omega);

// Largest distance between the two contact sets of u and -u; >= width(u).
double s_of(const Body& body, const UnitDirection& u, double tol = kContactTol);

// sqrt(s^2 - w^2); local modulus of the width function at u.
double p_of(const Body& body, const UnitDirection& u, double tol = kContactTol);

struct DiametralChord {
  Vec a, b;  // b = a + length * u
  double length = 0.0;
  // Smallest distance between parallel supporting hyperplanes through the
  // endpoints, over all admissible normal directions.
  double strip_width = 0.0;
  std::vector<Vec> admissible_normals;  // witnesses on the admissible cone
};

// Longest chords parallel to u.  2-d polytopes enumerate exactly, with
// translation families represented by their two extreme chords.
std::vector<DiametralChord> diametral_chords(const Body& body,
                                             const UnitDirection& u,
                                             double tol = kContactTol);

// Infimum of strip widths over all diametral chords for u; in [omega, d(u)].
double r_of(const Body& body, const UnitDirection& u, double tol = kContactTol);

// d * sqrt(d^2/r^2 - 1); local modulus of the diameter function at u.
double q_of(const Body& body, const UnitDirection& u, double tol = kContactTol);

struct HatConstants {
  double m_hat = 0.0;       // max of p
  double n_hat = 0.0;       // max of q
  bool exact = false;       // true when the candidate set is provably complete
  double m_hat_generic = 0.0;  // sup of p restricted to width-generic u
  double n_hat_generic = 0.0;  // sup of q restricted to diameter-generic u
};

// 2-d: exact via edge normals (for p) and vertex-difference directions (for
// q), plus a deterministic sweep that can only confirm the maximum.  Higher
// dimensions: estimate over facet normals of the body and its difference body
// plus sampled directions.
HatConstants hat_constants(const Polytope& p, int resolution = 4096);

struct GenericityFlags {
  bool for_width = false;     // both contact sets are single points
  bool for_diameter = false;  // unique chord, one vertex end, one facet end
};
GenericityFlags genericity(const Polytope& p, const UnitDirection& u,
                           double tol = kContactTol);

struct DirectionalSample {
  double w = 0.0, d = 0.0, s = 0.0, p = 0.0, r = 0.0, q = 0.0;
};
DirectionalSample profile_direction(const Body& body, const UnitDirection& u);

struct BodyStats {
  double delta = 0.0, omega = 0.0;
  LipschitzConstants lipschitz;
  UnitDirection omega_direction;
  Vec diameter_a, diameter_b;
};
BodyStats body_stats(const Body& body);

// Flips the sign so the first coordinate above 1e-12 in magnitude is positive.
UnitDirection canonical_sign(const UnitDirection& u);

}  // namespace widthfn
