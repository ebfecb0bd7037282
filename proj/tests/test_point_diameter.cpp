#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "widthfn/body.hpp"
#include "widthfn/metrics.hpp"
#include "widthfn/point_diameter.hpp"
#include "widthfn/sphere.hpp"

using namespace widthfn;

namespace {

constexpr double kPi = std::numbers::pi;
const double kRoot3 = std::sqrt(3.0);

Polytope triangle345() { return Polytope({{0, 0}, {5, 0}, {3.2, 2.4}}); }
Polytope unit_square() { return Polytope({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }
Polytope equilateral() {
  return Polytope({{0, 0}, {1, 0}, {0.5, kRoot3 / 2}});
}
Polytope parallelogram() {
  return Polytope({{0, 0}, {4, 0}, {5, 1}, {1, 1}});
}

UnitDirection dir2(double ang) {
  return UnitDirection(Vec{std::cos(ang), std::sin(ang)});
}

// Independent check: densely sweep line directions through o, then refine
// every circular local maximum of the sampled chord lengths.
double sweep_oracle(const Body& body, const Vec& o, int samples) {
  std::vector<double> len(samples);
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    len[k] = chord_length(body, o, dir2(kPi * k / samples));
    best = std::max(best, len[k]);
  }
  auto refine = [&](double center) {
    double lo = center - kPi / samples, hi = center + kPi / samples;
    for (int it = 0; it < 120; ++it) {
      double m1 = lo + (hi - lo) * 0.382, m2 = lo + (hi - lo) * 0.618;
      if (chord_length(body, o, dir2(m1)) < chord_length(body, o, dir2(m2)))
        lo = m1;
      else
        hi = m2;
    }
    return chord_length(body, o, dir2(0.5 * (lo + hi)));
  };
  int refined = 0;
  for (int k = 0; k < samples && refined < 64; ++k) {
    double prev = len[(k + samples - 1) % samples];
    double next = len[(k + 1) % samples];
    if (len[k] >= prev && len[k] >= next && len[k] > 0.9 * best) {
      best = std::max(best, refine(kPi * k / samples));
      ++refined;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("chord lengths by direct clipping") {
  Body sq(unit_square());
  CHECK(chord_length(sq, {0.5, 0.5}, UnitDirection::axis(2, 0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(chord_length(sq, {0.5, 0.5}, dir2(kPi / 4)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(chord_length(sq, {5.0, 5.0}, UnitDirection::axis(2, 1)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // A line through an outside point can still cut the body.
  CHECK(chord_length(sq, {2.0, 0.5}, UnitDirection::axis(2, 0)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  Body ell(Ellipsoid({2, 1}));
  CHECK(chord_length(ell, {0, 0}, UnitDirection::axis(2, 0)) ==
        doctest::Approx(4.0).epsilon(1e-12));
  CHECK(chord_length(ell, {0, 0}, UnitDirection::axis(2, 1)) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(chord_length(ell, {0, 0.5}, UnitDirection::axis(2, 0)) ==
        doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-12));

  Body slab(SlabBall(0.5, 2));
  CHECK(chord_length(slab, {0, 0}, UnitDirection::axis(2, 0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(chord_length(slab, {0.3, 0}, UnitDirection::axis(2, 1)) ==
        doctest::Approx(2.0 * std::sqrt(0.91)).epsilon(1e-12));

  Body b3(Ball(1.0, Vec{0, 0, 0}));
  CHECK(chord_length(b3, {0, 0, 0.5}, UnitDirection::axis(3, 0)) ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("point diameter at distinguished pivots") {
  Body eq(equilateral());
  PointDiameterSample centroid = e_of(eq, {0.5, kRoot3 / 6});
  CHECK(centroid.e == doctest::Approx(kRoot3 / 2).epsilon(1e-9));

  // Any pivot on a disc sees a full diameter through the center.
  Body disc(Ball(1.0, Vec{0, 0}));
  for (Vec o : {Vec{0, 0}, Vec{0.3, 0.1}, Vec{1, 0}, Vec{3, 3}})
    CHECK(e_of(disc, o).e == doctest::Approx(2.0).epsilon(1e-9));

  Body tri(triangle345());
  PointDiameterSample below = e_of(tri, {3.2, -5.0});
  CHECK(below.e == doctest::Approx(2.4).epsilon(1e-12));
  CHECK(std::abs(below.best_direction[0]) < 1e-9);

  // At a vertex the best chord reaches the farthest vertex.
  Body sq(unit_square());
  CHECK(e_of(sq, {0, 0}).e == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(e_of(sq, {0.5, 0}).e ==
        doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
}

TEST_CASE("exact planar path agrees with the direction sweep") {
  std::vector<Body> bodies;
  bodies.emplace_back(triangle345());
  bodies.emplace_back(unit_square());
  bodies.emplace_back(parallelogram());
  for (const Body& body : bodies) {
    for (int i = 0; i < 8; ++i) {
      CounterRng rng(400 + i, 0);
      Vec o{-2.0 + 8.0 * rng.next_unit(), -3.0 + 6.0 * rng.next_unit()};
      double exact = e_of(body, o).e;
      double swept = sweep_oracle(body, o, 200000);
      CHECK(exact == doctest::Approx(swept).epsilon(1e-7));
    }
  }
}

TEST_CASE("point diameter is sandwiched between thickness and diameter") {
  std::vector<Body> bodies;
  bodies.emplace_back(triangle345());
  bodies.emplace_back(parallelogram());
  bodies.emplace_back(Ellipsoid({2, 1}));
  bodies.emplace_back(SlabBall(0.6, 2));
  for (const Body& body : bodies) {
    BodyStats st = body_stats(body);
    for (int i = 0; i < 150; ++i) {
      CounterRng rng(7000 + i, 0);
      Vec o{-4.0 + 12.0 * rng.next_unit(), -4.0 + 8.0 * rng.next_unit()};
      double e = e_of(body, o).e;
      CHECK(e >= st.omega - 1e-9);
      CHECK(e <= st.delta + 1e-9);
    }
  }
}

TEST_CASE("spatial pivots through sweeping ascent") {
  Body ball(Ball(1.0, Vec{0, 0, 0}));
  CHECK(e_of(ball, {0.3, 0.2, 0.1}).e == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(e_of(ball, {5, 5, 5}).e == doctest::Approx(2.0).epsilon(1e-6));

  std::vector<Vec> corners;
  for (int m = 0; m < 8; ++m)
    corners.push_back(
        Vec{double(m & 1), 2.0 * ((m >> 1) & 1), 3.0 * ((m >> 2) & 1)});
  Body box{Polytope(corners)};
  CHECK(e_of(box, {0.5, 1.0, 1.5}).e ==
        doctest::Approx(std::sqrt(14.0)).epsilon(1e-5));

  Body ell(Ellipsoid({1, 2, 3}));
  CHECK(e_of(ell, {0, 0, 0}).e == doctest::Approx(6.0).epsilon(1e-6));
}

TEST_CASE("grid infimum estimates land near the thickness") {
  CHECK(epsilon_estimate(Body(Ball(1.0, Vec{0, 0})), 4.0, 101) ==
        doctest::Approx(2.0).epsilon(1e-9));

  double tri_est = epsilon_estimate(Body(triangle345()), 20.0, 201);
  CHECK(tri_est >= 2.4 - 1e-9);
  CHECK(tri_est <= 2.45);

  CHECK_THROWS_AS(epsilon_estimate(Body(triangle345()), 1.0, 51),
                  std::invalid_argument);
  CHECK_THROWS_AS(epsilon_estimate(Body(Ball(1.0, Vec{0, 0, 0})), 8.0, 11),
                  std::invalid_argument);
  CHECK_THROWS_AS(epsilon_estimate(Body(triangle345()), 20.0, 1),
                  std::invalid_argument);
}

TEST_CASE("far pivots on a diametral line see the full chord") {
  Body tri(triangle345());
  double d10 = std::abs(e_of(tri, {-50.0, 0.0}).e - 5.0);
  double d100 = std::abs(e_of(tri, {-500.0, 0.0}).e - 5.0);
  CHECK(d10 < 1e-9);
  CHECK(d100 <= d10 + 1e-12);

  // The parallelogram's minimal width is approached but never attained.
  Body par(parallelogram());
  double far_low = e_of(par, {2.5, -19.5}).e;
  CHECK(far_low > 1.0);
  CHECK(far_low < 1.01);
}

TEST_CASE("boundary continuity of the equilateral triangle") {
  Body eq(equilateral());
  for (Vec v : {Vec{0, 0}, Vec{1, 0}, Vec{0.5, kRoot3 / 2}}) {
    ContinuityVerdict cv = continuity_check(eq, v);
    CHECK(cv.continuous);
    CHECK(cv.gap <= 1e-9);
  }
  ContinuityVerdict mid = continuity_check(eq, {0.5, 0.0});
  CHECK_FALSE(mid.continuous);
  CHECK(mid.e_value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mid.farthest_value == doctest::Approx(kRoot3 / 2).epsilon(1e-12));
  CHECK(mid.gap == doctest::Approx(1.0 - kRoot3 / 2).epsilon(1e-9));

  CHECK_THROWS_AS(continuity_check(eq, {0.5, 0.2}), std::invalid_argument);
  CHECK_THROWS_AS(continuity_check(eq, {9.0, 9.0}), std::invalid_argument);
}

TEST_CASE("scalene triangles are continuous beyond the vertices") {
  Body tri(triangle345());
  // Points on the side toward (3.2, 2.4), by arc length t from the origin:
  // the reach of the opposite vertex (5,0) decides continuity.
  auto side_point = [](double t) { return Vec{0.8 * t, 0.6 * t}; };
  ContinuityVerdict near = continuity_check(tri, side_point(0.5));
  CHECK(near.continuous);
  CHECK(near.e_value == doctest::Approx(std::sqrt(21.25)).epsilon(1e-12));
  ContinuityVerdict far = continuity_check(tri, side_point(3.0));
  CHECK_FALSE(far.continuous);
  CHECK(far.e_value == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("disc boundary is continuous everywhere") {
  Body disc(Ball(1.0, Vec{0, 0}));
  for (int k = 0; k < 20; ++k) {
    double a = 2.0 * kPi * k / 20.0;
    ContinuityVerdict cv =
        continuity_check(disc, {std::cos(a), std::sin(a)});
    CHECK(cv.continuous);
  }
}

TEST_CASE("farthest distances") {
  Body tri(triangle345());
  CHECK(farthest_distance(tri, {0, 0}) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(farthest_distance(tri, {3.2, -5.0}) ==
        doctest::Approx(7.4).epsilon(1e-12));  // apex sits 7.4 above
  CHECK(farthest_distance(Body(Ball(1.0, Vec{0, 0})), {3, 0}) ==
        doctest::Approx(4.0).epsilon(1e-12));
  CHECK(farthest_distance(Body(Ellipsoid({2, 1})), {0, 0}) ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(farthest_distance(Body(Ellipsoid({2, 1})), {3, 0}) ==
        doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("one-sided semicontinuity probes") {
  Body sq(unit_square());
  Vec center{0.5, 0.5};
  double ec = e_of(sq, center).e;
  CHECK(usc_probe(sq, center, 1e-4, 200, 11) <= ec + 1e-3 * std::sqrt(2.0));
  CHECK(std::abs(usc_probe(sq, center, 1e-6, 100, 12) - ec) <= 1e-4);

  // Walking outward from an edge midpoint, the value drops by a margin.
  Body eq(equilateral());
  Vec mid{0.5, 0.0};
  double em = e_of(eq, mid).e;
  for (double t : {1e-2, 1e-3, 1e-4}) {
    double outside = e_of(eq, {0.5, -t}).e;
    CHECK(outside < em - 0.05);
  }
}

TEST_CASE("raster grid of point diameters") {
  Body disc(Ball(1.0, Vec{0, 0}));
  EkGrid g = ek_grid(disc, GridBounds{-2, 2, -2, 2}, 3, 3);
  REQUIRE(g.values.size() == 9);
  CHECK(g.at(1, 1) == doctest::Approx(2.0).epsilon(1e-9));
  for (double v : g.values) CHECK(v >= 2.0 - 1e-9);

  std::ostringstream out;
  write_ek_csv(g, out);
  std::string text = out.str();
  CHECK(text.rfind("x,y,e\n", 0) == 0);
  int lines = 0;
  for (char c : text) lines += (c == '\n');
  CHECK(lines == 10);
  // First cell center sits at one third of the way into the box.
  double x0, y0, e0;
  REQUIRE(std::sscanf(text.c_str() + 6, "%lf,%lf,%lf", &x0, &y0, &e0) == 3);
  CHECK(x0 == doctest::Approx(-2.0 + 4.0 / 6.0).epsilon(1e-12));
  CHECK(y0 == doctest::Approx(-2.0 + 4.0 / 6.0).epsilon(1e-12));

  CHECK_THROWS_AS(ek_grid(disc, GridBounds{0, 0, 0, 1}, 4, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(ek_grid(disc, GridBounds{-2, 2, -2, 2}, 1, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      ek_grid(Body(Ball(1.0, Vec{0, 0, 0})), GridBounds{-2, 2, -2, 2}, 4, 4),
      std::invalid_argument);
}
