#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "widthfn/hull.hpp"
#include "widthfn/sphere.hpp"

using namespace widthfn;

namespace {

double shoelace(const std::vector<Vec>& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec& p = poly[i];
    const Vec& q = poly[(i + 1) % poly.size()];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * a;
}

void check_hull_encloses(const Hull& h, const std::vector<Vec>& pts,
                         double tol) {
  for (const Facet& f : h.facets) {
    CHECK(norm(f.normal) == doctest::Approx(1.0).epsilon(1e-10));
    for (const Vec& p : pts) CHECK(dot(f.normal, p) <= f.offset + tol);
    for (int id : f.vertex_ids)
      CHECK(std::abs(dot(f.normal, h.vertices[id]) - f.offset) < tol);
  }
}

}  // namespace

TEST_CASE("planar hull drops interior, duplicate, and collinear points") {
  std::vector<Vec> pts = {{0, 0}, {1, 0},   {1, 1},     {0, 1},
                          {0.5, 0.5}, {1, 0}, {0.5, 0.0}, {0.2, 0.7}};
  auto hull = convex_hull_2d_ccw(pts);
  REQUIRE(hull.size() == 4);
  CHECK(shoelace(hull) == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec& a = hull[i];
    const Vec& b = hull[(i + 1) % hull.size()];
    const Vec& c = hull[(i + 2) % hull.size()];
    CHECK(cross2(a, b, c) > 0.0);  // strictly convex turn at every vertex
  }
}

TEST_CASE("planar hull object has outward unit edge normals") {
  std::vector<Vec> pts = {{0, 0}, {4, 0}, {5, 1}, {1, 1}, {2, 0.5}};
  Hull h = convex_hull(pts);
  CHECK(h.dim == 2);
  CHECK(h.vertices.size() == 4);
  CHECK(h.facets.size() == 4);
  check_hull_encloses(h, pts, 1e-12);
  for (const Facet& f : h.facets) REQUIRE(f.vertex_ids.size() == 2);
}

TEST_CASE("random planar clouds stay inside their hull") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    std::vector<Vec> pts;
    for (int i = 0; i < 60; ++i) {
      CounterRng r(seed, static_cast<std::uint64_t>(i));
      pts.push_back(Vec{r.next_gauss(), r.next_gauss()});
    }
    Hull h = convex_hull(pts);
    check_hull_encloses(h, pts, 1e-9);
  }
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS(convex_hull_2d_ccw({{0, 0}, {1, 1}, {2, 2}, {3, 3}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(convex_hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(convex_hull({{0, 0}, {1, 0}}), std::invalid_argument);
}

TEST_CASE("cube hull keeps all corners and supports every input point") {
  std::vector<Vec> pts;
  for (int m = 0; m < 8; ++m)
    pts.push_back(Vec{double(m & 1), double((m >> 1) & 1), double((m >> 2) & 1)});
  pts.push_back(Vec{0.5, 0.5, 0.5});
  pts.push_back(Vec{0.25, 0.5, 0.75});
  Hull h = convex_hull(pts);
  CHECK(h.dim == 3);
  CHECK(h.vertices.size() == 8);
  CHECK(h.facets.size() >= 6);
  check_hull_encloses(h, pts, 1e-9);
  // Axis supports of the unit cube are the planes x_k <= 1 and -x_k <= 0.
  for (int k = 0; k < 3; ++k)
    for (double sign : {1.0, -1.0}) {
      bool found = false;
      for (const Facet& f : h.facets) {
        if (std::abs(f.normal[k] - sign) > 1e-9) continue;
        found = true;
        CHECK(f.offset == doctest::Approx(sign > 0 ? 1.0 : 0.0).epsilon(1e-9));
      }
      CHECK(found);
    }
}

TEST_CASE("random spatial clouds stay inside their hull") {
  for (std::uint64_t seed : {10u, 11u}) {
    std::vector<Vec> pts;
    for (int i = 0; i < 40; ++i) {
      CounterRng r(seed, static_cast<std::uint64_t>(i));
      pts.push_back(Vec{r.next_gauss(), r.next_gauss(), r.next_gauss()});
    }
    Hull h = convex_hull(pts);
    check_hull_encloses(h, pts, 1e-9);
    // Every hull vertex is one of the inputs, bit for bit.
    for (const Vec& v : h.vertices) {
      bool found = false;
      for (const Vec& p : pts)
        found = found || (p[0] == v[0] && p[1] == v[1] && p[2] == v[2]);
      CHECK(found);
    }
  }
}

TEST_CASE("four-dimensional cross-polytope hull") {
  std::vector<Vec> pts;
  for (int k = 0; k < 4; ++k)
    for (double s : {1.0, -1.0}) {
      Vec v(4, 0.0);
      v[k] = s;
      pts.push_back(v);
    }
  Hull h = convex_hull(pts);
  CHECK(h.dim == 4);
  CHECK(h.vertices.size() == 8);
  CHECK(h.facets.size() == 16);
  check_hull_encloses(h, pts, 1e-10);
  for (const Facet& f : h.facets) {
    CHECK(f.offset == doctest::Approx(0.5).epsilon(1e-10));
    for (int k = 0; k < 4; ++k)
      CHECK(std::abs(f.normal[k]) == doctest::Approx(0.5).epsilon(1e-10));
  }
}
