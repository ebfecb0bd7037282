#include "widthfn/point_diameter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "widthfn/metrics.hpp"

namespace widthfn {

namespace {

constexpr double kPi = std::numbers::pi;

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool empty = false;

  void cut_below(double t) { lo = std::max(lo, t); }
  void cut_above(double t) { hi = std::min(hi, t); }
  double length() const { return (empty || hi <= lo) ? 0.0 : hi - lo; }
};

Interval clip_halfplanes(const std::vector<Facet>& facets, const Vec& o,
                         const Vec& d, double slack) {
  Interval iv;
  for (const Facet& f : facets) {
    double a = dot(f.normal, d);
    double b = f.offset - dot(f.normal, o);
    if (std::abs(a) < 1e-14) {
      if (b < -slack) iv.empty = true;
      continue;
    }
    if (a > 0.0)
      iv.cut_above(b / a);
    else
      iv.cut_below(b / a);
    if (iv.empty) break;
  }
  return iv;
}

// Solutions of |o + t d - c|^2 = r^2 as an interval (d unit).
Interval clip_sphere(const Vec& o, const Vec& d, const Vec& c, double r) {
  Vec oc = sub(o, c);
  double b = dot(d, oc);
  double disc = b * b - (norm2(oc) - r * r);
  Interval iv;
  if (disc < 0.0) {
    iv.empty = true;
    return iv;
  }
  double s = std::sqrt(disc);
  iv.lo = -b - s;
  iv.hi = -b + s;
  return iv;
}

Vec body_center(const Body& body) {
  if (const Polytope* p = std::get_if<Polytope>(&body)) {
    Vec c(p->dim(), 0.0);
    for (const Vec& v : p->vertices()) c = add(c, v);
    for (double& x : c) x /= static_cast<double>(p->vertices().size());
    return c;
  }
  if (const Ball* b = std::get_if<Ball>(&body)) return b->center();
  return Vec(dimension(body), 0.0);
}

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double xtol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > xtol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

PointDiameterSample best_over(const Body& body, const Vec& o,
                              const std::vector<UnitDirection>& cands) {
  PointDiameterSample out{o, -1.0, UnitDirection::axis(dimension(body), 0)};
  for (const UnitDirection& u : cands) {
    double len = chord_length(body, o, u);
    if (len > out.e) {
      out.e = len;
      out.best_direction = u;
    }
  }
  if (out.e < 0.0) out.e = 0.0;
  return out;
}

PointDiameterSample e_of_exact_2d(const Polytope& p, const Vec& o) {
  std::vector<UnitDirection> cands;
  for (const Vec& v : p.vertices()) {
    Vec d = sub(v, o);
    if (norm(d) > 1e-12 * std::max(1.0, p.scale()))
      cands.push_back(UnitDirection(std::move(d)));
  }
  const auto& fs = p.facets();
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      double cr = fs[i].normal[0] * fs[j].normal[1] -
                  fs[i].normal[1] * fs[j].normal[0];
      if (std::abs(cr) > 1e-12) continue;
      cands.push_back(
          UnitDirection(Vec{-fs[i].normal[1], fs[i].normal[0]}));
    }
  Body body(p);
  return best_over(body, o, cands);
}

PointDiameterSample e_of_sweep_2d(const Body& body, const Vec& o) {
  auto chord_at = [&](double theta) {
    return chord_length(body, o,
                        UnitDirection(Vec{std::cos(theta), std::sin(theta)}));
  };
  const int n = 512;
  std::vector<double> val(n);
  for (int k = 0; k < n; ++k) val[k] = chord_at(kPi * k / n);
  // Refine around circular local maxima (period pi); plateaus make every
  // sample a local max, so cap the starts at the 16 best.
  std::vector<int> starts;
  for (int k = 0; k < n; ++k) {
    double prev = val[(k + n - 1) % n];
    double next = val[(k + 1) % n];
    if (val[k] >= prev && val[k] >= next) starts.push_back(k);
  }
  std::sort(starts.begin(), starts.end(),
            [&](int a, int b) { return val[a] > val[b]; });
  if (starts.size() > 16) starts.resize(16);
  double best = -1.0, best_theta = 0.0;
  for (int k : starts) {
    double center = kPi * k / n;
    double theta =
        golden_max(chord_at, center - kPi / n, center + kPi / n, 1e-8);
    double len = chord_at(theta);
    if (len < val[k]) {
      len = val[k];
      theta = center;
    }
    if (len > best) {
      best = len;
      best_theta = theta;
    }
  }
  if (best < 0.0) best = 0.0;
  return PointDiameterSample{
      o, best, UnitDirection(Vec{std::cos(best_theta), std::sin(best_theta)})};
}

std::vector<Vec> tangent_basis(const UnitDirection& u) {
  int n = u.dim();
  std::vector<Vec> basis;
  for (int k = 0; k < n && static_cast<int>(basis.size()) < n - 1; ++k) {
    Vec t(n, 0.0);
    t[k] = 1.0;
    t = axpy(t, -dot(t, u.coords()), u.coords());
    for (const Vec& b : basis) t = axpy(t, -dot(t, b), b);
    double len = norm(t);
    if (len < 1e-8) continue;
    for (double& x : t) x /= len;
    basis.push_back(std::move(t));
  }
  return basis;
}

PointDiameterSample e_of_sweep_nd(const Body& body, const Vec& o) {
  int dim = dimension(body);
  auto sweep = sample_directions(dim, 512, 0xec0fu);
  PointDiameterSample best = best_over(body, o, sweep);
  // Multistart geodesic coordinate ascent from the leading sweep hits.
  std::sort(sweep.begin(), sweep.end(),
            [&](const UnitDirection& a, const UnitDirection& b) {
              return chord_length(body, o, a) > chord_length(body, o, b);
            });
  int starts = std::min<int>(5, static_cast<int>(sweep.size()));
  for (int s = 0; s < starts; ++s) {
    UnitDirection u = sweep[s];
    double fu = chord_length(body, o, u);
    double step = kPi / 32.0;
    while (step > 1e-8) {
      bool improved = false;
      for (const Vec& t : tangent_basis(u)) {
        auto along = [&](double phi) {
          return chord_length(body, o, geodesic_step(u, t, phi));
        };
        double phi = golden_max(along, -step, step, std::max(1e-9, step / 64));
        double f2 = along(phi);
        if (f2 > fu + 1e-15) {
          fu = f2;
          u = geodesic_step(u, t, phi);
          improved = true;
        }
      }
      if (!improved) step *= 0.25;
    }
    if (fu > best.e) {
      best.e = fu;
      best.best_direction = u;
    }
  }
  return best;
}

bool on_boundary(const Body& body, const Vec& o, double tol_abs) {
  if (const Polytope* p = std::get_if<Polytope>(&body)) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const Facet& f : p->facets())
      worst = std::max(worst, dot(f.normal, o) - f.offset);
    return std::abs(worst) <= tol_abs;
  }
  if (const Ellipsoid* e = std::get_if<Ellipsoid>(&body)) {
    double q = 0.0;
    const auto& a = e->semiaxes();
    for (std::size_t i = 0; i < a.size(); ++i)
      q += (o[i] / a[i]) * (o[i] / a[i]);
    double amin = *std::min_element(a.begin(), a.end());
    return std::abs(std::sqrt(q) - 1.0) * amin <= tol_abs;
  }
  if (const Ball* b = std::get_if<Ball>(&body))
    return std::abs(dist(o, b->center()) - b->radius()) <= tol_abs;
  const SlabBall& s = std::get<SlabBall>(body);
  double h = std::min(s.half_width(), 1.0);
  bool in_slab = std::abs(o[0]) <= h + tol_abs;
  bool in_ball = norm(o) <= 1.0 + tol_abs;
  bool sphere_part = std::abs(norm(o) - 1.0) <= tol_abs && in_slab;
  bool flat_part = std::abs(std::abs(o[0]) - h) <= tol_abs && in_ball;
  return sphere_part || flat_part;
}

}  // namespace

double chord_length(const Body& body, const Vec& o, const UnitDirection& dir) {
  if (const Polytope* p = std::get_if<Polytope>(&body)) {
    double slack = 1e-12 * std::max(1.0, p->scale());
    return clip_halfplanes(p->facets(), o, dir.coords(), slack).length();
  }
  if (const Ellipsoid* e = std::get_if<Ellipsoid>(&body)) {
    const auto& ax = e->semiaxes();
    double a = 0.0, b = 0.0, c = -1.0;
    for (std::size_t i = 0; i < ax.size(); ++i) {
      double s = 1.0 / (ax[i] * ax[i]);
      a += dir[i] * dir[i] * s;
      b += o[i] * dir[i] * s;
      c += o[i] * o[i] * s;
    }
    double disc = b * b - a * c;
    return (disc <= 0.0) ? 0.0 : 2.0 * std::sqrt(disc) / a;
  }
  if (const Ball* bl = std::get_if<Ball>(&body))
    return clip_sphere(o, dir.coords(), bl->center(), bl->radius()).length();
  const SlabBall& s = std::get<SlabBall>(body);
  double h = std::min(s.half_width(), 1.0);
  Interval iv = clip_sphere(o, dir.coords(), Vec(s.dim(), 0.0), 1.0);
  if (iv.empty) return 0.0;
  double a = dir[0], b0 = o[0];
  if (std::abs(a) < 1e-14) {
    if (std::abs(b0) > h) return 0.0;
    return iv.length();
  }
  double t1 = (-h - b0) / a, t2 = (h - b0) / a;
  iv.cut_below(std::min(t1, t2));
  iv.cut_above(std::max(t1, t2));
  return iv.length();
}

PointDiameterSample e_of(const Body& body, const Vec& o) {
  int dim = dimension(body);
  if (static_cast<int>(o.size()) != dim)
    throw std::invalid_argument("point dimension does not match the body");
  for (double x : o)
    if (!std::isfinite(x))
      throw std::invalid_argument("point must be finite");
  if (const Polytope* p = std::get_if<Polytope>(&body); p && dim == 2)
    return e_of_exact_2d(*p, o);
  if (dim == 2) return e_of_sweep_2d(body, o);
  return e_of_sweep_nd(body, o);
}

double epsilon_estimate(const Body& body, double search_radius, int grid) {
  if (dimension(body) != 2)
    throw std::invalid_argument("epsilon estimation is 2-d only");
  double delta = global_diameter(body).value;
  if (!(search_radius >= 2.0 * delta))
    throw std::invalid_argument(
        "search radius must be at least twice the diameter");
  if (grid < 2) throw std::invalid_argument("grid must be at least 2");
  Vec c = body_center(body);
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid; ++j)
    for (int i = 0; i < grid; ++i) {
      Vec o{c[0] - search_radius + 2.0 * search_radius * i / (grid - 1),
            c[1] - search_radius + 2.0 * search_radius * j / (grid - 1)};
      best = std::min(best, e_of(body, o).e);
    }
  return best;
}

double farthest_distance(const Body& body, const Vec& o) {
  if (const Polytope* p = std::get_if<Polytope>(&body)) {
    double best = 0.0;
    for (const Vec& v : p->vertices()) best = std::max(best, dist(v, o));
    return best;
  }
  if (const Ball* b = std::get_if<Ball>(&body))
    return dist(o, b->center()) + b->radius();
  if (const Ellipsoid* e = std::get_if<Ellipsoid>(&body)) {
    const auto& ax = e->semiaxes();
    if (e->dim() == 2) {
      auto d_at = [&](double phi) {
        Vec x{ax[0] * std::cos(phi), ax[1] * std::sin(phi)};
        return dist(x, o);
      };
      double best = 0.0;
      const int n = 512;
      int k0 = 0;
      for (int k = 0; k < n; ++k)
        if (d_at(2.0 * kPi * k / n) > d_at(2.0 * kPi * k0 / n)) k0 = k;
      double center = 2.0 * kPi * k0 / n;
      double phi = golden_max(d_at, center - 2.0 * kPi / n,
                              center + 2.0 * kPi / n, 1e-10);
      best = std::max(d_at(center), d_at(phi));
      return best;
    }
    double best = 0.0;
    for (const auto& u : sample_directions(e->dim(), 4096, 0xfa12u)) {
      double q = 0.0;
      Vec x(e->dim());
      for (int i = 0; i < e->dim(); ++i) q += u[i] * u[i] / (ax[i] * ax[i]);
      double t = 1.0 / std::sqrt(q);
      for (int i = 0; i < e->dim(); ++i) x[i] = t * u[i];
      best = std::max(best, dist(x, o));
    }
    return best;
  }
  const SlabBall& s = std::get<SlabBall>(body);
  double h = std::min(s.half_width(), 1.0);
  double best = 0.0;
  double on = norm(o);
  if (on > 1e-14) {
    Vec anti = scaled(o, -1.0 / on);
    if (std::abs(anti[0]) <= h) best = std::max(best, dist(anti, o));
  }
  // Ring extremes: first coordinate +-h, the rest at radius sqrt(1-h^2)
  // pointing away from o.
  Vec rest(o);
  rest[0] = 0.0;
  double rn = norm(rest);
  double rr = std::sqrt(std::max(0.0, 1.0 - h * h));
  for (double x1 : {h, -h}) {
    Vec x(s.dim(), 0.0);
    x[0] = x1;
    if (rn > 1e-14) {
      for (int i = 1; i < s.dim(); ++i) x[i] = -rr * o[i] / rn;
    } else if (s.dim() >= 2) {
      x[1] = rr;
    }
    best = std::max(best, dist(x, o));
  }
  return best;
}

ContinuityVerdict continuity_check(const Body& body, const Vec& o,
                                   double tol) {
  double delta = global_diameter(body).value;
  if (!on_boundary(body, o, 1e-9 * std::max(1.0, delta)))
    throw std::invalid_argument("point is not on the boundary");
  ContinuityVerdict v;
  v.o = o;
  v.e_value = e_of(body, o).e;
  v.farthest_value = farthest_distance(body, o);
  v.gap = std::max(0.0, v.e_value - v.farthest_value);
  v.continuous = v.gap <= tol;
  return v;
}

double usc_probe(const Body& body, const Vec& o, double radius, int count,
                 std::uint64_t seed) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  int n = dimension(body);
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    Vec g(n);
    for (double& x : g) x = rng.next_gauss();
    double len = norm(g);
    if (len < 1e-12) continue;
    double rho = std::pow(rng.next_unit(), 1.0 / n) * radius / len;
    best = std::max(best, e_of(body, axpy(o, rho, g)).e);
  }
  return best;
}

EkGrid ek_grid(const Body& body, const GridBounds& bounds, int nx, int ny) {
  if (dimension(body) != 2)
    throw std::invalid_argument("grid rasterization is 2-d only");
  if (nx < 2 || ny < 2) throw std::invalid_argument("grid must be >= 2x2");
  if (!(bounds.xmax > bounds.xmin) || !(bounds.ymax > bounds.ymin))
    throw std::invalid_argument("grid bounds have zero area");
  EkGrid g;
  g.bounds = bounds;
  g.nx = nx;
  g.ny = ny;
  g.values.resize(static_cast<std::size_t>(nx) * ny);
  double dx = (bounds.xmax - bounds.xmin) / nx;
  double dy = (bounds.ymax - bounds.ymin) / ny;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      Vec o{bounds.xmin + (i + 0.5) * dx, bounds.ymin + (j + 0.5) * dy};
      g.values[static_cast<std::size_t>(j) * nx + i] = e_of(body, o).e;
    }
  return g;
}

void write_ek_csv(const EkGrid& g, std::ostream& out) {
  out << "x,y,e\n";
  double dx = (g.bounds.xmax - g.bounds.xmin) / g.nx;
  double dy = (g.bounds.ymax - g.bounds.ymin) / g.ny;
  char buf[96];
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n",
                    g.bounds.xmin + (i + 0.5) * dx,
                    g.bounds.ymin + (j + 0.5) * dy, g.at(i, j));
      out << buf;
    }
}

}  // namespace widthfn
