#include "widthfn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "widthfn/lp.hpp"

namespace widthfn {

namespace {

constexpr double kPi = std::numbers::pi;

double ray_shoot(const Hull& h, const Vec& u) {
  double t = std::numeric_limits<double>::infinity();
  for (const Facet& f : h.facets) {
    double den = dot(f.normal, u);
    if (den > 1e-14) t = std::min(t, f.offset / den);
  }
  if (!std::isfinite(t))
    throw std::logic_error("ray shoot: no facet ahead of the ray");
  return t;
}

double contact_tol_abs(const Polytope& p, double tol) {
  return tol * std::max(p.scale(), 1.0);
}

int find_vertex(const Polytope& p, const Vec& x, double atol) {
  for (int i = 0; i < static_cast<int>(p.vertices().size()); ++i)
    if (dist(p.vertices()[i], x) <= atol) return i;
  return -1;
}

double angle_of(const Vec& v) {
  double a = std::atan2(v[1], v[0]);
  if (a < 0.0) a += 2.0 * kPi;
  return a;
}

Vec dir2(double angle) { return Vec{std::cos(angle), std::sin(angle)}; }

UnitDirection rotate2(const UnitDirection& u, double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  return UnitDirection(Vec{c * u[0] - s * u[1], s * u[0] + c * u[1]});
}

// Angle arc of outward normals admissible at a chord endpoint: a vertex gives
// its normal cone, an edge-interior point the single edge normal.  The chord
// search admits endpoints up to a multiple of the contact tolerance off the
// boundary, so a second pass retries the match with that wider budget.
AngleInterval endpoint_arc_2d(const Polytope& p, const Vec& x, double atol) {
  for (double budget : {atol, 128.0 * atol}) {
    int vid = find_vertex(p, x, budget);
    if (vid >= 0) return normal_cone_2d(p, vid);
    double trange = (budget == atol) ? 1e-9 : 1e-5;
    for (const Facet& f : p.facets()) {
      if (std::abs(dot(f.normal, x) - f.offset) > budget) continue;
      const Vec& a = p.vertices()[f.vertex_ids[0]];
      const Vec& b = p.vertices()[f.vertex_ids[1]];
      Vec e = sub(b, a);
      double t = dot(sub(x, a), e) / norm2(e);
      if (t < -trange || t > 1.0 + trange) continue;
      double ang = angle_of(f.normal);
      return AngleInterval{ang, ang};
    }
  }
  throw std::logic_error("chord endpoint is not on the boundary");
}

struct ArcPiece {
  double lo, hi;
};

// Intersection of two closed arcs on the circle, each of length < pi.
std::vector<ArcPiece> intersect_arcs(const AngleInterval& a,
                                     const AngleInterval& b, double slack) {
  std::vector<ArcPiece> out;
  for (double shift : {-2.0 * kPi, 0.0, 2.0 * kPi}) {
    double lo = std::max(a.lo, b.lo + shift);
    double hi = std::min(a.hi, b.hi + shift);
    if (hi >= lo - slack) out.push_back(ArcPiece{lo, std::max(lo, hi)});
  }
  return out;
}

struct StripResult {
  double value;
  std::vector<Vec> normals;
};

StripResult chord_strip_2d(const Polytope& p, const Vec& a, const Vec& b,
                           double atol) {
  AngleInterval at_b = endpoint_arc_2d(p, b, atol);
  AngleInterval at_a = endpoint_arc_2d(p, a, atol);
  // Admissible v: the hyperplane with outward normal v supports at b and the
  // one with outward normal -v supports at a.
  AngleInterval shifted{at_a.lo + kPi, at_a.hi + kPi};
  auto pieces = intersect_arcs(at_b, shifted, 1e-9);
  if (pieces.empty()) return StripResult{-1.0, {}};
  Vec ab = sub(b, a);
  StripResult out{std::numeric_limits<double>::infinity(), {}};
  for (const ArcPiece& arc : pieces) {
    for (double ang : {arc.lo, arc.hi}) {
      Vec v = dir2(ang);
      double val = dot(ab, v);
      if (val < out.value) out.value = val;
      out.normals.push_back(std::move(v));
    }
  }
  return out;
}

Vec cross3(const Vec& a, const Vec& b) {
  return Vec{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
             a[0] * b[1] - a[1] * b[0]};
}

// Minimize <b-a, v> over unit v with v in the normal cone at b and -v in the
// normal cone at a.  Cone membership is tested against every vertex, so no
// facet bookkeeping is needed.  In 3-d the minimum sits on an extreme ray,
// all of which are cross products of active constraint normals.
StripResult chord_strip_nd(const Polytope& p, const Vec& a, const Vec& b,
                           double atol) {
  const auto& vs = p.vertices();
  std::vector<Vec> cons;  // require <c, v> <= 0
  for (const Vec& y : vs) {
    Vec c1 = sub(y, b);
    if (double n1 = norm(c1); n1 > atol) {
      for (double& x : c1) x /= n1;
      cons.push_back(std::move(c1));
    }
    Vec c2 = sub(a, y);
    if (double n2 = norm(c2); n2 > atol) {
      for (double& x : c2) x /= n2;
      cons.push_back(std::move(c2));
    }
  }
  auto feasible = [&](const Vec& v) {
    for (const Vec& c : cons)
      if (dot(c, v) > 1e-9) return false;
    return true;
  };

  std::vector<Vec> cand;
  Vec ab = sub(b, a);
  {
    Vec v = scaled(ab, 1.0 / norm(ab));
    cand.push_back(std::move(v));
  }
  for (const Facet& f : p.facets()) {
    bool at_b = std::abs(dot(f.normal, b) - f.offset) <= atol;
    bool at_a = std::abs(dot(f.normal, a) - f.offset) <= atol;
    if (at_b) cand.push_back(f.normal);
    if (at_a) cand.push_back(scaled(f.normal, -1.0));
  }
  if (p.dim() == 3) {
    int m = static_cast<int>(cons.size());
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        Vec cr = cross3(cons[i], cons[j]);
        double len = norm(cr);
        if (len < 1e-12) continue;
        for (double& x : cr) x /= len;
        cand.push_back(cr);
        cand.push_back(scaled(cr, -1.0));
      }
  } else if (p.dim() > 3) {
    // Sampled descent: project random starts onto the cone, then improve.
    for (int s = 0; s < 64; ++s) {
      CounterRng rng(0x5eedu, static_cast<std::uint64_t>(s));
      Vec v(p.dim());
      for (double& x : v) x = rng.next_gauss();
      double n0 = norm(v);
      if (n0 < 1e-12) continue;
      for (double& x : v) x /= n0;
      for (int it = 0; it < 200; ++it) {
        for (const Vec& c : cons) {
          double d = dot(c, v);
          if (d > 0.0) v = axpy(v, -d, c);
        }
        double nn = norm(v);
        if (nn < 1e-12) break;
        for (double& x : v) x /= nn;
      }
      if (norm(v) > 0.5 && feasible(v)) cand.push_back(v);
    }
  }

  StripResult out{std::numeric_limits<double>::infinity(), {}};
  for (const Vec& v : cand) {
    if (!feasible(v)) continue;
    double val = dot(ab, v);
    if (val < out.value) {
      out.value = val;
      out.normals.insert(out.normals.begin(), v);
    } else {
      out.normals.push_back(v);
    }
  }
  if (!std::isfinite(out.value)) return StripResult{-1.0, {}};
  if (out.normals.size() > 4) out.normals.resize(4);
  return out;
}

std::vector<DiametralChord> polytope_chords(const Polytope& p,
                                            const UnitDirection& u,
                                            double tol) {
  double d = ray_shoot(p.difference_hull(), u.coords());
  double atol = contact_tol_abs(p, tol);
  std::vector<std::pair<Vec, Vec>> raw;
  auto push = [&](Vec a, Vec b) {
    for (const auto& [ea, eb] : raw)
      if (dist(ea, a) <= 4.0 * atol && dist(eb, b) <= 4.0 * atol) return;
    raw.emplace_back(std::move(a), std::move(b));
  };
  for (const Vec& v : p.vertices()) {
    Vec fwd = axpy(v, d, u.coords());
    if (p.contains(fwd, 8.0 * tol)) push(v, fwd);
    Vec back = axpy(v, -d, u.coords());
    if (p.contains(back, 8.0 * tol)) push(back, v);
  }
  if (raw.empty()) {
    ChordWitness w = dir_diameter_lp(p, u);
    raw.emplace_back(w.a, w.b);
  }
  std::vector<DiametralChord> out;
  for (auto& [a, b] : raw) {
    StripResult strip = (p.dim() == 2) ? chord_strip_2d(p, a, b, atol)
                                       : chord_strip_nd(p, a, b, atol);
    if (strip.value < 0.0) continue;
    DiametralChord c;
    c.a = a;
    c.b = b;
    c.length = d;
    c.strip_width = strip.value;
    c.admissible_normals = std::move(strip.normals);
    out.push_back(std::move(c));
  }
  if (out.empty())
    throw std::logic_error("no admissible supporting pair for any chord");
  return out;
}

}  // namespace

double width(const Body& body, const UnitDirection& u) {
  if (const Polytope* p = std::get_if<Polytope>(&body)) {
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (const Vec& v : p->vertices()) {
      double t = dot(v, u.coords());
      hi = std::max(hi, t);
      lo = std::min(lo, t);
    }
    return hi - lo;
  }
  if (const Ellipsoid* e = std::get_if<Ellipsoid>(&body)) {
    double h2 = 0.0;
    const auto& a = e->semiaxes();
    for (std::size_t i = 0; i < a.size(); ++i)
      h2 += a[i] * a[i] * u[i] * u[i];
    return 2.0 * std::sqrt(h2);
  }
  if (const Ball* b = std::get_if<Ball>(&body)) return 2.0 * b->radius();
  const SlabBall& s = std::get<SlabBall>(body);
  double h = std::min(s.half_width(), 1.0);
  double u1 = std::abs(u[0]);
  if (u1 <= h) return 2.0;
  return 2.0 * (h * u1 + std::sqrt(1.0 - h * h) * std::sqrt(std::max(0.0, 1.0 - u1 * u1)));
}

double dir_diameter(const Body& body, const UnitDirection& u) {
  if (const Polytope* p = std::get_if<Polytope>(&body)) {
    // The hull triangulation need not be centrally symmetric, so evaluate at
    // a canonical sign to keep d(u) == d(-u) bitwise.
    return ray_shoot(p->difference_hull(), canonical_sign(u).coords());
  }
  if (const Ellipsoid* e = std::get_if<Ellipsoid>(&body)) {
    double s = 0.0;
    const auto& a = e->semiaxes();
    for (std::size_t i = 0; i < a.size(); ++i)
      s += u[i] * u[i] / (a[i] * a[i]);
    return 2.0 / std::sqrt(s);
  }
  if (const Ball* b = std::get_if<Ball>(&body)) return 2.0 * b->radius();
  const SlabBall& s = std::get<SlabBall>(body);
  double h = std::min(s.half_width(), 1.0);
  double u1 = std::abs(u[0]);
  return 2.0 * std::min(1.0, (u1 > 1e-300) ? h / u1 : 1.0);
}

ChordWitness dir_diameter_lp(const Polytope& p, const UnitDirection& u) {
  const auto& vs = p.vertices();
  int nv = static_cast<int>(vs.size());
  int n = p.dim();
  int cols = 2 * nv + 1;
  std::vector<std::vector<double>> a(n + 2, std::vector<double>(cols, 0.0));
  std::vector<double> b(n + 2, 0.0);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < nv; ++i) {
      a[k][i] = -vs[i][k];
      a[k][nv + i] = vs[i][k];
    }
    a[k][2 * nv] = -u[k];
  }
  for (int i = 0; i < nv; ++i) {
    a[n][i] = 1.0;
    a[n + 1][nv + i] = 1.0;
  }
  b[n] = 1.0;
  b[n + 1] = 1.0;
  std::vector<double> c(cols, 0.0);
  c[2 * nv] = 1.0;

  LpResult res = lp_maximize_eq(a, b, c);
  ChordWitness out;
  if (res.status != LpResult::Status::Optimal) {
    // Degenerate pivoting; fall back to the geometric route.
    out.length = ray_shoot(p.difference_hull(), u.coords());
    for (const Vec& v : vs) {
      Vec fwd = axpy(v, out.length, u.coords());
      if (p.contains(fwd, 8.0 * kContactTol)) {
        out.a = v;
        out.b = fwd;
        break;
      }
    }
    return out;
  }
  out.length = res.objective;
  Vec x(n, 0.0), y(n, 0.0);
  for (int i = 0; i < nv; ++i) {
    x = axpy(x, res.x[i], vs[i]);
    y = axpy(y, res.x[nv + i], vs[i]);
  }
  out.a = std::move(x);
  out.b = std::move(y);
  return out;
}

GlobalDiameter global_diameter(const Body& body) {
  GlobalDiameter out;
  if (const Polytope* p = std::get_if<Polytope>(&body)) {
    const auto& vs = p->vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        double d = dist(vs[i], vs[j]);
        if (d > out.value) {
          out.value = d;
          out.a = vs[i];
          out.b = vs[j];
        }
      }
    return out;
  }
  if (const Ellipsoid* e = std::get_if<Ellipsoid>(&body)) {
    const auto& ax = e->semiaxes();
    int k = static_cast<int>(
        std::max_element(ax.begin(), ax.end()) - ax.begin());
    Vec a(ax.size(), 0.0), b(ax.size(), 0.0);
    a[k] = ax[k];
    b[k] = -ax[k];
    return GlobalDiameter{2.0 * ax[k], std::move(a), std::move(b)};
  }
  if (const Ball* bl = std::get_if<Ball>(&body)) {
    Vec a(bl->center()), b(bl->center());
    a[0] += bl->radius();
    b[0] -= bl->radius();
    return GlobalDiameter{2.0 * bl->radius(), std::move(a), std::move(b)};
  }
  const SlabBall& s = std::get<SlabBall>(body);
  double h = std::min(s.half_width(), 1.0);
  Vec a(s.dim(), 0.0);
  a[0] = h;
  if (s.dim() >= 2) a[1] = std::sqrt(std::max(0.0, 1.0 - h * h));
  Vec b = scaled(a, -1.0);
  return GlobalDiameter{2.0, std::move(a), std::move(b)};
}

ThicknessResult thickness(const Body& body) {
  if (const Polytope* p = std::get_if<Polytope>(&body)) {
    if (p->dim() == 2) {
      // Rotating calipers: sweep edges, advance the antipodal vertex.
      const auto& vs = p->vertices();
      const auto& fs = p->facets();
      int m = static_cast<int>(vs.size());
      auto gap = [&](int f, int k) {
        return fs[f].offset - dot(fs[f].normal, vs[k]);
      };
      int j = 0;
      for (int k = 1; k < m; ++k)
        if (gap(0, k) > gap(0, j)) j = k;
      double best = std::numeric_limits<double>::infinity();
      int best_f = 0;
      int guard = 0;
      for (int i = 0; i < m; ++i) {
        while (gap(i, (j + 1) % m) > gap(i, j) + 1e-15 * p->scale()) {
          j = (j + 1) % m;
          if (++guard > 3 * m)
            throw std::logic_error("caliper pointer failed to settle");
        }
        if (gap(i, j) < best) {
          best = gap(i, j);
          best_f = i;
        }
      }
      return ThicknessResult{best,
                             canonical_sign(UnitDirection(fs[best_f].normal))};
    }
    double best = std::numeric_limits<double>::infinity();
    const Facet* arg = nullptr;
    for (const Facet& f : p->difference_hull().facets)
      if (f.offset < best) {
        best = f.offset;
        arg = &f;
      }
    return ThicknessResult{best, canonical_sign(UnitDirection(arg->normal))};
  }
  if (const Ellipsoid* e = std::get_if<Ellipsoid>(&body)) {
    const auto& ax = e->semiaxes();
    int k = static_cast<int>(
        std::min_element(ax.begin(), ax.end()) - ax.begin());
    return ThicknessResult{2.0 * ax[k],
                           UnitDirection::axis(static_cast<int>(ax.size()), k)};
  }
  if (const Ball* b = std::get_if<Ball>(&body))
    return ThicknessResult{2.0 * b->radius(),
                           UnitDirection::axis(b->dim(), 0)};
  const SlabBall& s = std::get<SlabBall>(body);
  return ThicknessResult{2.0 * std::min(s.half_width(), 1.0),
                         UnitDirection::axis(s.dim(), 0)};
}

LipschitzConstants lipschitz_constants(double delta, double omega) {
  if (!(omega > 0.0) || !(delta > 0.0))
    throw std::invalid_argument("thickness and diameter must be positive");
  if (omega > delta * (1.0 + 1e-12))
    throw std::invalid_argument("thickness exceeds diameter");
  double m = std::sqrt(std::max(0.0, delta * delta - omega * omega));
  return LipschitzConstants{m, (delta / omega) * m};
}

double s_of(const Body& body, const UnitDirection& u, double tol) {
  if (const Polytope* p = std::get_if<Polytope>(&body)) {
    ContactSet hi = contact_set(*p, u, tol);
    ContactSet lo = contact_set(*p, u.negated(), tol);
    double best = 0.0;
    for (const Vec& a : hi.points)
      for (const Vec& b : lo.points) best = std::max(best, dist(a, b));
    return best;
  }
  if (const Ellipsoid* e = std::get_if<Ellipsoid>(&body)) {
    double h2 = 0.0, n4 = 0.0;
    const auto& a = e->semiaxes();
    for (std::size_t i = 0; i < a.size(); ++i) {
      double ai2 = a[i] * a[i];
      h2 += ai2 * u[i] * u[i];
      n4 += ai2 * ai2 * u[i] * u[i];
    }
    return 2.0 * std::sqrt(n4 / h2);
  }
  if (const Ball* b = std::get_if<Ball>(&body)) return 2.0 * b->radius();
  return 2.0;  // slab-ball: contact points always lie on the unit sphere
}

double p_of(const Body& body, const UnitDirection& u, double tol) {
  double s = s_of(body, u, tol);
  double w = width(body, u);
  double rad = s * s - w * w;
  double guard = 1e-12 * std::max(1.0, s * s);
  if (rad < -guard)
    throw std::logic_error("contact spread fell below the width");
  return std::sqrt(std::max(0.0, rad));
}

std::vector<DiametralChord> diametral_chords(const Body& body,
                                             const UnitDirection& uu,
                                             double tol) {
  UnitDirection u = canonical_sign(uu);
  if (const Polytope* p = std::get_if<Polytope>(&body))
    return polytope_chords(*p, u, tol);

  double d = dir_diameter(body, u);
  DiametralChord c;
  c.length = d;
  if (const Ellipsoid* e = std::get_if<Ellipsoid>(&body)) {
    c.a = scaled(u.coords(), -0.5 * d);
    c.b = scaled(u.coords(), 0.5 * d);
    const auto& ax = e->semiaxes();
    Vec nu(ax.size());
    for (std::size_t i = 0; i < ax.size(); ++i)
      nu[i] = u[i] / (ax[i] * ax[i]);
    double len = norm(nu);
    for (double& x : nu) x /= len;
    c.strip_width = std::abs(dot(sub(c.b, c.a), nu));
    c.admissible_normals = {std::move(nu)};
    return {std::move(c)};
  }
  if (const Ball* b = std::get_if<Ball>(&body)) {
    c.a = axpy(b->center(), -b->radius(), u.coords());
    c.b = axpy(b->center(), b->radius(), u.coords());
    c.strip_width = d;
    c.admissible_normals = {u.coords()};
    return {std::move(c)};
  }
  const SlabBall& s = std::get<SlabBall>(body);
  double h = std::min(s.half_width(), 1.0);
  double u1 = std::abs(u[0]);
  double t = std::min(1.0, (u1 > 1e-300) ? h / u1 : 1.0);
  c.a = scaled(u.coords(), -t);
  c.b = scaled(u.coords(), t);
  if (u1 < h) {
    c.strip_width = 2.0;
    c.admissible_normals = {u.coords()};
  } else if (u1 > h) {
    Vec e1(s.dim(), 0.0);
    e1[0] = (u[0] >= 0.0) ? 1.0 : -1.0;
    c.strip_width = 2.0 * h;
    c.admissible_normals = {std::move(e1)};
  } else {
    // Chord ends at the ring; the cone spans the flat and spherical normals.
    Vec e1(s.dim(), 0.0);
    e1[0] = (u[0] >= 0.0) ? 1.0 : -1.0;
    c.strip_width = 2.0 * h;
    c.admissible_normals = {e1, u.coords()};
  }
  return {std::move(c)};
}

double r_of(const Body& body, const UnitDirection& u, double tol) {
  if (const Ellipsoid* e = std::get_if<Ellipsoid>(&body)) {
    double num = 0.0, den = 0.0;
    const auto& a = e->semiaxes();
    for (std::size_t i = 0; i < a.size(); ++i) {
      double ai2 = a[i] * a[i];
      num += u[i] * u[i] / ai2;
      den += u[i] * u[i] / (ai2 * ai2);
    }
    return dir_diameter(body, u) * num / std::sqrt(den);
  }
  if (const Ball* b = std::get_if<Ball>(&body)) return 2.0 * b->radius();
  if (const SlabBall* s = std::get_if<SlabBall>(&body)) {
    double h = std::min(s->half_width(), 1.0);
    return (std::abs(u[0]) >= h) ? 2.0 * h : 2.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (const DiametralChord& c : diametral_chords(body, u, tol))
    best = std::min(best, c.strip_width);
  return best;
}

double q_of(const Body& body, const UnitDirection& u, double tol) {
  double d = dir_diameter(body, u);
  double r = r_of(body, u, tol);
  double rad = d * d - r * r;
  double guard = 1e-12 * std::max(1.0, d * d);
  if (rad < -guard)
    throw std::logic_error("strip width exceeds the chord length");
  return d * std::sqrt(std::max(0.0, rad)) / r;
}

GenericityFlags genericity(const Polytope& p, const UnitDirection& u,
                           double tol) {
  GenericityFlags out;
  out.for_width = contact_set(p, u, tol).points.size() == 1 &&
                  contact_set(p, u.negated(), tol).points.size() == 1;
  Body body(p);
  auto chords = diametral_chords(body, u, tol);
  if (chords.size() == 1) {
    double atol = contact_tol_abs(p, tol);
    bool va = find_vertex(p, chords[0].a, atol) >= 0;
    bool vb = find_vertex(p, chords[0].b, atol) >= 0;
    out.for_diameter = (va != vb);
  }
  return out;
}

HatConstants hat_constants(const Polytope& p, int resolution) {
  Body body(p);
  HatConstants out;
  std::vector<UnitDirection> p_cands, q_cands, sweep;
  if (p.dim() == 2) {
    out.exact = true;
    for (const Facet& f : p.facets())
      p_cands.push_back(UnitDirection(f.normal));
    const auto& vs = p.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = 0; j < vs.size(); ++j) {
        if (i == j) continue;
        Vec d = sub(vs[i], vs[j]);
        if (norm(d) > 1e-12) q_cands.push_back(UnitDirection(std::move(d)));
      }
    for (const Facet& f : p.facets())
      q_cands.push_back(UnitDirection(f.normal));
    sweep = sweep_directions_2d(resolution);
  } else {
    out.exact = false;
    for (const Facet& f : p.facets())
      p_cands.push_back(UnitDirection(f.normal));
    for (const Facet& f : p.difference_hull().facets)
      p_cands.push_back(UnitDirection(f.normal));
    q_cands = p_cands;
    sweep = sample_directions(p.dim(), resolution, 9001);
  }

  for (const auto& u : p_cands) out.m_hat = std::max(out.m_hat, p_of(body, u));
  for (const auto& u : q_cands) out.n_hat = std::max(out.n_hat, q_of(body, u));
  for (const auto& u : sweep) {
    out.m_hat = std::max(out.m_hat, p_of(body, u));
    out.n_hat = std::max(out.n_hat, q_of(body, u));
  }

  // Suprema over generic directions: probe just off every candidate and keep
  // sweep points that pass the genericity test.
  auto probe = [&](const UnitDirection& u, bool width_side) {
    GenericityFlags g = genericity(p, u);
    if (width_side && g.for_width)
      out.m_hat_generic = std::max(out.m_hat_generic, p_of(body, u));
    if (!width_side && g.for_diameter)
      out.n_hat_generic = std::max(out.n_hat_generic, q_of(body, u));
  };
  if (p.dim() == 2) {
    for (const auto& u : p_cands)
      for (double da : {1e-7, -1e-7}) probe(rotate2(u, da), true);
    for (const auto& u : q_cands)
      for (double da : {1e-7, -1e-7}) probe(rotate2(u, da), false);
  }
  int cap = std::min<int>(static_cast<int>(sweep.size()), 512);
  for (int i = 0; i < cap; ++i) {
    probe(sweep[i], true);
    probe(sweep[i], false);
  }
  return out;
}

DirectionalSample profile_direction(const Body& body, const UnitDirection& u) {
  DirectionalSample s;
  s.w = width(body, u);
  s.d = dir_diameter(body, u);
  s.s = s_of(body, u);
  s.p = p_of(body, u);
  s.r = r_of(body, u);
  s.q = q_of(body, u);
  return s;
}

BodyStats body_stats(const Body& body) {
  GlobalDiameter gd = global_diameter(body);
  ThicknessResult th = thickness(body);
  return BodyStats{gd.value, th.value,
                   lipschitz_constants(gd.value, th.value), th.direction,
                   gd.a, gd.b};
}

UnitDirection canonical_sign(const UnitDirection& u) {
  for (int i = 0; i < u.dim(); ++i) {
    if (std::abs(u[i]) > 1e-12) {
      if (u[i] < 0.0) return u.negated();
      return u;
    }
  }
  return u;
}

}  // namespace widthfn
