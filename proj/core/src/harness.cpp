#include "widthfn/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "widthfn/version.hpp"

namespace widthfn {

namespace {

constexpr double kPi = std::numbers::pi;

double func_of(const Body& body, DeltaKind kind, const UnitDirection& u) {
  return kind == DeltaKind::Width ? width(body, u) : dir_diameter(body, u);
}

std::string body_id(const Body& body) {
  char buf[128];
  if (const Polytope* p = std::get_if<Polytope>(&body)) {
    std::snprintf(buf, sizeof(buf), "polytope-%dd-%zuv", p->dim(),
                  p->vertices().size());
    return buf;
  }
  if (const Ellipsoid* e = std::get_if<Ellipsoid>(&body)) {
    std::string s = "ellipsoid(";
    for (std::size_t i = 0; i < e->semiaxes().size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%s%g", i ? "," : "",
                    e->semiaxes()[i]);
      s += buf;
    }
    return s + ")";
  }
  if (const Ball* b = std::get_if<Ball>(&body)) {
    std::snprintf(buf, sizeof(buf), "ball-%dd(r=%g)", b->dim(), b->radius());
    return buf;
  }
  const SlabBall& s = std::get<SlabBall>(body);
  std::snprintf(buf, sizeof(buf), "slab-ball-%dd(h=%g)", s.dim(),
                s.half_width());
  return buf;
}

UnitDirection perturbed(const UnitDirection& u, double radius,
                        CounterRng& rng) {
  Vec t(u.dim());
  for (double& x : t) x = rng.next_gauss();
  t = axpy(t, -dot(t, u.coords()), u.coords());
  double len = norm(t);
  if (len < 1e-12) return u;
  for (double& x : t) x /= len;
  return geodesic_step(u, t, radius * rng.next_unit());
}

Vec tangent_2d(const UnitDirection& u) { return Vec{-u[1], u[0]}; }

UnitDirection rotated_2d(const UnitDirection& u, double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  return UnitDirection(Vec{c * u[0] - s * u[1], s * u[0] + c * u[1]});
}

}  // namespace

PairStats delta_ratios(const Body& body, const UnitDirection& u,
                       const UnitDirection& v, MetricMode mode) {
  double den = (mode == MetricMode::Projective) ? projective_distance(u, v)
                                                : euclid_min_distance(u, v);
  if (den < 1e-9)
    throw std::invalid_argument("directions are collinear within tolerance");
  PairStats s{u, v, den, 0.0, 0.0};
  s.delta_w = std::abs(width(body, u) - width(body, v)) / den;
  s.delta_d = std::abs(dir_diameter(body, u) - dir_diameter(body, v)) / den;
  return s;
}

VerificationReport verify_bounds(const Body& body, int pairs,
                                 std::uint64_t seed, double tol,
                                 MetricMode mode, double min_rho) {
  if (pairs < 1) throw std::invalid_argument("need at least one pair");
  if (!(min_rho > 0.0) || min_rho >= 1.0)
    throw std::invalid_argument("min_rho must lie in (0, 1)");
  auto t0 = std::chrono::steady_clock::now();

  VerificationReport r;
  r.body_id = body_id(body);
  r.seed = seed;
  r.pairs = pairs;
  r.metric = mode;
  r.min_rho = min_rho;

  BodyStats stats = body_stats(body);
  r.delta = stats.delta;
  r.omega = stats.omega;
  r.m = stats.lipschitz.m;
  r.n = stats.lipschitz.n;
  r.tol = (tol < 0.0) ? 1e-9 * stats.delta : tol;

  if (const Polytope* p = std::get_if<Polytope>(&body)) {
    HatConstants hc = hat_constants(*p);
    r.hat_available = true;
    r.hat_exact = hc.exact;
    r.m_hat = hc.m_hat;
    r.n_hat = hc.n_hat;
  }

  int dim = dimension(body);
  auto sampled = sample_pairs(dim, pairs, seed, r.min_rho);
  bool assert_bounds = (mode == MetricMode::Projective);
  auto record = [&](const UnitDirection& u, const UnitDirection& v,
                    const char* bound, double ratio, double value) {
    r.violating_pairs.push_back(
        BoundViolation{u.coords(), v.coords(), bound, ratio, value});
  };
  for (const DirectionPair& pr : sampled) {
    PairStats ps = delta_ratios(body, pr.u, pr.v, mode);
    r.max_delta_w = std::max(r.max_delta_w, ps.delta_w);
    r.max_delta_d = std::max(r.max_delta_d, ps.delta_d);
    if (!assert_bounds) continue;
    if (ps.delta_w > r.m + r.tol) {
      ++r.violations_m;
      record(pr.u, pr.v, "m", ps.delta_w, r.m);
    }
    if (ps.delta_d > r.n + r.tol) {
      ++r.violations_n;
      record(pr.u, pr.v, "n", ps.delta_d, r.n);
    }
    // Sampled (non-exact) hat values are lower estimates of the true sup, so
    // only the exactly-enumerated ones are safe to assert against.
    if (r.hat_available && r.hat_exact && ps.delta_w > r.m_hat + r.tol) {
      ++r.violations_m_hat;
      record(pr.u, pr.v, "m_hat", ps.delta_w, r.m_hat);
    }
    if (r.hat_available && r.hat_exact && ps.delta_d > r.n_hat + r.tol) {
      ++r.violations_n_hat;
      record(pr.u, pr.v, "n_hat", ps.delta_d, r.n_hat);
    }
  }

  r.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return r;
}

std::string report_json(const VerificationReport& r) {
  using ordered = nlohmann::ordered_json;
  ordered j;
  j["schema"] = kReportSchema;
  j["tool_version"] = kToolVersion;
  j["body"] = r.body_id;
  j["metric"] =
      (r.metric == MetricMode::Projective) ? "projective" : "euclidean-min";
  j["seed"] = r.seed;
  j["pairs"] = r.pairs;
  j["tolerances"] = ordered{{"bound_slack", r.tol}, {"min_rho", r.min_rho}};
  j["stats"] = ordered{{"delta", r.delta}, {"omega", r.omega}};
  ordered bounds;
  bounds["m"] = r.m;
  bounds["n"] = r.n;
  bounds["hat_available"] = r.hat_available;
  if (r.hat_available) {
    bounds["m_hat"] = r.m_hat;
    bounds["n_hat"] = r.n_hat;
    bounds["hat_exact"] = r.hat_exact;
  }
  j["bounds"] = std::move(bounds);
  j["max_ratios"] =
      ordered{{"delta_w", r.max_delta_w}, {"delta_d", r.max_delta_d}};
  j["violations"] = ordered{{"m", r.violations_m},
                            {"n", r.violations_n},
                            {"m_hat", r.violations_m_hat},
                            {"n_hat", r.violations_n_hat}};
  ordered viol = ordered::array();
  for (const BoundViolation& v : r.violating_pairs) {
    ordered item;
    item["bound"] = v.bound;
    item["ratio"] = v.ratio;
    item["bound_value"] = v.bound_value;
    item["u"] = v.u;
    item["v"] = v.v;
    viol.push_back(std::move(item));
  }
  j["violating_pairs"] = std::move(viol);
  j["runtime_seconds"] = r.runtime_seconds;
  return j.dump(2) + "\n";
}

double sup_delta_estimate(const Body& body, DeltaKind kind, int stages,
                          std::uint64_t seed) {
  if (stages < 1) throw std::invalid_argument("need at least one stage");
  int dim = dimension(body);
  auto ratio = [&](const UnitDirection& a, const UnitDirection& b) {
    double rho = projective_distance(a, b);
    // Below 1e-5 separation the function-value rounding (~1e-15) pollutes
    // the quotient beyond 1e-9, and a maximizer would chase that noise.
    if (rho < 1e-5) return -1.0;
    return std::abs(func_of(body, kind, a) - func_of(body, kind, b)) / rho;
  };

  UnitDirection bu = UnitDirection::axis(dim, 0);
  UnitDirection bv = UnitDirection::axis(dim, 1);
  double best = ratio(bu, bv);
  for (const DirectionPair& pr : sample_pairs(dim, 2048, seed, 1e-9)) {
    double q = ratio(pr.u, pr.v);
    if (q > best) {
      best = q;
      bu = pr.u;
      bv = pr.v;
    }
  }

  for (int s = 1; s <= stages; ++s) {
    // Halve the incumbent arc, keeping the better side.  The quotient over
    // the whole arc is a rho-weighted mean of the halves, so the better half
    // never loses ground.
    // The arc constructor rejects nearly coincident endpoints, and below
    // 1e-5 radians bisection cannot sharpen the quotient anyway.
    double sep = projective_distance(bu, bv);
    if (sep > 1e-5) {
      UnitDirection v2 =
          (dot(bu.coords(), bv.coords()) < 0.0) ? bv.negated() : bv;
      GeodesicArc arc(bu, v2);
      UnitDirection mid = arc.point(0.5);
      double r1 = ratio(bu, mid);
      double r2 = ratio(mid, v2);
      if (r1 >= r2) {
        bv = mid;
        best = std::max(best, r1);
      } else {
        bu = mid;
        bv = v2;
        best = std::max(best, r2);
      }
    }
    // Gaussian repositioning of both endpoints at the current scale; the
    // floor keeps proposals above the quotient resolution limit.
    double radius = std::max(projective_distance(bu, bv), 2e-5);
    for (int k = 0; k < 64; ++k) {
      CounterRng rng(seed ^ 0x51ab5eedULL,
                     static_cast<std::uint64_t>(s) * 1024 + k);
      UnitDirection ua = perturbed(bu, radius, rng);
      UnitDirection va = perturbed(bv, radius, rng);
      for (const auto& [cu, cv] :
           {std::pair{ua, va}, std::pair{ua, bv}, std::pair{bu, va}}) {
        double q = ratio(cu, cv);
        if (q > best) {
          best = q;
          bu = cu;
          bv = cv;
        }
      }
    }
    // A few fresh global pairs so an early bad incumbent cannot trap us.
    for (const DirectionPair& pr :
         sample_pairs(dim, 128, seed ^ (0x9e3700ULL + s), 1e-9)) {
      double q = ratio(pr.u, pr.v);
      if (q > best) {
        best = q;
        bu = pr.u;
        bv = pr.v;
      }
    }
  }
  return std::max(best, 0.0);
}

DerivativeEstimate derivative_estimate(const Body& body,
                                       const UnitDirection& u, DeltaKind kind,
                                       std::vector<double> meshes) {
  if (meshes.empty()) throw std::invalid_argument("need at least one mesh");
  for (std::size_t i = 1; i < meshes.size(); ++i)
    if (!(meshes[i] < meshes[i - 1]))
      throw std::invalid_argument("meshes must decrease strictly");
  if (meshes.back() < 1e-7)
    throw std::invalid_argument("smallest mesh must be at least 1e-7");

  int dim = dimension(body);
  double fu = func_of(body, kind, u);
  DerivativeEstimate est{u, kind, meshes, {}, 0.0};
  int orientations = (dim == 2) ? 1 : 64;
  for (double h : meshes) {
    double val = 0.0;
    for (int k = 0; k < orientations; ++k) {
      Vec t;
      if (dim == 2) {
        t = tangent_2d(u);
      } else {
        CounterRng rng(0xd417u, static_cast<std::uint64_t>(k));
        t.assign(dim, 0.0);
        for (double& x : t) x = rng.next_gauss();
        t = axpy(t, -dot(t, u.coords()), u.coords());
        double len = norm(t);
        if (len < 1e-12) continue;
        for (double& x : t) x /= len;
      }
      UnitDirection up = geodesic_step(u, t, 0.5 * h);
      UnitDirection um = geodesic_step(u, t, -0.5 * h);
      double fp = func_of(body, kind, up);
      double fm = func_of(body, kind, um);
      double rpm = projective_distance(up, um);
      if (rpm > 1e-13) val = std::max(val, std::abs(fp - fm) / rpm);
      double rp = projective_distance(up, u);
      if (rp > 1e-13) val = std::max(val, std::abs(fp - fu) / rp);
      double rm = projective_distance(um, u);
      if (rm > 1e-13) val = std::max(val, std::abs(fm - fu) / rm);
    }
    est.values.push_back(val);
  }
  std::size_t n = est.values.size();
  if (n >= 2) {
    // One-sided ratios dominate the max, so the mesh error is first order;
    // first-order Richardson on the two finest meshes cancels it.
    double h1 = meshes[n - 2], h2 = meshes[n - 1];
    double factor = h1 / h2;
    est.extrapolated = est.values[n - 1] +
                       (est.values[n - 1] - est.values[n - 2]) / (factor - 1.0);
  } else {
    est.extrapolated = est.values.back();
  }
  return est;
}

std::vector<SharpnessRow> sharpness_suite(const std::vector<double>& omegas) {
  std::vector<SharpnessRow> rows;
  for (double omega : omegas) {
    if (!(omega > 0.0) || omega > 2.0)
      throw std::invalid_argument("omega must lie in (0, 2]");
    double h = 0.5 * omega;
    Body body(SlabBall(h, 2));
    SharpnessRow row;
    row.omega = omega;
    row.width_expected = std::sqrt(std::max(0.0, 4.0 - omega * omega));
    row.diameter_expected = (2.0 / omega) * row.width_expected;
    row.width_deriv =
        derivative_estimate(body, UnitDirection::axis(2, 0), DeltaKind::Width)
            .extrapolated;
    UnitDirection critical(Vec{h, std::sqrt(std::max(0.0, 1.0 - h * h))});
    row.diameter_deriv =
        derivative_estimate(body, critical, DeltaKind::Diameter).extrapolated;
    rows.push_back(row);
  }
  return rows;
}

Polytope circumscribed_regular_polygon(double radius, int sides) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (sides < 3) throw std::invalid_argument("need at least three sides");
  double big = radius / std::cos(kPi / sides);
  std::vector<Vec> vs;
  for (int k = 0; k < sides; ++k) {
    double ang = kPi / sides + 2.0 * kPi * k / sides;
    vs.push_back(Vec{big * std::cos(ang), big * std::sin(ang)});
  }
  return Polytope(std::move(vs));
}

MonotoneReport monotone_approx_suite(const Ball& disc,
                                     const std::vector<int>& sides,
                                     std::uint64_t seed) {
  if (disc.dim() != 2)
    throw std::invalid_argument("approximation suite is 2-d only");
  if (norm(disc.center()) > 1e-12)
    throw std::invalid_argument("disc must be centered at the origin");
  for (std::size_t i = 1; i < sides.size(); ++i)
    if (!(sides[i] > sides[i - 1]))
      throw std::invalid_argument("side counts must increase");

  MonotoneReport rep{direction_at(2, seed, 0), {}};
  double target = 2.0 * disc.radius();  // s and r of the disc itself
  for (int m : sides) {
    Body poly(circumscribed_regular_polygon(disc.radius(), m));
    UnitDirection uj = rotated_2d(rep.u, 1.0 / (static_cast<double>(m) * m));
    MonotoneRow row;
    row.sides = m;
    row.w_at_u = width(poly, rep.u);
    row.s_at_uj = s_of(poly, uj);
    row.r_at_uj = r_of(poly, uj);
    row.s_diff = row.s_at_uj - target;
    row.r_diff = row.r_at_uj - target;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace widthfn
