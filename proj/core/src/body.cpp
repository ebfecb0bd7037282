#include "widthfn/body.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace widthfn {

namespace {

using nlohmann::json;

Vec to_vec(const json& arr, const char* what) {
  if (!arr.is_array() || arr.empty())
    throw std::invalid_argument(std::string(what) + " must be a non-empty array");
  Vec v;
  for (const auto& x : arr) {
    if (!x.is_number())
      throw std::invalid_argument(std::string(what) + " must contain numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

std::vector<Vec> pairwise_differences(const std::vector<Vec>& v) {
  std::vector<Vec> out;
  out.reserve(v.size() * v.size());
  for (const Vec& a : v)
    for (const Vec& b : v) out.push_back(sub(a, b));
  return out;
}

double angle_of(const Vec& v) {
  double a = std::atan2(v[1], v[0]);
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  return a;
}

}  // namespace

Polytope::Polytope(std::vector<Vec> vertices) {
  if (vertices.empty()) throw std::invalid_argument("polytope needs vertices");
  own_ = convex_hull(vertices);
  diff_ = convex_hull(pairwise_differences(own_.vertices));
  scale_ = 0.0;
  for (const Vec& v : own_.vertices) scale_ = std::max(scale_, norm(v));
}

bool Polytope::contains(const Vec& x, double tol) const {
  for (const Facet& f : own_.facets)
    if (dot(f.normal, x) > f.offset + tol * scale_) return false;
  return true;
}

Ellipsoid::Ellipsoid(std::vector<double> semiaxes)
    : semiaxes_(std::move(semiaxes)) {
  if (semiaxes_.size() < 2)
    throw std::invalid_argument("ellipsoid needs dim >= 2");
  for (double a : semiaxes_)
    if (!(a > 0.0) || !std::isfinite(a))
      throw std::invalid_argument("ellipsoid semiaxes must be positive");
}

Ball::Ball(double radius, Vec center)
    : radius_(radius), center_(std::move(center)) {
  if (!(radius_ > 0.0) || !std::isfinite(radius_))
    throw std::invalid_argument("ball radius must be positive");
  if (center_.size() < 2) throw std::invalid_argument("ball needs dim >= 2");
}

SlabBall::SlabBall(double half_width, int dim)
    : half_width_(half_width), dim_(dim) {
  if (!(half_width_ > 0.0) || !std::isfinite(half_width_))
    throw std::invalid_argument("slab half-width must be positive");
  if (dim_ < 2) throw std::invalid_argument("slab_ball needs dim >= 2");
}

int dimension(const Body& body) {
  return std::visit([](const auto& b) { return b.dim(); }, body);
}

double body_scale(const Body& body) {
  struct V {
    double operator()(const Polytope& p) const { return p.scale(); }
    double operator()(const Ellipsoid& e) const {
      return *std::max_element(e.semiaxes().begin(), e.semiaxes().end());
    }
    double operator()(const Ball& b) const {
      return norm(b.center()) + b.radius();
    }
    double operator()(const SlabBall&) const { return 1.0; }
  };
  return std::visit(V{}, body);
}

Body parse_body(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("invalid body JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw std::invalid_argument("body JSON needs a string \"type\" field");
  std::string type = j["type"].get<std::string>();

  if (type == "polytope") {
    if (!j.contains("vertices") || !j["vertices"].is_array() ||
        j["vertices"].empty())
      throw std::invalid_argument("polytope needs a \"vertices\" array");
    std::vector<Vec> verts;
    for (const auto& row : j["vertices"]) verts.push_back(to_vec(row, "vertex"));
    std::size_t d = verts[0].size();
    if (d < 2) throw std::invalid_argument("polytope dimension must be >= 2");
    for (const Vec& v : verts)
      if (v.size() != d)
        throw std::invalid_argument("polytope vertices have mixed dimensions");
    return Polytope(std::move(verts));
  }
  if (type == "ellipsoid") {
    if (!j.contains("semiaxes"))
      throw std::invalid_argument("ellipsoid needs \"semiaxes\"");
    Vec a = to_vec(j["semiaxes"], "semiaxes");
    return Ellipsoid(std::vector<double>(a.begin(), a.end()));
  }
  if (type == "ball") {
    if (!j.contains("radius") || !j["radius"].is_number())
      throw std::invalid_argument("ball needs a numeric \"radius\"");
    if (!j.contains("center"))
      throw std::invalid_argument("ball needs a \"center\" array");
    return Ball(j["radius"].get<double>(), to_vec(j["center"], "center"));
  }
  if (type == "slab_ball") {
    if (!j.contains("half_width") || !j["half_width"].is_number())
      throw std::invalid_argument("slab_ball needs a numeric \"half_width\"");
    if (!j.contains("dim") || !j["dim"].is_number_integer())
      throw std::invalid_argument("slab_ball needs an integer \"dim\"");
    return SlabBall(j["half_width"].get<double>(), j["dim"].get<int>());
  }
  throw std::invalid_argument("unknown body type: " + type);
}

ContactSet contact_set(const Polytope& p, const UnitDirection& u, double tol) {
  double best = -1e300;
  for (const Vec& v : p.vertices()) best = std::max(best, dot(v, u.coords()));
  ContactSet out;
  for (int i = 0; i < static_cast<int>(p.vertices().size()); ++i) {
    if (dot(p.vertices()[i], u.coords()) >= best - tol * p.scale()) {
      out.points.push_back(p.vertices()[i]);
      out.vertex_ids.push_back(i);
    }
  }
  return out;
}

SupportResult support(const Body& body, const UnitDirection& u, double tol) {
  if (dimension(body) != u.dim())
    throw std::invalid_argument("direction dimension does not match body");
  struct V {
    const UnitDirection& u;
    double tol;

    SupportResult operator()(const Polytope& p) const {
      SupportResult r;
      r.contact = contact_set(p, u, tol);
      r.value = dot(r.contact.points[0], u.coords());
      for (const Vec& pt : r.contact.points)
        r.value = std::max(r.value, dot(pt, u.coords()));
      return r;
    }

    SupportResult operator()(const Ellipsoid& e) const {
      double h2 = 0.0;
      const auto& a = e.semiaxes();
      for (std::size_t i = 0; i < a.size(); ++i)
        h2 += a[i] * a[i] * u[i] * u[i];
      double h = std::sqrt(h2);
      Vec contact(a.size());
      for (std::size_t i = 0; i < a.size(); ++i)
        contact[i] = a[i] * a[i] * u[i] / h;
      return SupportResult{h, ContactSet{{std::move(contact)}, {}}};
    }

    SupportResult operator()(const Ball& b) const {
      return SupportResult{
          dot(b.center(), u.coords()) + b.radius(),
          ContactSet{{axpy(b.center(), b.radius(), u.coords())}, {}}};
    }

    SupportResult operator()(const SlabBall& s) const {
      int n = s.dim();
      double h = s.half_width();
      if (h >= 1.0)  // slab inactive
        return SupportResult{1.0, ContactSet{{u.coords()}, {}}};
      double u1 = u[0];
      Vec rest(u.coords());
      rest[0] = 0.0;
      double rn = norm(rest);
      if (std::abs(u1) <= h)
        return SupportResult{1.0, ContactSet{{u.coords()}, {}}};
      double ring = std::sqrt(1.0 - h * h);
      double sign = (u1 >= 0.0) ? 1.0 : -1.0;
      if (rn < 1e-14) {
        // Supporting hyperplane touches a whole disc; witnesses are its
        // center and the extreme ring points on the coordinate axes.
        ContactSet c;
        Vec center(n, 0.0);
        center[0] = sign * h;
        c.points.push_back(center);
        for (int j = 1; j < n; ++j)
          for (double sgn : {1.0, -1.0}) {
            Vec p(n, 0.0);
            p[0] = sign * h;
            p[j] = sgn * ring;
            c.points.push_back(p);
          }
        return SupportResult{h * std::abs(u1), std::move(c)};
      }
      Vec contact = scaled(rest, ring / rn);
      contact[0] = sign * h;
      return SupportResult{h * std::abs(u1) + ring * rn, {{std::move(contact)}, {}}};
    }
  };
  return std::visit(V{u, tol}, body);
}

bool AngleInterval::contains(double angle, double tol) const {
  for (double shift : {-2.0 * std::numbers::pi, 0.0, 2.0 * std::numbers::pi}) {
    double a = angle + shift;
    if (a >= lo - tol && a <= hi + tol) return true;
  }
  return false;
}

AngleInterval normal_cone_2d(const Polytope& p, int vertex_id) {
  if (p.dim() != 2)
    throw std::invalid_argument("normal_cone_2d needs a 2-d polytope");
  int m = static_cast<int>(p.vertices().size());
  if (vertex_id < 0 || vertex_id >= m)
    throw std::invalid_argument("vertex id out of range");
  const Facet& incoming = p.facets()[(vertex_id + m - 1) % m];
  const Facet& outgoing = p.facets()[vertex_id];
  double lo = angle_of(incoming.normal);
  double hi = angle_of(outgoing.normal);
  while (hi < lo) hi += 2.0 * std::numbers::pi;
  return AngleInterval{lo, hi};
}

Polytope difference_body(const Polytope& p) {
  std::vector<Vec> diff;
  for (const Vec& a : p.vertices())
    for (const Vec& b : p.vertices()) diff.push_back(sub(a, b));
  return Polytope(std::move(diff));
}

}  // namespace widthfn
