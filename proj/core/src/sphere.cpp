#include "widthfn/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace widthfn {

namespace {

constexpr double kUnitTol = 1e-12;

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

UnitDirection::UnitDirection(Vec v) : v_(std::move(v)) {
  if (v_.size() < 2) throw std::invalid_argument("direction needs dim >= 2");
  double n = norm(v_);
  if (!(n > 0.0) || !std::isfinite(n))
    throw std::invalid_argument("cannot normalize zero or non-finite vector");
  if (std::abs(n - 1.0) > kUnitTol)
    for (double& x : v_) x /= n;
}

UnitDirection UnitDirection::negated() const {
  Vec w(v_);
  for (double& x : w) x = -x;
  return UnitDirection(std::move(w));
}

UnitDirection UnitDirection::axis(int dim, int k) {
  Vec v(dim, 0.0);
  v.at(k) = 1.0;
  return UnitDirection(std::move(v));
}

double projective_distance(const UnitDirection& u, const UnitDirection& v) {
  if (u.dim() != v.dim())
    throw std::invalid_argument("dimension mismatch in projective_distance");
  double c = std::abs(dot(u.coords(), v.coords()));
  if (c <= 0.9) return std::acos(c);
  // Nearly collinear pairs: arccos near 1 loses half the significant digits
  // to the dot-product rounding, while the chordal route subtracts nearby
  // coordinates exactly and keeps full relative precision.
  double d = euclid_min_distance(u, v);
  return 2.0 * std::asin(std::clamp(0.5 * d, 0.0, 1.0));
}

double euclid_min_distance(const UnitDirection& u, const UnitDirection& v) {
  return std::min(dist(u.coords(), v.coords()),
                  dist(u.coords(), v.negated().coords()));
}

GeodesicArc::GeodesicArc(UnitDirection a, UnitDirection b)
    : a_(std::move(a)), b_(std::move(b)) {
  double c = dot(a_.coords(), b_.coords());
  if (c > 1.0 - kUnitTol)
    throw std::invalid_argument("geodesic endpoints coincide");
  if (c < -1.0 + kUnitTol)
    throw std::invalid_argument("geodesic endpoints are antipodal");
  angle_ = std::acos(std::clamp(c, -1.0, 1.0));
}

UnitDirection GeodesicArc::point(double t) const {
  double sa = std::sin(angle_);
  double ca = std::sin((1.0 - t) * angle_) / sa;
  double cb = std::sin(t * angle_) / sa;
  return UnitDirection(axpy(scaled(a_.coords(), ca), cb, b_.coords()));
}

Vec tangent_toward(const UnitDirection& u, const UnitDirection& v) {
  double c = dot(u.coords(), v.coords());
  Vec t = axpy(v.coords(), -c, u.coords());
  double n = norm(t);
  if (!(n > kUnitTol))
    throw std::invalid_argument("tangent undefined for collinear directions");
  for (double& x : t) x /= n;
  return t;
}

UnitDirection geodesic_step(const UnitDirection& u, const Vec& t,
                            double angle) {
  return UnitDirection(
      axpy(scaled(u.coords(), std::cos(angle)), std::sin(angle), t));
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t index) {
  state = mix64(seed ^ mix64(index * 0x9e3779b97f4a7c15ULL + 0x6a09e667f3bcc909ULL));
}

std::uint64_t CounterRng::next_u64() {
  state = mix64(state);
  return state;
}

double CounterRng::next_unit() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double CounterRng::next_symmetric() { return 2.0 * next_unit() - 1.0; }

double CounterRng::next_gauss() {
  if (have_spare) {
    have_spare = false;
    return spare;
  }
  double u1 = next_unit();
  double u2 = next_unit();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * std::numbers::pi * u2;
  spare = r * std::sin(a);
  have_spare = true;
  return r * std::cos(a);
}

UnitDirection direction_at(int dim, std::uint64_t seed, std::uint64_t index) {
  CounterRng rng(seed, index);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec v(dim);
    for (double& x : v) x = rng.next_gauss();
    if (norm(v) > 1e-8) return UnitDirection(std::move(v));
  }
  throw std::runtime_error("direction sampling failed to produce a usable vector");
}

std::vector<UnitDirection> sample_directions(int dim, int count,
                                             std::uint64_t seed) {
  std::vector<UnitDirection> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i)
    out.push_back(direction_at(dim, seed, static_cast<std::uint64_t>(i)));
  return out;
}

std::vector<DirectionPair> sample_pairs(int dim, int count, std::uint64_t seed,
                                        double min_rho) {
  std::vector<DirectionPair> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    std::uint64_t base = 2 * static_cast<std::uint64_t>(i);
    UnitDirection u = direction_at(dim, seed, base);
    UnitDirection v = direction_at(dim, seed, base + 1);
    // Deterministic redraw stream for the rare too-close partner.
    for (std::uint64_t k = 0; projective_distance(u, v) < min_rho; ++k) {
      v = direction_at(dim, seed ^ 0xd1342543de82ef95ULL,
                       base * 64 + (k % 64));
      if (k > 256)
        throw std::runtime_error("sample_pairs cannot satisfy min_rho");
    }
    out.push_back(DirectionPair{std::move(u), std::move(v)});
  }
  return out;
}

std::vector<UnitDirection> sweep_directions_2d(int count) {
  // Golden-angle sequence on [0, pi): prefixes are themselves low-discrepancy,
  // so enlarging the sweep only adds candidates.
  static const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  std::vector<UnitDirection> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    double f = std::fmod(static_cast<double>(k) * golden, 1.0);
    double a = f * std::numbers::pi;
    out.push_back(UnitDirection(Vec{std::cos(a), std::sin(a)}));
  }
  return out;
}

}  // namespace widthfn
