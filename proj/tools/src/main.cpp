// Command-line front end: body analysis, directional profiles, bound
// verification, point-diameter maps, boundary continuity classification, and
// the built-in worked examples.
//
// Exit codes: 0 success / no violation, 1 bound violation, 2 input error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "widthfn/body.hpp"
#include "widthfn/harness.hpp"
#include "widthfn/metrics.hpp"
#include "widthfn/point_diameter.hpp"
#include "widthfn/sphere.hpp"
#include "widthfn/version.hpp"

namespace {

using widthfn::Body;
using widthfn::DeltaKind;
using widthfn::UnitDirection;
using widthfn::Vec;
using ordered = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;

struct Config {
  std::uint64_t seed = 42;
  int samples = 4096;
  int pairs = 100000;
  std::string metric = "rho";
  std::vector<std::string> tol_flags;
  std::string output;
  std::string format;  // empty = per-command default
};

const std::map<std::string, double> kDefaultTols = {
    {"contact", widthfn::kContactTol},
    {"verify", -1.0},  // negative = scale 1e-9 by the diameter
    {"min_rho", 1e-6},
    {"boundary", 1e-6},
    {"chord", widthfn::kContactTol},
};

std::map<std::string, double> parse_tols(const std::vector<std::string>& fl) {
  std::map<std::string, double> tols(kDefaultTols);
  for (const std::string& f : fl) {
    auto eq = f.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("tolerance must be NAME=VALUE: " + f);
    std::string name = f.substr(0, eq);
    if (!kDefaultTols.count(name))
      throw std::invalid_argument("unknown tolerance name: " + name);
    try {
      tols[name] = std::stod(f.substr(eq + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad tolerance value in: " + f);
    }
  }
  return tols;
}

Body load_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open body file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return widthfn::parse_body(ss.str());
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output: " + cfg.output);
  out << text;
}

std::string pick_format(const Config& cfg, const std::string& fallback) {
  if (cfg.format.empty()) return fallback;
  if (cfg.format != "csv" && cfg.format != "json")
    throw std::invalid_argument("format must be csv or json");
  return cfg.format;
}

ordered tol_json(const std::map<std::string, double>& tols) {
  ordered t;
  for (const auto& [k, v] : tols) t[k] = v;
  return t;
}

double func_of(const Body& body, DeltaKind kind, const UnitDirection& u) {
  return kind == DeltaKind::Width ? widthfn::width(body, u)
                                  : widthfn::dir_diameter(body, u);
}

// Difference-quotient limit along the geodesic leaving `at` toward `toward`,
// extrapolated from two one-sided meshes.
double geodesic_limit(const Body& body, DeltaKind kind, const UnitDirection& at,
                      const UnitDirection& toward) {
  Vec t = widthfn::tangent_toward(at, toward);
  double f0 = func_of(body, kind, at);
  auto ratio = [&](double h) {
    UnitDirection uh = widthfn::geodesic_step(at, t, h);
    return std::abs(func_of(body, kind, uh) - f0) /
           widthfn::projective_distance(at, uh);
  };
  double v1 = ratio(1e-4), v2 = ratio(1e-5);
  return v2 + (v2 - v1) / 9.0;
}

int cmd_analyze(const std::string& body_file, const Config& cfg) {
  Body body = load_body(body_file);
  auto tols = parse_tols(cfg.tol_flags);
  widthfn::BodyStats st = widthfn::body_stats(body);

  ordered j;
  j["schema"] = widthfn::kReportSchema;
  j["tool_version"] = widthfn::kToolVersion;
  j["command"] = "analyze";
  j["seed"] = cfg.seed;
  j["tolerances"] = tol_json(tols);
  j["delta"] = st.delta;
  j["omega"] = st.omega;
  j["m"] = st.lipschitz.m;
  j["n"] = st.lipschitz.n;
  j["omega_direction"] = st.omega_direction.coords();
  j["diameter_chord"] = ordered{{"a", st.diameter_a},
                                {"b", st.diameter_b},
                                {"length", st.delta}};
  if (const widthfn::Polytope* p = std::get_if<widthfn::Polytope>(&body)) {
    widthfn::HatConstants hc = widthfn::hat_constants(*p);
    j["hat"] = ordered{{"available", true},
                       {"exact", hc.exact},
                       {"m_hat", hc.m_hat},
                       {"n_hat", hc.n_hat},
                       {"m_hat_generic", hc.m_hat_generic},
                       {"n_hat_generic", hc.n_hat_generic}};
  } else {
    j["hat"] = ordered{{"available", false}};
  }
  emit(cfg, j.dump(2) + "\n");
  return 0;
}

int cmd_profile(const std::string& body_file, const Config& cfg) {
  Body body = load_body(body_file);
  auto tols = parse_tols(cfg.tol_flags);
  int dim = widthfn::dimension(body);
  auto dirs = widthfn::sample_directions(dim, cfg.samples, cfg.seed);

  std::string text;
  for (int i = 0; i < dim; ++i)
    text += (i ? ",u_" : "u_") + std::to_string(i + 1);
  text += ",w,d,s,p,r,q\n";
  for (const UnitDirection& u : dirs) {
    for (int i = 0; i < dim; ++i) {
      text += fmt17(u[i]);
      text += ',';
    }
    text += fmt17(widthfn::width(body, u)) + ',';
    text += fmt17(widthfn::dir_diameter(body, u)) + ',';
    text += fmt17(widthfn::s_of(body, u, tols["contact"])) + ',';
    text += fmt17(widthfn::p_of(body, u, tols["contact"])) + ',';
    text += fmt17(widthfn::r_of(body, u, tols["chord"])) + ',';
    text += fmt17(widthfn::q_of(body, u, tols["chord"])) + '\n';
  }
  emit(cfg, text);
  return 0;
}

int cmd_verify(const std::string& body_file, const Config& cfg) {
  Body body = load_body(body_file);
  auto tols = parse_tols(cfg.tol_flags);
  widthfn::MetricMode mode = (cfg.metric == "euclid-min")
                                 ? widthfn::MetricMode::EuclidMin
                                 : widthfn::MetricMode::Projective;
  widthfn::VerificationReport rep = widthfn::verify_bounds(
      body, cfg.pairs, cfg.seed, tols["verify"], mode, tols["min_rho"]);
  // Fold the refined sup estimates into the reported maxima.
  rep.max_delta_w =
      std::max(rep.max_delta_w,
               widthfn::sup_delta_estimate(body, DeltaKind::Width, 12, cfg.seed));
  rep.max_delta_d = std::max(
      rep.max_delta_d,
      widthfn::sup_delta_estimate(body, DeltaKind::Diameter, 12, cfg.seed));
  emit(cfg, widthfn::report_json(rep));
  long total = rep.violations_m + rep.violations_n +
               (rep.hat_exact ? rep.violations_m_hat + rep.violations_n_hat
                              : 0);
  return total > 0 ? 1 : 0;
}

int cmd_ekmap(const std::string& body_file, const Config& cfg,
              widthfn::GridBounds bounds, bool bounds_set, int nx, int ny) {
  Body body = load_body(body_file);
  if (widthfn::dimension(body) != 2)
    throw std::invalid_argument("point-diameter maps require a 2-d body");
  if (!bounds_set) {
    double delta = widthfn::global_diameter(body).value;
    bounds = widthfn::GridBounds{-2.0 * delta, 2.0 * delta, -2.0 * delta,
                                 2.0 * delta};
  }
  widthfn::EkGrid grid = widthfn::ek_grid(body, bounds, nx, ny);
  std::string fmt = pick_format(cfg, "csv");
  if (fmt == "csv") {
    std::ostringstream out;
    widthfn::write_ek_csv(grid, out);
    emit(cfg, out.str());
  } else {
    ordered j;
    j["schema"] = widthfn::kReportSchema;
    j["tool_version"] = widthfn::kToolVersion;
    j["command"] = "ekmap";
    j["bounds"] = ordered{{"xmin", bounds.xmin},
                          {"xmax", bounds.xmax},
                          {"ymin", bounds.ymin},
                          {"ymax", bounds.ymax}};
    j["nx"] = nx;
    j["ny"] = ny;
    j["values"] = grid.values;
    emit(cfg, j.dump(2) + "\n");
  }
  return 0;
}

std::vector<Vec> boundary_points(const Body& body, int count) {
  if (const widthfn::Polytope* p = std::get_if<widthfn::Polytope>(&body)) {
    const auto& vs = p->vertices();
    int m = static_cast<int>(vs.size());
    std::vector<double> cum(m + 1, 0.0);
    for (int i = 0; i < m; ++i)
      cum[i + 1] = cum[i] + widthfn::dist(vs[i], vs[(i + 1) % m]);
    std::vector<Vec> out;
    for (int k = 0; k < count; ++k) {
      double s = cum[m] * k / count;
      int e = 0;
      while (e + 1 < m && cum[e + 1] <= s) ++e;
      double t = (s - cum[e]) / (cum[e + 1] - cum[e]);
      out.push_back(widthfn::axpy(vs[e], t,
                                  widthfn::sub(vs[(e + 1) % m], vs[e])));
    }
    return out;
  }
  const widthfn::Ball& b = std::get<widthfn::Ball>(body);
  std::vector<Vec> out;
  for (int k = 0; k < count; ++k) {
    double a = 2.0 * kPi * k / count;
    out.push_back(Vec{b.center()[0] + b.radius() * std::cos(a),
                      b.center()[1] + b.radius() * std::sin(a)});
  }
  return out;
}

int cmd_continuity(const std::string& body_file, const Config& cfg,
                   int boundary_samples) {
  Body body = load_body(body_file);
  auto tols = parse_tols(cfg.tol_flags);
  bool polygon = std::holds_alternative<widthfn::Polytope>(body);
  bool disc = std::holds_alternative<widthfn::Ball>(body);
  if (widthfn::dimension(body) != 2 || (!polygon && !disc))
    throw std::invalid_argument(
        "continuity classification needs a 2-d polytope or a disc");

  auto points = boundary_points(body, boundary_samples);
  std::string fmt = pick_format(cfg, "csv");
  if (fmt == "csv") {
    std::string text = "x,y,e,farthest,gap,continuous\n";
    for (const Vec& o : points) {
      widthfn::ContinuityVerdict v =
          widthfn::continuity_check(body, o, tols["boundary"]);
      text += fmt17(o[0]) + ',' + fmt17(o[1]) + ',' + fmt17(v.e_value) + ',' +
              fmt17(v.farthest_value) + ',' + fmt17(v.gap) + ',' +
              (v.continuous ? "1" : "0") + '\n';
    }
    emit(cfg, text);
  } else {
    ordered arr = ordered::array();
    for (const Vec& o : points) {
      widthfn::ContinuityVerdict v =
          widthfn::continuity_check(body, o, tols["boundary"]);
      arr.push_back(ordered{{"o", v.o},
                            {"e", v.e_value},
                            {"farthest", v.farthest_value},
                            {"gap", v.gap},
                            {"continuous", v.continuous}});
    }
    ordered j;
    j["schema"] = widthfn::kReportSchema;
    j["tool_version"] = widthfn::kToolVersion;
    j["command"] = "continuity";
    j["seed"] = cfg.seed;
    j["tolerances"] = tol_json(tols);
    j["verdicts"] = std::move(arr);
    emit(cfg, j.dump(2) + "\n");
  }
  return 0;
}

struct ExampleRow {
  std::string name, quantity;
  double computed, expected, tolerance;
  bool pass;
};

int cmd_examples(const Config& cfg) {
  std::vector<ExampleRow> rows;
  auto add = [&](std::string name, std::string qty, double got, double want,
                 double tol) {
    rows.push_back(ExampleRow{std::move(name), std::move(qty), got, want, tol,
                              std::abs(got - want) <= tol});
  };

  {  // right triangle with legs 3 and 4
    Body tri(widthfn::Polytope({{0.0, 0.0}, {5.0, 0.0}, {3.2, 2.4}}));
    double sup_w = widthfn::sup_delta_estimate(tri, DeltaKind::Width, 12, 42);
    double sup_d =
        widthfn::sup_delta_estimate(tri, DeltaKind::Diameter, 12, 42);
    add("triangle-3-4-5", "sup_delta_w", sup_w, 4.0, 0.01 * 4.0);
    add("triangle-3-4-5", "sup_delta_d", sup_d, 20.0 / 3.0, 0.01 * 20.0 / 3.0);
  }

  for (const std::vector<double>& a :
       {std::vector<double>{1.0, 2.0}, std::vector<double>{1.0, 2.0, 3.0}}) {
    int n = static_cast<int>(a.size());
    std::vector<Vec> corners;
    for (int mask = 0; mask < (1 << n); ++mask) {
      Vec v(n);
      for (int i = 0; i < n; ++i) v[i] = (mask >> i & 1) ? a[i] : 0.0;
      corners.push_back(std::move(v));
    }
    Body box(widthfn::Polytope(std::move(corners)));
    double norm_a = widthfn::norm(a);
    double m = std::sqrt(norm_a * norm_a - 1.0);  // shortest edge is 1
    UnitDirection e1 = UnitDirection::axis(n, 0);
    UnitDirection diag(a);
    std::string name = (n == 2) ? "box-1x2" : "box-1x2x3";
    add(name, "geodesic_delta_w_at_e1",
        geodesic_limit(box, DeltaKind::Width, e1, diag), m, 0.01 * m);
    double nn = norm_a * m;
    add(name, "geodesic_delta_d_at_diag",
        geodesic_limit(box, DeltaKind::Diameter, diag, e1), nn, 0.01 * nn);
  }

  {  // ellipse semiaxes 2 and 1: six closed forms over 100 angles
    double a = 2.0, b = 1.0;
    Body ell(widthfn::Ellipsoid({a, b}));
    double dev_w = 0, dev_d = 0, dev_s = 0, dev_p = 0, dev_r = 0, dev_q = 0;
    for (int k = 0; k < 100; ++k) {
      double al = kPi * k / 100.0;
      double c = std::cos(al), s = std::sin(al);
      UnitDirection u(Vec{c, s});
      double q1 = a * a * c * c + b * b * s * s;
      double q2 = a * a * s * s + b * b * c * c;
      double q4 = a * a * a * a * c * c + b * b * b * b * s * s;
      double q4t = a * a * a * a * s * s + b * b * b * b * c * c;
      double w_f = 2.0 * std::sqrt(q1);
      double d_f = 2.0 * a * b / std::sqrt(q2);
      double s_f = 2.0 * std::sqrt(q4 / q1);
      double p_f = std::abs((a * a - b * b) * std::sin(2.0 * al)) /
                   std::sqrt(q1);
      double r_f = 2.0 * a * b * std::sqrt(q2 / q4t);
      double q_f = a * b * std::abs((a * a - b * b) * std::sin(2.0 * al)) /
                   std::pow(q2, 1.5);
      dev_w = std::max(dev_w, std::abs(widthfn::width(ell, u) - w_f));
      dev_d = std::max(dev_d, std::abs(widthfn::dir_diameter(ell, u) - d_f));
      dev_s = std::max(dev_s, std::abs(widthfn::s_of(ell, u) - s_f));
      dev_p = std::max(dev_p, std::abs(widthfn::p_of(ell, u) - p_f));
      dev_r = std::max(dev_r, std::abs(widthfn::r_of(ell, u) - r_f));
      dev_q = std::max(dev_q, std::abs(widthfn::q_of(ell, u) - q_f));
    }
    add("ellipse-2-1", "max_dev_w", dev_w, 0.0, 1e-9);
    add("ellipse-2-1", "max_dev_d", dev_d, 0.0, 1e-9);
    add("ellipse-2-1", "max_dev_s", dev_s, 0.0, 1e-9);
    add("ellipse-2-1", "max_dev_p", dev_p, 0.0, 1e-9);
    add("ellipse-2-1", "max_dev_r", dev_r, 0.0, 1e-9);
    add("ellipse-2-1", "max_dev_q", dev_q, 0.0, 1e-9);
  }

  std::string fmt = pick_format(cfg, "csv");
  bool all_pass = true;
  for (const ExampleRow& r : rows) all_pass = all_pass && r.pass;
  if (fmt == "csv") {
    std::string text = "case,quantity,computed,expected,tolerance,pass\n";
    for (const ExampleRow& r : rows)
      text += r.name + ',' + r.quantity + ',' + fmt17(r.computed) + ',' +
              fmt17(r.expected) + ',' + fmt17(r.tolerance) + ',' +
              (r.pass ? "1" : "0") + '\n';
    emit(cfg, text);
  } else {
    ordered arr = ordered::array();
    for (const ExampleRow& r : rows)
      arr.push_back(ordered{{"case", r.name},
                            {"quantity", r.quantity},
                            {"computed", r.computed},
                            {"expected", r.expected},
                            {"tolerance", r.tolerance},
                            {"pass", r.pass}});
    ordered j;
    j["schema"] = widthfn::kReportSchema;
    j["tool_version"] = widthfn::kToolVersion;
    j["command"] = "examples";
    j["rows"] = std::move(arr);
    emit(cfg, j.dump(2) + "\n");
  }
  return all_pass ? 0 : 1;
}

void add_common(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--seed", cfg.seed, "Deterministic sampling seed");
  cmd->add_option("--samples", cfg.samples, "Direction sample count");
  cmd->add_option("--pairs", cfg.pairs, "Direction pair count");
  cmd->add_option("--metric", cfg.metric, "Pair metric: rho | euclid-min")
      ->check(CLI::IsMember({"rho", "euclid-min"}));
  cmd->add_option("--tol", cfg.tol_flags,
                  "Tolerance override NAME=VALUE (contact, verify, min_rho, "
                  "boundary, chord)");
  cmd->add_option("--output", cfg.output, "Output path (default stdout)");
  cmd->add_option("--format", cfg.format, "Output format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directional width/diameter functions, their Lipschitz "
               "constants and local moduli, and point-diameter maps of "
               "convex bodies"};
  app.require_subcommand(1);

  Config cfg;
  std::string body_file;
  widthfn::GridBounds bounds;
  bool have_xmin = false, have_xmax = false, have_ymin = false,
       have_ymax = false;
  int nx = 64, ny = 64, boundary_samples = 300;

  CLI::App* analyze = app.add_subcommand("analyze", "Global scalars of a body");
  analyze->add_option("body,--body", body_file, "Body JSON file")->required();
  add_common(analyze, cfg);

  CLI::App* profile =
      app.add_subcommand("profile", "Per-direction w,d,s,p,r,q table");
  profile->add_option("body,--body", body_file, "Body JSON file")->required();
  add_common(profile, cfg);

  CLI::App* verify =
      app.add_subcommand("verify", "Check difference quotients against bounds");
  verify->add_option("body,--body", body_file, "Body JSON file")->required();
  add_common(verify, cfg);

  CLI::App* ekmap =
      app.add_subcommand("ekmap", "Point-diameter values on a grid");
  ekmap->add_option("body,--body", body_file, "Body JSON file")->required();
  ekmap->add_option("--xmin", bounds.xmin)->each([&](const std::string&) {
    have_xmin = true;
  });
  ekmap->add_option("--xmax", bounds.xmax)->each([&](const std::string&) {
    have_xmax = true;
  });
  ekmap->add_option("--ymin", bounds.ymin)->each([&](const std::string&) {
    have_ymin = true;
  });
  ekmap->add_option("--ymax", bounds.ymax)->each([&](const std::string&) {
    have_ymax = true;
  });
  ekmap->add_option("--nx", nx, "Grid cells along x");
  ekmap->add_option("--ny", ny, "Grid cells along y");
  add_common(ekmap, cfg);

  CLI::App* continuity = app.add_subcommand(
      "continuity", "Boundary continuity of the point-diameter field");
  continuity->add_option("body,--body", body_file, "Body JSON file")->required();
  continuity->add_option("--boundary-samples", boundary_samples,
                         "Uniform boundary sample count");
  add_common(continuity, cfg);

  CLI::App* examples = app.add_subcommand(
      "examples", "Built-in worked examples with pass/fail columns");
  add_common(examples, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return cmd_analyze(body_file, cfg);
    if (*profile) return cmd_profile(body_file, cfg);
    if (*verify) return cmd_verify(body_file, cfg);
    if (*ekmap) {
      bool bounds_set = have_xmin && have_xmax && have_ymin && have_ymax;
      return cmd_ekmap(body_file, cfg, bounds, bounds_set, nx, ny);
    }
    if (*continuity) return cmd_continuity(body_file, cfg, boundary_samples);
    if (*examples) return cmd_examples(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (...) {
    std::cerr << "error: unknown failure\n";
    return 2;
  }
  return 2;
}
