#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the installed CLI binary with the given arguments, capturing stdout.
// stderr is discarded so expected failures do not pollute the test log.
RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(WIDTHFN_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof(buf), pipe))
    res.out.append(buf, got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

std::string without_runtime(std::string text) {
  auto pos = text.find("\"runtime_seconds\"");
  if (pos == std::string::npos) return text;
  auto end = text.find('\n', pos);
  text.erase(pos, end - pos);
  return text;
}

class Fixture {
 public:
  Fixture() {
    dir_ = fs::temp_directory_path() /
           ("widthfn_cli_" + std::to_string(getpid()));
    fs::create_directories(dir_);
    write("triangle.json",
          R"({"type":"polytope","vertices":[[0,0],[5,0],[3.2,2.4]]})");
    write("square.json",
          R"({"type":"polytope","vertices":[[0,0],[1,0],[1,1],[0,1]]})");
    write("eq.json",
          R"({"type":"polytope","vertices":[[0,0],[1,0],[0.5,0.8660254037844386]]})");
    write("disc.json", R"({"type":"ball","radius":1,"center":[0,0]})");
    write("ball3.json", R"({"type":"ball","radius":1,"center":[0,0,0]})");
    write("ellipse.json", R"({"type":"ellipsoid","semiaxes":[2,1]})");
    write("box3.json",
          R"({"type":"polytope","vertices":[[0,0,0],[1,0,0],[0,2,0],[0,0,3],[1,2,0],[1,0,3],[0,2,3],[1,2,3]]})");
    write("slab.json", R"({"type":"slab_ball","half_width":0.5,"dim":2})");
    write("bad.json", "{nope");
  }
  ~Fixture() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  std::string path(const std::string& name) const {
    return (dir_ / name).string();
  }
  fs::path dir() const { return dir_; }

 private:
  void write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text << "\n";
  }
  fs::path dir_;
};

Fixture& fixture() {
  static Fixture f;
  return f;
}

}  // namespace

TEST_CASE("analyze prints the full metric summary") {
  auto res = run_cli("analyze --body " + fixture().path("triangle.json"));
  CHECK(res.exit_code == 0);
  auto doc = nlohmann::json::parse(res.out);
  CHECK(doc["schema"] == "report_v1");
  CHECK(doc["command"] == "analyze");
  CHECK(doc["delta"].get<double>() == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(doc["omega"].get<double>() == doctest::Approx(2.4).epsilon(1e-9));
  CHECK(doc["m"].get<double>() ==
        doctest::Approx(std::sqrt(19.24)).epsilon(1e-7));
  CHECK(doc["n"].get<double>() ==
        doctest::Approx(5.0 / 2.4 * std::sqrt(19.24)).epsilon(1e-7));
  CHECK(doc["hat"]["available"] == true);
  CHECK(doc["hat"]["exact"] == true);
  CHECK(doc["hat"]["m_hat"].get<double>() == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(doc["hat"]["n_hat"].get<double>() ==
        doctest::Approx(20.0 / 3.0).epsilon(1e-9));
  CHECK(doc["diameter_chord"]["length"].get<double>() ==
        doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("analyze handles smooth and spatial bodies") {
  auto disc = run_cli("analyze --body " + fixture().path("disc.json"));
  CHECK(disc.exit_code == 0);
  auto ddoc = nlohmann::json::parse(disc.out);
  CHECK(ddoc["delta"].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(ddoc["omega"].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(ddoc["m"].get<double>() == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(ddoc["n"].get<double>() == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(ddoc["hat"]["available"] == false);

  auto box = run_cli("analyze --body " + fixture().path("box3.json"));
  CHECK(box.exit_code == 0);
  auto bdoc = nlohmann::json::parse(box.out);
  CHECK(bdoc["delta"].get<double>() ==
        doctest::Approx(std::sqrt(14.0)).epsilon(1e-9));
  CHECK(bdoc["omega"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(bdoc["m"].get<double>() ==
        doctest::Approx(std::sqrt(13.0)).epsilon(1e-6));
}

TEST_CASE("broken input fails with the usage exit code") {
  CHECK(run_cli("analyze --body " + fixture().path("bad.json")).exit_code == 2);
  CHECK(run_cli("analyze --body " + fixture().path("nothere.json")).exit_code ==
        2);
}

TEST_CASE("profile emits one CSV row per direction") {
  auto res = run_cli("profile --body " + fixture().path("disc.json") +
                     " --samples 10");
  CHECK(res.exit_code == 0);
  auto rows = lines_of(res.out);
  REQUIRE(rows.size() == 11);  // header + 10 rows
  CHECK(rows[0] == "u_1,u_2,w,d,s,p,r,q");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double u1, u2, w, d, s, p, r, q;
    REQUIRE(std::sscanf(rows[i].c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf",
                        &u1, &u2, &w, &d, &s, &p, &r, &q) == 8);
    CHECK(w == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(d == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(std::abs(p) <= 1e-9);
    CHECK(std::abs(q) <= 1e-9);
  }
}

TEST_CASE("profile matches the ellipse closed forms") {
  auto res = run_cli("profile --body " + fixture().path("ellipse.json") +
                     " --samples 16");
  CHECK(res.exit_code == 0);
  auto rows = lines_of(res.out);
  REQUIRE(rows.size() == 17);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double u1, u2, w, d, s, p, r, q;
    REQUIRE(std::sscanf(rows[i].c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf",
                        &u1, &u2, &w, &d, &s, &p, &r, &q) == 8);
    double c2 = u1 * u1, s2 = u2 * u2;
    double wexp = 2.0 * std::sqrt(4.0 * c2 + s2);
    double dexp = 4.0 / std::sqrt(4.0 * s2 + c2);
    double sexp = 2.0 * std::sqrt((16.0 * c2 + s2) / (4.0 * c2 + s2));
    double pexp = std::abs(2.0 * 3.0 * u1 * u2) / std::sqrt(4.0 * c2 + s2);
    double rexp = 4.0 * std::sqrt((4.0 * s2 + c2) / (16.0 * s2 + c2));
    double qexp =
        2.0 * std::abs(3.0 * 2.0 * u1 * u2) / std::pow(4.0 * s2 + c2, 1.5);
    CHECK(w == doctest::Approx(wexp).epsilon(1e-9));
    CHECK(d == doctest::Approx(dexp).epsilon(1e-9));
    CHECK(s == doctest::Approx(sexp).epsilon(1e-9));
    CHECK(p == doctest::Approx(pexp).epsilon(1e-9));
    CHECK(r == doctest::Approx(rexp).epsilon(1e-9));
    CHECK(q == doctest::Approx(qexp).epsilon(1e-9));
  }
}

TEST_CASE("verify passes on the triangle and reports the sup") {
  auto res = run_cli("verify --body " + fixture().path("triangle.json") +
                     " --pairs 3000");
  CHECK(res.exit_code == 0);
  auto doc = nlohmann::json::parse(res.out);
  CHECK(doc["schema"] == "report_v1");
  double max_w = doc["max_ratios"]["delta_w"].get<double>();
  CHECK(max_w >= 3.96);  // refined sup estimate folded into the report
  CHECK(max_w <= 4.0 + 1e-9);
  CHECK(doc["violations"]["m"] == 0);
  CHECK(doc["violations"]["n"] == 0);
  CHECK(doc["violations"]["m_hat"] == 0);
  CHECK(doc["violations"]["n_hat"] == 0);
}

TEST_CASE("verify accepts the euclidean-min metric") {
  auto res = run_cli("verify --body " + fixture().path("square.json") +
                     " --pairs 500 --metric euclid-min");
  CHECK(res.exit_code == 0);
  auto doc = nlohmann::json::parse(res.out);
  CHECK(doc["metric"] == "euclidean-min");
}

TEST_CASE("repeated runs are byte-identical") {
  std::string cmd = "analyze --body " + fixture().path("ellipse.json");
  auto a = run_cli(cmd);
  auto b = run_cli(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  std::string vcmd = "verify --body " + fixture().path("square.json") +
                     " --pairs 400 --seed 11";
  auto va = run_cli(vcmd);
  auto vb = run_cli(vcmd);
  CHECK(va.exit_code == 0);
  CHECK(without_runtime(va.out) == without_runtime(vb.out));
}

TEST_CASE("ekmap rasterizes the chord-length field") {
  auto res = run_cli("ekmap --body " + fixture().path("square.json") +
                     " --nx 6 --ny 5");
  CHECK(res.exit_code == 0);
  auto rows = lines_of(res.out);
  REQUIRE(rows.size() == 31);  // header + 6*5 cells
  CHECK(rows[0] == "x,y,e");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double x, y, e;
    REQUIRE(std::sscanf(rows[i].c_str(), "%lf,%lf,%lf", &x, &y, &e) == 3);
    CHECK(e >= 1.0 - 1e-9);  // never below the thickness
  }

  CHECK(run_cli("ekmap --body " + fixture().path("ball3.json") +
                " --nx 4 --ny 4")
            .exit_code == 2);
}

TEST_CASE("ekmap honors explicit bounds") {
  auto res = run_cli("ekmap --body " + fixture().path("disc.json") +
                     " --nx 3 --ny 3 --xmin -1 --xmax 1 --ymin -1 --ymax 1");
  CHECK(res.exit_code == 0);
  auto rows = lines_of(res.out);
  REQUIRE(rows.size() == 10);
  double x, y, e;
  // row-major from ymin: the center cell is row 5 (index from 1).
  REQUIRE(std::sscanf(rows[5].c_str(), "%lf,%lf,%lf", &x, &y, &e) == 3);
  CHECK(x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(y == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(e == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("continuity classifies boundary points") {
  auto eq = run_cli("continuity --body " + fixture().path("eq.json") +
                    " --boundary-samples 30");
  CHECK(eq.exit_code == 0);
  auto rows = lines_of(eq.out);
  REQUIRE(rows.size() == 31);
  CHECK(rows[0] == "x,y,e,farthest,gap,continuous");
  int continuous = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double x, y, e, far, gap;
    int cont;
    REQUIRE(std::sscanf(rows[i].c_str(), "%lf,%lf,%lf,%lf,%lf,%d", &x, &y, &e,
                        &far, &gap, &cont) == 6);
    continuous += cont;
  }
  CHECK(continuous == 3);  // equilateral: vertices only

  auto tri = run_cli("continuity --body " + fixture().path("triangle.json") +
                     " --boundary-samples 60");
  CHECK(tri.exit_code == 0);
  auto trows = lines_of(tri.out);
  REQUIRE(trows.size() == 61);
  int tcont = 0;
  for (std::size_t i = 1; i < trows.size(); ++i) {
    double x, y, e, far, gap;
    int cont;
    REQUIRE(std::sscanf(trows[i].c_str(), "%lf,%lf,%lf,%lf,%lf,%d", &x, &y, &e,
                        &far, &gap, &cont) == 6);
    tcont += cont;
  }
  CHECK(tcont > 3);   // a stretch of the short sides stays continuous
  CHECK(tcont < 60);  // but not everywhere

  auto disc = run_cli("continuity --body " + fixture().path("disc.json") +
                      " --boundary-samples 24");
  CHECK(disc.exit_code == 0);
  auto drows = lines_of(disc.out);
  REQUIRE(drows.size() == 25);
  for (std::size_t i = 1; i < drows.size(); ++i)
    CHECK(drows[i].back() == '1');

  CHECK(run_cli("continuity --body " + fixture().path("ellipse.json"))
            .exit_code == 2);
  CHECK(run_cli("continuity --body " + fixture().path("slab.json")).exit_code ==
        2);
}

TEST_CASE("tolerance overrides are validated") {
  CHECK(run_cli("verify --body " + fixture().path("square.json") +
                " --pairs 100 --tol bogus=1")
            .exit_code == 2);
  CHECK(run_cli("verify --body " + fixture().path("square.json") +
                " --pairs 100 --tol verify=abc")
            .exit_code == 2);
  CHECK(run_cli("verify --body " + fixture().path("square.json") +
                " --pairs 100 --tol verify=1e-6")
            .exit_code == 0);
}

TEST_CASE("argument errors exit with code 2") {
  CHECK(run_cli("analyze --body " + fixture().path("disc.json") +
                " --no-such-flag")
            .exit_code != 0);
  CHECK(run_cli("").exit_code != 0);
  CHECK(run_cli("verify --body " + fixture().path("disc.json") +
                " --metric foo")
            .exit_code != 0);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("output lands in the requested file") {
  fs::path out = fixture().dir() / "analysis.json";
  auto res = run_cli("analyze --body " + fixture().path("disc.json") +
                     " --output " + out.string());
  CHECK(res.exit_code == 0);
  std::ifstream in(out);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  auto doc = nlohmann::json::parse(ss.str());
  CHECK(doc["delta"].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("continuity offers a JSON rendering") {
  auto res = run_cli("continuity --body " + fixture().path("eq.json") +
                     " --boundary-samples 12 --format json");
  CHECK(res.exit_code == 0);
  auto doc = nlohmann::json::parse(res.out);
  REQUIRE(doc["verdicts"].is_array());
  CHECK(doc["verdicts"].size() == 12);
  int continuous = 0;
  for (const auto& pt : doc["verdicts"])
    if (pt["continuous"].get<bool>()) ++continuous;
  CHECK(continuous == 3);
}

TEST_CASE("bundled examples all pass") {
  auto res = run_cli("examples");
  CHECK(res.exit_code == 0);
  auto rows = lines_of(res.out);
  REQUIRE(rows.size() > 1);
  CHECK(rows[0] == "case,quantity,computed,expected,tolerance,pass");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CAPTURE(rows[i]);
    CHECK(rows[i].back() == '1');
  }
}
