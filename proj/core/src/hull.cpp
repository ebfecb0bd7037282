#include "widthfn/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace widthfn {

namespace {

double cloud_scale(const std::vector<Vec>& pts) {
  double s = 0.0;
  for (const Vec& p : pts) s = std::max(s, norm(p));
  return std::max(s, 1e-12);
}

std::vector<Vec> dedupe(std::vector<Vec> pts, double tol) {
  std::sort(pts.begin(), pts.end());
  std::vector<Vec> out;
  for (const Vec& p : pts) {
    if (!out.empty() && dist(out.back(), p) < tol) continue;
    out.push_back(p);
  }
  return out;
}

double det(std::vector<std::vector<double>> m) {
  int n = static_cast<int>(m.size());
  double d = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (std::abs(m[piv][c]) < 1e-300) return 0.0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (int r = c + 1; r < n; ++r) {
      double f = m[r][c] / m[c][c];
      for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return d;
}

// Vector orthogonal to the span of the rows of e ((n-1) x n), by cofactor
// expansion.  Not normalized.
Vec orthogonal(const std::vector<Vec>& e, int n) {
  Vec nrm(n);
  for (int j = 0; j < n; ++j) {
    std::vector<std::vector<double>> minor(n - 1, std::vector<double>(n - 1));
    for (int r = 0; r < n - 1; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor[r][cc++] = e[r][c];
      }
    }
    nrm[j] = ((j % 2) ? -1.0 : 1.0) * det(std::move(minor));
  }
  return nrm;
}

struct WorkFacet {
  Vec normal;
  double offset;
  std::vector<int> verts;  // sorted
  bool alive = true;
};

// Facet through the points pts[ids], oriented away from `inside`.
WorkFacet make_facet(const std::vector<Vec>& pts, std::vector<int> ids,
                     const Vec& inside) {
  int n = static_cast<int>(pts[0].size());
  std::vector<Vec> e;
  for (std::size_t i = 1; i < ids.size(); ++i)
    e.push_back(sub(pts[ids[i]], pts[ids[0]]));
  Vec nrm = orthogonal(e, n);
  double len = norm(nrm);
  if (!(len > 1e-300)) throw std::runtime_error("degenerate hull facet");
  for (double& x : nrm) x /= len;
  double off = dot(nrm, pts[ids[0]]);
  if (dot(nrm, inside) > off) {
    for (double& x : nrm) x = -x;
    off = -off;
  }
  std::sort(ids.begin(), ids.end());
  return WorkFacet{std::move(nrm), off, std::move(ids), true};
}

Hull hull_nd(const std::vector<Vec>& input) {
  int n = static_cast<int>(input[0].size());
  double scale = cloud_scale(input);
  std::vector<Vec> pts = dedupe(input, 1e-12 * scale);

  // Greedy affinely independent seed: repeatedly take the point farthest from
  // the affine hull of the chosen ones (Gram-Schmidt residual).
  std::vector<int> seed;
  std::vector<Vec> basis;
  seed.push_back(0);
  for (int k = 0; k < n &&
                  static_cast<int>(seed.size()) < n + 1; ++k) {
    int best = -1;
    double best_r = 1e-9 * scale;
    Vec best_res;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
      Vec r = sub(pts[i], pts[seed[0]]);
      for (const Vec& b : basis) r = axpy(r, -dot(r, b), b);
      double len = norm(r);
      if (len > best_r) {
        best_r = len;
        best = i;
        best_res = std::move(r);
      }
    }
    if (best < 0) break;
    seed.push_back(best);
    for (double& x : best_res) x /= best_r;
    basis.push_back(std::move(best_res));
  }
  if (static_cast<int>(seed.size()) != n + 1)
    throw std::invalid_argument("points do not span the space (not full-dimensional)");

  Vec inside(n, 0.0);
  for (int id : seed) inside = add(inside, pts[id]);
  for (double& x : inside) x /= static_cast<double>(n + 1);

  std::vector<WorkFacet> facets;
  for (int omit = 0; omit <= n; ++omit) {
    std::vector<int> ids;
    for (int k = 0; k <= n; ++k)
      if (k != omit) ids.push_back(seed[k]);
    facets.push_back(make_facet(pts, std::move(ids), inside));
  }

  double eps_vis = 1e-9 * scale;
  for (int p = 0; p < static_cast<int>(pts.size()); ++p) {
    if (std::find(seed.begin(), seed.end(), p) != seed.end()) continue;
    std::vector<int> visible;
    for (int f = 0; f < static_cast<int>(facets.size()); ++f) {
      if (!facets[f].alive) continue;
      if (dot(facets[f].normal, pts[p]) - facets[f].offset > eps_vis)
        visible.push_back(f);
    }
    if (visible.empty()) continue;

    // Horizon ridges: (n-1)-subsets of visible facets seen exactly once.
    std::map<std::vector<int>, int> ridge_count;
    for (int f : visible) {
      const std::vector<int>& ids = facets[f].verts;
      for (std::size_t omit = 0; omit < ids.size(); ++omit) {
        std::vector<int> ridge;
        for (std::size_t k = 0; k < ids.size(); ++k)
          if (k != omit) ridge.push_back(ids[k]);
        ++ridge_count[std::move(ridge)];
      }
    }
    for (int f : visible) facets[f].alive = false;
    for (auto& [ridge, cnt] : ridge_count) {
      if (cnt != 1) continue;
      std::vector<int> ids = ridge;
      ids.push_back(p);
      facets.push_back(make_facet(pts, std::move(ids), inside));
    }
  }

  // Compact to referenced vertices.
  std::vector<int> remap(pts.size(), -1);
  Hull out;
  out.dim = n;
  for (const WorkFacet& f : facets) {
    if (!f.alive) continue;
    for (int id : f.verts)
      if (remap[id] < 0) {
        remap[id] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(pts[id]);
      }
  }
  for (const WorkFacet& f : facets) {
    if (!f.alive) continue;
    Facet g;
    g.normal = f.normal;
    g.offset = f.offset;
    for (int id : f.verts) g.vertex_ids.push_back(remap[id]);
    out.facets.push_back(std::move(g));
  }
  return out;
}

}  // namespace

std::vector<Vec> convex_hull_2d_ccw(std::vector<Vec> pts) {
  double scale = cloud_scale(pts);
  pts = dedupe(std::move(pts), 1e-12 * scale);
  int m = static_cast<int>(pts.size());
  if (m < 3) throw std::invalid_argument("fewer than 3 extreme points");
  double eps_area = 1e-12 * scale * scale;

  std::vector<Vec> h(2 * m);
  int k = 0;
  for (int i = 0; i < m; ++i) {  // lower
    while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= eps_area) --k;
    h[k++] = pts[i];
  }
  for (int i = m - 2, lo = k + 1; i >= 0; --i) {  // upper
    while (k >= lo && cross2(h[k - 2], h[k - 1], pts[i]) <= eps_area) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  if (h.size() < 3) throw std::invalid_argument("fewer than 3 extreme points");
  return h;
}

Hull convex_hull(const std::vector<Vec>& pts) {
  if (pts.empty()) throw std::invalid_argument("empty point set");
  int n = static_cast<int>(pts[0].size());
  if (n < 2) throw std::invalid_argument("dimension must be >= 2");
  for (const Vec& p : pts)
    if (static_cast<int>(p.size()) != n)
      throw std::invalid_argument("inconsistent point dimensions");

  if (n == 2) {
    Hull out;
    out.dim = 2;
    out.vertices = convex_hull_2d_ccw(pts);
    int m = static_cast<int>(out.vertices.size());
    for (int i = 0; i < m; ++i) {
      int j = (i + 1) % m;
      Vec d = sub(out.vertices[j], out.vertices[i]);
      Vec nrm{d[1], -d[0]};  // outward for counter-clockwise order
      double len = norm(nrm);
      for (double& x : nrm) x /= len;
      out.facets.push_back(
          Facet{nrm, dot(nrm, out.vertices[i]), {i, j}});
    }
    return out;
  }
  return hull_nd(pts);
}

}  // namespace widthfn
