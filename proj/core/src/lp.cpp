#include "widthfn/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace widthfn {

namespace {
constexpr double kEps = 1e-10;
}

LpResult lp_maximize_eq(const std::vector<std::vector<double>>& a,
                        const std::vector<double>& b,
                        const std::vector<double>& c, int max_iter) {
  int m = static_cast<int>(a.size());
  int n = static_cast<int>(c.size());
  if (static_cast<int>(b.size()) != m)
    throw std::invalid_argument("lp: rhs size mismatch");
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("lp: row size mismatch");
  if (max_iter <= 0) max_iter = 500 + 40 * (m + n);

  // Tableau: n structural + m artificial columns + rhs; row m = objective,
  // row m+1 = phase-1 objective.
  int cols = n + m + 1;
  std::vector<std::vector<double>> t(m + 2, std::vector<double>(cols, 0.0));
  for (int i = 0; i < m; ++i) {
    double s = (b[i] < 0.0) ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) t[i][j] = s * a[i][j];
    t[i][n + i] = 1.0;
    t[i][cols - 1] = s * b[i];
  }
  for (int j = 0; j < n; ++j) t[m][j] = -c[j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < cols; ++j)
      if (j < n || j == cols - 1) t[m + 1][j] -= t[i][j];

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  auto pivot = [&](int pr, int pc) {
    double inv = 1.0 / t[pr][pc];
    for (double& x : t[pr]) x *= inv;
    for (int r = 0; r < m + 2; ++r) {
      if (r == pr) continue;
      double f = t[r][pc];
      if (f == 0.0) continue;
      for (int j = 0; j < cols; ++j) t[r][j] -= f * t[pr][j];
    }
    basis[pr] = pc;
  };

  int iters = 0;
  auto run = [&](int obj_row, int allowed_cols) -> LpResult::Status {
    while (true) {
      if (++iters > max_iter) return LpResult::Status::IterLimit;
      bool bland = iters > max_iter / 2;
      int pc = -1;
      double best = -kEps;
      for (int j = 0; j < allowed_cols; ++j) {
        if (t[obj_row][j] < best) {
          best = t[obj_row][j];
          pc = j;
          if (bland) break;
        }
      }
      if (pc < 0) return LpResult::Status::Optimal;
      int pr = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m; ++i) {
        if (t[i][pc] > kEps) {
          double ratio = t[i][cols - 1] / t[i][pc];
          if (pr < 0 || ratio < best_ratio - kEps ||
              (ratio < best_ratio + kEps && basis[i] < basis[pr])) {
            pr = i;
            best_ratio = ratio;
          }
        }
      }
      if (pr < 0) return LpResult::Status::Unbounded;
      pivot(pr, pc);
    }
  };

  LpResult out;
  auto st = run(m + 1, n);  // phase 1: artificials only leave the basis
  if (st == LpResult::Status::IterLimit) return out;
  if (t[m + 1][cols - 1] < -1e-7) {
    out.status = LpResult::Status::Infeasible;
    return out;
  }
  // Pivot leftover artificials out; redundant rows keep them at zero level.
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    for (int j = 0; j < n; ++j)
      if (std::abs(t[i][j]) > 1e-8) {
        pivot(i, j);
        break;
      }
  }

  st = run(m, n);
  out.status = st;
  if (st != LpResult::Status::Optimal) return out;
  out.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) out.x[basis[i]] = t[i][cols - 1];
  out.objective = t[m][cols - 1];
  return out;
}

}  // namespace widthfn
