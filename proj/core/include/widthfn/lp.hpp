#pragma once

#include <vector>

#include "widthfn/vec.hpp"

namespace widthfn {

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded, IterLimit };
  Status status = Status::IterLimit;
  double objective = 0.0;
  std::vector<double> x;
};

// Dense two-phase simplex: maximize c.x subject to A x = b, x >= 0.
// Intended for small instances (tens of rows, low hundreds of columns).
LpResult lp_maximize_eq(const std::vector<std::vector<double>>& a,
                        const std::vector<double>& b,
                        const std::vector<double>& c, int max_iter = 0);

}  // namespace widthfn
