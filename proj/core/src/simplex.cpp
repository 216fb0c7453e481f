#include "planegap/simplex.hpp"

#include <cmath>

#include "planegap/error.hpp"

namespace planegap {

LpResult MaximizeLp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                    const std::vector<double>& c) {
  const int rows = static_cast<int>(a.size());
  const int vars = static_cast<int>(c.size());
  if (static_cast<int>(b.size()) != rows) Fail(ErrorCode::kBadParams, "rhs size mismatch");
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(a[i].size()) != vars) Fail(ErrorCode::kBadParams, "constraint row size mismatch");
    if (!(b[i] >= 0)) Fail(ErrorCode::kBadParams, "right-hand side must be nonnegative");
  }
  constexpr double kEps = 1e-11;
  const int cols = vars + rows + 1;  // structural, slack, rhs
  std::vector<std::vector<double>> t(rows + 1, std::vector<double>(cols, 0.0));
  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < vars; ++j) t[i][j] = a[i][j];
    t[i][vars + i] = 1.0;
    t[i][cols - 1] = b[i];
    basis[i] = vars + i;
  }
  // Objective row stores -c so entering columns have negative entries.
  for (int j = 0; j < vars; ++j) t[rows][j] = -c[j];

  LpResult result;
  for (;;) {
    int enter = -1;
    for (int j = 0; j < cols - 1; ++j) {
      if (t[rows][j] < -kEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best = 0;
    for (int i = 0; i < rows; ++i) {
      if (t[i][enter] <= kEps) continue;
      const double ratio = t[i][cols - 1] / t[i][enter];
      if (leave < 0 || ratio < best - kEps || (ratio <= best + kEps && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) {
      result.status = LpStatus::kUnbounded;
      result.objective = INFINITY;
      return result;
    }
    const double pivot = t[leave][enter];
    for (double& v : t[leave]) v /= pivot;
    for (int i = 0; i <= rows; ++i) {
      if (i == leave) continue;
      const double f = t[i][enter];
      if (f == 0) continue;
      for (int j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
    ++result.iterations;
  }
  result.x.assign(vars, 0.0);
  for (int i = 0; i < rows; ++i) {
    if (basis[i] < vars) result.x[basis[i]] = t[i][cols - 1];
  }
  result.dual.resize(rows);
  for (int i = 0; i < rows; ++i) result.dual[i] = t[rows][vars + i];
  result.objective = t[rows][cols - 1];
  return result;
}

}  // namespace planegap
