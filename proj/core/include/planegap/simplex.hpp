#pragma once

#include <vector>

namespace planegap {

enum class LpStatus { kOptimal, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kOptimal;
  double objective = 0;
  std::vector<double> x;     // primal solution
  std::vector<double> dual;  // one multiplier per constraint row
  long iterations = 0;
};

// Dense tableau simplex for max c.x subject to A x <= b, x >= 0, with b >= 0
// so the origin is a feasible start. Bland's rule prevents cycling. Throws
// BAD_PARAMS on ragged input or a negative right-hand side.
LpResult MaximizeLp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                    const std::vector<double>& c);

}  // namespace planegap
