#include "planegap/stats.hpp"

#include <algorithm>
#include <cmath>

namespace planegap {

Interval WilsonInterval(long successes, long trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

void RunningStats::Add(double x) {
  ++count_;
  if (count_ == 1 || x > max_) max_ = x;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

double RunningStats::variance() const {
  return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
}

MeanSummary RunningStats::Summary(double z) const {
  MeanSummary s;
  s.count = count_;
  s.mean = mean_;
  s.stddev = std::sqrt(variance());
  s.stderr_ = count_ > 0 ? s.stddev / std::sqrt(static_cast<double>(count_)) : 0.0;
  s.ci = {s.mean - z * s.stderr_, s.mean + z * s.stderr_};
  return s;
}

MeanSummary Summarize(std::span<const double> values, double z) {
  RunningStats stats;
  for (double v : values) stats.Add(v);
  return stats.Summary(z);
}

}  // namespace planegap
