#pragma once

#include <span>

namespace planegap {

struct Interval {
  double lo = 0;
  double hi = 0;
};

// Wilson score interval for `successes` out of `trials` at normal quantile z.
Interval WilsonInterval(long successes, long trials, double z = 1.96);

struct MeanSummary {
  double mean = 0;
  double stddev = 0;  // sample standard deviation
  double stderr_ = 0;
  long count = 0;
  Interval ci;  // normal approximation
};

MeanSummary Summarize(std::span<const double> values, double z = 1.96);

// Welford accumulator.
class RunningStats {
 public:
  void Add(double x);
  long count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const;
  double max() const { return max_; }
  MeanSummary Summary(double z = 1.96) const;

 private:
  long count_ = 0;
  double mean_ = 0;
  double m2_ = 0;
  double max_ = 0;
};

}  // namespace planegap
