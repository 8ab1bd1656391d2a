#include "socprec/stats.hpp"

#include <cmath>

namespace socprec {

SampleStat summarize(const std::vector<double>& values) {
  SampleStat s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.std_dev = std::sqrt(sq / static_cast<double>(values.size() - 1));
    s.std_error = s.std_dev / std::sqrt(static_cast<double>(values.size()));
  }
  return s;
}

}  // namespace socprec
