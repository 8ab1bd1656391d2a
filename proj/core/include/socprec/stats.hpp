#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace socprec {

struct SampleStat {
  double mean = 0.0;
  double std_error = 0.0;  // sample std / sqrt(count)
  double std_dev = 0.0;
  std::size_t count = 0;
};

/// Two-pass mean and unbiased standard deviation, summed in input order.
SampleStat summarize(const std::vector<double>& values);

struct FailureLog {
  std::size_t count = 0;
  std::map<std::string, std::size_t> reasons;

  void add(const std::string& reason) {
    ++count;
    ++reasons[reason];
  }
};

}  // namespace socprec
