#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Dense>

namespace socprec {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds.
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// Stream tags keep the random quantities of one trial independent.
enum class StreamTag : std::uint32_t {
  Matrix = 1,
  Noise = 2,
  GenieG = 3,
  GenieH = 4,
  Test = 99,
};

/// Counter-based normal generator. The stream is a pure function of
/// (seed, trial, tag), so trials can be generated in any order or thread.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint32_t trial, StreamTag tag);

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller; each Philox block yields one pair.
  double normal();

  Eigen::VectorXd normal_vector(Eigen::Index size);
  /// Column-major fill.
  Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  PhiloxCounter next_block();

  PhiloxKey key_{};
  std::uint32_t trial_ = 0;
  std::uint32_t tag_ = 0;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> words_{};
  int word_pos_ = 4;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace socprec
