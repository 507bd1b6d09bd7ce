#pragma once

// Philox4x32-10 (Salmon et al., SC'11), the counter-based generator behind
// every random draw. A stream is fixed by its key (the base seed) and the
// first counter words (trial, purpose, attempt); the remaining word counts
// blocks within the stream. Identical inputs give identical draws on any
// platform, and streams never overlap.

#include <array>
#include <cstdint>

namespace mmbh {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

// What a stream is used for. Values are part of the reproducibility contract.
enum class StreamPurpose : std::uint32_t {
  node_positions = 1,
  flow_endpoints = 2,
  demands = 3,
  test_instances = 100,
};

class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint32_t trial, StreamPurpose purpose,
               std::uint32_t attempt = 0);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi);
  // Uniform on [0, n) without modulo bias. n must be positive.
  std::uint32_t below(std::uint32_t n);

 private:
  PhiloxKey key_;
  PhiloxCounter base_;
  std::uint32_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

}  // namespace mmbh
