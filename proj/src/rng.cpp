#include "mmbh/rng.hpp"

#include <stdexcept>

namespace mmbh {

namespace {
constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}
}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter c, PhiloxKey k) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k[0] += kW0;
      k[1] += kW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c[0], hi0, lo0);
    mulhilo(kM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
  return c;
}

PhiloxStream::PhiloxStream(std::uint64_t seed, std::uint32_t trial, StreamPurpose purpose,
                           std::uint32_t attempt)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      base_{trial, static_cast<std::uint32_t>(purpose), 0, attempt} {}

std::uint32_t PhiloxStream::next_u32() {
  if (used_ == 4) {
    if (block_ == 0xFFFFFFFFu) throw std::length_error("Philox stream exhausted");
    PhiloxCounter c = base_;
    c[2] = block_++;
    buffer_ = philox4x32_10(c, key_);
    used_ = 0;
  }
  return buffer_[static_cast<std::size_t>(used_++)];
}

std::uint64_t PhiloxStream::next_u64() {
  const std::uint64_t hi = next_u32();
  return (hi << 32) | next_u32();
}

double PhiloxStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double PhiloxStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint32_t PhiloxStream::below(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("below(0)");
  const std::uint32_t limit = static_cast<std::uint32_t>(-n) % n;  // 2^32 mod n
  while (true) {
    const std::uint32_t x = next_u32();
    if (x >= limit) return x % n;
  }
}

}  // namespace mmbh
