#pragma once

#include <array>
#include <cstdint>

namespace tripois {

// Counter-based random stream (Philox4x32-10). The pair (seed, stream_id)
// fully determines the sequence, independent of platform and of how work is
// scheduled across threads.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1).
  double uniform_open();
  double normal();

  // Independent child stream; used to give every block of a parallel
  // Monte-Carlo loop its own deterministic sequence.
  RngStream substream(std::uint64_t index) const;

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

// Philox4x32 with 10 rounds, exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace tripois
