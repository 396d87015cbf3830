#pragma once

#include <array>
#include <cstdint>

namespace cuelab {

/// Philox4x64-10 block function (Salmon et al., SC'11). Stateless.
class Philox4x64 {
 public:
  using Counter = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;

  static Counter generate(Counter counter, Key key);
};

/// Counter-based random stream keyed by (master seed, replicate index).
///
/// Block b of substream s is Philox(counter = {b, s, 0, 0}, key = {seed,
/// replicate}), so a replicate's draws never depend on how many other
/// replicates exist or in which order they run.
class CounterStream {
 public:
  CounterStream(std::uint64_t master_seed, std::uint64_t replicate, std::uint64_t substream = 0);

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double next_double();

  std::uint64_t master_seed() const { return key_[0]; }
  std::uint64_t replicate() const { return key_[1]; }
  /// Number of 64-bit words consumed so far.
  std::uint64_t draws() const { return draws_; }

 private:
  Philox4x64::Key key_;
  std::uint64_t substream_;
  std::uint64_t block_ = 0;
  Philox4x64::Counter buffer_{};
  unsigned position_ = 4;
  std::uint64_t draws_ = 0;
};

}  // namespace cuelab
