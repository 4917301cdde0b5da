#pragma once

#include <cstdint>

namespace qdecay {

// Identifies one reproducible random stream.  `stream` doubles as a global
// sample index when ensembles are partitioned across workers: sample i of a
// job seeded (s, 0) always draws from stream i, so any worker split yields
// bit-identical ensembles.
struct SeedSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// Counter-based generator (Philox-style 4x64, 10 rounds).  The key is
// (seed, stream) and the state is a 256-bit block counter, so jumping to an
// arbitrary position is free and distinct streams are independent by
// construction.  Not cryptographic; statistical quality is what matters.
class CounterRng {
 public:
  explicit CounterRng(SeedSpec s) : k0_(s.seed), k1_(s.stream) {}

  std::uint64_t next_u64() {
    if (have_ == 0) {
      fill_block();
      have_ = 4;
    }
    return out_[4 - have_--];
  }

  // Uniform on [0, 1), 53 usable bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as a log() argument.
  double uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // One standard normal pair via Box-Muller.
  void normal_pair(double& z0, double& z1);

 private:
  void fill_block();

  std::uint64_t k0_, k1_;
  std::uint64_t ctr_[4] = {0, 0, 0, 0};
  std::uint64_t out_[4] = {0, 0, 0, 0};
  int have_ = 0;
};

}  // namespace qdecay
