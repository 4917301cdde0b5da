#include "qdecay/rng.hpp"

#include <cmath>

namespace qdecay {

namespace {

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
  const unsigned __int128 p =
      static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kMult1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

}  // namespace

void CounterRng::fill_block() {
  std::uint64_t x0 = ctr_[0], x1 = ctr_[1], x2 = ctr_[2], x3 = ctr_[3];
  std::uint64_t k0 = k0_, k1 = k1_;
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kMult0, x0, hi0, lo0);
    mulhilo(kMult1, x2, hi1, lo1);
    x0 = hi1 ^ x1 ^ k0;
    x1 = lo1;
    x2 = hi0 ^ x3 ^ k1;
    x3 = lo0;
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  out_[0] = x0;
  out_[1] = x1;
  out_[2] = x2;
  out_[3] = x3;
  // 256-bit counter increment.
  if (++ctr_[0] == 0 && ++ctr_[1] == 0 && ++ctr_[2] == 0) ++ctr_[3];
}

void CounterRng::normal_pair(double& z0, double& z1) {
  const double u1 = uniform_pos();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  z0 = r * std::cos(2.0 * M_PI * u2);
  z1 = r * std::sin(2.0 * M_PI * u2);
}

}  // namespace qdecay
