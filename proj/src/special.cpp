#include "qdecay/special.hpp"

#include <cmath>
#include <stdexcept>

namespace qdecay {

double elliptic_k(double m) {
  if (!(m < 1.0)) throw std::domain_error("elliptic_k: requires m < 1");
  double a = 1.0;
  double b = std::sqrt(1.0 - m);  // > 0, and > 1 for negative m
  // agm converges quadratically; ~6 iterations suffice for doubles except
  // very close to m = 1, where the loop cap still terminates it safely.
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return M_PI / (a + b);
}

}  // namespace qdecay
