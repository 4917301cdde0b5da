#pragma once

namespace qdecay {

// Complete elliptic integral of the first kind,
//   K(m) = int_0^{pi/2} dphi / sqrt(1 - m sin^2 phi),
// in the parameter convention m = k^2.  Valid for m < 1 (m may be negative);
// m >= 1 raises a domain error.  Evaluated through the arithmetic-geometric
// mean, K(m) = pi / (2 agm(1, sqrt(1-m))), to relative accuracy ~1e-14.
double elliptic_k(double m);

}  // namespace qdecay
