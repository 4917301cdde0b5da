#include "qdecay/channels.hpp"

#include <cmath>
#include <stdexcept>

#include "qdecay/errors.hpp"

namespace qdecay {

const char* channel_name(ChannelKind k) {
  switch (k) {
    case ChannelKind::Depolarizing: return "depolarizing";
    case ChannelKind::AmplitudeDamping: return "amplitude-damping";
    case ChannelKind::PhaseDamping: return "phase-damping";
  }
  return "?";
}

KrausSet make_kraus(ChannelKind kind, double q) {
  if (!(q >= 0.0 && q <= 1.0))
    throw std::domain_error("make_kraus: q must lie in [0, 1]");
  KrausSet set;
  set.kind = kind;
  set.q = q;
  switch (kind) {
    case ChannelKind::Depolarizing: {
      CMat e0 = CMat::identity(2);
      e0 *= std::sqrt(1.0 - 0.75 * q);
      set.ops.push_back(e0);
      const double w = std::sqrt(0.25 * q);
      for (int i = 1; i <= 3; ++i) {
        CMat e = pauli(i);
        e *= w;
        set.ops.push_back(e);
      }
      break;
    }
    case ChannelKind::AmplitudeDamping: {
      CMat e0(2, 2);
      e0(0, 0) = 1.0;
      e0(1, 1) = std::sqrt(1.0 - q);
      CMat e1(2, 2);
      e1(0, 1) = std::sqrt(q);
      set.ops.push_back(e0);
      set.ops.push_back(e1);
      break;
    }
    case ChannelKind::PhaseDamping: {
      CMat e0 = CMat::identity(2);
      e0 *= std::sqrt(1.0 - q);
      CMat e1(2, 2);
      e1(0, 0) = std::sqrt(q);
      CMat e2(2, 2);
      e2(1, 1) = std::sqrt(q);
      set.ops.push_back(e0);
      set.ops.push_back(e1);
      set.ops.push_back(e2);
      break;
    }
  }
  return set;
}

namespace {

// sum_i (E_i x I) rho (E_i x I)^dag without building 4x4 Kronecker factors:
// in the ordered basis |00>,|01>,|10>,|11>, E x I acts on the 2x2 block
// structure of rho (row blocks by the first qubit), and I x E acts inside
// the blocks.
CMat apply_first(const std::vector<CMat>& ops, const CMat& rho) {
  CMat out(4, 4);
  for (const CMat& e : ops) {
    // t = (E x I) rho : row block i of t = sum_k E(i,k) * row block k.
    CMat t(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) {
        const cplx w = e(i, k);
        if (w == cplx(0.0)) continue;
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 4; ++c) t(2 * i + r, c) += w * rho(2 * k + r, c);
      }
    // out += t (E x I)^dag : column block j = sum_k t-block k * conj(E(j,k)).
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const cplx w = std::conj(e(j, k));
        if (w == cplx(0.0)) continue;
        for (int r = 0; r < 4; ++r)
          for (int c = 0; c < 2; ++c) out(r, 2 * j + c) += t(r, 2 * k + c) * w;
      }
  }
  return out;
}

CMat apply_second(const std::vector<CMat>& ops, const CMat& rho) {
  CMat out(4, 4);
  for (const CMat& e : ops) {
    CMat t(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) {
        const cplx w = e(i, k);
        if (w == cplx(0.0)) continue;
        for (int b = 0; b < 2; ++b)  // row block (first qubit)
          for (int c = 0; c < 4; ++c) t(2 * b + i, c) += w * rho(2 * b + k, c);
      }
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const cplx w = std::conj(e(j, k));
        if (w == cplx(0.0)) continue;
        for (int r = 0; r < 4; ++r)
          for (int b = 0; b < 2; ++b) out(r, 2 * b + j) += t(r, 2 * b + k) * w;
      }
  }
  return out;
}

}  // namespace

DensityMatrix apply_local(const DensityMatrix& rho, ChannelKind kind, double q,
                          SideSpec side) {
  const KrausSet set = make_kraus(kind, q);
  CMat m = apply_first(set.ops, rho.mat);
  if (side == SideSpec::BothQubits) m = apply_second(set.ops, m);
  DensityMatrix out;
  out.mat = m.hermitized();
  // Positivity is structural (Kraus form) and hermiticity was just enforced;
  // the trace is the one invariant round-off could visibly break.
  if (std::abs(std::real(out.mat.trace()) - 1.0) > 1e-10)
    throw internal_error("channel application drifted the state trace");
  return out;
}

CptpReport verify_cptp(const KrausSet& k) {
  CptpReport rep{0.0, 0.0};

  CMat sum(2, 2);
  for (const CMat& e : k.ops) sum += e.adjoint() * e;
  sum -= CMat::identity(2);
  rep.completeness_deviation = sum.max_abs();

  for (std::uint64_t i = 0; i < 100; ++i) {
    const DensityMatrix rho = draw_hs_mixed({0x9dc5u, i});
    const CMat evolved = apply_first(k.ops, rho.mat);
    rep.trace_deviation = std::max(
        rep.trace_deviation, std::abs(std::real(evolved.trace()) - 1.0));
  }
  return rep;
}

}  // namespace qdecay
