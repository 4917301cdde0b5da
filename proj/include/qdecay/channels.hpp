#pragma once

#include <vector>

#include "qdecay/mat.hpp"
#include "qdecay/qstate.hpp"

namespace qdecay {

enum class ChannelKind { Depolarizing, AmplitudeDamping, PhaseDamping };

// Which qubits the single-qubit channel acts on.
enum class SideSpec { BothQubits, FirstOnly };

const char* channel_name(ChannelKind k);

// Single-qubit Kraus operators at noise strength q in [0, 1]:
//   depolarizing:      E0 = sqrt(1-3q/4) I,  E_i = sqrt(q/4) sigma_i
//   amplitude damping: E0 = |0><0| + sqrt(1-q)|1><1|,  E1 = sqrt(q)|0><1|
//   phase damping:     E0 = sqrt(1-q) I,  E1 = sqrt(q)|0><0|,  E2 = sqrt(q)|1><1|
struct KrausSet {
  ChannelKind kind;
  double q;
  std::vector<CMat> ops;  // 2x2 each
};

KrausSet make_kraus(ChannelKind kind, double q);

// Applies the channel to one or both qubits of a two-qubit state:
// sequentially sum_i (E_i x I) rho (E_i x I)^dag, then (for BothQubits)
// sum_j (I x E_j) rho (I x E_j)^dag.  The output is re-hermitized to kill
// accumulated roundoff skew.  No validation here; this is the hot loop.
DensityMatrix apply_local(const DensityMatrix& rho, ChannelKind kind, double q,
                          SideSpec side = SideSpec::BothQubits);

struct CptpReport {
  double completeness_deviation;  // max-norm of sum E^dag E - I
  double trace_deviation;         // max |tr Lambda(rho) - 1| over probe states
};

// Checks sum_i E_i^dag E_i = I and trace preservation of the induced
// two-qubit map on 100 fixed pseudo-random density matrices.
CptpReport verify_cptp(const KrausSet& k);

}  // namespace qdecay
