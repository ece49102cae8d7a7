#pragma once

#include <utility>
#include <vector>

#include "chainctl/chain_model.hpp"
#include "chainctl/types.hpp"

namespace chainctl {

// Dwell times t_1..t_K between switch toggles. Odd slots (t_1, t_3, ...)
// evolve under H^(1), even slots under H^(2). The total evolution is
// U = U1(t_1) U2(t_2) ... with the t_1 factor leftmost, i.e. the last
// factor in the product acts first on states.
struct SwitchSequence {
    std::vector<double> durations;
};

void validate(const SwitchSequence& seq);

// The two fixed Hamiltonians of the binary switch:
// H^(1) = A_0 + f_off A_r,  H^(2) = A_0 + f_on A_r.
std::pair<HermitianOp, HermitianOp> switch_hamiltonians(const ChainSpec& spec);

// exp(-i t H) via Hermitian eigendecomposition.
UnitaryOp expm_hermitian(const HermitianOp& h, double t);

// Caches the eigendecompositions of the two switch Hamiltonians so a
// K-slot sequence costs O(K N^2) after two O(N^3) factorizations.
// Immutable after construction; safe to share across threads.
class SwitchPropagator {
  public:
    SwitchPropagator(const HermitianOp& h1, const HermitianOp& h2);

    UnitaryOp unitary(const SwitchSequence& seq) const;
    Index dim() const { return q1_.rows(); }

  private:
    Matrix slot_unitary(int slot, double t) const;

    Eigen::VectorXd w1_, w2_;
    Matrix q1_, q2_;
};

UnitaryOp propagate(const SwitchSequence& seq, const HermitianOp& h1, const HermitianOp& h2);

// 1 - |Tr(target^dag u)| / N, invariant under a global phase of either
// argument.
double gate_error(const UnitaryOp& u, const UnitaryOp& target);

// min over phi of ||target - e^{i phi} u||_F; reported alongside the
// fidelity error for comparability.
double frobenius_phase_distance(const UnitaryOp& u, const UnitaryOp& target);

DensityOp evolve_density(const DensityOp& rho, const UnitaryOp& u);

}  // namespace chainctl
