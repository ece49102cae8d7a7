#pragma once

#include <string>
#include <vector>

#include "chainctl/chain_model.hpp"

namespace chainctl {

// Residual gate for the commutator identities; they are exact algebra, so
// anything above float noise signals an implementation bug.
constexpr double kProofResidualTol = 1e-8;

// One verified identity: the defining expression was computed numerically
// and compared against its closed form, trying both orientations. `sign`
// records which one held (+1: as printed, -1: negated).
struct IdentityCheck {
    std::string name;
    double residual = 0.0;
    int sign = +1;
};

struct ProofTraceReport {
    std::string theorem;  // "thm1" or "thm2"
    std::vector<IdentityCheck> identities;
    std::vector<std::string> notes;  // convention findings, coefficient corrections

    double max_residual() const;
    bool all_within(double tol = kProofResidualTol) const;
};

// Numerically executes the generator-extraction recurrences of the two
// controllability proofs, checking every named intermediate against its
// closed form. Index bookkeeping uses the boundary convention
// d_0 = d_N = 0; terms whose indices leave [1, N-1] are dropped.
//
// The diagonal basis elements h_n are Hermitian; the identities are
// evaluated with h_n read as the stored anti-Hermitian element i*h_n,
// and each identity's sign convention is determined numerically and
// recorded rather than assumed.
//
// Preconditions (violations throw std::invalid_argument naming the
// failed condition): thm1 requires thm1_condition(spec) and n >= 4;
// thm2 requires thm2_condition(spec) to hold. A spec whose smallest
// offset k is 0 delegates to the thm1 trace.
ProofTraceReport proof_trace_thm1(const ChainSpec& spec);
ProofTraceReport proof_trace_thm2(const ChainSpec& spec);

}  // namespace chainctl
