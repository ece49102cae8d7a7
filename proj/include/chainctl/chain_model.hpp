#pragma once

#include <vector>

#include "chainctl/types.hpp"

namespace chainctl {

// Couplings below this magnitude are treated as zero by the connectivity
// and theorem predicates.
constexpr double kZeroCouplingTol = 1e-12;

// Physical model of an N-state chain with one locally actuated transition.
// States are labeled 1..N; coupling d_n joins states n and n+1; the actuator
// sits on the (r, r+1) transition and switches between field values f_off
// and f_on. Units are dimensionless (hbar = 1).
struct ChainSpec {
    int n = 0;
    std::vector<double> couplings;  // d_1..d_{N-1}
    std::vector<double> energies;   // E_1..E_N
    int actuator = 1;               // r in [1, N-1]
    double f_off = 0.0;
    double f_on = 0.0;
};

// Throws std::invalid_argument when the spec violates its invariants
// (lengths, actuator range, finiteness).
void validate(const ChainSpec& spec);

// d_i with the boundary convention d_0 = d_N = 0.
double coupling_or_zero(const ChainSpec& spec, int i);

// Tridiagonal drift A_0: diagonal E_n, off-diagonals d_n.
HermitianOp build_drift(const ChainSpec& spec);

// Actuator A_r = |r><r+1| + |r+1><r|.
HermitianOp build_actuator(const ChainSpec& spec);

// First-excitation-subspace Heisenberg chain: energies derived from the
// couplings as E_n = (1/2) sum_{l != n-1,n} d_l - (1/2)(d_{n-1} + d_n)
// with d_0 = d_N = 0.
ChainSpec heisenberg_spec(int n, std::vector<double> couplings, int actuator,
                          double f_off, double f_on);

// Natural "on" level for an on-off switch: cancels the actuated coupling.
double default_f_on(int actuator, const std::vector<double>& couplings);

// omega_{mn} = E_n - E_m (1-based state labels).
double transition_frequency(const ChainSpec& spec, int m, int n);

// True iff every coupling is nonzero, i.e. the transition graph is a path.
bool is_connected(const ChainSpec& spec);

}  // namespace chainctl
