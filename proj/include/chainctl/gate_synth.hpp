#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chainctl/chain_model.hpp"
#include "chainctl/propagator.hpp"

namespace chainctl {

// One of the six named two-qubit targets (or a custom unitary). The
// first-excitation chain states 1..4 are read as the two-qubit basis
// |00>, |01>, |10>, |11>.
struct GateTarget {
    std::string name;
    UnitaryOp matrix;
};

// Named targets: II, HadI, TI, IHad, IT, CNOT. Had is the SU(2) form
// [[1,-1],[1,1]]/sqrt(2), T = exp(-i pi/8 sigma_z), and CNOT carries the
// determinant-fixing phase e^{-i pi/4}.
GateTarget build_target(const std::string& name);
const std::vector<std::string>& gate_names();

struct SynthesisOptions {
    int k_switches = 20;
    int restarts = 50;
    int max_evaluations = 2000;  // per restart
    std::uint64_t seed = 1;
    double target_error = 1e-4;
    double t_max = 5.0;          // starting durations drawn uniformly from [0, t_max]
    double simplex_scale = 0.5;
};

struct SynthesisResult {
    SwitchSequence sequence;
    double error = 1.0;
    double frobenius_distance = 0.0;
    std::string target;
    long evaluations = 0;
    int restarts_used = 0;
    std::uint64_t seed = 0;
    std::vector<double> restart_errors;  // best error found by each restart
};

// Minimizes gate_error(propagate(clamp(t)), target) over the switching
// times with multi-restart Nelder-Mead. Negative durations are clamped to
// zero inside the objective; the returned sequence is the clamped optimum.
// Per-restart seeds derive deterministically from the master seed, so
// results are reproducible. Stops early once target_error is reached and
// never fails merely because it was not.
SynthesisResult synthesize_gate(const ChainSpec& spec, const GateTarget& target,
                                const SynthesisOptions& opts = {});

// Re-evaluates a claimed sequence; returns its gate error.
double verify_sequence(const ChainSpec& spec, const SwitchSequence& seq,
                       const GateTarget& target);

}  // namespace chainctl
