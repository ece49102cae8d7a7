#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "chainctl/chain_model.hpp"
#include "chainctl/gate_synth.hpp"
#include "chainctl/propagator.hpp"

namespace chainctl {

// Chain spec files are flat key = value text (UTF-8). Keys: n, couplings
// (comma-separated), energies (optional; absent means the Heisenberg
// energies are derived from the couplings), actuator, f_off (default 0),
// f_on (default -d_r). '#' starts a comment.
ChainSpec parse_spec(const std::string& text);
std::string serialize_spec(const ChainSpec& spec);
ChainSpec load_spec(const std::string& path);
void save_spec(const ChainSpec& spec, const std::string& path);

std::uint64_t fnv1a(std::string_view bytes);

// Hex FNV-1a of the canonical serialization; identifies the spec in
// result files and sidecars.
std::string spec_hash(const ChainSpec& spec);

// Sequence files: CSV with header t_k, one duration per line. A JSON
// sidecar (same path + ".json") records the switch levels, spec hash and
// the operator-ordering convention so exported sequences are unambiguous.
void save_sequence(const SwitchSequence& seq, const ChainSpec& spec, const std::string& path);
SwitchSequence load_sequence(const std::string& path);

void save_result(const SynthesisResult& result, const ChainSpec& spec, const std::string& path);
SynthesisResult load_result(const std::string& path);

// Gate-table CSV: header row of gate names, then error / duration rows and
// one row per switching time.
struct GateColumn {
    std::string gate;
    double error = 0.0;
    double duration = 0.0;
    std::vector<double> times;
};
void save_gate_table(const std::vector<GateColumn>& columns, const std::string& path);
std::vector<GateColumn> load_gate_table(const std::string& path);

}  // namespace chainctl
