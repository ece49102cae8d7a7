#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "chainctl/lie_engine.hpp"

namespace chainctl::cli {

// Stable exit codes shared by all subcommands.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;      // usage, parse or file errors
constexpr int kExitVerdict = 2;    // negative verdict (not controllable, hypothesis failed)
constexpr int kExitUnreached = 3;  // synthesis target error not reached

struct CheckArgs {
    std::string spec_path;
    std::string out_path;  // optional JSON report
    double tol = kClosureTol;
    bool json_stdout = false;
};
int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err);

struct ProoftraceArgs {
    std::string spec_path;
    std::string out_path;
    bool json_stdout = false;
};
int cmd_prooftrace(const ProoftraceArgs& args, std::ostream& out, std::ostream& err);

struct SynthArgs {
    std::string spec_path;
    std::string gate;  // one of the named gates, or "all"
    int k_switches = 20;
    int restarts = 50;
    int max_evaluations = 2000;
    std::uint64_t seed = 1;
    double target_error = 1e-4;
    std::string out_path;  // JSON result; the sequence CSV lands beside it
    bool json_stdout = false;
};
int cmd_synth(const SynthArgs& args, std::ostream& out, std::ostream& err);

struct VerifyArgs {
    std::string spec_path;
    std::string sequence_path;
    std::string gate;
    double target_error = 1e-4;
    std::string out_path;
    bool json_stdout = false;
};
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);

struct Table1Args {
    std::string action;  // "validate" or "replay"
    std::string data_path = "data/table1.csv";
    double coupling = 1.0;
    double f_off = 0.0;
    double f_on = -1.0;
    std::string out_path;
    bool json_stdout = false;
};
int cmd_table1(const Table1Args& args, std::ostream& out, std::ostream& err);

struct PlotArgs {
    std::string input_path;  // synthesis result or proof-trace report JSON
    std::string out_path;    // SVG
};
int cmd_plot(const PlotArgs& args, std::ostream& out, std::ostream& err);

}  // namespace chainctl::cli
