#pragma once

#include <string>
#include <vector>

#include "chainctl/io.hpp"

namespace chainctl {

// Published reference dataset: six gate columns, each with a reported
// error, a total duration, and 20 switching times. Shipped as a checked-in
// CSV under data/.
struct Table1Dataset {
    std::vector<GateColumn> columns;
    std::uint64_t file_checksum = 0;  // FNV-1a of the file bytes
};

// FNV-1a of the canonical transcription; guards against silent edits.
constexpr std::uint64_t kTable1Checksum = 0xfc7a9e361c5a21e3ULL;

// Largest published error (the I (x) I column) plus transcription slack.
constexpr double kTable1MaxError = 6.03e-5;
// Published durations are rounded to ~6 significant digits.
constexpr double kTable1SumTol = 5e-4;

Table1Dataset load_table1(const std::string& path);

struct Table1Validation {
    bool checksum_ok = false;
    bool shape_ok = false;        // six columns, 20 time rows each
    double max_sum_mismatch = 0;  // max |sum_k t_k - duration|
    double max_error = 0;
    bool ok = false;
};

Table1Validation validate_table1(const Table1Dataset& dataset);

// Propagates each column under a uniform Heisenberg chain (N = 4, r = 1)
// with the given coupling and switch levels; returns the achieved gate
// error per column. Informational: the parameters behind the published
// sequences are not recorded, so nothing is asserted.
std::vector<double> replay_table1(const Table1Dataset& dataset, double coupling, double f_off,
                                  double f_on);

}  // namespace chainctl
