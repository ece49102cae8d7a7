#include "chainctl/table1.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace chainctl {

Table1Dataset load_table1(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open table file: " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    const std::string bytes = os.str();

    Table1Dataset dataset;
    dataset.file_checksum = fnv1a(bytes);
    dataset.columns = load_gate_table(path);
    return dataset;
}

Table1Validation validate_table1(const Table1Dataset& dataset) {
    Table1Validation v;
    v.checksum_ok = dataset.file_checksum == kTable1Checksum;
    v.shape_ok = dataset.columns.size() == 6;
    for (const auto& col : dataset.columns) {
        if (col.times.size() != 20) v.shape_ok = false;
        const double sum = std::accumulate(col.times.begin(), col.times.end(), 0.0);
        v.max_sum_mismatch = std::max(v.max_sum_mismatch, std::abs(sum - col.duration));
        v.max_error = std::max(v.max_error, col.error);
    }
    v.ok = v.checksum_ok && v.shape_ok && v.max_sum_mismatch <= kTable1SumTol &&
           v.max_error <= kTable1MaxError;
    return v;
}

std::vector<double> replay_table1(const Table1Dataset& dataset, double coupling, double f_off,
                                  double f_on) {
    const ChainSpec spec =
        heisenberg_spec(4, {coupling, coupling, coupling}, 1, f_off, f_on);
    const auto [h1, h2] = switch_hamiltonians(spec);
    const SwitchPropagator prop(h1, h2);

    std::vector<double> errors;
    errors.reserve(dataset.columns.size());
    for (const auto& col : dataset.columns) {
        const GateTarget target = build_target(col.gate);
        SwitchSequence seq{col.times};
        errors.push_back(gate_error(prop.unitary(seq), target.matrix));
    }
    return errors;
}

}  // namespace chainctl
