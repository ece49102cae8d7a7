#include "chainctl/gate_synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "chainctl/optimize.hpp"

namespace chainctl {

namespace {

const Complex kI(0.0, 1.0);

Matrix kron2(const Matrix& a, const Matrix& b) {
    Matrix out(4, 4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix hadamard_su2() {
    Matrix m(2, 2);
    m << 1, -1, 1, 1;
    return m / std::sqrt(2.0);
}

Matrix t_gate() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::exp(-kI * (M_PI / 8.0));
    m(1, 1) = std::exp(kI * (M_PI / 8.0));
    return m;
}

Matrix cnot_gate() {
    Matrix m = Matrix::Zero(4, 4);
    m.block<2, 2>(0, 0) = Matrix::Identity(2, 2);
    m.block<2, 2>(2, 2) = pauli_x();
    return std::exp(-kI * (M_PI / 4.0)) * m;
}

// splitmix64 step; decorrelates per-restart seeds drawn from one master
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

const std::vector<std::string>& gate_names() {
    static const std::vector<std::string> names = {"II", "HadI", "TI", "IHad", "IT", "CNOT"};
    return names;
}

GateTarget build_target(const std::string& name) {
    const Matrix i2 = Matrix::Identity(2, 2);
    Matrix m;
    if (name == "II") {
        m = Matrix::Identity(4, 4);
    } else if (name == "HadI") {
        m = kron2(hadamard_su2(), i2);
    } else if (name == "TI") {
        m = kron2(t_gate(), i2);
    } else if (name == "IHad") {
        m = kron2(i2, hadamard_su2());
    } else if (name == "IT") {
        m = kron2(i2, t_gate());
    } else if (name == "CNOT") {
        m = cnot_gate();
    } else {
        throw std::invalid_argument("build_target: unknown gate '" + name + "'");
    }
    return GateTarget{name, UnitaryOp(std::move(m))};
}

SynthesisResult synthesize_gate(const ChainSpec& spec, const GateTarget& target,
                                const SynthesisOptions& opts) {
    validate(spec);
    if (spec.n != target.matrix.dim()) {
        throw std::invalid_argument("synthesize_gate: spec and target dimensions differ");
    }
    if (opts.k_switches < 1) {
        throw std::invalid_argument("synthesize_gate: k_switches must be >= 1");
    }
    if (opts.restarts < 1) {
        throw std::invalid_argument("synthesize_gate: restarts must be >= 1");
    }

    const auto [h1, h2] = switch_hamiltonians(spec);
    const SwitchPropagator prop(h1, h2);
    const std::size_t k = static_cast<std::size_t>(opts.k_switches);

    auto clamp_seq = [&](const std::vector<double>& x) {
        SwitchSequence seq;
        seq.durations.resize(k);
        for (std::size_t i = 0; i < k; ++i) seq.durations[i] = std::max(0.0, x[i]);
        return seq;
    };
    auto objective = [&](const std::vector<double>& x) {
        return gate_error(prop.unitary(clamp_seq(x)), target.matrix);
    };

    SynthesisResult best;
    best.target = target.name;
    best.seed = opts.seed;

    for (int restart = 0; restart < opts.restarts; ++restart) {
        std::mt19937_64 rng(mix_seed(opts.seed, static_cast<std::uint64_t>(restart)));
        std::uniform_real_distribution<double> uniform(0.0, opts.t_max);
        std::vector<double> x0(k);
        for (double& xi : x0) xi = uniform(rng);

        NelderMeadOptions nm;
        nm.simplex_scale = opts.simplex_scale;
        nm.max_evaluations = opts.max_evaluations;
        nm.target_value = opts.target_error;
        const NelderMeadResult run = nelder_mead(objective, x0, nm);

        best.evaluations += run.evaluations;
        best.restart_errors.push_back(run.value);
        ++best.restarts_used;
        if (run.value < best.error) {
            best.error = run.value;
            best.sequence = clamp_seq(run.x);
        }
        if (best.error <= opts.target_error) break;
    }

    const UnitaryOp achieved = prop.unitary(best.sequence);
    best.error = gate_error(achieved, target.matrix);
    best.frobenius_distance = frobenius_phase_distance(achieved, target.matrix);
    return best;
}

double verify_sequence(const ChainSpec& spec, const SwitchSequence& seq,
                       const GateTarget& target) {
    validate(spec);
    if (spec.n != target.matrix.dim()) {
        throw std::invalid_argument("verify_sequence: spec and target dimensions differ");
    }
    const auto [h1, h2] = switch_hamiltonians(spec);
    return gate_error(propagate(seq, h1, h2), target.matrix);
}

}  // namespace chainctl
