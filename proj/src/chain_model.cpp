#include "chainctl/chain_model.hpp"

#include <cmath>
#include <string>

namespace chainctl {

void validate(const ChainSpec& spec) {
    if (spec.n < 2) {
        throw std::invalid_argument("ChainSpec: n must be >= 2");
    }
    if (static_cast<int>(spec.couplings.size()) != spec.n - 1) {
        throw std::invalid_argument("ChainSpec: expected " + std::to_string(spec.n - 1) +
                                    " couplings, got " + std::to_string(spec.couplings.size()));
    }
    if (static_cast<int>(spec.energies.size()) != spec.n) {
        throw std::invalid_argument("ChainSpec: expected " + std::to_string(spec.n) +
                                    " energies, got " + std::to_string(spec.energies.size()));
    }
    if (spec.actuator < 1 || spec.actuator > spec.n - 1) {
        throw std::invalid_argument("ChainSpec: actuator must lie in [1, n-1]");
    }
    for (double d : spec.couplings) {
        if (!std::isfinite(d)) throw std::invalid_argument("ChainSpec: non-finite coupling");
    }
    for (double e : spec.energies) {
        if (!std::isfinite(e)) throw std::invalid_argument("ChainSpec: non-finite energy");
    }
    if (!std::isfinite(spec.f_off) || !std::isfinite(spec.f_on)) {
        throw std::invalid_argument("ChainSpec: non-finite switch level");
    }
}

double coupling_or_zero(const ChainSpec& spec, int i) {
    if (i < 1 || i > spec.n - 1) return 0.0;
    return spec.couplings[static_cast<std::size_t>(i - 1)];
}

HermitianOp build_drift(const ChainSpec& spec) {
    validate(spec);
    Matrix m = Matrix::Zero(spec.n, spec.n);
    for (int i = 0; i < spec.n; ++i) {
        m(i, i) = spec.energies[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < spec.n - 1; ++i) {
        m(i, i + 1) = spec.couplings[static_cast<std::size_t>(i)];
        m(i + 1, i) = spec.couplings[static_cast<std::size_t>(i)];
    }
    return HermitianOp(std::move(m));
}

HermitianOp build_actuator(const ChainSpec& spec) {
    validate(spec);
    Matrix m = Matrix::Zero(spec.n, spec.n);
    const int r = spec.actuator;
    m(r - 1, r) = 1.0;
    m(r, r - 1) = 1.0;
    return HermitianOp(std::move(m));
}

ChainSpec heisenberg_spec(int n, std::vector<double> couplings, int actuator,
                          double f_off, double f_on) {
    if (n < 2) {
        throw std::invalid_argument("heisenberg_spec: n must be >= 2");
    }
    if (static_cast<int>(couplings.size()) != n - 1) {
        throw std::invalid_argument("heisenberg_spec: expected " + std::to_string(n - 1) +
                                    " couplings, got " + std::to_string(couplings.size()));
    }
    ChainSpec spec;
    spec.n = n;
    spec.couplings = std::move(couplings);
    spec.actuator = actuator;
    spec.f_off = f_off;
    spec.f_on = f_on;
    spec.energies.resize(static_cast<std::size_t>(n));

    // d_l with l ranging over 0..N, boundary values zero.
    auto d = [&](int l) -> double {
        if (l < 1 || l > n - 1) return 0.0;
        return spec.couplings[static_cast<std::size_t>(l - 1)];
    };
    for (int level = 1; level <= n; ++level) {
        double sum = 0.0;
        for (int l = 0; l <= n; ++l) {
            if (l == level - 1 || l == level) continue;
            sum += d(l);
        }
        spec.energies[static_cast<std::size_t>(level - 1)] =
            0.5 * sum - 0.5 * (d(level - 1) + d(level));
    }
    validate(spec);
    return spec;
}

double default_f_on(int actuator, const std::vector<double>& couplings) {
    if (actuator < 1 || actuator > static_cast<int>(couplings.size())) {
        throw std::invalid_argument("default_f_on: actuator out of range");
    }
    return -couplings[static_cast<std::size_t>(actuator - 1)];
}

double transition_frequency(const ChainSpec& spec, int m, int n) {
    validate(spec);
    if (m < 1 || m > spec.n || n < 1 || n > spec.n) {
        throw std::invalid_argument("transition_frequency: state index out of range");
    }
    return spec.energies[static_cast<std::size_t>(n - 1)] -
           spec.energies[static_cast<std::size_t>(m - 1)];
}

bool is_connected(const ChainSpec& spec) {
    validate(spec);
    for (double d : spec.couplings) {
        if (std::abs(d) <= kZeroCouplingTol) return false;
    }
    return true;
}

}  // namespace chainctl
