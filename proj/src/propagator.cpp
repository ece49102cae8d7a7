#include "chainctl/propagator.hpp"

#include <cmath>

namespace chainctl {

namespace {

const Complex kI(0.0, 1.0);

void eigh(const HermitianOp& h, Eigen::VectorXd& w, Matrix& q) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.mat);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("expm_hermitian: eigendecomposition failed");
    }
    w = solver.eigenvalues();
    q = solver.eigenvectors();
}

Matrix phase_apply(const Eigen::VectorXd& w, const Matrix& q, double t) {
    const Index n = q.rows();
    Eigen::VectorXcd phases(n);
    for (Index i = 0; i < n; ++i) {
        phases(i) = std::exp(-kI * t * w(i));
    }
    return q * phases.asDiagonal() * q.adjoint();
}

}  // namespace

void validate(const SwitchSequence& seq) {
    if (seq.durations.empty()) {
        throw std::invalid_argument("SwitchSequence: needs at least one duration");
    }
    for (double t : seq.durations) {
        if (!std::isfinite(t) || t < 0.0) {
            throw std::invalid_argument("SwitchSequence: durations must be finite and >= 0");
        }
    }
}

std::pair<HermitianOp, HermitianOp> switch_hamiltonians(const ChainSpec& spec) {
    const Matrix a0 = build_drift(spec).mat;
    const Matrix ar = build_actuator(spec).mat;
    return {HermitianOp(a0 + spec.f_off * ar), HermitianOp(a0 + spec.f_on * ar)};
}

UnitaryOp expm_hermitian(const HermitianOp& h, double t) {
    if (!std::isfinite(t)) {
        throw std::invalid_argument("expm_hermitian: t must be finite");
    }
    Eigen::VectorXd w;
    Matrix q;
    eigh(h, w, q);
    return UnitaryOp(phase_apply(w, q, t));
}

SwitchPropagator::SwitchPropagator(const HermitianOp& h1, const HermitianOp& h2) {
    if (h1.dim() != h2.dim()) {
        throw std::invalid_argument("SwitchPropagator: Hamiltonian dimensions differ");
    }
    eigh(h1, w1_, q1_);
    eigh(h2, w2_, q2_);
}

Matrix SwitchPropagator::slot_unitary(int slot, double t) const {
    // slots are 1-based; odd -> H^(1), even -> H^(2)
    return slot % 2 == 1 ? phase_apply(w1_, q1_, t) : phase_apply(w2_, q2_, t);
}

UnitaryOp SwitchPropagator::unitary(const SwitchSequence& seq) const {
    validate(seq);
    const Index n = dim();
    Matrix u = Matrix::Identity(n, n);
    for (std::size_t k = 0; k < seq.durations.size(); ++k) {
        u = u * slot_unitary(static_cast<int>(k) + 1, seq.durations[k]);
    }
    return UnitaryOp(std::move(u));
}

UnitaryOp propagate(const SwitchSequence& seq, const HermitianOp& h1, const HermitianOp& h2) {
    return SwitchPropagator(h1, h2).unitary(seq);
}

double gate_error(const UnitaryOp& u, const UnitaryOp& target) {
    if (u.dim() != target.dim()) {
        throw std::invalid_argument("gate_error: dimension mismatch");
    }
    const double overlap = std::abs((target.mat.adjoint() * u.mat).trace());
    return 1.0 - overlap / static_cast<double>(u.dim());
}

double frobenius_phase_distance(const UnitaryOp& u, const UnitaryOp& target) {
    if (u.dim() != target.dim()) {
        throw std::invalid_argument("frobenius_phase_distance: dimension mismatch");
    }
    // ||T - e^{i phi} U||_F^2 = 2N - 2 Re(e^{i phi} Tr(T^dag U)), minimized
    // when the phase aligns the trace with the real axis
    const double n = static_cast<double>(u.dim());
    const double overlap = std::abs((target.mat.adjoint() * u.mat).trace());
    return std::sqrt(std::max(0.0, 2.0 * (n - overlap)));
}

DensityOp evolve_density(const DensityOp& rho, const UnitaryOp& u) {
    if (rho.dim() != u.dim()) {
        throw std::invalid_argument("evolve_density: dimension mismatch");
    }
    return DensityOp(u.mat * rho.mat * u.mat.adjoint());
}

}  // namespace chainctl
