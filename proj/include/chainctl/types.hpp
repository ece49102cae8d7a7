#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace chainctl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

// Validation tolerances for the operator types below.
constexpr double kHermitianTol = 1e-12;      // relative to max-abs entry
constexpr double kAntiHermitianTol = 1e-12;  // absolute
constexpr double kTraceTol = 1e-12;
constexpr double kUnitaryTol = 1e-10;
constexpr double kDensityPsdTol = 1e-10;
constexpr double kDensityTraceTol = 1e-10;

inline double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Hilbert-Schmidt inner product <A,B> = Re Tr(A^dag B), the real inner
// product on matrix space used throughout.
inline double hs_inner(const Matrix& a, const Matrix& b) {
    return a.conjugate().cwiseProduct(b).sum().real();
}

inline double hs_norm(const Matrix& a) {
    return std::sqrt(std::max(0.0, hs_inner(a, a)));
}

// Dense Hermitian operator (Hamiltonians, observables).
struct HermitianOp {
    Matrix mat;

    HermitianOp() = default;
    explicit HermitianOp(Matrix m) : mat(std::move(m)) {
        if (mat.rows() != mat.cols()) {
            throw std::invalid_argument("HermitianOp: matrix must be square");
        }
        const double scale = max_abs(mat);
        if (max_abs(mat - mat.adjoint()) > kHermitianTol * std::max(scale, 1.0)) {
            throw std::invalid_argument("HermitianOp: matrix is not Hermitian");
        }
    }

    Index dim() const { return mat.rows(); }
};

// Element of u(N)/su(N): anti-Hermitian, trace-zero.
struct SuElement {
    Matrix mat;

    SuElement() = default;
    explicit SuElement(Matrix m) : mat(std::move(m)) {
        if (mat.rows() != mat.cols()) {
            throw std::invalid_argument("SuElement: matrix must be square");
        }
        const double scale = std::max(max_abs(mat), 1.0);
        if (max_abs(mat + mat.adjoint()) > kAntiHermitianTol * scale) {
            throw std::invalid_argument("SuElement: matrix is not anti-Hermitian");
        }
        if (std::abs(mat.trace()) > kTraceTol * scale) {
            throw std::invalid_argument("SuElement: matrix is not traceless");
        }
    }

    Index dim() const { return mat.rows(); }
};

struct UnitaryOp {
    Matrix mat;

    UnitaryOp() = default;
    explicit UnitaryOp(Matrix m) : mat(std::move(m)) {
        if (mat.rows() != mat.cols()) {
            throw std::invalid_argument("UnitaryOp: matrix must be square");
        }
        const Matrix gram = mat.adjoint() * mat;
        if (max_abs(gram - Matrix::Identity(mat.rows(), mat.cols())) > kUnitaryTol) {
            throw std::invalid_argument("UnitaryOp: matrix is not unitary");
        }
    }

    Index dim() const { return mat.rows(); }

    static UnitaryOp identity(Index n) { return UnitaryOp(Matrix::Identity(n, n)); }
};

// Positive unit-trace operator (quantum state).
struct DensityOp {
    Matrix mat;

    DensityOp() = default;
    explicit DensityOp(Matrix m) : mat(std::move(m)) {
        if (mat.rows() != mat.cols()) {
            throw std::invalid_argument("DensityOp: matrix must be square");
        }
        if (max_abs(mat - mat.adjoint()) > kDensityPsdTol) {
            throw std::invalid_argument("DensityOp: matrix is not Hermitian");
        }
        if (std::abs(mat.trace() - Complex(1.0, 0.0)) > kDensityTraceTol) {
            throw std::invalid_argument("DensityOp: trace must equal 1");
        }
        Eigen::SelfAdjointEigenSolver<Matrix> solver(mat, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) {
            throw std::runtime_error("DensityOp: eigenvalue check failed");
        }
        if (solver.eigenvalues().minCoeff() < -kDensityPsdTol) {
            throw std::invalid_argument("DensityOp: matrix is not positive semidefinite");
        }
    }

    Index dim() const { return mat.rows(); }
};

}  // namespace chainctl
