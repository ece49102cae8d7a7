#include "chainctl/lie_engine.hpp"

#include <cmath>
#include <string>

namespace chainctl {

namespace {

const Complex kI(0.0, 1.0);

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

}  // namespace

SuElement traceless_part(const HermitianOp& h) {
    const Index n = h.dim();
    Matrix m = h.mat - (h.mat.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
    return SuElement(kI * m);
}

SuElement su_basis_element(SuKind kind, int m, int n, Index dim) {
    Matrix e = Matrix::Zero(dim, dim);
    switch (kind) {
        case SuKind::x:
        case SuKind::y: {
            if (m < 1 || n <= m || n > dim) {
                throw std::invalid_argument("su_basis_element: need 1 <= m < n <= dim");
            }
            // |n><m| has a 1 at (row n, col m)
            if (kind == SuKind::x) {
                e(n - 1, m - 1) = 1.0;
                e(m - 1, n - 1) = -1.0;
            } else {
                e(n - 1, m - 1) = kI;
                e(m - 1, n - 1) = kI;
            }
            break;
        }
        case SuKind::h: {
            if (n < 1 || n > dim - 1) {
                throw std::invalid_argument("su_basis_element: need 1 <= n <= dim-1 for h");
            }
            e(n - 1, n - 1) = kI;
            e(n, n) = -kI;
            break;
        }
    }
    return SuElement(std::move(e));
}

LieBasisSet lie_closure(const std::vector<SuElement>& generators, double tol) {
    if (generators.empty()) {
        throw std::invalid_argument("lie_closure: no generators");
    }
    if (tol <= 0.0) {
        throw std::invalid_argument("lie_closure: tol must be positive");
    }
    const Index n = generators.front().dim();
    for (const auto& g : generators) {
        if (g.dim() != n) throw std::invalid_argument("lie_closure: generator dimension mismatch");
    }
    const int cap = static_cast<int>(n * n - 1);

    std::vector<Matrix> basis;
    basis.reserve(static_cast<std::size_t>(cap));

    // Project out the current span (twice, to resist drift), then add the
    // normalized residual if it is significant relative to the candidate.
    // The residual is re-projected onto the anti-Hermitian traceless
    // subspace: rounding drift out of su(N) is pure error and would be
    // amplified by the normalization of near-threshold residuals.
    auto try_add = [&](const Matrix& cand) -> bool {
        const double cand_norm = hs_norm(cand);
        if (cand_norm <= 1e-14) return false;
        Matrix res = cand;
        for (int pass = 0; pass < 2; ++pass) {
            for (const Matrix& b : basis) {
                res -= hs_inner(b, res) * b;
            }
        }
        res = 0.5 * (res - res.adjoint().eval());
        res -= (res.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
        const double res_norm = hs_norm(res);
        if (res_norm <= tol * cand_norm) return false;
        res /= res_norm;
        // every element must stay in su(N)
        if (max_abs(res + res.adjoint()) > 1e-10 || std::abs(res.trace()) > 1e-10) {
            throw std::runtime_error("lie_closure: element left the anti-Hermitian traceless space");
        }
        basis.push_back(std::move(res));
        return true;
    };

    std::vector<int> frontier;
    for (const auto& g : generators) {
        if (try_add(g.mat)) frontier.push_back(static_cast<int>(basis.size()) - 1);
    }

    while (!frontier.empty() && static_cast<int>(basis.size()) < cap) {
        const int snapshot = static_cast<int>(basis.size());
        std::vector<int> next;
        for (int j : frontier) {
            for (int i = 0; i < snapshot && static_cast<int>(basis.size()) < cap; ++i) {
                if (i == j) continue;
                if (try_add(commutator(basis[static_cast<std::size_t>(i)],
                                       basis[static_cast<std::size_t>(j)]))) {
                    next.push_back(static_cast<int>(basis.size()) - 1);
                }
            }
            if (static_cast<int>(basis.size()) >= cap) break;
        }
        frontier = std::move(next);
    }

    LieBasisSet out;
    out.dim = n;
    out.elements.reserve(basis.size());
    for (auto& b : basis) out.elements.emplace_back(std::move(b));
    return out;
}

int closure_dimension(const ChainSpec& spec, double tol) {
    const auto drift = traceless_part(build_drift(spec));
    const auto actuator = traceless_part(build_actuator(spec));
    return lie_closure({drift, actuator}, tol).dimension();
}

bool is_controllable(const ChainSpec& spec, double tol) {
    return closure_dimension(spec, tol) == spec.n * spec.n - 1;
}

bool thm1_condition(const ChainSpec& spec) {
    validate(spec);
    const int r = spec.actuator;
    const double omega_r = transition_frequency(spec, r, r + 1);
    if (std::abs(omega_r) <= kZeroCouplingTol) return false;
    if (!is_connected(spec)) return false;
    const double dm = coupling_or_zero(spec, r - 1);
    const double dp = coupling_or_zero(spec, r + 1);
    return std::abs(dp * dp - dm * dm) > kZeroCouplingTol;
}

std::optional<int> thm2_condition(const ChainSpec& spec) {
    validate(spec);
    const int r = spec.actuator;
    const double omega_r = transition_frequency(spec, r, r + 1);
    if (std::abs(omega_r) <= kZeroCouplingTol) return std::nullopt;
    if (!is_connected(spec)) return std::nullopt;
    for (int k = 0;; ++k) {
        const int lo = r - k - 1;
        const int hi = r + k + 1;
        if (lo < 1 && hi > spec.n - 1) break;  // both offsets left the chain
        const double dm = coupling_or_zero(spec, lo);
        const double dp = coupling_or_zero(spec, hi);
        if (std::abs(dm * dm - dp * dp) > kZeroCouplingTol) return k;
    }
    return std::nullopt;
}

}  // namespace chainctl
