#pragma once

#include <optional>
#include <vector>

#include "chainctl/chain_model.hpp"
#include "chainctl/types.hpp"

namespace chainctl {

// Residual threshold for rank decisions in the closure, relative to the
// candidate commutator's norm.
constexpr double kClosureTol = 1e-10;

// Orthonormal (Hilbert-Schmidt) basis of a subalgebra of su(N).
struct LieBasisSet {
    Index dim = 0;                    // Hilbert space dimension N
    std::vector<SuElement> elements;  // pairwise orthonormal

    int dimension() const { return static_cast<int>(elements.size()); }
};

// i(H - Tr(H)/N I): the trace-zero anti-Hermitian counterpart of H.
SuElement traceless_part(const HermitianOp& h);

enum class SuKind { x, y, h };

// Standard su(N) basis elements (1-based indices):
//   x_{mn} = |n><m| - |m><n|
//   y_{mn} = i(|n><m| + |m><n|)
//   h_n    = |n><n| - |n+1><n+1|, stored as i*h_n so it lives in the
//            anti-Hermitian space.
// For x and y require 1 <= m < n <= dim; for h require 1 <= n <= dim-1
// (m is ignored).
SuElement su_basis_element(SuKind kind, int m, int n, Index dim);

// Smallest real Lie algebra containing the generators, as an orthonormal
// basis. Generators are orthonormalized first; then pairs (existing, new)
// are commuted breadth-first, each commutator is projected onto the current
// span (two Gram-Schmidt passes), and the normalized residual is added when
// its norm exceeds tol relative to the commutator norm. Stops when a sweep
// adds nothing or the dimension reaches N^2 - 1. Deterministic: elements
// are kept in insertion order and pairs are processed in index order.
LieBasisSet lie_closure(const std::vector<SuElement>& generators, double tol = kClosureTol);

// Dimension of the dynamical Lie algebra generated by the traceless drift
// and actuator.
int closure_dimension(const ChainSpec& spec, double tol = kClosureTol);

// True iff the dynamical Lie algebra is all of su(N), i.e. has dimension
// N^2 - 1.
bool is_controllable(const ChainSpec& spec, double tol = kClosureTol);

// Explicit sufficient condition: omega_r != 0, all d_n != 0, and
// d_{r+1}^2 != d_{r-1}^2 (boundary convention d_0 = d_N = 0).
bool thm1_condition(const ChainSpec& spec);

// Generalized condition: omega_r != 0, all d_n != 0, and
// d_{r-k-1}^2 != d_{r+k+1}^2 for some k >= 0. Returns the smallest such k,
// or nullopt when no k exists or the other conditions fail.
std::optional<int> thm2_condition(const ChainSpec& spec);

}  // namespace chainctl
