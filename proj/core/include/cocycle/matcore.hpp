// matcore.hpp — Dense complex matrix checks with explicit tolerance policy:
// Hermiticity, PSD, rank, projections, partial isometries, block-algebra membership

#pragma once

#include "cocycle/types.hpp"

#include <optional>

namespace cocycle::mat {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& m, const Tolerance& tol = {});

// Hermitian within atol and min eigenvalue >= -atol*(1 + ||M||_F).
bool is_psd(const ComplexMatrix& m, const Tolerance& tol = {});

// Number of singular values exceeding rank_rtol * (largest singular value).
Index numerical_rank(const ComplexMatrix& m, const Tolerance& tol = {});

// ||M - M*|| <= atol and ||M^2 - M|| <= atol (Frobenius).
bool is_projection(const ComplexMatrix& m, const Tolerance& tol = {});

// Orthonormal basis of the range of a projection, as matrix columns.
// Deterministic: column-pivoted Gram-Schmidt over the columns of p, pivoting
// on the largest remaining column norm with ties broken by lowest index.
ComplexMatrix range_basis(const ComplexMatrix& p, const Tolerance& tol = {});

// Partial isometry D with D*D = p and DD* = q, or nullopt iff ranks differ.
// Canonical choice D = (range basis of q) * (range basis of p)*.
std::optional<ComplexMatrix> partial_isometry_between(const ComplexMatrix& p,
                                                      const ComplexMatrix& q,
                                                      const Tolerance& tol = {});

// Blockwise variant: p, q in N (x) B(fiber) for the given basis partition;
// the returned D lies in the same algebra. nullopt iff some blockwise rank differs.
std::optional<ComplexMatrix> partial_isometry_between(const ComplexMatrix& p,
                                                      const ComplexMatrix& q,
                                                      const BlockPartition& partition,
                                                      const Tolerance& tol = {});

// Membership of T in N (x) B(C^fiber_dim), N = span of the partition's block
// projections. T is (n*fiber_dim)^2, indexed by pairs (h-index, fiber-index)
// with the h index major. True iff all h-off-diagonal fiber blocks vanish and
// the diagonal fiber blocks agree within each partition block.
bool in_block_algebra(const ComplexMatrix& t,
                      const BlockPartition& partition,
                      Index fiber_dim,
                      const Tolerance& tol = {});

// Diagonal fiber block T[(i,.),(i,.)] of a kron-ordered operator.
ComplexMatrix fiber_block(const ComplexMatrix& t, Index i, Index fiber_dim);

} // namespace cocycle::mat
