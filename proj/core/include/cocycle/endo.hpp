// endo.hpp — Finite-dimensional Radon-Nikodym theory for single normal
// *-homomorphisms: canonical (V, j) form, commutant projections, subordinate
// maps, and complete positivity via Choi matrices.

#pragma once

#include "cocycle/matcore.hpp"

#include <functional>
#include <vector>

namespace cocycle::endo {

// Normal *-homomorphism B(C^m) -> B(C^n) in canonical form S |-> V (S (x) I_j) V*,
// where V : C^(m*j) -> C^n is an isometry. j = 0 gives the zero map.
struct NormalHom {
    Index m = 0;
    Index j = 0;
    Index n = 0;
    ComplexMatrix V;  // n x (m*j)

    void validate(const Tolerance& tol = {}) const;
    bool is_unital(const Tolerance& tol = {}) const;  // m*j == n, i.e. V unitary
    ComplexMatrix range_projection() const;           // alpha(I) = V V*
};

ComplexMatrix apply(const NormalHom& hom, const ComplexMatrix& s);

// Kraus decomposition alpha(S) = sum_a V_a S V_a* with V_a = V restricted to
// the a-th copy of C^m.
std::vector<ComplexMatrix> kraus_operators(const NormalHom& hom);

// Completely positive map given by a Kraus family (each target_dim x source_dim).
struct CPMap {
    Index source_dim = 0;
    Index target_dim = 0;
    std::vector<ComplexMatrix> kraus;

    void validate() const;
};

ComplexMatrix apply(const CPMap& map, const ComplexMatrix& s);

// Generic linear map on matrices, for maps (like differences) without a Kraus form.
using MatrixMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

// Choi matrix sum_{a,b} E_ab (x) phi(E_ab), of size (m*n)^2.
ComplexMatrix choi_matrix(const MatrixMap& phi, Index m, Index n);
ComplexMatrix choi_matrix(const CPMap& map);
ComplexMatrix choi_matrix(const NormalHom& hom);

bool is_completely_positive(const MatrixMap& phi, Index m, Index n, const Tolerance& tol = {});

// Sampled 2-positivity: apply id_2 (x) phi to random PSD inputs and test the
// outputs for positivity. Deterministic for a fixed seed.
bool is_two_positive_sampled(const MatrixMap& phi, Index m, Index n, int trials,
                             std::uint64_t seed, const Tolerance& tol = {});

// P lies in the commutant of the range of alpha. Two routes must agree:
// commutation with alpha(E_ab) for all matrix units, and the structural form
// P = V (I (x) q) V* + q' with q a j x j projection and q' under (I - VV*).
bool is_commutant_projection(const NormalHom& hom, const ComplexMatrix& p,
                             const Tolerance& tol = {});

// gamma(S) = P alpha(S) for a commutant projection P. The difference
// alpha - gamma is asserted completely positive before returning.
CPMap subordinate(const NormalHom& hom, const ComplexMatrix& p, const Tolerance& tol = {});

// alpha >= beta: beta(I) is a commutant projection of alpha and
// beta(S) = beta(I) alpha(S); cross-checked against the Choi-PSD test of
// alpha - beta.
bool dominates_endo(const NormalHom& alpha, const NormalHom& beta, const Tolerance& tol = {});

// gamma_{P1} == gamma_{P2} as maps; structurally alpha(I) P1 == alpha(I) P2.
bool same_subordinate(const NormalHom& hom, const ComplexMatrix& p1, const ComplexMatrix& p2,
                      const Tolerance& tol = {});

} // namespace cocycle::endo
