// subordination.hpp — Order and equivalence structure on projection-cocycle
// generators: the domination test, Murray-von Neumann equivalence of the
// associated projections, intertwiner construction, and the relations on
// locally generated subordinates.

#pragma once

#include "cocycle/generators.hpp"

#include <optional>
#include <vector>

namespace cocycle::sub {

using gen::BlockGenerator;
using gen::LocalProjectionPair;

// Two independent tests of X^F <= X^G, which must agree:
//   algebraic:  G + G Delta F = 0
//   structural: P <= Q and M = (I-Q) L
struct DominationReport {
    bool holds = false;
    bool algebraic_holds = false;
    bool structural_holds = false;
    double algebraic_residual = 0.0;  // ||G + G Delta F||
    double order_residual = 0.0;      // ||P Q - P||
    double block_residual = 0.0;      // ||M - (I-Q) L||
};

// Throws InternalConsistencyError if the two routes disagree.
DominationReport domination_report(const BlockGenerator& g, const BlockGenerator& f,
                                   const Tolerance& tol = {});

// True iff X^F <= X^G. Both inputs must classify as projection generators.
bool dominates(const BlockGenerator& g, const BlockGenerator& f, const Tolerance& tol = {});

// Partial isometry D in N (x) B(k) with D*D = P and DD* = Q, where P, Q are
// the projections of F, G read in the supplied common algebra. nullopt iff
// some blockwise rank differs.
std::optional<ComplexMatrix> equivalent_projections(const BlockGenerator& f,
                                                    const BlockGenerator& g,
                                                    const BlockPartition& partition,
                                                    const Tolerance& tol = {});

// Generator H of a cocycle with (X^H)* X^H = X^F and X^H (X^H)* = X^G:
//   H = [[A, B],[C, D - I]],  C = M + E,  B = L* - E*D,
//   A = -1/2 (L*L + M*M + E*E) + iK.
// D must be a partial isometry from P to Q, E a block column with (I-Q)E = 0,
// K Hermitian and diagonal. All inputs must be h-block-diagonal. The
// postconditions (gram pair equals (F,G), H in the contraction cone, zero
// partial-isometry defect) are asserted before returning.
BlockGenerator construct_intertwiner(const BlockGenerator& f, const BlockGenerator& g,
                                     const ComplexMatrix& d_iso, const ComplexMatrix& e_col,
                                     const ComplexMatrix& k_herm, const Tolerance& tol = {});

struct IntertwinerParams {
    ComplexMatrix d_iso;   // (n*d) x (n*d)
    ComplexMatrix e_col;   // (n*d) x n
    ComplexMatrix k_herm;  // n x n
};

// Inverse of construct_intertwiner on valid intertwiners: recover (D, E, K)
// together with the generators F, G of the gram pair.
IntertwinerParams extract_intertwiner_params(const BlockGenerator& h, const Tolerance& tol = {});

// Local-pair subordination: P_a <= P_b and u_a - u_b in ran P_b and ker P_a.
// Cross-checked against dominates() on the assembled generators.
bool local_pair_leq(const LocalProjectionPair& a, const LocalProjectionPair& b,
                    const Tolerance& tol = {});

// Equivalence of locally generated subordinates: rank P_a == rank P_b.
bool sim_sigma(const LocalProjectionPair& a, const LocalProjectionPair& b,
               const Tolerance& tol = {});

struct SubequivalenceResult {
    bool holds = false;
    std::optional<LocalProjectionPair> witness;  // a' with a ~ a' and a' <= b
};

// Subequivalence: rank P_a <= rank P_b, with a validated witness pair when it
// holds (a projection under P_b of the right rank, paired with u_b).
SubequivalenceResult cles_sigma(const LocalProjectionPair& a, const LocalProjectionPair& b,
                                const Tolerance& tol = {});

// (a <~ b and b <~ a) implies a ~ b. Always true; exposed as a testable property.
bool antisymmetry_check(const LocalProjectionPair& a, const LocalProjectionPair& b,
                        const Tolerance& tol = {});

// The maximal chain of locally generated subordinates for noise dimension d:
// pairs (P_r, 0) with P_r the projection onto the first r coordinates,
// r = 0..d. Adjacent subordinations are verified before returning.
std::vector<LocalProjectionPair> build_chain(Index d);

// Strictly ordered chains have strictly increasing projection ranks in
// {0..d}, so their length never exceeds 1 + d.
constexpr Index max_chain_length(Index d) { return d + 1; }

} // namespace cocycle::sub
