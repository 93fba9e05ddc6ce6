// generators.hpp — Block-generator calculus on the initial space h and noise
// space k: the contraction cone, projection-cocycle classification, locality,
// the partial-isometry identity, and expectation semigroups.
//
// Operators on h (x) khat, khat = C (+) k, are kept in 2x2 block form over the
// decomposition h (+) (h (x) k), with the vacuum component first. Within the
// noise summand h (x) k the index order is h-major: row = i*d + a.

#pragma once

#include "cocycle/matcore.hpp"

#include <optional>
#include <utility>

namespace cocycle::gen {

// Stochastic generator F = [[A,B],[C,D]] of a left cocycle on h (x) khat.
struct BlockGenerator {
    Index n = 0;  // dim of initial space h
    Index d = 0;  // dim of noise space k
    ComplexMatrix A;  // n x n
    ComplexMatrix B;  // n x (n*d)
    ComplexMatrix C;  // (n*d) x n
    ComplexMatrix D;  // (n*d) x (n*d)

    Index dim() const { return n * (1 + d); }
    void validate() const;

    static BlockGenerator zero(Index n, Index d);
};

// Assembled matrix in block order (vacuum components first).
ComplexMatrix assemble(const BlockGenerator& f);
BlockGenerator split(const ComplexMatrix& m, Index n, Index d);

// The projection of h (x) khat onto the noise summand h (x) k, in block order.
ComplexMatrix delta_matrix(Index n, Index d);

// Reindex between block order and fiber (kron) order, where the fiber order
// pairs (h-index, khat-index) with the h index major.
ComplexMatrix to_fiber_order(const ComplexMatrix& m, Index n, Index d);
ComplexMatrix from_fiber_order(const ComplexMatrix& m, Index n, Index d);

// F + F* + F*DeltaF; the generator lies in the contraction cone iff this is <= 0.
ComplexMatrix ito_form(const BlockGenerator& f);

bool is_contraction_generator(const BlockGenerator& f, const Tolerance& tol = {});

// Generators of (X^H)* X^H and X^H (X^H)*:
// (H + H* + H*DeltaH, H + H* + H DeltaH*), both assembled in block order.
std::pair<ComplexMatrix, ComplexMatrix> gram_generator_pair(const BlockGenerator& h);

// H + H* + H*DeltaH + HDeltaH + HDeltaH* + HDeltaH*DeltaH. Vanishes iff X^H is
// partial-isometry-valued.
ComplexMatrix partial_isometry_defect(const BlockGenerator& h);

// Parametrization of local projection cocycles: a projection on k and a
// vector in its kernel.
struct LocalProjectionPair {
    ComplexMatrix projection;  // d x d
    ComplexVector vector;      // in C^d, P*u = 0

    Index noise_dim() const { return projection.rows(); }
    void validate(const Tolerance& tol = {}) const;
};

// F = I_h (x) [[-||u||^2, <u|], [|u>, P - I]].
BlockGenerator from_local_pair(const LocalProjectionPair& pair, Index n, const Tolerance& tol = {});

enum class ClassifyFailure { None, NotInAlgebra, IdentityViolated, StructureViolated };

const char* to_string(ClassifyFailure f);

// Result of testing F for "X^F is projection-valued". Two algebraically
// equivalent routes are evaluated: the identity F + F*DeltaF = 0 and the
// structural form F = [[-L*L, L*],[L, P-I]] with P a projection, PL = 0.
// routes_agree records whether their verdicts coincided; a disagreement is a
// library bug and is asserted against in the test suite.
struct ProjectionClassification {
    bool ok = false;
    ClassifyFailure reason = ClassifyFailure::None;
    bool routes_agree = true;
    ComplexMatrix L;  // (n*d) x n, = C block
    ComplexMatrix P;  // (n*d) x (n*d), = D + I
    double identity_residual = 0.0;
    double structure_residual = 0.0;
};

ProjectionClassification classify_projection_generator(const BlockGenerator& f,
                                                       const BlockPartition& partition,
                                                       const Tolerance& tol = {});

// Coarsest standard-basis partition whose block algebra contains F, or nullopt
// if F couples distinct h basis vectors (then no such masa works).
std::optional<BlockPartition> infer_partition(const BlockGenerator& f, const Tolerance& tol = {});

// Convenience: classify against the inferred partition.
ProjectionClassification classify_projection_generator(const BlockGenerator& f,
                                                       const Tolerance& tol = {});

// F in I_h (x) B(khat): the cocycle commutes with everything the flow has
// already shifted out of its way.
bool is_local(const BlockGenerator& f, const Tolerance& tol = {});

// exp(t*A): the vacuum expectation semigroup of X^F acting on h.
ComplexMatrix expectation_semigroup(const BlockGenerator& f, double t);

} // namespace cocycle::gen
