// generators.cpp — Block-generator calculus implementation

#include "cocycle/generators.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace cocycle::gen {

namespace {

void require_shape(const ComplexMatrix& m, Index r, Index c, const char* who, const char* what) {
    if (m.rows() != r || m.cols() != c)
        throw std::invalid_argument(std::string(who) + ": block " + what + " must be " +
                                    std::to_string(r) + "x" + std::to_string(c) + ", got " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

// Block index -> (h index, khat index). Vacuum components come first.
inline std::pair<Index, Index> block_to_pair(Index b, Index n, Index d) {
    if (b < n) return {b, 0};
    const Index t = b - n;
    return {t / d, 1 + t % d};
}

} // namespace

void BlockGenerator::validate() const {
    if (n <= 0) throw std::invalid_argument("BlockGenerator: n must be positive");
    if (d < 0) throw std::invalid_argument("BlockGenerator: d must be non-negative");
    require_shape(A, n, n, "BlockGenerator", "A");
    require_shape(B, n, n * d, "BlockGenerator", "B");
    require_shape(C, n * d, n, "BlockGenerator", "C");
    require_shape(D, n * d, n * d, "BlockGenerator", "D");
    if (!A.allFinite() || !B.allFinite() || !C.allFinite() || !D.allFinite())
        throw std::invalid_argument("BlockGenerator: entries must be finite");
}

BlockGenerator BlockGenerator::zero(Index n, Index d) {
    BlockGenerator f;
    f.n = n;
    f.d = d;
    f.A = ComplexMatrix::Zero(n, n);
    f.B = ComplexMatrix::Zero(n, n * d);
    f.C = ComplexMatrix::Zero(n * d, n);
    f.D = ComplexMatrix::Zero(n * d, n * d);
    return f;
}

ComplexMatrix assemble(const BlockGenerator& f) {
    f.validate();
    const Index n = f.n, nd = f.n * f.d;
    ComplexMatrix m(n + nd, n + nd);
    m.topLeftCorner(n, n) = f.A;
    m.topRightCorner(n, nd) = f.B;
    m.bottomLeftCorner(nd, n) = f.C;
    m.bottomRightCorner(nd, nd) = f.D;
    return m;
}

BlockGenerator split(const ComplexMatrix& m, Index n, Index d) {
    if (m.rows() != n * (1 + d) || m.cols() != n * (1 + d))
        throw std::invalid_argument("split: matrix is not n(1+d) x n(1+d)");
    BlockGenerator f;
    f.n = n;
    f.d = d;
    const Index nd = n * d;
    f.A = m.topLeftCorner(n, n);
    f.B = m.topRightCorner(n, nd);
    f.C = m.bottomLeftCorner(nd, n);
    f.D = m.bottomRightCorner(nd, nd);
    return f;
}

ComplexMatrix delta_matrix(Index n, Index d) {
    const Index dim = n * (1 + d);
    ComplexMatrix delta = ComplexMatrix::Zero(dim, dim);
    delta.bottomRightCorner(n * d, n * d).setIdentity();
    return delta;
}

ComplexMatrix to_fiber_order(const ComplexMatrix& m, Index n, Index d) {
    const Index dim = n * (1 + d);
    if (m.rows() != dim || m.cols() != dim)
        throw std::invalid_argument("to_fiber_order: dimension mismatch");
    ComplexMatrix out(dim, dim);
    std::vector<Index> blk(static_cast<std::size_t>(dim));
    for (Index b = 0; b < dim; ++b) {
        auto [i, ahat] = block_to_pair(b, n, d);
        blk[static_cast<std::size_t>(i * (1 + d) + ahat)] = b;
    }
    for (Index r = 0; r < dim; ++r)
        for (Index c = 0; c < dim; ++c)
            out(r, c) = m(blk[static_cast<std::size_t>(r)], blk[static_cast<std::size_t>(c)]);
    return out;
}

ComplexMatrix from_fiber_order(const ComplexMatrix& m, Index n, Index d) {
    const Index dim = n * (1 + d);
    if (m.rows() != dim || m.cols() != dim)
        throw std::invalid_argument("from_fiber_order: dimension mismatch");
    ComplexMatrix out(dim, dim);
    std::vector<Index> blk(static_cast<std::size_t>(dim));
    for (Index b = 0; b < dim; ++b) {
        auto [i, ahat] = block_to_pair(b, n, d);
        blk[static_cast<std::size_t>(i * (1 + d) + ahat)] = b;
    }
    for (Index r = 0; r < dim; ++r)
        for (Index c = 0; c < dim; ++c)
            out(blk[static_cast<std::size_t>(r)], blk[static_cast<std::size_t>(c)]) = m(r, c);
    return out;
}

ComplexMatrix ito_form(const BlockGenerator& f) {
    f.validate();
    BlockGenerator g;
    g.n = f.n;
    g.d = f.d;
    g.A = f.A + f.A.adjoint() + f.C.adjoint() * f.C;
    g.B = f.B + f.C.adjoint() + f.C.adjoint() * f.D;
    g.C = g.B.adjoint();
    g.D = f.D + f.D.adjoint() + f.D.adjoint() * f.D;
    return assemble(g);
}

bool is_contraction_generator(const BlockGenerator& f, const Tolerance& tol) {
    return mat::is_psd(-ito_form(f), tol);
}

std::pair<ComplexMatrix, ComplexMatrix> gram_generator_pair(const BlockGenerator& h) {
    h.validate();
    BlockGenerator right;
    right.n = h.n;
    right.d = h.d;
    right.A = h.A + h.A.adjoint() + h.B * h.B.adjoint();
    right.B = h.B + h.C.adjoint() + h.B * h.D.adjoint();
    right.C = right.B.adjoint();
    right.D = h.D + h.D.adjoint() + h.D * h.D.adjoint();
    return {ito_form(h), assemble(right)};
}

ComplexMatrix partial_isometry_defect(const BlockGenerator& h) {
    const ComplexMatrix m = assemble(h);
    const ComplexMatrix delta = delta_matrix(h.n, h.d);
    const ComplexMatrix ms = m.adjoint();
    return m + ms + ms * delta * m + m * delta * m + m * delta * ms + m * delta * ms * delta * m;
}

void LocalProjectionPair::validate(const Tolerance& tol) const {
    if (projection.rows() != projection.cols())
        throw std::invalid_argument("LocalProjectionPair: projection must be square");
    if (vector.size() != projection.rows())
        throw std::invalid_argument("LocalProjectionPair: vector dimension mismatch");
    if (!mat::is_projection(projection, tol))
        throw std::invalid_argument("LocalProjectionPair: P is not a projection within atol");
    if (projection.rows() > 0 && (projection * vector).norm() > tol.atol)
        throw std::invalid_argument("LocalProjectionPair: u is not in the kernel of P");
}

BlockGenerator from_local_pair(const LocalProjectionPair& pair, Index n, const Tolerance& tol) {
    if (n <= 0) throw std::invalid_argument("from_local_pair: n must be positive");
    pair.validate(tol);
    const Index d = pair.noise_dim();
    const ComplexMatrix eye_h = ComplexMatrix::Identity(n, n);
    BlockGenerator f;
    f.n = n;
    f.d = d;
    f.A = -pair.vector.squaredNorm() * eye_h;
    f.B = mat::kron(eye_h, pair.vector.adjoint());
    f.C = mat::kron(eye_h, pair.vector);
    f.D = mat::kron(eye_h, pair.projection - ComplexMatrix::Identity(d, d));
    return f;
}

const char* to_string(ClassifyFailure f) {
    switch (f) {
        case ClassifyFailure::None: return "none";
        case ClassifyFailure::NotInAlgebra: return "not-in-algebra";
        case ClassifyFailure::IdentityViolated: return "identity-violated";
        case ClassifyFailure::StructureViolated: return "structure-violated";
    }
    return "unknown";
}

ProjectionClassification classify_projection_generator(const BlockGenerator& f,
                                                       const BlockPartition& partition,
                                                       const Tolerance& tol) {
    f.validate();
    tol.validate();
    if (partition.n != f.n)
        throw std::invalid_argument("classify_projection_generator: partition size != n");

    ProjectionClassification result;
    const Index nd = f.n * f.d;
    const ComplexMatrix eye_k = ComplexMatrix::Identity(nd, nd);

    const bool in_alg =
        mat::in_block_algebra(to_fiber_order(assemble(f), f.n, f.d), partition, 1 + f.d, tol);

    // Route (ii): F + F*DeltaF = 0, evaluated blockwise.
    BlockGenerator ident;
    ident.n = f.n;
    ident.d = f.d;
    ident.A = f.A + f.C.adjoint() * f.C;
    ident.B = f.B + f.C.adjoint() * f.D;
    ident.C = f.C + f.D.adjoint() * f.C;
    ident.D = f.D + f.D.adjoint() * f.D;
    result.identity_residual = assemble(ident).norm();
    const bool identity_ok = result.identity_residual <= tol.atol;

    // Route (iii): F = [[-L*L, L*],[L, P-I]], P a projection in the algebra, PL = 0.
    const ComplexMatrix p = f.D + eye_k;
    const double proj_res = std::max((p - p.adjoint()).norm(), (p * p - p).norm());
    const double pl_res = f.d > 0 ? (p * f.C).norm() : 0.0;
    const double b_res = (f.B - f.C.adjoint()).norm();
    const double a_res = (f.A + f.C.adjoint() * f.C).norm();
    result.structure_residual = std::max({proj_res, pl_res, b_res, a_res});
    bool structure_ok = result.structure_residual <= tol.atol;
    if (structure_ok && f.d > 0) structure_ok = mat::in_block_algebra(p, partition, f.d, tol);

    result.routes_agree = !in_alg || identity_ok == structure_ok;
    result.ok = in_alg && identity_ok && structure_ok;
    if (result.ok) {
        result.L = f.C;
        result.P = p;
    } else if (!in_alg) {
        result.reason = ClassifyFailure::NotInAlgebra;
    } else if (!identity_ok) {
        result.reason = ClassifyFailure::IdentityViolated;
    } else {
        result.reason = ClassifyFailure::StructureViolated;
    }
    return result;
}

std::optional<BlockPartition> infer_partition(const BlockGenerator& f, const Tolerance& tol) {
    f.validate();
    const ComplexMatrix fk = to_fiber_order(assemble(f), f.n, f.d);
    const Index fib = 1 + f.d;
    for (Index i = 0; i < f.n; ++i)
        for (Index j = 0; j < f.n; ++j) {
            if (i == j) continue;
            if (fk.block(i * fib, j * fib, fib, fib).cwiseAbs().maxCoeff() > tol.atol)
                return std::nullopt;
        }
    // Group h indices with equal diagonal fibers; first occurrence leads.
    BlockPartition part;
    part.n = f.n;
    for (Index i = 0; i < f.n; ++i) {
        bool placed = false;
        for (auto& block : part.blocks) {
            const ComplexMatrix ref = mat::fiber_block(fk, block.front(), fib);
            if ((mat::fiber_block(fk, i, fib) - ref).cwiseAbs().maxCoeff() <= tol.atol) {
                block.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) part.blocks.push_back({i});
    }
    return part;
}

ProjectionClassification classify_projection_generator(const BlockGenerator& f,
                                                       const Tolerance& tol) {
    auto part = infer_partition(f, tol);
    if (!part) {
        ProjectionClassification result;
        result.ok = false;
        result.reason = ClassifyFailure::NotInAlgebra;
        return result;
    }
    return classify_projection_generator(f, *part, tol);
}

bool is_local(const BlockGenerator& f, const Tolerance& tol) {
    f.validate();
    return mat::in_block_algebra(to_fiber_order(assemble(f), f.n, f.d),
                                 BlockPartition::trivial(f.n), 1 + f.d, tol);
}

ComplexMatrix expectation_semigroup(const BlockGenerator& f, double t) {
    f.validate();
    if (t < 0.0) throw std::invalid_argument("expectation_semigroup: t must be >= 0");
    return ComplexMatrix(t * f.A).exp();
}

} // namespace cocycle::gen
