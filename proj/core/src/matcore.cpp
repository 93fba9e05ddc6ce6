// matcore.cpp — Implementation of the tolerance-aware matrix checks

#include "cocycle/matcore.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace cocycle::mat {

namespace {

void require_square(const ComplexMatrix& m, const char* who) {
    if (m.rows() != m.cols())
        throw std::invalid_argument(std::string(who) + ": matrix must be square, got " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* who) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

} // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

bool is_hermitian(const ComplexMatrix& m, const Tolerance& tol) {
    require_square(m, "is_hermitian");
    return (m - m.adjoint()).norm() <= tol.atol;
}

bool is_psd(const ComplexMatrix& m, const Tolerance& tol) {
    require_square(m, "is_psd");
    if (!is_hermitian(m, tol)) return false;
    if (m.rows() == 0) return true;
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("is_psd: eigensolver failed");
    return es.eigenvalues().minCoeff() >= -tol.atol * (1.0 + m.norm());
}

Index numerical_rank(const ComplexMatrix& m, const Tolerance& tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const auto& sv = svd.singularValues();
    const double cutoff = tol.rank_rtol * sv(0);
    Index r = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++r;
    return sv(0) > 0.0 ? r : 0;
}

bool is_projection(const ComplexMatrix& m, const Tolerance& tol) {
    require_square(m, "is_projection");
    return (m - m.adjoint()).norm() <= tol.atol && (m * m - m).norm() <= tol.atol;
}

ComplexMatrix range_basis(const ComplexMatrix& p, const Tolerance& tol) {
    require_square(p, "range_basis");
    if (!is_projection(p, tol))
        throw std::invalid_argument("range_basis: input is not a projection within atol");
    const Index n = p.rows();
    const Index r = numerical_rank(p, tol);
    ComplexMatrix basis(n, r);
    ComplexMatrix residual = p;
    for (Index k = 0; k < r; ++k) {
        Index pivot = 0;
        double best = -1.0;
        for (Index j = 0; j < n; ++j) {
            const double cn = residual.col(j).norm();
            if (cn > best + 1e-15) {  // strict improvement, lowest index wins ties
                best = cn;
                pivot = j;
            }
        }
        ComplexVector u = residual.col(pivot) / best;
        basis.col(k) = u;
        residual -= u * (u.adjoint() * residual);
    }
    return basis;
}

std::optional<ComplexMatrix> partial_isometry_between(const ComplexMatrix& p,
                                                      const ComplexMatrix& q,
                                                      const Tolerance& tol) {
    require_same_shape(p, q, "partial_isometry_between");
    if (!is_projection(p, tol) || !is_projection(q, tol))
        throw std::invalid_argument("partial_isometry_between: inputs must be projections");
    if (numerical_rank(p, tol) != numerical_rank(q, tol)) return std::nullopt;
    ComplexMatrix up = range_basis(p, tol);
    ComplexMatrix uq = range_basis(q, tol);
    return ComplexMatrix(uq * up.adjoint());
}

std::optional<ComplexMatrix> partial_isometry_between(const ComplexMatrix& p,
                                                      const ComplexMatrix& q,
                                                      const BlockPartition& partition,
                                                      const Tolerance& tol) {
    partition.validate();
    require_same_shape(p, q, "partial_isometry_between");
    if (partition.n <= 0 || p.rows() % partition.n != 0)
        throw std::invalid_argument("partial_isometry_between: dimension not divisible by partition size");
    const Index fib = p.rows() / partition.n;
    if (!in_block_algebra(p, partition, fib, tol) || !in_block_algebra(q, partition, fib, tol))
        throw std::invalid_argument("partial_isometry_between: inputs not in the block algebra");

    ComplexMatrix d = ComplexMatrix::Zero(p.rows(), p.cols());
    for (const auto& block : partition.blocks) {
        const Index rep = block.front();
        ComplexMatrix pb = fiber_block(p, rep, fib);
        ComplexMatrix qb = fiber_block(q, rep, fib);
        auto db = partial_isometry_between(pb, qb, tol);
        if (!db) return std::nullopt;
        for (Index i : block) d.block(i * fib, i * fib, fib, fib) = *db;
    }
    return d;
}

bool in_block_algebra(const ComplexMatrix& t,
                      const BlockPartition& partition,
                      Index fiber_dim,
                      const Tolerance& tol) {
    partition.validate();
    if (fiber_dim < 0) throw std::invalid_argument("in_block_algebra: fiber_dim must be >= 0");
    if (t.rows() != partition.n * fiber_dim || t.cols() != partition.n * fiber_dim)
        throw std::invalid_argument("in_block_algebra: operator is not (n*fiber_dim)^2");
    if (fiber_dim == 0) return true;
    const Index n = partition.n;
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            if (i == j) continue;
            if (t.block(i * fiber_dim, j * fiber_dim, fiber_dim, fiber_dim)
                    .cwiseAbs()
                    .maxCoeff() > tol.atol)
                return false;
        }
    for (const auto& block : partition.blocks) {
        const ComplexMatrix ref = fiber_block(t, block.front(), fiber_dim);
        for (Index i : block)
            if ((fiber_block(t, i, fiber_dim) - ref).cwiseAbs().maxCoeff() > tol.atol) return false;
    }
    return true;
}

ComplexMatrix fiber_block(const ComplexMatrix& t, Index i, Index fiber_dim) {
    return t.block(i * fiber_dim, i * fiber_dim, fiber_dim, fiber_dim);
}

} // namespace cocycle::mat
