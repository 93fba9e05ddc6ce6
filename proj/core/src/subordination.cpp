// subordination.cpp — Domination, equivalence and intertwiners for
// projection-cocycle generators

#include "cocycle/subordination.hpp"

#include <cmath>

namespace cocycle::sub {

namespace {

const Complex kI{0.0, 1.0};

struct ClassifiedPair {
    gen::ProjectionClassification f;
    gen::ProjectionClassification g;
};

ClassifiedPair classify_both(const BlockGenerator& g, const BlockGenerator& f,
                             const Tolerance& tol, const char* who) {
    if (f.n != g.n || f.d != g.d)
        throw std::invalid_argument(std::string(who) + ": generators must share (n, d)");
    ClassifiedPair out{gen::classify_projection_generator(f, tol),
                       gen::classify_projection_generator(g, tol)};
    if (!out.f.ok)
        throw std::invalid_argument(std::string(who) + ": F is not a projection generator (" +
                                    gen::to_string(out.f.reason) + ")");
    if (!out.g.ok)
        throw std::invalid_argument(std::string(who) + ": G is not a projection generator (" +
                                    gen::to_string(out.g.reason) + ")");
    return out;
}

// E must be a block column: rows (i,.) vanish outside column i.
bool is_block_column(const ComplexMatrix& e, Index n, Index d, const Tolerance& tol) {
    if (e.rows() != n * d || e.cols() != n) return false;
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            if (i == j) continue;
            if (d > 0 && e.block(i * d, j, d, 1).cwiseAbs().maxCoeff() > tol.atol) return false;
        }
    return true;
}

bool is_diagonal_hermitian(const ComplexMatrix& k, const Tolerance& tol) {
    if (k.rows() != k.cols()) return false;
    if ((k - k.adjoint()).norm() > tol.atol) return false;
    ComplexMatrix off = k;
    off.diagonal().setZero();
    return off.size() == 0 || off.cwiseAbs().maxCoeff() <= tol.atol;
}

} // namespace

DominationReport domination_report(const BlockGenerator& g, const BlockGenerator& f,
                                   const Tolerance& tol) {
    tol.validate();
    auto cls = classify_both(g, f, tol, "domination_report");

    DominationReport report;
    const ComplexMatrix fa = gen::assemble(f);
    const ComplexMatrix ga = gen::assemble(g);
    const ComplexMatrix delta = gen::delta_matrix(f.n, f.d);
    report.algebraic_residual = (ga + ga * delta * fa).norm();
    report.algebraic_holds = report.algebraic_residual <= tol.atol;

    const ComplexMatrix& p = cls.f.P;
    const ComplexMatrix& q = cls.g.P;
    const Index nd = f.n * f.d;
    report.order_residual = (p * q - p).norm();
    report.block_residual =
        (cls.g.L - (ComplexMatrix::Identity(nd, nd) - q) * cls.f.L).norm();
    report.structural_holds =
        report.order_residual <= tol.atol && report.block_residual <= tol.atol;

    if (report.algebraic_holds != report.structural_holds)
        throw InternalConsistencyError(
            "domination_report: algebraic and structural tests disagree (residuals " +
            std::to_string(report.algebraic_residual) + " vs " +
            std::to_string(report.order_residual) + ", " +
            std::to_string(report.block_residual) + ")");
    report.holds = report.algebraic_holds;
    return report;
}

bool dominates(const BlockGenerator& g, const BlockGenerator& f, const Tolerance& tol) {
    return domination_report(g, f, tol).holds;
}

std::optional<ComplexMatrix> equivalent_projections(const BlockGenerator& f,
                                                    const BlockGenerator& g,
                                                    const BlockPartition& partition,
                                                    const Tolerance& tol) {
    tol.validate();
    if (f.n != g.n || f.d != g.d)
        throw std::invalid_argument("equivalent_projections: generators must share (n, d)");
    auto cf = gen::classify_projection_generator(f, partition, tol);
    auto cg = gen::classify_projection_generator(g, partition, tol);
    if (!cf.ok || !cg.ok)
        throw std::invalid_argument(
            "equivalent_projections: inputs are not projection generators in the supplied algebra");
    if (f.d == 0) return ComplexMatrix::Zero(0, 0);
    return mat::partial_isometry_between(cf.P, cg.P, partition, tol);
}

BlockGenerator construct_intertwiner(const BlockGenerator& f, const BlockGenerator& g,
                                     const ComplexMatrix& d_iso, const ComplexMatrix& e_col,
                                     const ComplexMatrix& k_herm, const Tolerance& tol) {
    tol.validate();
    auto cls = classify_both(g, f, tol, "construct_intertwiner");
    const Index n = f.n, d = f.d, nd = f.n * f.d;
    const ComplexMatrix& p = cls.f.P;
    const ComplexMatrix& q = cls.g.P;
    const ComplexMatrix& l = cls.f.L;
    const ComplexMatrix& m = cls.g.L;

    if (d_iso.rows() != nd || d_iso.cols() != nd)
        throw std::invalid_argument("construct_intertwiner: D must be (n*d) x (n*d)");
    if (!mat::in_block_algebra(d_iso, BlockPartition::singletons(n), d, tol))
        throw std::invalid_argument("construct_intertwiner: D couples distinct h basis vectors");
    if ((d_iso.adjoint() * d_iso - p).norm() > 10 * tol.atol)
        throw std::invalid_argument("construct_intertwiner: D*D != P");
    if ((d_iso * d_iso.adjoint() - q).norm() > 10 * tol.atol)
        throw std::invalid_argument("construct_intertwiner: DD* != Q");
    if (!is_block_column(e_col, n, d, tol))
        throw std::invalid_argument("construct_intertwiner: E is not a block column over h");
    if (((ComplexMatrix::Identity(nd, nd) - q) * e_col).norm() > tol.atol)
        throw std::invalid_argument("construct_intertwiner: (I-Q)E != 0");
    if (!is_diagonal_hermitian(k_herm, tol) || k_herm.rows() != n)
        throw std::invalid_argument("construct_intertwiner: K must be Hermitian and diagonal");

    BlockGenerator h;
    h.n = n;
    h.d = d;
    h.C = m + e_col;
    h.B = l.adjoint() - e_col.adjoint() * d_iso;
    h.A = -0.5 * (l.adjoint() * l + m.adjoint() * m + e_col.adjoint() * e_col) + kI * k_herm;
    h.D = d_iso - ComplexMatrix::Identity(nd, nd);

    const auto [theta_left, theta_right] = gen::gram_generator_pair(h);
    const double scale = 1.0 + gen::assemble(f).norm() + gen::assemble(g).norm();
    if ((theta_left - gen::assemble(f)).norm() > tol.atol * scale ||
        (theta_right - gen::assemble(g)).norm() > tol.atol * scale)
        throw InternalConsistencyError("construct_intertwiner: gram pair does not match (F, G)");
    if (!gen::is_contraction_generator(h, tol))
        throw InternalConsistencyError("construct_intertwiner: H is outside the contraction cone");
    if (gen::partial_isometry_defect(h).norm() > tol.atol * scale)
        throw InternalConsistencyError("construct_intertwiner: partial isometry identity violated");
    return h;
}

IntertwinerParams extract_intertwiner_params(const BlockGenerator& h, const Tolerance& tol) {
    h.validate();
    const Index nd = h.n * h.d;
    const auto [theta_left, theta_right] = gen::gram_generator_pair(h);
    const BlockGenerator g = gen::split(theta_right, h.n, h.d);
    IntertwinerParams params;
    params.d_iso = h.D + ComplexMatrix::Identity(nd, nd);
    params.e_col = h.C - g.C;
    params.k_herm = (h.A - h.A.adjoint()) / (2.0 * kI);
    if (!is_diagonal_hermitian(params.k_herm, tol))
        throw std::invalid_argument("extract_intertwiner_params: Im A is not diagonal Hermitian");
    return params;
}

bool local_pair_leq(const LocalProjectionPair& a, const LocalProjectionPair& b,
                    const Tolerance& tol) {
    tol.validate();
    a.validate(tol);
    b.validate(tol);
    if (a.noise_dim() != b.noise_dim())
        throw std::invalid_argument("local_pair_leq: noise dimensions differ");

    const ComplexVector w = a.vector - b.vector;
    const bool order_ok = (a.projection * b.projection - a.projection).norm() <= tol.atol;
    const bool vector_ok =
        (b.projection * w - w).norm() <= tol.atol && (a.projection * w).norm() <= tol.atol;
    const bool direct = order_ok && vector_ok;

    const bool via_generators =
        dominates(gen::from_local_pair(b, 1, tol), gen::from_local_pair(a, 1, tol), tol);
    if (direct != via_generators)
        throw InternalConsistencyError("local_pair_leq: pair test and generator test disagree");
    return direct;
}

bool sim_sigma(const LocalProjectionPair& a, const LocalProjectionPair& b,
               const Tolerance& tol) {
    a.validate(tol);
    b.validate(tol);
    if (a.noise_dim() != b.noise_dim())
        throw std::invalid_argument("sim_sigma: noise dimensions differ");
    return mat::numerical_rank(a.projection, tol) == mat::numerical_rank(b.projection, tol);
}

SubequivalenceResult cles_sigma(const LocalProjectionPair& a, const LocalProjectionPair& b,
                                const Tolerance& tol) {
    a.validate(tol);
    b.validate(tol);
    if (a.noise_dim() != b.noise_dim())
        throw std::invalid_argument("cles_sigma: noise dimensions differ");

    SubequivalenceResult result;
    const Index ra = mat::numerical_rank(a.projection, tol);
    const Index rb = mat::numerical_rank(b.projection, tol);
    result.holds = ra <= rb;
    if (!result.holds) return result;

    const ComplexMatrix basis = mat::range_basis(b.projection, tol).leftCols(ra);
    LocalProjectionPair witness;
    witness.projection = basis * basis.adjoint();
    witness.vector = b.vector;
    if (!sim_sigma(a, witness, tol) || !local_pair_leq(witness, b, tol))
        throw InternalConsistencyError("cles_sigma: constructed witness failed validation");
    result.witness = std::move(witness);
    return result;
}

bool antisymmetry_check(const LocalProjectionPair& a, const LocalProjectionPair& b,
                        const Tolerance& tol) {
    const bool ab = cles_sigma(a, b, tol).holds;
    const bool ba = cles_sigma(b, a, tol).holds;
    return !(ab && ba) || sim_sigma(a, b, tol);
}

std::vector<LocalProjectionPair> build_chain(Index d) {
    if (d < 1) throw std::invalid_argument("build_chain: d must be >= 1");
    std::vector<LocalProjectionPair> chain;
    for (Index r = 0; r <= d; ++r) {
        LocalProjectionPair pair;
        pair.projection = ComplexMatrix::Zero(d, d);
        pair.projection.topLeftCorner(r, r).setIdentity();
        pair.vector = ComplexVector::Zero(d);
        chain.push_back(std::move(pair));
    }
    for (std::size_t r = 0; r + 1 < chain.size(); ++r)
        if (!local_pair_leq(chain[r], chain[r + 1]))
            throw InternalConsistencyError("build_chain: adjacent subordination failed");
    return chain;
}

} // namespace cocycle::sub
