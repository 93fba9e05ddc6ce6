// endo.cpp — Canonical-form homomorphisms, commutants and Choi checks

#include "cocycle/endo.hpp"

#include <random>

namespace cocycle::endo {

namespace {

ComplexMatrix matrix_unit(Index dim, Index a, Index b) {
    ComplexMatrix e = ComplexMatrix::Zero(dim, dim);
    e(a, b) = 1.0;
    return e;
}

ComplexMatrix random_gaussian(Index rows, Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = Complex(dist(rng), dist(rng));
    return m;
}

} // namespace

void NormalHom::validate(const Tolerance& tol) const {
    if (m <= 0) throw std::invalid_argument("NormalHom: m must be positive");
    if (j < 0) throw std::invalid_argument("NormalHom: j must be non-negative");
    if (n <= 0) throw std::invalid_argument("NormalHom: n must be positive");
    if (m * j > n) throw std::invalid_argument("NormalHom: m*j must not exceed n");
    if (V.rows() != n || V.cols() != m * j)
        throw std::invalid_argument("NormalHom: V must be n x (m*j)");
    if (!V.allFinite()) throw std::invalid_argument("NormalHom: V must be finite");
    const Index mj = m * j;
    if ((V.adjoint() * V - ComplexMatrix::Identity(mj, mj)).norm() > tol.atol)
        throw std::invalid_argument("NormalHom: V is not an isometry within atol");
}

bool NormalHom::is_unital(const Tolerance& tol) const {
    return (range_projection() - ComplexMatrix::Identity(n, n)).norm() <= tol.atol;
}

ComplexMatrix NormalHom::range_projection() const { return V * V.adjoint(); }

ComplexMatrix apply(const NormalHom& hom, const ComplexMatrix& s) {
    if (s.rows() != hom.m || s.cols() != hom.m)
        throw std::invalid_argument("endo::apply: S must be m x m");
    return hom.V * mat::kron(s, ComplexMatrix::Identity(hom.j, hom.j)) * hom.V.adjoint();
}

std::vector<ComplexMatrix> kraus_operators(const NormalHom& hom) {
    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<std::size_t>(hom.j));
    for (Index a = 0; a < hom.j; ++a) {
        ComplexMatrix va(hom.n, hom.m);
        for (Index col = 0; col < hom.m; ++col) va.col(col) = hom.V.col(col * hom.j + a);
        out.push_back(std::move(va));
    }
    return out;
}

void CPMap::validate() const {
    if (source_dim <= 0 || target_dim <= 0)
        throw std::invalid_argument("CPMap: dimensions must be positive");
    for (const auto& k : kraus)
        if (k.rows() != target_dim || k.cols() != source_dim)
            throw std::invalid_argument("CPMap: Kraus operator has wrong shape");
}

ComplexMatrix apply(const CPMap& map, const ComplexMatrix& s) {
    if (s.rows() != map.source_dim || s.cols() != map.source_dim)
        throw std::invalid_argument("endo::apply: S must match the CPMap source dimension");
    ComplexMatrix out = ComplexMatrix::Zero(map.target_dim, map.target_dim);
    for (const auto& k : map.kraus) out += k * s * k.adjoint();
    return out;
}

ComplexMatrix choi_matrix(const MatrixMap& phi, Index m, Index n) {
    ComplexMatrix choi = ComplexMatrix::Zero(m * n, m * n);
    for (Index a = 0; a < m; ++a)
        for (Index b = 0; b < m; ++b)
            choi.block(a * n, b * n, n, n) = phi(matrix_unit(m, a, b));
    return choi;
}

ComplexMatrix choi_matrix(const CPMap& map) {
    map.validate();
    return choi_matrix([&](const ComplexMatrix& s) { return endo::apply(map, s); }, map.source_dim,
                       map.target_dim);
}

ComplexMatrix choi_matrix(const NormalHom& hom) {
    return choi_matrix([&](const ComplexMatrix& s) { return endo::apply(hom, s); }, hom.m, hom.n);
}

bool is_completely_positive(const MatrixMap& phi, Index m, Index n, const Tolerance& tol) {
    return mat::is_psd(choi_matrix(phi, m, n), tol);
}

bool is_two_positive_sampled(const MatrixMap& phi, Index m, Index n, int trials,
                             std::uint64_t seed, const Tolerance& tol) {
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        ComplexMatrix y = random_gaussian(2 * m, 2 * m, rng);
        ComplexMatrix x = y * y.adjoint();
        x /= std::max(1.0, x.norm());
        ComplexMatrix z(2 * n, 2 * n);
        for (Index a = 0; a < 2; ++a)
            for (Index b = 0; b < 2; ++b)
                z.block(a * n, b * n, n, n) = phi(x.block(a * m, b * m, m, m));
        if (!mat::is_psd(z, tol)) return false;
    }
    return true;
}

bool is_commutant_projection(const NormalHom& hom, const ComplexMatrix& p,
                             const Tolerance& tol) {
    hom.validate(tol);
    if (p.rows() != hom.n || p.cols() != hom.n)
        throw std::invalid_argument("is_commutant_projection: P must be n x n");
    if (!mat::is_projection(p, tol))
        throw std::invalid_argument("is_commutant_projection: P is not a projection");

    bool commutes = true;
    for (Index a = 0; a < hom.m && commutes; ++a)
        for (Index b = 0; b < hom.m && commutes; ++b) {
            const ComplexMatrix img = endo::apply(hom, matrix_unit(hom.m, a, b));
            if ((p * img - img * p).norm() > tol.atol) commutes = false;
        }

    // Structural route: P = V (I (x) q) V* + q' with q a projection on C^j and
    // q' a projection under I - VV*.
    const ComplexMatrix r = hom.range_projection();
    const Index nn = hom.n;
    const ComplexMatrix rperp = ComplexMatrix::Identity(nn, nn) - r;
    bool structural = (p * r - r * p).norm() <= tol.atol;
    if (structural) {
        const ComplexMatrix w = hom.V.adjoint() * p * hom.V;
        structural = hom.j == 0 ||
                     mat::in_block_algebra(w, BlockPartition::trivial(hom.m), hom.j, tol);
        if (structural && hom.j > 0)
            structural = mat::is_projection(w.topLeftCorner(hom.j, hom.j), tol);
        if (structural) {
            const ComplexMatrix qprime = rperp * p * rperp;
            structural = mat::is_projection(qprime, tol) &&
                         (p - (hom.V * w * hom.V.adjoint() + qprime)).norm() <= tol.atol;
        }
    }

    if (commutes != structural)
        throw InternalConsistencyError(
            "is_commutant_projection: commutation and structural tests disagree");
    return commutes;
}

CPMap subordinate(const NormalHom& hom, const ComplexMatrix& p, const Tolerance& tol) {
    if (!is_commutant_projection(hom, p, tol))
        throw std::invalid_argument("subordinate: P is not a commutant projection");
    CPMap gamma;
    gamma.source_dim = hom.m;
    gamma.target_dim = hom.n;
    for (const auto& va : kraus_operators(hom)) gamma.kraus.push_back(p * va);

    const MatrixMap diff = [&](const ComplexMatrix& s) -> ComplexMatrix {
        return endo::apply(hom, s) - endo::apply(gamma, s);
    };
    if (!is_completely_positive(diff, hom.m, hom.n, tol))
        throw InternalConsistencyError("subordinate: alpha - gamma failed the Choi test");
    return gamma;
}

bool dominates_endo(const NormalHom& alpha, const NormalHom& beta, const Tolerance& tol) {
    alpha.validate(tol);
    beta.validate(tol);
    if (alpha.m != beta.m || alpha.n != beta.n)
        throw std::invalid_argument("dominates_endo: maps must share source and target dimensions");

    const ComplexMatrix beta_unit = beta.range_projection();
    bool structural = true;
    try {
        structural = is_commutant_projection(alpha, beta_unit, tol);
    } catch (const std::invalid_argument&) {
        structural = false;  // beta(I) fails the projection sanity check only on garbage input
    }
    if (structural)
        for (Index a = 0; a < alpha.m && structural; ++a)
            for (Index b = 0; b < alpha.m && structural; ++b) {
                const ComplexMatrix unit = matrix_unit(alpha.m, a, b);
                if ((endo::apply(beta, unit) - beta_unit * endo::apply(alpha, unit)).norm() > tol.atol)
                    structural = false;
            }

    const MatrixMap diff = [&](const ComplexMatrix& s) -> ComplexMatrix {
        return endo::apply(alpha, s) - endo::apply(beta, s);
    };
    const bool choi = is_completely_positive(diff, alpha.m, alpha.n, tol);

    if (structural != choi)
        throw InternalConsistencyError("dominates_endo: structural and Choi tests disagree");
    return structural;
}

bool same_subordinate(const NormalHom& hom, const ComplexMatrix& p1, const ComplexMatrix& p2,
                      const Tolerance& tol) {
    if (!is_commutant_projection(hom, p1, tol) || !is_commutant_projection(hom, p2, tol))
        throw std::invalid_argument("same_subordinate: inputs must be commutant projections");

    bool maps_equal = true;
    for (Index a = 0; a < hom.m && maps_equal; ++a)
        for (Index b = 0; b < hom.m && maps_equal; ++b) {
            const ComplexMatrix img = endo::apply(hom, matrix_unit(hom.m, a, b));
            if ((p1 * img - p2 * img).norm() > tol.atol) maps_equal = false;
        }

    const ComplexMatrix r = hom.range_projection();
    const bool structural = (r * p1 - r * p2).norm() <= tol.atol;
    if (maps_equal != structural)
        throw InternalConsistencyError("same_subordinate: map and structural tests disagree");
    return maps_equal;
}

} // namespace cocycle::endo
