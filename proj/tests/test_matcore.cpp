// test_matcore.cpp — Tolerance-aware matrix checks

#include "cocycle/matcore.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace cocycle;
using testsupport::random_matrix;
using testsupport::random_projection;
using testsupport::random_unitary;

namespace {

// Independent 2x2 Hermitian eigenvalue oracle: trace/determinant formula.
std::pair<double, double> eig2_hermitian(const ComplexMatrix& m) {
    const double tr = (m(0, 0) + m(1, 1)).real();
    const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    return {tr / 2.0 - disc, tr / 2.0 + disc};
}

ComplexMatrix m2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

} // namespace

TEST_SUITE("matcore") {

TEST_CASE("is_psd on the 2x2 catalogue") {
    CHECK(mat::is_psd(ComplexMatrix::Zero(2, 2)));

    const ComplexMatrix neg = m2(-1, 1, 1, -1);
    auto [lo1, hi1] = eig2_hermitian(neg);
    CHECK(lo1 == doctest::Approx(-2.0));
    CHECK(hi1 == doctest::Approx(0.0));
    CHECK_FALSE(mat::is_psd(neg));

    const ComplexMatrix pos = m2(1, 1, 1, 1);
    auto [lo2, hi2] = eig2_hermitian(pos);
    CHECK(lo2 == doctest::Approx(0.0));
    CHECK(hi2 == doctest::Approx(2.0));
    CHECK(mat::is_psd(pos));

    CHECK_THROWS_AS(mat::is_psd(ComplexMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("numerical_rank") {
    CHECK(mat::numerical_rank(ComplexMatrix::Identity(3, 3)) == 3);

    ComplexMatrix diag10 = ComplexMatrix::Zero(2, 2);
    diag10(0, 0) = 1.0;
    CHECK(mat::numerical_rank(diag10) == 1);

    // Singular values of [[1,1],[1,1]] are 2 and 0.
    const ComplexMatrix ones = m2(1, 1, 1, 1);
    Eigen::JacobiSVD<ComplexMatrix> svd(ones);
    CHECK(svd.singularValues()(0) == doctest::Approx(2.0));
    CHECK(svd.singularValues()(1) == doctest::Approx(0.0));
    CHECK(mat::numerical_rank(ones) == 1);

    CHECK(mat::numerical_rank(ComplexMatrix::Zero(4, 2)) == 0);
}

TEST_CASE("is_projection") {
    ComplexMatrix diag10 = ComplexMatrix::Zero(2, 2);
    diag10(0, 0) = 1.0;
    CHECK(mat::is_projection(diag10));
    CHECK(mat::is_projection(m2(0.5, 0.5, 0.5, 0.5)));
    CHECK_FALSE(mat::is_projection(m2(1, 1, 0, 0)));
    CHECK_THROWS_AS(mat::is_projection(ComplexMatrix::Zero(1, 2)), std::invalid_argument);
}

TEST_CASE("partial_isometry_between canonical cases") {
    ComplexMatrix p = ComplexMatrix::Zero(2, 2);
    p(0, 0) = 1.0;
    ComplexMatrix q = ComplexMatrix::Zero(2, 2);
    q(1, 1) = 1.0;

    auto d = mat::partial_isometry_between(p, q);
    REQUIRE(d.has_value());
    CHECK((*d - m2(0, 0, 1, 0)).norm() == doctest::Approx(0.0));

    auto id = mat::partial_isometry_between(ComplexMatrix::Identity(3, 3),
                                            ComplexMatrix::Identity(3, 3));
    REQUIRE(id.has_value());
    CHECK((*id - ComplexMatrix::Identity(3, 3)).norm() == doctest::Approx(0.0));

    CHECK_FALSE(mat::partial_isometry_between(p, ComplexMatrix::Zero(2, 2)).has_value());
    CHECK_THROWS_AS(mat::partial_isometry_between(m2(1, 1, 0, 0), q), std::invalid_argument);
}

TEST_CASE("partial_isometry_between: 1000 random equal-rank pairs") {
    std::mt19937_64 rng(20260809);
    const Tolerance tol;
    std::uniform_int_distribution<Index> dim_dist(1, 6);
    for (int trial = 0; trial < 1000; ++trial) {
        const Index n = dim_dist(rng);
        std::uniform_int_distribution<Index> rank_dist(0, n);
        const Index r = rank_dist(rng);
        const ComplexMatrix p = random_projection(n, r, rng);
        const ComplexMatrix q = random_projection(n, r, rng);
        auto d = mat::partial_isometry_between(p, q, tol);
        REQUIRE(d.has_value());
        CHECK((d->adjoint() * *d - p).norm() <= 10 * tol.atol);
        CHECK((*d * d->adjoint() - q).norm() <= 10 * tol.atol);
    }
}

TEST_CASE("partial_isometry_between is deterministic across repeated calls") {
    std::mt19937_64 rng(7);
    const ComplexMatrix p = random_projection(5, 3, rng);
    const ComplexMatrix q = random_projection(5, 3, rng);
    auto d1 = mat::partial_isometry_between(p, q);
    auto d2 = mat::partial_isometry_between(p, q);
    REQUIRE(d1.has_value());
    CHECK((*d1 - *d2).norm() == 0.0);
}

TEST_CASE("rank is invariant under unitary conjugation") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const Index n = 4;
        const ComplexMatrix m = random_matrix(n, n, rng);
        const ComplexMatrix u = random_unitary(n, rng);
        CHECK(mat::numerical_rank(m) == mat::numerical_rank(u * m * u.adjoint()));
    }
}

TEST_CASE("blockwise partial isometry stays in the algebra") {
    std::mt19937_64 rng(11);
    BlockPartition part;
    part.n = 3;
    part.blocks = {{0, 2}, {1}};
    const Index fib = 2;
    const Tolerance tol;

    auto fiberize = [&](const std::vector<ComplexMatrix>& per_block) {
        ComplexMatrix t = ComplexMatrix::Zero(part.n * fib, part.n * fib);
        for (std::size_t b = 0; b < part.blocks.size(); ++b)
            for (Index i : part.blocks[b]) t.block(i * fib, i * fib, fib, fib) = per_block[b];
        return t;
    };

    const ComplexMatrix p = fiberize({random_projection(fib, 1, rng), random_projection(fib, 2, rng)});
    const ComplexMatrix q = fiberize({random_projection(fib, 1, rng), random_projection(fib, 2, rng)});
    auto d = mat::partial_isometry_between(p, q, part, tol);
    REQUIRE(d.has_value());
    CHECK(mat::in_block_algebra(*d, part, fib, tol));
    CHECK((d->adjoint() * *d - p).norm() <= 10 * tol.atol);
    CHECK((*d * d->adjoint() - q).norm() <= 10 * tol.atol);

    // Blockwise rank mismatch, though the global ranks agree.
    const ComplexMatrix p2 = fiberize({random_projection(fib, 2, rng), random_projection(fib, 1, rng)});
    CHECK_FALSE(mat::partial_isometry_between(p, p2, part, tol).has_value());
}

TEST_CASE("in_block_algebra membership and closure") {
    std::mt19937_64 rng(13);
    BlockPartition part;
    part.n = 4;
    part.blocks = {{0, 1}, {2, 3}};
    const Index fib = 3;
    const Tolerance tol;

    auto element = [&] {
        ComplexMatrix t = ComplexMatrix::Zero(part.n * fib, part.n * fib);
        for (const auto& block : part.blocks) {
            const ComplexMatrix fiber = random_matrix(fib, fib, rng);
            for (Index i : block) t.block(i * fib, i * fib, fib, fib) = fiber;
        }
        return t;
    };

    const ComplexMatrix s = element();
    const ComplexMatrix t = element();
    CHECK(mat::in_block_algebra(s, part, fib, tol));
    CHECK(mat::in_block_algebra(t, part, fib, tol));

    SUBCASE("closed under products and adjoints") {
        CHECK(mat::in_block_algebra(s * t, part, fib, tol));
        CHECK(mat::in_block_algebra(s.adjoint(), part, fib, tol));
    }

    SUBCASE("off-diagonal coupling is rejected") {
        ComplexMatrix bad = s;
        bad(0, fib) = 0.5;  // couples h indices 0 and 1 across the fiber
        CHECK_FALSE(mat::in_block_algebra(bad, part, fib, tol));
    }

    SUBCASE("unequal fibers within a block are rejected") {
        ComplexMatrix bad = s;
        bad(0, 0) += 1.0;
        CHECK_FALSE(mat::in_block_algebra(bad, part, fib, tol));
    }

    SUBCASE("n = 1 accepts everything") {
        CHECK(mat::in_block_algebra(random_matrix(fib, fib, rng), BlockPartition::trivial(1), fib, tol));
    }

    CHECK_THROWS_AS(mat::in_block_algebra(ComplexMatrix::Zero(5, 5), part, fib, tol),
                    std::invalid_argument);
}

TEST_CASE("tolerance validation") {
    Tolerance bad;
    bad.atol = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.atol = 1e-9;
    bad.rank_rtol = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("partition validation") {
    BlockPartition p;
    p.n = 3;
    p.blocks = {{0, 1}};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);  // does not cover
    p.blocks = {{0, 1}, {1, 2}};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);  // overlap
    p.blocks = {{0, 1}, {2}};
    CHECK_NOTHROW(p.validate());
}

} // TEST_SUITE("matcore")
