// test_focksim.cpp — Discrete repeated-interaction oracle: cocycle structure,
// vacuum expectations, exponential vectors and defect rates

#include "cocycle/focksim.hpp"
#include "cocycle/subordination.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace cocycle;
using gen::BlockGenerator;
using gen::LocalProjectionPair;
using testsupport::random_local_pair;
using testsupport::random_matrix;
using testsupport::random_partition;
using testsupport::random_projection_generator;
using testsupport::random_unitary;
using testsupport::random_vector;

namespace {

BlockGenerator expneg_generator() {  // n=1, d=1, F = [[-1,1],[1,-1]]
    ComplexMatrix f(2, 2);
    f << -1, 1, 1, -1;
    return gen::split(f, 1, 1);
}

ComplexMatrix brute_force_expectation(const sim::DiscreteCocycle& c, Index steps) {
    const Index n = c.F.n, d = c.F.d;
    ComplexMatrix out(n, n);
    Index stride_h = 1;
    for (Index s = 0; s < c.slices; ++s) stride_h *= (1 + d);
    for (Index i = 0; i < n; ++i) {
        ComplexVector u = ComplexVector::Zero(n);
        u(i) = 1.0;
        const sim::SimVector w = sim::evolve(c, sim::vacuum_vector(n, d, c.slices, u), steps);
        for (Index k = 0; k < n; ++k) out(k, i) = w.data(k * stride_h);
    }
    return out;
}

} // namespace

TEST_SUITE("focksim") {

TEST_CASE("scaled_step applies the (tau, sqrt-tau, 1) weights") {
    const sim::DiscreteCocycle c = sim::make_cocycle(expneg_generator(), 0.01, 4);
    ComplexMatrix expected(2, 2);
    expected << 0.99, 0.1, 0.1, 0.0;
    CHECK((c.step - expected).norm() <= 1e-14);
}

TEST_CASE("evolve basics") {
    const Index n = 1, d = 1, slices = 5;
    const sim::DiscreteCocycle zero = sim::make_cocycle(BlockGenerator::zero(n, d), 0.1, slices);
    const sim::SimVector v = sim::random_vector(n, d, slices, 42);

    CHECK((sim::evolve(zero, v, slices).data - v.data).norm() == doctest::Approx(0.0));

    const sim::DiscreteCocycle c = sim::make_cocycle(expneg_generator(), 0.05, slices);
    CHECK((sim::evolve(c, v, 0).data - v.data).norm() == doctest::Approx(0.0));
    CHECK_THROWS_AS(sim::evolve(c, v, slices + 1), std::invalid_argument);

    const sim::SimVector wrong = sim::random_vector(n, d, slices + 1, 7);
    CHECK_THROWS_AS(sim::evolve(c, wrong, 1), std::invalid_argument);
}

TEST_CASE("state dimension guard") {
    CHECK_THROWS_AS(sim::zero_vector(2, 2, 30), std::invalid_argument);
}

TEST_CASE("discrete cocycle identity is exact") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 30; ++trial) {
        const Index n = 1 + trial % 2;
        const Index d = 1 + trial % 2;
        const Index slices = 6;
        BlockGenerator f;
        if (trial % 3 == 0) {
            f = random_projection_generator(random_partition(n, rng), d, rng);
        } else {
            f = testsupport::unitary_type_generator(n, d, rng);
        }
        const sim::DiscreteCocycle c = sim::make_cocycle(f, 1.0 / 16, slices);
        const sim::SimVector v = sim::random_vector(n, d, slices, rng());

        std::uniform_int_distribution<Index> split(0, slices);
        const Index m = split(rng);
        const sim::SimVector lhs = sim::evolve(c, v, slices);
        const sim::SimVector rhs =
            sim::evolve(c, sim::shift_apply(c, v, m, slices - m), m);
        CHECK((lhs.data - rhs.data).norm() <= 1e-12 * lhs.data.norm());
    }
}

TEST_CASE("shift with zero offset is evolve") {
    std::mt19937_64 rng(5);
    const BlockGenerator f = testsupport::unitary_type_generator(1, 2, rng);
    const sim::DiscreteCocycle c = sim::make_cocycle(f, 0.05, 5);
    const sim::SimVector v = sim::random_vector(1, 2, 5, 11);
    CHECK((sim::shift_apply(c, v, 0, 3).data - sim::evolve(c, v, 3).data).norm() ==
          doctest::Approx(0.0));
    CHECK_THROWS_AS(sim::shift_apply(c, v, 3, 3), std::invalid_argument);
}

TEST_CASE("evolve_adjoint implements the adjoint") {
    std::mt19937_64 rng(7);
    const BlockGenerator f = testsupport::unitary_type_generator(2, 1, rng);
    const sim::DiscreteCocycle c = sim::make_cocycle(f, 0.1, 5);
    const sim::SimVector u = sim::random_vector(2, 1, 5, 1);
    const sim::SimVector v = sim::random_vector(2, 1, 5, 2);
    const Complex lhs = sim::evolve_adjoint(c, u, 4).data.dot(v.data);
    const Complex rhs = u.data.dot(sim::evolve(c, v, 4).data);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
}

TEST_CASE("exponential vectors") {
    SUBCASE("zero step function gives the vacuum") {
        ComplexVector u = ComplexVector::Zero(1);
        u(0) = 1.0;
        std::vector<ComplexVector> f(4, ComplexVector::Zero(2));
        const sim::SimVector ev = sim::exponential_vector(1, 2, 4, 0.1, f, u);
        const sim::SimVector vac = sim::vacuum_vector(1, 2, 4, u);
        CHECK((ev.data - vac.data).norm() == doctest::Approx(0.0));
    }

    SUBCASE("single slice carries (1, 0.2)/sqrt(1.04)") {
        ComplexVector u = ComplexVector::Ones(1);
        ComplexVector f0 = ComplexVector::Ones(1);
        const sim::SimVector ev = sim::exponential_vector(1, 1, 1, 0.04, {f0}, u);
        CHECK(std::abs(ev.data(0) - 1.0 / std::sqrt(1.04)) <= 1e-14);
        CHECK(std::abs(ev.data(1) - 0.2 / std::sqrt(1.04)) <= 1e-14);
    }

    SUBCASE("inner products factor across slices") {
        std::mt19937_64 rng(13);
        const Index slices = 5, d = 2;
        std::vector<ComplexVector> f, g;
        for (Index s = 0; s < slices; ++s) {
            f.push_back(random_vector(d, rng, 0.5));
            g.push_back(random_vector(d, rng, 0.5));
        }
        ComplexVector u = ComplexVector::Ones(1);
        const double tau = 0.05;
        const sim::SimVector vf = sim::exponential_vector(1, d, slices, tau, f, u);
        const sim::SimVector vg = sim::exponential_vector(1, d, slices, tau, g, u);

        Complex expected = 1.0;
        for (Index s = 0; s < slices; ++s) {
            const Complex cross = 1.0 + tau * f[static_cast<std::size_t>(s)].dot(g[static_cast<std::size_t>(s)]);
            expected *= cross / std::sqrt((1.0 + tau * f[static_cast<std::size_t>(s)].squaredNorm()) *
                                          (1.0 + tau * g[static_cast<std::size_t>(s)].squaredNorm()));
        }
        CHECK(std::abs(vf.data.dot(vg.data) - expected) <= 1e-13);
    }

    SUBCASE("slice products converge to the exponential of the integral") {
        // Constant step functions f = a, g = b over T = 1; pure scalar check.
        const Complex a(0.6, -0.2), b(0.3, 0.4);
        auto product = [&](double tau) {
            const int slices = static_cast<int>(std::lround(1.0 / tau));
            Complex acc = 1.0;
            for (int s = 0; s < slices; ++s)
                acc *= (1.0 + tau * std::conj(a) * b) /
                       std::sqrt((1.0 + tau * std::norm(a)) * (1.0 + tau * std::norm(b)));
            return acc;
        };
        const Complex target = std::exp(std::conj(a) * b - 0.5 * std::norm(a) - 0.5 * std::norm(b));
        const double err1 = std::abs(product(1.0 / 64) - target);
        const double err2 = std::abs(product(1.0 / 128) - target);
        CHECK(err1 <= 0.05);
        CHECK(err2 <= 0.6 * err1);  // first-order rate
    }
}

TEST_CASE("vacuum expectation") {
    SUBCASE("zero generator gives the identity") {
        const sim::DiscreteCocycle c = sim::make_cocycle(BlockGenerator::zero(2, 1), 0.1, 5);
        CHECK((sim::vacuum_expectation(c, 5) - ComplexMatrix::Identity(2, 2)).norm() ==
              doctest::Approx(0.0));
    }

    SUBCASE("worked scalar value (0.99)^100") {
        const sim::DiscreteCocycle c = sim::make_cocycle(expneg_generator(), 0.01, 100);
        const Complex value = sim::vacuum_expectation(c, 100)(0, 0);
        CHECK(std::abs(value - std::pow(0.99, 100)) <= 1e-15);
        CHECK(value.real() == doctest::Approx(0.366032).epsilon(1e-5));
        CHECK(std::abs(value - std::exp(-1.0)) <= 2e-3);

        const sim::DiscreteCocycle c2 = sim::make_cocycle(expneg_generator(), 0.005, 200);
        const double err1 = std::abs(sim::vacuum_expectation(c, 100)(0, 0) - std::exp(-1.0));
        const double err2 = std::abs(sim::vacuum_expectation(c2, 200)(0, 0) - std::exp(-1.0));
        CHECK(err2 / err1 >= 0.4);
        CHECK(err2 / err1 <= 0.6);
    }

    SUBCASE("matches brute-force slot evolution to machine precision") {
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 10; ++trial) {
            const Index n = 1 + trial % 2;
            const Index d = 1 + trial % 2;
            const Index slices = 7;
            const BlockGenerator f = trial % 2 == 0
                                         ? testsupport::unitary_type_generator(n, d, rng)
                                         : random_projection_generator(random_partition(n, rng), d, rng);
            const sim::DiscreteCocycle c = sim::make_cocycle(f, 1.0 / 32, slices);
            const ComplexMatrix direct = sim::vacuum_expectation(c, slices);
            const ComplexMatrix brute = brute_force_expectation(c, slices);
            CHECK((direct - brute).norm() <= 1e-13 * (1.0 + direct.norm()));
        }
    }

    SUBCASE("converges to the expectation semigroup at first order") {
        const BlockGenerator f = expneg_generator();
        const ComplexMatrix target = gen::expectation_semigroup(f, 1.0);
        double prev = -1.0;
        for (int k = 5; k <= 7; ++k) {
            const Index steps = Index(1) << k;
            const sim::DiscreteCocycle c = sim::make_cocycle(f, 1.0 / double(steps), steps);
            const double err = (sim::vacuum_expectation(c, steps) - target).norm();
            if (prev > 0.0) {
                CHECK(err / prev >= 0.4);
                CHECK(err / prev <= 0.6);
            }
            prev = err;
        }
    }
}

TEST_CASE("defect report basics") {
    const Index n = 1, d = 1, slices = 4;
    const sim::DiscreteCocycle zero = sim::make_cocycle(BlockGenerator::zero(n, d), 0.1, slices);
    auto probes = sim::standard_probes(n, d, slices, 0.1, 99);
    const sim::DefectReport report = sim::defect_report(zero, slices, probes);
    CHECK(report.max_hermiticity == doctest::Approx(0.0));
    CHECK(report.max_idempotence == doctest::Approx(0.0));
    CHECK(report.max_pisometry == doctest::Approx(0.0));
    CHECK(report.max_contraction_excess == doctest::Approx(0.0));
    CHECK_THROWS_AS(sim::defect_report(zero, slices, {}), std::invalid_argument);
}

TEST_CASE("projection generators: defects vanish at first order") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 4; ++trial) {
        const Index n = 1, d = 1 + trial % 2;
        const BlockGenerator f =
            random_projection_generator(BlockPartition::trivial(n), d, rng);
        auto study = sim::rate_study(f, 8, 1.0 / 16, 3, 7);
        CHECK(study.hermiticity.rate_ok(0.3, 0.7, 1e-11));
        CHECK(study.idempotence.rate_ok(0.3, 0.7, 1e-11));
        CHECK(study.pisometry.rate_ok(0.3, 0.7, 1e-11));
    }
}

TEST_CASE("rejecting generators keep an order-one idempotence defect") {
    std::mt19937_64 rng(23);
    const Index n = 1, d = 2, slices = 8;
    BlockGenerator bad = random_projection_generator(BlockPartition::trivial(n), d, rng);
    bad.A(0, 0) += 0.8;  // breaks the projection identity at order one

    double smallest_tau_defect = 0.0;
    for (double tau : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
        const sim::DiscreteCocycle c = sim::make_cocycle(bad, tau, slices);
        auto probes = sim::standard_probes(n, d, slices, tau, 31);
        smallest_tau_defect = sim::defect_report(c, slices, probes).max_idempotence;
    }
    CHECK(smallest_tau_defect >= 0.05);
}

TEST_CASE("subordination defect decays for the worked dominated pair") {
    ComplexVector e1 = ComplexVector::Zero(2);
    e1(1) = 1.0;
    LocalProjectionPair pf, pg;
    pf.projection = ComplexMatrix::Zero(2, 2);
    pf.vector = e1;
    pg.projection = ComplexMatrix::Zero(2, 2);
    pg.projection(0, 0) = 1.0;
    pg.vector = e1;
    const BlockGenerator f = gen::from_local_pair(pf, 1);
    const BlockGenerator g = gen::from_local_pair(pg, 1);
    REQUIRE(sub::dominates(g, f));

    auto study = sim::rate_study(f, 8, 1.0 / 16, 3, 13, &g);
    REQUIRE(study.subordination.values.size() == 4);
    CHECK(study.subordination.rate_ok(0.3, 0.7, 1e-11));
    CHECK(study.subordination.values.front() > 1e-6);  // genuinely nonzero before the limit
}

TEST_CASE("non-subordinate pairs keep an order-one subordination defect") {
    // The converse direction of the generator-level subordination lemma:
    // if local_pair_leq fails, the simulated defect does not vanish with tau.
    ComplexVector e1 = ComplexVector::Zero(2);
    e1(1) = 1.0;
    LocalProjectionPair pf, pg;
    pf.projection = ComplexMatrix::Zero(2, 2);
    pf.projection(0, 0) = 1.0;  // rank one
    pf.vector = e1;
    pg.projection = ComplexMatrix::Zero(2, 2);  // rank zero: cannot dominate pf
    pg.vector = e1;
    const BlockGenerator f = gen::from_local_pair(pf, 1);
    const BlockGenerator g = gen::from_local_pair(pg, 1);
    REQUIRE_FALSE(sub::local_pair_leq(pf, pg));

    auto study = sim::rate_study(f, 8, 1.0 / 16, 3, 13, &g);
    CHECK(study.subordination.values.back() > 0.05);
}

TEST_CASE("contraction excess shrinks with tau") {
    std::mt19937_64 rng(29);
    const BlockGenerator f = testsupport::unitary_type_generator(1, 2, rng);
    const Index slices = 8;
    double prev = -1.0;
    for (double tau : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
        const sim::DiscreteCocycle c = sim::make_cocycle(f, tau, slices);
        auto probes = sim::standard_probes(1, 2, slices, tau, 17);
        const double excess = sim::defect_report(c, slices, probes).max_contraction_excess;
        if (prev >= 0.0) CHECK(excess <= std::max(0.8 * prev, 1e-12));
        prev = excess;
        CHECK(excess <= 0.2);
    }
}

} // TEST_SUITE("focksim")
