// focksim.hpp — Discrete repeated-interaction simulator on h (x) khat^(x)N.
// Independent numerical oracle for the generator calculus: cocycle structure,
// projection/partial-isometry behaviour, subordination and expectation claims
// are all checked dynamically by acting on probe vectors. Operators are never
// materialized on the full tensor space.

#pragma once

#include "cocycle/generators.hpp"

#include <cstdint>
#include <vector>

namespace cocycle::sim {

using gen::BlockGenerator;

// Step matrix I + scale(F, tau) on h (x) khat, block order. The scaling
// multiplies the (vacuum,vacuum) block by tau, the off-diagonal blocks by
// sqrt(tau) and leaves the noise-noise block unscaled.
ComplexMatrix scaled_step(const BlockGenerator& f, double tau);

// A discretized cocycle: N interaction slices of width tau, each applying the
// step matrix to h and one fresh copy of khat.
struct DiscreteCocycle {
    BlockGenerator F;
    double tau = 0.0;
    Index slices = 0;
    ComplexMatrix step;
};

DiscreteCocycle make_cocycle(const BlockGenerator& f, double tau, Index slices);

// State on h (x) khat^(x)N. Layout: index = i*(1+d)^N + sum_s a_s*(1+d)^(s-1),
// slots numbered 1..N.
struct SimVector {
    Index n = 0;
    Index d = 0;
    Index slices = 0;
    ComplexVector data;

    double norm() const { return data.norm(); }
};

// Guard for the desk-scale envelope; vectors above this entry count throw.
inline constexpr Index kMaxStateEntries = 4'000'000;

SimVector zero_vector(Index n, Index d, Index slices);

// u (x) vacuum.
SimVector vacuum_vector(Index n, Index d, Index slices, const ComplexVector& u);

// Discretized exponential vector of the step function f (one k-vector per
// slice): slot s carries (1, sqrt(tau) f_s) / sqrt(1 + tau ||f_s||^2),
// tensored with u on h. f = 0 gives the vacuum.
SimVector exponential_vector(Index n, Index d, Index slices, double tau,
                             const std::vector<ComplexVector>& f, const ComplexVector& u);

// Seeded gaussian vector, normalized.
SimVector random_vector(Index n, Index d, Index slices, std::uint64_t seed);

// X_steps v with X_steps = M<1> M<2> ... M<steps>; M<i> acts on h and slot i.
SimVector evolve(const DiscreteCocycle& c, const SimVector& v, Index steps);

// (X_steps)* v.
SimVector evolve_adjoint(const DiscreteCocycle& c, const SimVector& v, Index steps);

// sigma_s(X_t) v: the step product placed into slots s+1 .. s+inner_steps.
SimVector shift_apply(const DiscreteCocycle& c, const SimVector& v, Index s_slots,
                      Index inner_steps);

// Vacuum expectation matrix E[X_steps] on h. In the discrete model the
// per-slot vacuum compression factorizes exactly, so this equals
// (I + tau A)^steps; the factorization is verified against evolve() in the
// test suite. steps may exceed the materializable envelope.
ComplexMatrix vacuum_expectation(const DiscreteCocycle& c, Index steps);

// Dynamic defects of X = X_steps measured on probes (all exact zeros for the
// continuum objects the generators promise):
//   hermiticity      ||(X - X*) v||
//   idempotence      ||(X^2 - X) v||
//   pisometry        ||(X X* X - X) v||
//   contraction      max(0, ||X v|| - ||v||)
//   subordination    ||(X^F X^G - X^F) v|| with X^F = X, when a dominating
//                    cocycle X^G is supplied
struct DefectReport {
    std::vector<double> hermiticity;
    std::vector<double> idempotence;
    std::vector<double> pisometry;
    std::vector<double> contraction_excess;
    std::vector<double> subordination;

    double max_hermiticity = 0.0;
    double max_idempotence = 0.0;
    double max_pisometry = 0.0;
    double max_contraction_excess = 0.0;
    double max_subordination = 0.0;
};

DefectReport defect_report(const DiscreteCocycle& c, Index steps,
                           const std::vector<SimVector>& probes,
                           const DiscreteCocycle* dominating = nullptr);

// Standard probe family: vacuum, single-excitation vectors, discretized
// exponential vectors of seeded random step functions, seeded random vectors.
std::vector<SimVector> standard_probes(Index n, Index d, Index slices, double tau,
                                       std::uint64_t seed, int random_count = 2,
                                       int exponential_count = 2);

// One defect series across a tau-halving schedule.
struct RateSeries {
    std::vector<double> values;

    std::vector<double> ratios() const;
    // Each halving must shrink the defect into [lo, hi] of its predecessor,
    // except once it sits below the floor (already converged).
    bool rate_ok(double lo, double hi, double floor) const;
};

struct RateStudyResult {
    std::vector<double> taus;
    RateSeries hermiticity;
    RateSeries idempotence;
    RateSeries pisometry;
    RateSeries subordination;  // empty unless a dominating generator was given
};

// Fixed slice count, tau halved `halvings` times starting from tau_start
// (so the horizon T = slices*tau shrinks with tau).
RateStudyResult rate_study(const BlockGenerator& f, Index slices, double tau_start,
                           int halvings, std::uint64_t seed,
                           const BlockGenerator* dominating = nullptr);

} // namespace cocycle::sim
