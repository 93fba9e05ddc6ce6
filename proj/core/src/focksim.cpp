// focksim.cpp — Matrix-free slot evolution on the discrete interaction space

#include "cocycle/focksim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace cocycle::sim {

namespace {

Index pow_index(Index base, Index exp) {
    Index out = 1;
    for (Index k = 0; k < exp; ++k) {
        if (out > kMaxStateEntries) return out;  // caller checks the bound
        out *= base;
    }
    return out;
}

Index state_entries(Index n, Index d, Index slices) {
    return n * pow_index(1 + d, slices);
}

void require_layout(const DiscreteCocycle& c, const SimVector& v, const char* who) {
    if (v.n != c.F.n || v.d != c.F.d || v.slices != c.slices)
        throw std::invalid_argument(std::string(who) + ": vector layout does not match cocycle");
    if (v.data.size() != state_entries(v.n, v.d, v.slices))
        throw std::invalid_argument(std::string(who) + ": vector storage size mismatch");
}

// Apply an n(1+d) x n(1+d) block-ordered matrix to h and slot s (1-based),
// identity elsewhere.
void apply_slot(const ComplexMatrix& m, SimVector& v, Index s) {
    const Index n = v.n, d = v.d, fib = 1 + d;
    const Index stride_h = pow_index(fib, v.slices);
    const Index stride_s = pow_index(fib, s - 1);
    const Index upper_count = pow_index(fib, v.slices - s);
    const Index local = n * fib;

    // (h index, khat index) for every block-order row of the step matrix.
    std::vector<Index> offset(static_cast<std::size_t>(local));
    for (Index b = 0; b < local; ++b) {
        Index i, ahat;
        if (b < n) {
            i = b;
            ahat = 0;
        } else {
            i = (b - n) / d;
            ahat = 1 + (b - n) % d;
        }
        offset[static_cast<std::size_t>(b)] = i * stride_h + ahat * stride_s;
    }

    ComplexVector x(local), y(local);
    for (Index up = 0; up < upper_count; ++up) {
        const Index base_up = up * stride_s * fib;
        for (Index lo = 0; lo < stride_s; ++lo) {
            const Index base = base_up + lo;
            for (Index b = 0; b < local; ++b) x(b) = v.data(base + offset[static_cast<std::size_t>(b)]);
            y.noalias() = m * x;
            for (Index b = 0; b < local; ++b) v.data(base + offset[static_cast<std::size_t>(b)]) = y(b);
        }
    }
}

SimVector apply_product(const DiscreteCocycle& c, const SimVector& v, Index first, Index last,
                        bool adjoint) {
    require_layout(c, v, "apply_product");
    if (first < 1 || last > c.slices)
        throw std::invalid_argument("focksim: slot range exceeds the slice count");
    SimVector out = v;
    if (last < first) return out;
    if (!adjoint) {
        for (Index s = last; s >= first; --s) apply_slot(c.step, out, s);
    } else {
        const ComplexMatrix step_adj = c.step.adjoint();
        for (Index s = first; s <= last; ++s) apply_slot(step_adj, out, s);
    }
    return out;
}

std::vector<ComplexVector> random_step_function(Index d, Index slices, std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<ComplexVector> f(static_cast<std::size_t>(slices));
    for (auto& slot : f) {
        slot = ComplexVector(d);
        for (Index a = 0; a < d; ++a) slot(a) = 0.5 * Complex(dist(rng), dist(rng));
    }
    return f;
}

} // namespace

ComplexMatrix scaled_step(const BlockGenerator& f, double tau) {
    f.validate();
    if (!(tau > 0.0)) throw std::invalid_argument("scaled_step: tau must be > 0");
    const double root = std::sqrt(tau);
    BlockGenerator scaled = f;
    scaled.A *= tau;
    scaled.B *= root;
    scaled.C *= root;
    return ComplexMatrix::Identity(f.dim(), f.dim()) + gen::assemble(scaled);
}

DiscreteCocycle make_cocycle(const BlockGenerator& f, double tau, Index slices) {
    if (slices < 0) throw std::invalid_argument("make_cocycle: slices must be >= 0");
    DiscreteCocycle c;
    c.F = f;
    c.tau = tau;
    c.slices = slices;
    c.step = scaled_step(f, tau);
    return c;
}

SimVector zero_vector(Index n, Index d, Index slices) {
    if (n <= 0 || d < 0 || slices < 0) throw std::invalid_argument("zero_vector: bad layout");
    const Index entries = state_entries(n, d, slices);
    if (entries > kMaxStateEntries)
        throw std::invalid_argument("focksim: state dimension " + std::to_string(entries) +
                                    " exceeds the desk-scale envelope");
    SimVector v;
    v.n = n;
    v.d = d;
    v.slices = slices;
    v.data = ComplexVector::Zero(entries);
    return v;
}

SimVector vacuum_vector(Index n, Index d, Index slices, const ComplexVector& u) {
    if (u.size() != n) throw std::invalid_argument("vacuum_vector: u must live on h");
    SimVector v = zero_vector(n, d, slices);
    const Index stride_h = pow_index(1 + d, slices);
    for (Index i = 0; i < n; ++i) v.data(i * stride_h) = u(i);
    return v;
}

SimVector exponential_vector(Index n, Index d, Index slices, double tau,
                             const std::vector<ComplexVector>& f, const ComplexVector& u) {
    if (static_cast<Index>(f.size()) != slices)
        throw std::invalid_argument("exponential_vector: need one k-vector per slice");
    if (u.size() != n) throw std::invalid_argument("exponential_vector: u must live on h");
    if (!(tau > 0.0)) throw std::invalid_argument("exponential_vector: tau must be > 0");

    const Index fib = 1 + d;
    std::vector<ComplexVector> slot(static_cast<std::size_t>(slices));
    for (Index s = 0; s < slices; ++s) {
        const ComplexVector& fs = f[static_cast<std::size_t>(s)];
        if (fs.size() != d) throw std::invalid_argument("exponential_vector: step value must be in k");
        ComplexVector hat(fib);
        hat(0) = 1.0;
        hat.tail(d) = std::sqrt(tau) * fs;
        slot[static_cast<std::size_t>(s)] = hat / std::sqrt(1.0 + tau * fs.squaredNorm());
    }

    SimVector v = zero_vector(n, d, slices);
    const Index fock_dim = pow_index(fib, slices);
    for (Index idx = 0; idx < fock_dim; ++idx) {
        Complex amp = 1.0;
        Index rest = idx;
        for (Index s = 0; s < slices; ++s) {
            amp *= slot[static_cast<std::size_t>(s)](rest % fib);
            rest /= fib;
        }
        for (Index i = 0; i < n; ++i) v.data(i * fock_dim + idx) = u(i) * amp;
    }
    return v;
}

SimVector random_vector(Index n, Index d, Index slices, std::uint64_t seed) {
    SimVector v = zero_vector(n, d, slices);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (Index i = 0; i < v.data.size(); ++i) v.data(i) = Complex(dist(rng), dist(rng));
    v.data /= v.data.norm();
    return v;
}

SimVector evolve(const DiscreteCocycle& c, const SimVector& v, Index steps) {
    if (steps < 0 || steps > c.slices)
        throw std::invalid_argument("evolve: steps must lie in [0, slices]");
    return apply_product(c, v, 1, steps, false);
}

SimVector evolve_adjoint(const DiscreteCocycle& c, const SimVector& v, Index steps) {
    if (steps < 0 || steps > c.slices)
        throw std::invalid_argument("evolve_adjoint: steps must lie in [0, slices]");
    return apply_product(c, v, 1, steps, true);
}

SimVector shift_apply(const DiscreteCocycle& c, const SimVector& v, Index s_slots,
                      Index inner_steps) {
    if (s_slots < 0 || inner_steps < 0 || s_slots + inner_steps > c.slices)
        throw std::invalid_argument("shift_apply: slot range exceeds the slice count");
    return apply_product(c, v, s_slots + 1, s_slots + inner_steps, false);
}

ComplexMatrix vacuum_expectation(const DiscreteCocycle& c, Index steps) {
    if (steps < 0 || steps > c.slices)
        throw std::invalid_argument("vacuum_expectation: steps must lie in [0, slices]");
    const Index n = c.F.n;
    const ComplexMatrix slot = ComplexMatrix::Identity(n, n) + c.tau * c.F.A;
    ComplexMatrix out = ComplexMatrix::Identity(n, n);
    for (Index s = 0; s < steps; ++s) out = slot * out;
    return out;
}

DefectReport defect_report(const DiscreteCocycle& c, Index steps,
                           const std::vector<SimVector>& probes,
                           const DiscreteCocycle* dominating) {
    if (probes.empty()) throw std::invalid_argument("defect_report: probes must be nonempty");
    DefectReport report;
    for (const SimVector& v : probes) {
        const SimVector xv = evolve(c, v, steps);
        const SimVector xsv = evolve_adjoint(c, v, steps);
        const SimVector xxv = evolve(c, xv, steps);
        const SimVector xxsxv = evolve(c, evolve_adjoint(c, xv, steps), steps);

        report.hermiticity.push_back((xv.data - xsv.data).norm());
        report.idempotence.push_back((xxv.data - xv.data).norm());
        report.pisometry.push_back((xxsxv.data - xv.data).norm());
        report.contraction_excess.push_back(std::max(0.0, xv.norm() - v.norm()));
        if (dominating) {
            const SimVector xgv = evolve(*dominating, v, steps);
            const SimVector xfxgv = evolve(c, xgv, steps);
            report.subordination.push_back((xfxgv.data - xv.data).norm());
        }
    }
    auto vmax = [](const std::vector<double>& xs) {
        return xs.empty() ? 0.0 : *std::max_element(xs.begin(), xs.end());
    };
    report.max_hermiticity = vmax(report.hermiticity);
    report.max_idempotence = vmax(report.idempotence);
    report.max_pisometry = vmax(report.pisometry);
    report.max_contraction_excess = vmax(report.contraction_excess);
    report.max_subordination = vmax(report.subordination);
    return report;
}

std::vector<SimVector> standard_probes(Index n, Index d, Index slices, double tau,
                                       std::uint64_t seed, int random_count,
                                       int exponential_count) {
    std::vector<SimVector> probes;
    ComplexVector u0 = ComplexVector::Zero(n);
    u0(0) = 1.0;
    probes.push_back(vacuum_vector(n, d, slices, u0));

    if (d > 0 && slices > 0) {
        SimVector exc = zero_vector(n, d, slices);
        exc.data(1 * pow_index(1 + d, 0)) = 1.0;  // excitation in slot 1, fiber e_1
        probes.push_back(std::move(exc));
        if (slices > 1) {
            SimVector exc2 = zero_vector(n, d, slices);
            exc2.data(pow_index(1 + d, slices - 1)) = 1.0;  // excitation in the last slot
            probes.push_back(std::move(exc2));
        }
    }

    std::mt19937_64 rng(seed);
    for (int k = 0; k < exponential_count && d > 0; ++k) {
        auto f = random_step_function(d, slices, rng);
        ComplexVector u = ComplexVector::Zero(n);
        u(k % n) = 1.0;
        SimVector ev = exponential_vector(n, d, slices, tau, f, u);
        probes.push_back(std::move(ev));
    }
    for (int k = 0; k < random_count; ++k) probes.push_back(random_vector(n, d, slices, rng()));
    return probes;
}

std::vector<double> RateSeries::ratios() const {
    std::vector<double> out;
    for (std::size_t k = 0; k + 1 < values.size(); ++k)
        out.push_back(values[k] > 0.0 ? values[k + 1] / values[k]
                                      : std::numeric_limits<double>::quiet_NaN());
    return out;
}

bool RateSeries::rate_ok(double lo, double hi, double floor) const {
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        if (values[k + 1] <= floor) continue;
        if (values[k] <= floor) return false;  // defect grew out of the floor
        const double r = values[k + 1] / values[k];
        if (r < lo || r > hi) return false;
    }
    return true;
}

RateStudyResult rate_study(const BlockGenerator& f, Index slices, double tau_start,
                           int halvings, std::uint64_t seed, const BlockGenerator* dominating) {
    if (halvings < 1) throw std::invalid_argument("rate_study: need at least one halving");
    RateStudyResult result;
    double tau = tau_start;
    for (int k = 0; k <= halvings; ++k, tau *= 0.5) {
        const DiscreteCocycle c = make_cocycle(f, tau, slices);
        auto probes = standard_probes(f.n, f.d, slices, tau, seed);
        DiscreteCocycle cg;
        if (dominating) cg = make_cocycle(*dominating, tau, slices);
        const DefectReport report = defect_report(c, slices, probes, dominating ? &cg : nullptr);
        result.taus.push_back(tau);
        result.hermiticity.values.push_back(report.max_hermiticity);
        result.idempotence.values.push_back(report.max_idempotence);
        result.pisometry.values.push_back(report.max_pisometry);
        if (dominating) result.subordination.values.push_back(report.max_subordination);
    }
    return result;
}

} // namespace cocycle::sim
