// types.hpp — Shared scalar/matrix aliases, tolerance policy, basis partitions

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace cocycle {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Thrown when two routes that a theorem makes equivalent disagree numerically.
// Seeing one of these means either a library bug or an input far outside the
// tolerance regime; it is never part of normal control flow.
class InternalConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Central tolerance record, passed explicitly to every check.
//   atol      — absolute residual tolerance for identity tests (unit-scaled inputs)
//   rank_rtol — relative singular-value cutoff for rank decisions
struct Tolerance {
    double atol = 1e-9;
    double rank_rtol = 1e-12;

    void validate() const {
        if (!(atol > 0.0)) throw std::invalid_argument("Tolerance: atol must be > 0");
        if (!(rank_rtol > 0.0)) throw std::invalid_argument("Tolerance: rank_rtol must be > 0");
    }
};

// A partition of the basis indices {0..n-1} of the initial space. The spanned
// block projections generate a commutative algebra; block-diagonal masas of
// this form are the only commutative algebras the library works with.
struct BlockPartition {
    Index n = 0;
    std::vector<std::vector<Index>> blocks;

    static BlockPartition trivial(Index n) {
        BlockPartition p;
        p.n = n;
        p.blocks.emplace_back();
        for (Index i = 0; i < n; ++i) p.blocks.back().push_back(i);
        return p;
    }

    static BlockPartition singletons(Index n) {
        BlockPartition p;
        p.n = n;
        for (Index i = 0; i < n; ++i) p.blocks.push_back({i});
        return p;
    }

    // Blocks must be non-empty, pairwise disjoint and cover {0..n-1}.
    void validate() const {
        if (n < 0) throw std::invalid_argument("BlockPartition: n must be >= 0");
        std::vector<int> seen(static_cast<std::size_t>(n), 0);
        for (const auto& block : blocks) {
            if (block.empty()) throw std::invalid_argument("BlockPartition: empty block");
            for (Index i : block) {
                if (i < 0 || i >= n) throw std::invalid_argument("BlockPartition: index out of range");
                if (seen[static_cast<std::size_t>(i)]++)
                    throw std::invalid_argument("BlockPartition: blocks are not disjoint");
            }
        }
        for (int s : seen)
            if (!s) throw std::invalid_argument("BlockPartition: blocks do not cover {0..n-1}");
    }

    Index block_of(Index i) const {
        for (std::size_t b = 0; b < blocks.size(); ++b)
            for (Index k : blocks[b])
                if (k == i) return static_cast<Index>(b);
        throw std::invalid_argument("BlockPartition: index " + std::to_string(i) + " not in partition");
    }
};

} // namespace cocycle
