#pragma once

#include <cstdint>
#include <vector>

#include "packlim/sequences.hpp"

namespace packlim {

/// Finite truncation of the mass distribution problem: weights sorted
/// non-increasing, plus the aggregate mass of the discarded tail.
struct MassInstance {
    std::vector<double> weights;
    double tail = 0.0;
    double epsilon = 0.0;
};

enum class TailMode {
    as_item,  // tail enters as one indivisible weight: lower bound for the infinite problem
    fluid     // tail mass splits arbitrarily across parts: upper bound
};

inline constexpr std::size_t kExactCoverCap = 24;

/// Largest number of parts in a partition with every part-sum >= epsilon.
/// Subset DP for as_item, feasibility descent with fluid-deficit pruning for
/// fluid. Throws InstanceTooLarge beyond kExactCoverCap items.
std::uint64_t exact_cover_count(const MassInstance& instance, TailMode mode);

/// The constructive block partition: h_k = floor(((k^d-(k-1)^d)/k)(L/eps)^d)
/// parts of k consecutive indices for k <= v(eps), residue merged into the
/// last part. Every block's mass is verified via window sums; the part count
/// sum h_k is a certified lower bound on N(L, eps).
std::uint64_t greedy_block_cover(const GapSequence& seq, double eps, double dim,
                                 double scale_lo);

/// floor(F(1, eps) + tail_sum(F(1, eps) + 1) / eps); F treated as 0 when
/// eps exceeds l_1.
std::uint64_t cover_upper_bound(const GapSequence& seq, double eps);

}  // namespace packlim
