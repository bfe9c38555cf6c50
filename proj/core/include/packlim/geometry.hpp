#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "packlim/self_similar.hpp"
#include "packlim/sequences.hpp"

namespace packlim {

/// Monotone rearrangement of a gap sequence: points y_1 = origin,
/// y_{k+1} = y_k + l_k, together with the supremum origin + total().
class CutOutSet {
public:
    explicit CutOutSet(GapSequence seq, double origin = 0.0);

    const GapSequence& gaps() const { return seq_; }
    double origin() const { return origin_; }
    double supremum() const { return supremum_; }
    double diameter() const { return supremum_ - origin_; }

    /// y_1..y_upTo with the supremum appended (upTo + 1 values, increasing).
    std::vector<double> materialize(std::uint64_t up_to) const;

private:
    GapSequence seq_;
    double origin_;
    double supremum_;
};

struct TubeVolume {
    double epsilon = 0.0;
    double volume = 0.0;
    std::uint64_t uncovered_gaps = 0;  // the n with eps in [l_{n+1}/2, l_n/2]
    bool boundary = false;             // eps > l_1 / 2
};

/// m1 of the closed eps-neighborhood: tail_sum(n+1) + 2(n+1)eps. Depends only
/// on the sequence, never on the geometric arrangement of the gaps.
TubeVolume tube_volume(const GapSequence& seq, double eps);

struct ContentPoint {
    double epsilon = 0.0;
    double volume = 0.0;
    double normalized = 0.0;  // volume / eps^(1-d)
};

std::vector<ContentPoint> content_curve(const GapSequence& seq, double dim,
                                        std::span<const double> eps_grid);

/// Depth-k union of closed intervals in the iterated construction. Interval
/// endpoints persist into the attractor.
class PreFractal {
public:
    PreFractal(int depth, std::vector<double> starts, std::vector<double> ends);

    int depth() const { return depth_; }
    std::size_t size() const { return starts_.size(); }
    const std::vector<double>& starts() const { return starts_; }
    const std::vector<double>& ends() const { return ends_; }

private:
    int depth_;
    std::vector<double> starts_;
    std::vector<double> ends_;
};

inline constexpr std::uint64_t kDefaultIntervalCap = std::uint64_t{1} << 24;

PreFractal prefractal(const SelfSimilarSystem& system, int depth,
                      std::uint64_t interval_cap = kDefaultIntervalCap);

/// Explicit gap sequence of the attractor with at least `count_at_least`
/// leading gaps and the exact residual mass as the tail total.
GapSequence gap_multiset(const SelfSimilarSystem& system, std::size_t count_at_least);

}  // namespace packlim
