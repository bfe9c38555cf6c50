#pragma once

#include <cstdint>
#include <vector>

#include "packlim/errors.hpp"

namespace packlim {

/// Contracting similitudes on [0,1], children laid left to right with a
/// positive gap b_i between child i and child i+1. Sum of ratios and gaps
/// must be 1, so the attractor touches both ends of [0,1].
class SelfSimilarSystem {
public:
    SelfSimilarSystem(std::vector<double> ratios, std::vector<double> gaps);

    std::size_t branch_count() const { return ratios_.size(); }
    const std::vector<double>& ratios() const { return ratios_; }
    const std::vector<double>& gaps() const { return gaps_; }

    double min_ratio() const;
    double min_gap() const;

    /// Left offset of child i inside the unit interval.
    double child_offset(std::size_t i) const { return offsets_[i]; }

private:
    std::vector<double> ratios_;
    std::vector<double> gaps_;
    std::vector<double> offsets_;
};

/// Best-first enumerator of the attractor's gap multiset in non-increasing
/// order. Pops cylinders by length; emitted gaps above the moving guarantee
/// threshold are final.
class GapEnumerator {
public:
    explicit GapEnumerator(const SelfSimilarSystem& system);

    /// Extends the validated prefix to at least `count` gaps.
    void ensure(std::size_t count);

    std::size_t validated_count() const { return validated_; }
    double gap(std::size_t index1) const;            // 1-based
    double prefix_sum(std::size_t n) const;          // sum of first n gaps
    double total() const { return 1.0; }             // attractor is null on [0,1]

    static constexpr std::size_t kCountCap = std::size_t{1} << 23;

private:
    SelfSimilarSystem system_;
    std::vector<double> heap_;                       // cylinder lengths, max-heap
    std::vector<double> emitted_;                    // gaps, eventually sorted prefix
    std::vector<double> prefix_;                     // compensated prefix sums
    std::size_t validated_ = 0;
    double max_gap_factor_;
};

}  // namespace packlim
