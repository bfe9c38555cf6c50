#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "packlim/errors.hpp"
#include "packlim/numeric.hpp"
#include "packlim/self_similar.hpp"

namespace packlim {

enum class GapModel { power_law, block_geometric, from_system, explicit_list };

/// A non-increasing summable positive sequence of gap lengths (l_j), 1-based.
///
/// Models:
///   power_law        l_j = L * j^(-1/d), d in (0,1)
///   block_geometric  l_j = b * rho^k for m^(k-1) <= j <= m^k - 1, k >= 1
///   from_system      sorted gap multiset of a self-similar attractor on [0,1]
///   explicit_list    finite stored head plus an aggregate tail total
///
/// Values are immutable; the prefix cache fills idempotently under a lock, so
/// concurrent readers are safe and all operations are deterministic.
class GapSequence {
public:
    static GapSequence power_law(double scale, double dim);
    static GapSequence block_geometric(double length_ratio, std::uint64_t count_factor,
                                       double base);
    static GapSequence from_system(const SelfSimilarSystem& system);
    static GapSequence explicit_list(std::vector<double> lengths, double tail_total);

    GapModel model() const { return model_; }

    double length(std::uint64_t j) const;                 // l_j
    double prefix_sum(std::uint64_t n) const;             // sum_{j<=n} l_j
    double window_sum(std::uint64_t n, std::uint64_t k) const;  // p(n,k)

    Interval tail_sum_bracket(std::uint64_t n) const;     // sum_{j>=n} l_j
    double tail_sum(std::uint64_t n) const;
    double total() const;                                 // tail_sum(1)

    /// Largest n with window_sum(n, k) >= eps. Throws EpsilonTooLarge when
    /// eps exceeds window_sum(1, k).
    std::uint64_t max_window_start(std::uint64_t k, double eps) const;

    /// Smallest n with tail_sum(n) <= eps; 1 when eps >= total(). Throws
    /// Indeterminate when the tail bracket cannot separate eps.
    std::uint64_t tail_cutoff(double eps) const;

    // Model parameters (throws std::logic_error when the model differs).
    double power_scale() const;
    double power_dim() const;
    double block_ratio() const;
    std::uint64_t block_count_factor() const;
    double block_base() const;
    const std::vector<double>& explicit_lengths() const;
    double explicit_tail() const;
    const SelfSimilarSystem& system() const;

    /// Indices at or beyond this value are not addressable for the model
    /// (stored length for explicit lists, enumeration cap for systems).
    std::uint64_t addressable_limit() const;

    /// Tolerance for power-law tail brackets (relative). Default 1e-10.
    void set_tail_tolerance(double tol);

private:
    GapSequence() = default;

    struct Cache;

    double tail_relative_tol_ = 1e-10;
    GapModel model_ = GapModel::explicit_list;
    // power_law
    double scale_ = 0.0;
    double dim_ = 0.0;
    // block_geometric
    double ratio_ = 0.0;
    std::uint64_t count_factor_ = 0;
    double base_ = 0.0;
    std::vector<std::uint64_t> block_firsts_;  // m^(k-1) until overflow
    // explicit_list
    std::vector<double> lengths_;
    double tail_total_ = 0.0;
    // from_system
    std::shared_ptr<SelfSimilarSystem> system_;
    std::shared_ptr<GapEnumerator> enumerator_;

    std::shared_ptr<Cache> cache_;

    // Block-geometric helpers (exact closed forms, 1-based blocks).
    std::uint64_t block_of(std::uint64_t j) const;
    double block_length(std::uint64_t k) const;
    std::uint64_t block_first(std::uint64_t k) const;    // m^(k-1)
    std::uint64_t block_last(std::uint64_t k) const;     // m^k - 1
    double block_suffix(std::uint64_t k) const;          // sum over blocks >= k

    Interval power_tail_bracket(std::uint64_t n) const;
    double power_window_direct(std::uint64_t n, std::uint64_t k) const;

    void ensure_prefix(std::uint64_t n) const;
};

}  // namespace packlim
