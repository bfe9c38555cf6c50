#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "packlim/geometry.hpp"
#include "packlim/numeric.hpp"

namespace packlim {

struct PackingResult {
    double epsilon = 0.0;
    std::uint64_t count = 0;
    double normalized = 0.0;  // count * eps^d when a dimension was supplied
    std::optional<std::vector<double>> configuration;
};

/// Maximal eps-separated subset of a sorted point list, greedy from the left.
/// Exact in one dimension. `slack` is the relative tie tolerance; pass 0 for
/// strict comparisons.
PackingResult greedy_pack(std::span<const double> sorted_points, double eps,
                          double slack = kSeparationSlack, bool keep_config = false);

inline constexpr std::uint64_t kMaterializeCap = std::uint64_t{1} << 22;

/// N(Gamma, eps) for the monotone cut-out set: truncates at J = K(eps) + 1
/// points plus the supremum (points past K(eps) sit within eps of it). Uses a
/// streaming greedy when J exceeds the materialization cap.
PackingResult pack_cutout(const CutOutSet& set, double eps, double dim,
                          bool keep_config = false);

/// Windowed greedy core behind pack_cutout: counts the greedy packing over
/// y_1..y_point_limit plus the supremum without materializing any points.
std::uint64_t stream_cutout_count(const GapSequence& seq, double eps,
                                  std::uint64_t point_limit,
                                  double slack = kSeparationSlack);

struct IntervalPack {
    PackingResult lower;  // greedy over interval endpoints (subset of the attractor)
    PackingResult upper;  // greedy over the continuous interval union
};

IntervalPack pack_intervals(const PreFractal& pre, double eps);

struct SandwichCount {
    std::uint64_t lower = 0;
    std::uint64_t upper = 0;
    int depth = 0;
    bool exact() const { return lower == upper; }
};

class PrefractalCache {
public:
    explicit PrefractalCache(const SelfSimilarSystem& system) : system_(system) {}
    const PreFractal& at_depth(int depth, std::uint64_t interval_cap = kDefaultIntervalCap);
    const SelfSimilarSystem& system() const { return system_; }

private:
    SelfSimilarSystem system_;
    std::vector<PreFractal> store_;
};

/// Escalates depth until the endpoint/union sandwich closes.
SandwichCount sandwich_count(const SelfSimilarSystem& system, double eps, int max_depth,
                             PrefractalCache* cache = nullptr);

inline constexpr double kAttractorEpsFloor = 1e-7;

/// Exact N(A, eps); throws SandwichNotClosed when the sandwich stays open at
/// max_depth, and rejects eps below the configurable floor.
PackingResult pack_exact_attractor(const SelfSimilarSystem& system, double eps,
                                   int max_depth = 24,
                                   double eps_floor = kAttractorEpsFloor);

/// delta(A, N): largest achievable minimal pairwise distance among N points.
/// Exact double bisection on the greedy feasibility predicate.
double best_radius(std::span<const double> sorted_points, std::uint64_t n_points);

/// The constructive block packing: blocks of h_k = floor(((k^d-(k-1)^d)/k)
/// (L/eps)^d) points at stride k, k <= v(eps). Separation is verified a
/// posteriori; count 1 + sum h_k is a certified lower bound on N(Gamma, eps).
PackingResult greedy_block_packing(const GapSequence& seq, double eps, double dim,
                                   double scale, bool keep_config = false);

// Growth gauges pinned for tests: u(eps) = floor(eps^{d/(2(d-1))}),
// v(eps) = min(u(eps), floor(eps^{-d/2})).
std::uint64_t gauge_u(double eps, double dim);
std::uint64_t gauge_v(double eps, double dim);

}  // namespace packlim
