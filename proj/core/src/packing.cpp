#include "packlim/packing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace packlim {

namespace {

double powd(double x, double d) { return std::pow(x, d); }

}  // namespace

PackingResult greedy_pack(std::span<const double> sorted_points, double eps, double slack,
                          bool keep_config) {
    if (sorted_points.empty()) throw Error("greedy packing needs a non-empty point list");
    if (!(eps > 0.0)) throw Error("epsilon must be positive");
    double eps_eff = eps - slack * eps;

    PackingResult r;
    r.epsilon = eps;
    r.count = 1;
    if (keep_config) r.configuration.emplace({sorted_points.front()});

    double cur = sorted_points.front();
    std::size_t i = 0;
    const std::size_t n = sorted_points.size();
    while (true) {
        double target = cur + eps_eff;
        auto begin = sorted_points.begin() + static_cast<std::ptrdiff_t>(i) + 1;
        auto it = std::lower_bound(begin, sorted_points.end(), target);
        // reconcile the lower_bound target with the subtraction predicate
        while (it != begin && (*(it - 1) - cur) >= eps_eff) --it;
        while (it != sorted_points.end() && (*it - cur) < eps_eff) ++it;
        if (it == sorted_points.end()) break;
        cur = *it;
        i = static_cast<std::size_t>(it - sorted_points.begin());
        ++r.count;
        if (keep_config) r.configuration->push_back(cur);
        if (i + 1 >= n) break;
    }
    return r;
}

std::uint64_t stream_cutout_count(const GapSequence& seq, double eps,
                                  std::uint64_t point_limit, double slack) {
    if (!(eps > 0.0)) throw Error("epsilon must be positive");
    if (point_limit == 0) throw Error("the point limit must be positive");
    const double eps_eff = eps - slack * eps;
    const std::uint64_t J = point_limit;
    std::uint64_t m = 1;  // current point y_m
    std::uint64_t count = 1;
    bool block_model = seq.model() == GapModel::block_geometric;

    while (m < J) {
        std::uint64_t kmax = J - m;
        if (seq.window_sum(m, kmax) < eps_eff) break;
        // minimal k with window_sum(m, k) >= eps_eff
        std::uint64_t k;
        if (seq.window_sum(m, 1) >= eps_eff) {
            k = 1;
        } else {
            std::uint64_t lo = 1;  // predicate false
            std::uint64_t hi = 2;
            while (hi < kmax && seq.window_sum(m, hi) < eps_eff) {
                lo = hi;
                hi = std::min(kmax, hi * 2);
            }
            if (seq.window_sum(m, hi) < eps_eff) break;  // only possible at hi == kmax
            while (hi - lo > 1) {
                std::uint64_t mid = lo + (hi - lo) / 2;
                if (seq.window_sum(m, mid) >= eps_eff)
                    hi = mid;
                else
                    lo = mid;
            }
            k = hi;
        }

        std::uint64_t steps = 1;
        if (block_model) {
            // inside one uniform block every step repeats with the same k
            double len = seq.length(m);
            if (k <= kmax && seq.length(m + k - 1) == len) {
                // find the block end by doubling on equal lengths
                std::uint64_t bl_lo = m + k - 1;
                std::uint64_t bl_hi = bl_lo;
                std::uint64_t span = k;
                while (bl_hi - m < kmax && seq.length(std::min(m + kmax, bl_hi + span)) == len) {
                    bl_hi = std::min(m + kmax, bl_hi + span);
                    span *= 2;
                }
                std::uint64_t prev = bl_lo;
                while (bl_hi > prev + 1) {
                    std::uint64_t mid = prev + (bl_hi - prev) / 2;
                    if (seq.length(mid) == len)
                        prev = mid;
                    else
                        bl_hi = mid;
                }
                std::uint64_t block_last = (seq.length(bl_hi) == len) ? bl_hi : prev;
                // windows [m + i k, m + (i+1)k - 1] stay inside while the end
                // is at most block_last; the next point must stay within J
                if (block_last >= m + k - 1) {
                    std::uint64_t fit_block = (block_last - (m - 1)) / k;  // windows inside
                    std::uint64_t fit_points = kmax / k;
                    steps = std::max<std::uint64_t>(1, std::min(fit_block, fit_points));
                }
            }
        }
        m += steps * k;
        count += steps;
    }
    // the supremum is eligible when it sits at distance >= eps from y_m
    if (seq.tail_sum_bracket(m).hi >= eps_eff) ++count;
    return count;
}

PackingResult pack_cutout(const CutOutSet& set, double eps, double dim, bool keep_config) {
    if (!(eps > 0.0)) throw Error("epsilon must be positive");
    if (eps > set.diameter())
        throw EpsilonTooLarge("epsilon exceeds the diameter of the cut-out set");

    const GapSequence& seq = set.gaps();
    std::uint64_t K = seq.tail_cutoff(eps);
    // a finite sequence has only addressable_limit() + 1 points in total
    std::uint64_t J = std::min(K + 1, seq.addressable_limit() + 1);

    // uniform blocks make the windowed greedy polylogarithmic; prefer it well
    // below the materialization cap
    bool prefer_stream = seq.model() == GapModel::block_geometric &&
                         J > (std::uint64_t{1} << 16) && !keep_config;

    PackingResult r;
    if (J + 1 <= kMaterializeCap && !prefer_stream) {
        std::vector<double> pts = set.materialize(J);
        r = greedy_pack(pts, eps, kSeparationSlack, keep_config);
    } else {
        if (keep_config)
            throw DepthCapExceeded("configuration dump beyond the materialization cap");
        r.epsilon = eps;
        r.count = stream_cutout_count(seq, eps, J);
    }
    r.epsilon = eps;
    r.normalized = static_cast<double>(r.count) * powd(eps, dim);
    return r;
}

namespace {

// first index with ends[idx] - cur >= eps_eff, or size when none
std::size_t first_reaching_interval(const std::vector<double>& ends, double cur,
                                    double eps_eff, std::size_t from) {
    auto pred = [&](double e) { return e - cur < eps_eff; };
    auto it = std::partition_point(ends.begin() + static_cast<std::ptrdiff_t>(from),
                                   ends.end(), pred);
    return static_cast<std::size_t>(it - ends.begin());
}

}  // namespace

IntervalPack pack_intervals(const PreFractal& pre, double eps) {
    if (!(eps > 0.0)) throw Error("epsilon must be positive");
    if (pre.size() == 0) throw Error("empty pre-fractal");
    const auto& starts = pre.starts();
    const auto& ends = pre.ends();
    double eps_eff = eps - kSeparationSlack * eps;

    IntervalPack out;

    // lower: endpoints only (they belong to the attractor)
    {
        std::uint64_t count = 1;
        double cur = starts.front();
        std::size_t idx = 0;
        while (true) {
            std::size_t j = first_reaching_interval(ends, cur, eps_eff, idx);
            if (j == ends.size()) break;
            cur = (starts[j] - cur >= eps_eff) ? starts[j] : ends[j];
            idx = j;
            ++count;
        }
        out.lower.epsilon = eps;
        out.lower.count = count;
    }

    // upper: any point of the interval union
    {
        std::uint64_t count = 1;
        double cur = starts.front();
        std::size_t idx = 0;
        while (true) {
            std::size_t j = first_reaching_interval(ends, cur, eps_eff, idx);
            if (j == ends.size()) break;
            double next = std::max(starts[j], cur + eps_eff);
            if (next - cur < eps_eff) next = std::nextafter(next, 1e300);
            if (next > ends[j]) next = ends[j];
            cur = next;
            idx = j;
            ++count;
        }
        out.upper.epsilon = eps;
        out.upper.count = count;
    }

    if (out.upper.count < out.lower.count)
        throw Error("interval sandwich inverted");  // indicates a numeric defect
    return out;
}

const PreFractal& PrefractalCache::at_depth(int depth, std::uint64_t interval_cap) {
    for (const auto& p : store_)
        if (p.depth() == depth) return p;
    store_.push_back(prefractal(system_, depth, interval_cap));
    return store_.back();
}

SandwichCount sandwich_count(const SelfSimilarSystem& system, double eps, int max_depth,
                             PrefractalCache* cache) {
    PrefractalCache local(system);
    PrefractalCache& store = cache ? *cache : local;

    double m = static_cast<double>(system.branch_count());
    int cap_depth = static_cast<int>(std::log(static_cast<double>(kDefaultIntervalCap)) /
                                     std::log(m));
    max_depth = std::min(max_depth, cap_depth);

    SandwichCount best;
    for (int depth = std::min(8, max_depth);; depth = std::min(depth + 4, max_depth)) {
        IntervalPack p = pack_intervals(store.at_depth(depth), eps);
        best.lower = std::max(best.lower, p.lower.count);
        best.upper = best.upper == 0 ? p.upper.count : std::min(best.upper, p.upper.count);
        best.depth = depth;
        if (best.lower == best.upper || depth == max_depth) break;
    }
    return best;
}

PackingResult pack_exact_attractor(const SelfSimilarSystem& system, double eps,
                                   int max_depth, double eps_floor) {
    if (!(eps >= eps_floor))
        throw Error("epsilon below the attractor packing floor");
    if (eps > 1.0) throw EpsilonTooLarge("epsilon exceeds the attractor diameter");
    SandwichCount s = sandwich_count(system, eps, max_depth);
    if (!s.exact()) throw SandwichNotClosed(s.lower, s.upper, s.depth);
    PackingResult r;
    r.epsilon = eps;
    r.count = s.lower;
    return r;
}

double best_radius(std::span<const double> sorted_points, std::uint64_t n_points) {
    if (n_points < 2) throw Error("best radius needs at least two points");
    if (n_points > sorted_points.size())
        throw NTooLarge("more points requested than the set holds");
    double diam = sorted_points.back() - sorted_points.front();
    if (!(diam > 0.0)) throw Error("points must be strictly increasing");

    auto feasible = [&](double eps) {
        return greedy_pack(sorted_points, eps, 0.0).count >= n_points;
    };
    // the predicate is a right-continuous step function of eps whose steps sit
    // on achieved pairwise distances; double bisection lands exactly on one
    double lo = 0.0;  // feasible by convention (every point qualifies)
    double hi = std::nextafter(diam, std::numeric_limits<double>::infinity());
    while (true) {
        double mid = std::midpoint(lo, hi);
        if (!(mid > lo && mid < hi)) break;
        if (feasible(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

std::uint64_t gauge_u(double eps, double dim) {
    double v = std::floor(std::pow(eps, dim / (2.0 * (dim - 1.0))));
    if (v >= 9.2e18) return std::uint64_t{1} << 62;
    return v < 1.0 ? 0 : static_cast<std::uint64_t>(v);
}

std::uint64_t gauge_v(double eps, double dim) {
    double w = std::floor(std::pow(eps, -dim / 2.0));
    std::uint64_t u = gauge_u(eps, dim);
    std::uint64_t wv = w >= 9.2e18 ? (std::uint64_t{1} << 62)
                                   : (w < 1.0 ? 0 : static_cast<std::uint64_t>(w));
    return std::min(u, wv);
}

PackingResult greedy_block_packing(const GapSequence& seq, double eps, double dim,
                                   double scale, bool keep_config) {
    if (!(eps > 0.0)) throw Error("epsilon must be positive");
    if (!(dim > 0.0 && dim < 1.0)) throw Error("dimension must lie in (0,1)");
    std::uint64_t v = gauge_v(eps, dim);
    if (v < 1) throw Error("epsilon too large: the block gauge v(eps) vanished");

    double big = powd(scale / eps, dim);
    double eps_eff = eps - kSeparationSlack * eps;

    std::vector<std::uint64_t> block_sizes;  // h_k for k = 1..v
    block_sizes.reserve(v);
    for (std::uint64_t k = 1; k <= v; ++k) {
        double hk = std::floor(power_difference(static_cast<double>(k), dim) /
                               static_cast<double>(k) * big);
        block_sizes.push_back(hk < 0.0 ? 0 : static_cast<std::uint64_t>(hk));
    }

    // selected point indices: 1, then H(k-1) + n k + 1
    std::uint64_t count = 1;
    std::uint64_t prev_idx = 1;
    std::uint64_t consumed = 0;  // H(k) as blocks complete
    std::vector<double> config;
    if (keep_config) config.push_back(0.0);

    for (std::uint64_t k = 1; k <= v; ++k) {
        std::uint64_t hk = block_sizes[k - 1];
        for (std::uint64_t n = 1; n <= hk; ++n) {
            std::uint64_t idx = consumed + n * k + 1;
            double sep = seq.window_sum(prev_idx, idx - prev_idx);
            if (sep < eps_eff)
                throw SeparationViolated(
                    "block construction separation failed at point index " +
                    std::to_string(idx));
            prev_idx = idx;
            ++count;
            if (keep_config) config.push_back(seq.prefix_sum(idx - 1));
        }
        consumed += k * hk;
    }

    PackingResult r;
    r.epsilon = eps;
    r.count = count;
    r.normalized = static_cast<double>(count) * powd(eps, dim);
    if (keep_config) r.configuration = std::move(config);
    return r;
}

}  // namespace packlim
