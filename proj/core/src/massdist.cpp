#include "packlim/massdist.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "packlim/packing.hpp"

namespace packlim {

namespace {

void validate(const MassInstance& inst) {
    if (!(inst.epsilon > 0.0)) throw Error("epsilon must be positive");
    if (!(inst.tail >= 0.0)) throw Error("tail mass must be non-negative");
    for (std::size_t i = 0; i < inst.weights.size(); ++i) {
        if (!(inst.weights[i] > 0.0)) throw Error("weights must be positive");
        if (i > 0 && inst.weights[i] > inst.weights[i - 1])
            throw Error("weights must be non-increasing");
    }
}

// dp over item subsets: lexicographic (closed parts, open mass) dominance is
// sound because an extra closed part is worth at least the open mass traded
std::uint64_t cover_dp(const std::vector<double>& items, double eps) {
    const std::size_t n = items.size();
    struct State {
        double open = 0.0;
        std::int8_t parts = -1;
    };
    std::vector<State> dp(std::size_t{1} << n);
    dp[0] = {0.0, 0};
    for (std::size_t mask = 1; mask < dp.size(); ++mask) {
        State best{0.0, -1};
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask & (std::size_t{1} << i))) continue;
            State prev = dp[mask ^ (std::size_t{1} << i)];
            State cand = prev;
            cand.open += items[i];
            if (cand.open >= eps) {
                cand.parts = static_cast<std::int8_t>(cand.parts + 1);
                cand.open = 0.0;
            }
            if (cand.parts > best.parts ||
                (cand.parts == best.parts && cand.open > best.open))
                best = cand;
        }
        dp[mask] = best;
    }
    return static_cast<std::uint64_t>(dp.back().parts);
}

// Maximizes the fluid part count over items below eps. Every group becomes a
// part, topped up from the fluid budget when short; leftover budget makes
// pure-fluid parts. When an absorbing full part exists, items may also be
// discarded into it for free.
struct FluidSearch {
    const std::vector<double>* items;  // descending, all below eps
    double eps;
    double tail;
    bool discard_allowed;
    std::vector<double> groups;
    std::vector<double> suffix;  // remaining mass from item i on
    std::set<std::pair<std::size_t, std::vector<double>>> visited;
    std::size_t nodes = 0;
    std::uint64_t best = 0;

    void leaf() {
        double deficit = 0.0;
        for (double g : groups) deficit += std::max(0.0, eps - g);
        if (deficit > tail) return;
        std::uint64_t parts =
            groups.size() + std::uint64_t(std::floor((tail - deficit) / eps));
        best = std::max(best, parts);
    }

    // Upper bound on reachable parts: secured groups plus as many completions
    // as the joint budget (remaining mass + fluid) can pay for. Open groups
    // cost their deficit, fresh parts cost a full eps.
    double reachable(std::size_t idx) const {
        double budget = suffix[idx] + tail;
        std::vector<double> deficits;
        double parts = 0.0;
        for (double g : groups) {
            if (g >= eps)
                parts += 1.0;
            else
                deficits.push_back(eps - g);
        }
        std::sort(deficits.begin(), deficits.end());
        for (double d : deficits) {
            if (budget < d) return parts;
            budget -= d;
            parts += 1.0;
        }
        return parts + std::floor(budget / eps);
    }

    void place(std::size_t idx) {
        if (++nodes > 20000000)
            throw InstanceTooLarge("fluid cover search exhausted its node budget");
        if (reachable(idx) <= double(best)) return;
        if (idx == items->size()) {
            leaf();
            return;
        }
        std::vector<double> key = groups;
        std::sort(key.begin(), key.end());
        if (!visited.emplace(idx, std::move(key)).second) return;

        double w = (*items)[idx];
        for (std::size_t g = 0; g < groups.size(); ++g) {
            bool duplicate = false;
            for (std::size_t h = 0; h < g; ++h)
                if (groups[h] == groups[g]) {
                    duplicate = true;
                    break;
                }
            if (duplicate) continue;
            groups[g] += w;
            place(idx + 1);
            groups[g] -= w;
        }
        if (groups.size() < items->size()) {
            groups.push_back(w);
            place(idx + 1);
            groups.pop_back();
        }
        if (discard_allowed) place(idx + 1);
    }
};

std::uint64_t fluid_cover(const std::vector<double>& weights, double eps, double tail) {
    // items at or above eps stand alone as full parts; smaller items can then
    // be discarded into them for free
    std::vector<double> small;
    std::uint64_t full = 0;
    for (double w : weights) {
        if (w >= eps)
            ++full;
        else
            small.push_back(w);
    }
    FluidSearch s;
    s.items = &small;
    s.eps = eps;
    s.tail = tail;
    s.discard_allowed = full >= 1;
    s.suffix.assign(small.size() + 1, 0.0);
    for (std::size_t i = small.size(); i-- > 0;)
        s.suffix[i] = s.suffix[i + 1] + small[i];

    // warm start: serialize greedily, then let the fluid close the remainder
    {
        double open = 0.0, deficit = 0.0;
        std::uint64_t closed = 0;
        for (double w : small) {
            open += w;
            if (open >= eps) {
                ++closed;
                open = 0.0;
            }
        }
        if (open > 0.0 && !s.discard_allowed) deficit = eps - open;
        if (deficit <= tail) {
            std::uint64_t parts = closed + (open > 0.0 && !s.discard_allowed ? 1 : 0) +
                                  std::uint64_t(std::floor((tail - deficit) / eps));
            s.best = parts;
        }
    }

    s.place(0);
    return full + s.best;
}

}  // namespace

std::uint64_t exact_cover_count(const MassInstance& instance, TailMode mode) {
    validate(instance);
    std::vector<double> items = instance.weights;
    double eps = instance.epsilon;

    if (mode == TailMode::as_item) {
        if (instance.tail > 0.0) items.push_back(instance.tail);
        if (items.size() > kExactCoverCap)
            throw InstanceTooLarge("exact cover beyond the subset-DP cap");
        std::sort(items.begin(), items.end(), std::greater<double>());
        return cover_dp(items, eps);
    }

    if (items.size() > kExactCoverCap)
        throw InstanceTooLarge("exact cover beyond the search cap");
    return fluid_cover(items, eps, instance.tail);
}

std::uint64_t greedy_block_cover(const GapSequence& seq, double eps, double dim,
                                 double scale_lo) {
    if (!(eps > 0.0)) throw Error("epsilon must be positive");
    if (!(dim > 0.0 && dim < 1.0)) throw Error("dimension must lie in (0,1)");
    if (seq.total() < eps) return 0;  // not even one part

    std::uint64_t v = gauge_v(eps, dim);
    double big = std::pow(scale_lo / eps, dim);

    std::uint64_t parts = 0;
    std::uint64_t consumed = 0;  // H(k) as blocks complete
    for (std::uint64_t k = 1; k <= v; ++k) {
        double hk_real = std::floor(power_difference(static_cast<double>(k), dim) /
                                    static_cast<double>(k) * big);
        std::uint64_t hk = hk_real < 0.0 ? 0 : static_cast<std::uint64_t>(hk_real);
        for (std::uint64_t n = 1; n <= hk; ++n) {
            std::uint64_t start = consumed + (n - 1) * k + 1;
            if (seq.window_sum(start, k) < eps)
                throw SeparationViolated("block " + std::to_string(n) + " of stride " +
                                         std::to_string(k) + " misses its mass");
        }
        parts += hk;
        consumed += k * hk;
    }
    // the residue {consumed+1, ...} merges into the last block; with no blocks
    // at all it is the single whole-line part
    return parts > 0 ? parts : 1;
}

std::uint64_t cover_upper_bound(const GapSequence& seq, double eps) {
    if (!(eps > 0.0)) throw Error("epsilon must be positive");
    if (seq.length(1) < eps) {
        double total = seq.total();
        return static_cast<std::uint64_t>(std::floor(total / eps));
    }
    std::uint64_t f1 = seq.max_window_start(1, eps);
    double tail = seq.tail_sum(f1 + 1);
    return static_cast<std::uint64_t>(std::floor(static_cast<double>(f1) + tail / eps));
}

}  // namespace packlim
