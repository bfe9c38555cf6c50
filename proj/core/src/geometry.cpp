#include "packlim/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "packlim/numeric.hpp"

namespace packlim {

CutOutSet::CutOutSet(GapSequence seq, double origin)
    : seq_(std::move(seq)), origin_(origin) {
    supremum_ = origin_ + seq_.total();
}

std::vector<double> CutOutSet::materialize(std::uint64_t up_to) const {
    if (up_to == 0) throw Error("materialize needs at least one point");
    std::vector<double> pts;
    pts.reserve(up_to + 1);
    pts.push_back(origin_);
    CompensatedSum acc;
    acc.add(origin_);
    for (std::uint64_t i = 2; i <= up_to; ++i) {
        acc.add(seq_.length(i - 1));
        pts.push_back(acc.value());
    }
    // a genuinely finite sequence ends exactly at the supremum
    if (supremum_ > pts.back()) pts.push_back(supremum_);
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (!(pts[i] > pts[i - 1]))
            throw Error("materialized points are not strictly increasing");
    return pts;
}

TubeVolume tube_volume(const GapSequence& seq, double eps) {
    if (!(eps > 0.0)) throw Error("epsilon must be positive");
    double two_eps = 2.0 * eps;

    if (seq.length(1) < two_eps) {
        // boundary regime: every gap is covered
        TubeVolume tv;
        tv.epsilon = eps;
        tv.volume = seq.tail_sum(1) + two_eps;
        tv.uncovered_gaps = 0;
        tv.boundary = true;
        return tv;
    }

    // n = max{ j : l_j >= 2 eps }, so eps sits in [l_{n+1}/2, l_n/2]
    std::uint64_t limit = seq.addressable_limit();
    std::uint64_t lo = 1;
    std::uint64_t hi = 2;
    while (true) {
        if (hi >= limit) {
            hi = limit;
            if (seq.model() == GapModel::explicit_list && seq.explicit_tail() > 0.0 &&
                seq.length(hi) >= two_eps)
                throw IndexBeyondExplicit("uncovered gaps extend into the aggregated tail");
            if (seq.model() == GapModel::explicit_list && seq.length(hi) >= two_eps) {
                lo = hi;  // zero tail: all stored gaps are uncovered
                break;
            }
            break;
        }
        if (seq.length(hi) < two_eps) break;
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (seq.length(mid) >= two_eps)
            lo = mid;
        else
            hi = mid;
    }
    std::uint64_t n = lo;

    TubeVolume tv;
    tv.epsilon = eps;
    tv.volume = seq.tail_sum(n + 1) + 2.0 * static_cast<double>(n + 1) * eps;
    tv.uncovered_gaps = n;
    tv.boundary = false;
    return tv;
}

std::vector<ContentPoint> content_curve(const GapSequence& seq, double dim,
                                        std::span<const double> eps_grid) {
    std::vector<ContentPoint> out;
    out.reserve(eps_grid.size());
    for (double eps : eps_grid) {
        TubeVolume tv = tube_volume(seq, eps);
        ContentPoint p;
        p.epsilon = eps;
        p.volume = tv.volume;
        p.normalized = tv.volume / std::pow(eps, 1.0 - dim);
        out.push_back(p);
    }
    return out;
}

PreFractal::PreFractal(int depth, std::vector<double> starts, std::vector<double> ends)
    : depth_(depth), starts_(std::move(starts)), ends_(std::move(ends)) {
    if (starts_.size() != ends_.size()) throw Error("malformed pre-fractal");
}

PreFractal prefractal(const SelfSimilarSystem& system, int depth,
                      std::uint64_t interval_cap) {
    if (depth < 0) throw Error("pre-fractal depth must be non-negative");
    double m = static_cast<double>(system.branch_count());
    if (std::pow(m, depth) > static_cast<double>(interval_cap))
        throw DepthCapExceeded("pre-fractal interval count beyond cap");

    std::vector<double> starts{0.0};
    std::vector<double> ends{1.0};
    const auto& ratios = system.ratios();
    for (int level = 0; level < depth; ++level) {
        std::vector<double> ns, ne;
        ns.reserve(starts.size() * ratios.size());
        ne.reserve(starts.size() * ratios.size());
        for (std::size_t i = 0; i < starts.size(); ++i) {
            double a = starts[i];
            double len = ends[i] - starts[i];
            for (std::size_t c = 0; c < ratios.size(); ++c) {
                double off = system.child_offset(c);
                // children keep their parent's endpoints exactly
                double cs = (c == 0) ? a : a + len * off;
                double ce = (c + 1 == ratios.size()) ? ends[i] : a + len * (off + ratios[c]);
                ns.push_back(cs);
                ne.push_back(ce);
            }
        }
        starts.swap(ns);
        ends.swap(ne);
    }
    return PreFractal(depth, std::move(starts), std::move(ends));
}

GapSequence gap_multiset(const SelfSimilarSystem& system, std::size_t count_at_least) {
    GapEnumerator en(system);
    en.ensure(std::max<std::size_t>(count_at_least, 1));
    std::size_t n = en.validated_count();
    std::vector<double> gaps;
    gaps.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) gaps.push_back(en.gap(i));
    double tail = std::max(0.0, 1.0 - en.prefix_sum(n));
    return GapSequence::explicit_list(std::move(gaps), tail);
}

}  // namespace packlim
