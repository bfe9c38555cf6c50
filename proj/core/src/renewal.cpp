#include "packlim/renewal.hpp"

#include <algorithm>
#include <cmath>

#include "packlim/constants.hpp"

namespace packlim {

RenewalAnalyzer::RenewalAnalyzer(const SelfSimilarSystem& system, int max_depth)
    : cache_(system), max_depth_(max_depth) {
    dim_ = moran_dimension(system);
    delta_ = system.min_gap();
    mu_mean_ = 0.0;
    for (double r : system.ratios())
        mu_mean_ += std::pow(r, dim_) * std::log(1.0 / r);
}

CountRange RenewalAnalyzer::base_case(double eps) {
    std::int64_t key = static_cast<std::int64_t>(
        std::llround(std::log(eps) * 9.007199254740992e15));  // 2^53 grid on log eps
    std::lock_guard<std::mutex> lock(mutex_);  // also guards the prefractal cache
    auto it = base_memo_.find(key);
    if (it != base_memo_.end()) return it->second;
    SandwichCount s = sandwich_count(cache_.system(), eps, max_depth_, &cache_);
    CountRange r{s.lower, s.upper};
    base_memo_.emplace(key, r);
    return r;
}

CountRange RenewalAnalyzer::recurse(double eps,
                                    std::vector<std::uint32_t>& exponents,
                                    std::map<std::vector<std::uint32_t>, CountRange>& memo) {
    const auto& ratios = cache_.system().ratios();
    double value = eps;
    for (std::size_t i = 0; i < ratios.size(); ++i)
        value *= std::pow(1.0 / ratios[i], static_cast<double>(exponents[i]));

    if (value > delta_) return base_case(value);
    auto it = memo.find(exponents);
    if (it != memo.end()) return it->second;

    CountRange total{0, 0};
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        double child = value / ratios[i];
        if (child > 1.0) {
            // a leaf always holds one point of any packing of the whole set
            total = total + CountRange{1, 1};
            continue;
        }
        ++exponents[i];
        total = total + recurse(eps, exponents, memo);
        --exponents[i];
    }
    memo.emplace(exponents, total);
    return total;
}

CountRange RenewalAnalyzer::count(double eps) {
    if (!(eps > 0.0)) throw Error("epsilon must be positive");
    if (eps > 1.0) return {0, 0};  // past the diameter (renewal convention)
    if (eps > delta_) return base_case(eps);
    std::vector<std::uint32_t> exponents(cache_.system().branch_count(), 0);
    std::map<std::vector<std::uint32_t>, CountRange> memo;
    return recurse(eps, exponents, memo);
}

std::uint64_t RenewalAnalyzer::count_exact(double eps) {
    CountRange r = count(eps);
    if (!r.exact()) throw SandwichNotClosed(r.lo, r.hi, max_depth_);
    return r.lo;
}

namespace {

struct Band {
    double eps_lo, eps_hi;
    CountRange at_lo, at_hi;
};

void scan_segment(RenewalAnalyzer& an, double a, CountRange ca, double b, CountRange cb,
                  double resolution, std::vector<Band>& bands) {
    if (ca.exact() && cb.exact() && ca.lo == cb.lo) return;  // constant on [a, b]
    if (b - a <= resolution) {
        bands.push_back({a, b, ca, cb});
        return;
    }
    double m = 0.5 * (a + b);
    if (!(m > a && m < b)) {
        bands.push_back({a, b, ca, cb});
        return;
    }
    CountRange cm = an.count(m);
    scan_segment(an, a, ca, m, cm, resolution, bands);
    scan_segment(an, m, cm, b, cb, resolution, bands);
}

}  // namespace

std::vector<JumpPiece> jump_scan(RenewalAnalyzer& analyzer, double eps_lo, double eps_hi,
                                 double resolution) {
    if (!(eps_lo > 0.0 && eps_lo < eps_hi)) throw Error("bad scan interval");
    CountRange clo = analyzer.count(eps_lo);
    CountRange chi = analyzer.count(eps_hi);
    std::vector<Band> bands;
    scan_segment(analyzer, eps_lo, clo, eps_hi, chi, resolution, bands);
    std::sort(bands.begin(), bands.end(),
              [](const Band& x, const Band& y) { return x.eps_lo < y.eps_lo; });

    std::vector<JumpPiece> pieces;
    double cursor = eps_lo;
    CountRange current = clo;
    for (const Band& band : bands) {
        if (band.eps_lo > cursor)
            pieces.push_back({cursor, band.eps_lo, band.at_lo});
        // inside the band the count lies between the two ends
        pieces.push_back({band.eps_lo, band.eps_hi,
                          CountRange{band.at_hi.lo, band.at_lo.hi}});
        cursor = band.eps_hi;
        current = band.at_hi;
    }
    if (cursor < eps_hi) pieces.push_back({cursor, eps_hi, current});
    return pieces;
}

namespace {

// Table lookup: pieces tile (lo, hi]; value 0 past the diameter.
CountRange table_value(const std::vector<JumpPiece>& pieces, double eps) {
    if (eps > 1.0) return {0, 0};
    for (const JumpPiece& p : pieces)
        if (eps > p.eps_lo && eps <= p.eps_hi) return p.count;
    throw Error("renewal table lookup outside the scanned range");
}

}  // namespace

RenewalProfile build_profile(RenewalAnalyzer& analyzer, double resolution) {
    const SelfSimilarSystem& sys = analyzer.system();
    RenewalProfile profile;
    profile.dim = analyzer.dim();
    profile.delta = analyzer.separation();
    profile.mu_mean = analyzer.mu_mean();

    double scan_lo = profile.delta * sys.min_ratio();
    profile.pieces = jump_scan(analyzer, scan_lo, 1.0, resolution);

    // refine breakpoints: table jumps, their images under each ratio, and the
    // diameter crossings eps = r_i
    std::vector<double> cuts;
    for (const JumpPiece& p : profile.pieces) {
        cuts.push_back(p.eps_lo);
        cuts.push_back(p.eps_hi);
        for (double r : sys.ratios()) {
            double scaled_lo = p.eps_lo * r;
            double scaled_hi = p.eps_hi * r;
            if (scaled_lo > scan_lo && scaled_lo < 1.0) cuts.push_back(scaled_lo);
            if (scaled_hi > scan_lo && scaled_hi < 1.0) cuts.push_back(scaled_hi);
        }
    }
    for (double r : sys.ratios())
        if (r > scan_lo) cuts.push_back(r);
    cuts.push_back(scan_lo);
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double d = profile.dim;
    Interval integral{0.0, 0.0};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double lo = cuts[i];
        double hi = cuts[i + 1];
        if (hi <= scan_lo || lo >= 1.0) continue;
        double rep = hi;  // pieces are right-closed, so the right end represents
        CountRange n = table_value(profile.pieces, rep);
        DefectRange defect{static_cast<std::int64_t>(n.lo), static_cast<std::int64_t>(n.hi)};
        for (double r : sys.ratios()) {
            CountRange child = table_value(profile.pieces, rep / r);
            defect.lo -= static_cast<std::int64_t>(child.hi);
            defect.hi -= static_cast<std::int64_t>(child.lo);
        }
        ZPiece z;
        z.x_lo = -std::log(hi);
        z.x_hi = -std::log(lo);
        z.coefficient = defect;
        profile.z_pieces.push_back(z);

        // integral of e^(-x d) over the x-piece equals (hi^d - lo^d)/d
        double weight = (std::pow(hi, d) - std::pow(lo, d)) / d;
        Interval contrib{static_cast<double>(defect.lo) * weight,
                         static_cast<double>(defect.hi) * weight};
        integral = integral + contrib;
    }
    std::reverse(profile.z_pieces.begin(), profile.z_pieces.end());  // ascending in x

    profile.z_integral = integral;
    profile.constant = integral * (1.0 / profile.mu_mean);
    return profile;
}

Interval packing_constant(const RenewalProfile& profile, const SelfSimilarSystem& system) {
    if (!is_independent(system))
        throw DependentSystem("packing constant requires an independent system");
    return profile.constant;
}

}  // namespace packlim
