#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "packlim/numeric.hpp"
#include "packlim/packing.hpp"
#include "packlim/self_similar.hpp"

namespace packlim {

/// Integer count known to lie in [lo, hi]; exact when the ends agree.
struct CountRange {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    bool exact() const { return lo == hi; }

    CountRange operator+(const CountRange& o) const { return {lo + o.lo, hi + o.hi}; }
};

/// Evaluates N(A, eps) for an independent self-similar fractal via the
/// renewal recursion N(eps) = sum_i N(eps / r_i) below the metric separation,
/// with endpoint/union sandwiches as base cases above it. Memo keys are
/// integer exponent vectors, so float drift cannot split recursion nodes.
class RenewalAnalyzer {
public:
    explicit RenewalAnalyzer(const SelfSimilarSystem& system, int max_depth = 24);

    const SelfSimilarSystem& system() const { return cache_.system(); }
    double dim() const { return dim_; }
    /// Metric separation: the smallest child gap (children touch their hulls).
    double separation() const { return delta_; }
    double mu_mean() const { return mu_mean_; }

    /// N(A, eps) as a range; exact almost everywhere, open only where the
    /// sandwich cannot close near an unresolved jump.
    CountRange count(double eps);

    /// N(A, eps) as an integer; throws SandwichNotClosed when inexact.
    std::uint64_t count_exact(double eps);

    int max_depth() const { return max_depth_; }

private:
    CountRange base_case(double eps);
    CountRange recurse(double eps, std::vector<std::uint32_t>& exponents,
                       std::map<std::vector<std::uint32_t>, CountRange>& memo);

    PrefractalCache cache_;
    double dim_;
    double delta_;
    double mu_mean_;
    int max_depth_;
    std::map<std::int64_t, CountRange> base_memo_;  // keyed on rounded log(eps)
    std::mutex mutex_;
};

/// N is constant on (eps_lo, eps_hi]; jump locations are best-radius values.
struct JumpPiece {
    double eps_lo = 0.0;
    double eps_hi = 0.0;
    CountRange count;
};

/// Locates every jump of N on (eps_lo, eps_hi] by bisection to `resolution`.
/// Unresolved bands (an open sandwich at the cap) appear as thin pieces with
/// an inexact count.
std::vector<JumpPiece> jump_scan(RenewalAnalyzer& analyzer, double eps_lo, double eps_hi,
                                 double resolution = 1e-12);

/// Signed integer range for the renewal defect.
struct DefectRange {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    bool exact() const { return lo == hi; }
};

/// z(x) = coefficient * e^(-x d) on [x_lo, x_hi); the coefficient is the
/// integer defect L(e^-x) = N(e^-x) - sum_i N(e^-x / r_i) with N taken as 0
/// past the diameter, as a range where a jump could not be resolved.
struct ZPiece {
    double x_lo = 0.0;
    double x_hi = 0.0;
    DefectRange coefficient;
};

struct RenewalProfile {
    double dim = 0.0;
    double delta = 0.0;
    double mu_mean = 0.0;
    std::vector<JumpPiece> pieces;    // N on (delta * min r, 1]
    std::vector<ZPiece> z_pieces;     // support inside [0, -log(delta * min r))
    Interval z_integral;              // closed-form piecewise integral of z
    Interval constant;                // packing constant (point when resolved)
};

RenewalProfile build_profile(RenewalAnalyzer& analyzer, double resolution = 1e-12);

/// N_d(A) = (int z) / mu_mean. Throws DependentSystem when the lattice gate
/// trips (the limit does not exist for dependent systems).
Interval packing_constant(const RenewalProfile& profile, const SelfSimilarSystem& system);

}  // namespace packlim
