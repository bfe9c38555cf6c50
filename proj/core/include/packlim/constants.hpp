#pragma once

#include <cstdint>
#include <span>

#include "packlim/numeric.hpp"
#include "packlim/self_similar.hpp"

namespace packlim {

/// Certified series evaluation: the true sum lies in [value, value + tail_bound].
struct SeriesValue {
    double value = 0.0;
    double tail_bound = 0.0;
    std::uint64_t terms_used = 0;

    double midpoint() const { return value + 0.5 * tail_bound; }
};

/// A_d = sum_{k>=1} (k^d - (k-1)^d)/k, the packing limit of the unit-scale
/// monotone cut-out set. Direct certified partial sums when feasible, else
/// the reflected form 1/2 + sum_i (-1)^i (zeta(2+i-d) - 1).
SeriesValue packing_series(double dim, double tol);

/// p_d = A_d (1-d) / 2^(1-d); ratio of the packing constant to the Minkowski
/// content for monotone measurable cut-out sets.
double packing_content_ratio(double dim, double tol = 1e-12);

/// Riemann zeta on (1, inf) by Euler-Maclaurin with a certified remainder.
struct ZetaValue {
    double value = 0.0;
    double error_bound = 0.0;
};
ZetaValue riemann_zeta(double s);

/// psi(x) by upward recurrence to x >= 10 plus the asymptotic series.
/// Absolute error <= 1e-12 on (0, inf); throws NonPositiveArgument otherwise.
double digamma(double x);

/// int_1^inf dx / ((x+1) x^s) by adaptive Simpson after x = e^u, with the
/// analytic alternating tail. Equals (psi((s+1)/2) - psi(s/2)) / 2.
double dirichlet_tail_integral(double s, double tol = 1e-10);

/// Minkowski content of a measurable monotone cut-out set: 2^(1-d) L^d / (1-d).
double cutout_content(double scale, double dim);

/// Root of sum r_i^d = 1 on (0, 1] by bisection; returns 1 when the ratios
/// already sum to at least 1.
double moran_dimension(std::span<const double> ratios, double tol = 1e-14);
double moran_dimension(const SelfSimilarSystem& system, double tol = 1e-14);

/// Heuristic lattice gate: dependent iff all log r_i / log r_1 are rational
/// with denominators <= 1e6 (continued fractions, 1e-12 tolerance).
bool is_independent(const SelfSimilarSystem& system);

/// Minkowski content of an independent self-similar fractal:
/// 2^(1-d)/(d(1-d)) * (sum b_i^d) / (sum r_i^d log(1/r_i)).
/// Throws DependentSystem when the lattice gate trips.
double self_similar_content(const SelfSimilarSystem& system);

/// L(a) = 2^(log_3 a - 1) (1 + sum_k 2^(k-1)/ceil(a 3^(k-1))), the packing
/// limit of the rearranged 1/3 Cantor set along eps = a 3^-n.
double cantor_subsequence_limit(double a, double tol = 1e-12);

struct GrowthConstants {
    double c1 = 0.0;  // 1/4 in one dimension
    double c2 = 0.0;  // 2^(d-1)
};
GrowthConstants growth_constants(double dim);

struct MassBounds {
    double lower = 0.0;  // L_lo^d * A_d
    double upper = 0.0;  // L_hi^d + d/(1-d) * L_hi * L_lo^(d-1)
};
MassBounds mass_distribution_envelope(double scale_lo, double scale_hi, double dim,
                                      double tol = 1e-10);

}  // namespace packlim
