#include "packlim/constants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "packlim/errors.hpp"

namespace packlim {

namespace {

// B_{2k} / (2k)! for the Euler-Maclaurin corrections
constexpr double kBernoulliFactorial[] = {
    8.3333333333333333e-02,   // B2/2!
    -1.3888888888888889e-03,  // B4/4!
    3.3068783068783069e-05,   // B6/6!
    -8.2671957671957672e-07,  // B8/8!
    2.0876756987868099e-08,   // B10/10!
    -5.2841901386874932e-10,  // B12/12!
    1.3382536530684679e-11,   // B14/14!
    -3.3896802963225829e-13,  // B16/16!
    8.5860620562778446e-15,   // B18/18!
};

constexpr int kZetaCutoff = 64;

}  // namespace

ZetaValue riemann_zeta(double s) {
    if (!(s > 1.0)) throw Error("zeta evaluated only on (1, inf)");
    const double n = static_cast<double>(kZetaCutoff);

    CompensatedSum acc;
    for (int i = 1; i < kZetaCutoff; ++i) acc.add(std::pow(static_cast<double>(i), -s));
    acc.add(std::pow(n, 1.0 - s) / (s - 1.0));
    acc.add(0.5 * std::pow(n, -s));

    double rising = s;  // s (s+1) ... (s+2k-2)
    double err = 0.0;
    for (std::size_t k = 1; k <= 8; ++k) {
        double term = kBernoulliFactorial[k - 1] * rising * std::pow(n, -s - 2.0 * k + 1.0);
        acc.add(term);
        rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
        if (k == 8) {
            double next =
                std::abs(kBernoulliFactorial[8] * rising * std::pow(n, -s - 17.0));
            err = 2.0 * next;
        }
    }
    double value = acc.value();
    return {value, err + 4e-16 * std::abs(value)};
}

SeriesValue packing_series(double dim, double tol) {
    if (!(dim > 0.0 && dim < 1.0)) throw Error("dimension must lie in (0,1)");
    if (!(tol > 0.0)) throw Error("tolerance must be positive");

    // direct certified partial sum: tail after K terms <= d (K-1)^(d-1) / (1-d)
    double k_needed =
        1.0 + std::pow(tol * (1.0 - dim) / dim, 1.0 / (dim - 1.0));
    if (k_needed <= 2e6) {
        std::uint64_t terms = static_cast<std::uint64_t>(std::ceil(k_needed)) + 1;
        CompensatedSum acc;
        for (std::uint64_t k = 1; k <= terms; ++k) {
            double kk = static_cast<double>(k);
            acc.add(power_difference(kk, dim) / kk);
        }
        double bound = dim * std::pow(static_cast<double>(terms - 1), dim - 1.0) /
                       (1.0 - dim);
        return {acc.value(), bound, terms};
    }

    // reflected form: A_d = 1/2 + sum_i (-1)^i (zeta(2 + i - d) - 1); the
    // bracket terms decrease, so the remainder is bounded by the next term
    CompensatedSum acc;
    acc.add(0.5);
    double zeta_err = 0.0;
    double next_term = 0.0;
    std::uint64_t used = 0;
    for (int i = 0; i < 200; ++i) {
        ZetaValue z = riemann_zeta(2.0 + static_cast<double>(i) - dim);
        double term = z.value - 1.0;
        zeta_err += z.error_bound;
        acc.add((i % 2 == 0) ? term : -term);
        ++used;
        ZetaValue znext = riemann_zeta(2.0 + static_cast<double>(i + 1) - dim);
        next_term = znext.value - 1.0;
        if (next_term <= tol / 4.0 && i >= 1) break;
    }
    double err = next_term + zeta_err + 4e-16 * std::abs(acc.value());
    return {acc.value() - err, 2.0 * err, used};
}

double packing_content_ratio(double dim, double tol) {
    SeriesValue a = packing_series(dim, tol);
    return a.midpoint() * (1.0 - dim) / std::pow(2.0, 1.0 - dim);
}

double digamma(double x) {
    if (!(x > 0.0)) throw NonPositiveArgument("digamma needs a positive argument");
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    double inv2 = 1.0 / (x * x);
    // asymptotic series: ln x - 1/(2x) - sum B_{2k} / (2k x^{2k})
    double series = inv2 * (1.0 / 12.0 +
                            inv2 * (-1.0 / 120.0 +
                                    inv2 * (1.0 / 252.0 +
                                            inv2 * (-1.0 / 240.0 +
                                                    inv2 * (1.0 / 132.0 +
                                                            inv2 * (-691.0 / 32760.0 +
                                                                    inv2 * (1.0 / 12.0)))))));
    return acc + std::log(x) - 0.5 / x - series;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    double fa = f(a);
    double fb = f(b);
    double m = 0.5 * (a + b);
    double fm = f(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double dirichlet_tail_integral(double s, double tol) {
    if (!(s > 0.0)) throw NonPositiveArgument("the integral needs s > 0");
    if (!(tol > 0.0)) throw Error("tolerance must be positive");
    // int_1^inf dx/((x+1) x^s) with x = e^u: int_0^inf e^{-su}/(1+e^{-u}) du.
    // Truncate where the plain bound e^{-sU}/s falls below tol/2, then add the
    // alternating tail sum_i (-1)^i e^{-(s+i)U}/(s+i) analytically.
    double cut = std::log(2.0 / (s * tol)) / s;
    double main = integrate([s](double u) { return std::exp(-s * u) / (1.0 + std::exp(-u)); },
                            0.0, cut, tol / 2.0);
    double tail = 0.0;
    for (int i = 0; i < 400; ++i) {
        double term = std::exp(-(s + i) * cut) / (s + i);
        tail += (i % 2 == 0) ? term : -term;
        if (term <= tol / 8.0) break;
    }
    return main + tail;
}

double cutout_content(double scale, double dim) {
    if (!(scale > 0.0)) throw Error("scale must be positive");
    if (!(dim > 0.0 && dim < 1.0)) throw Error("dimension must lie in (0,1)");
    return std::pow(2.0, 1.0 - dim) * std::pow(scale, dim) / (1.0 - dim);
}

double moran_dimension(std::span<const double> ratios, double tol) {
    auto excess = [&](double d) {
        double s = 0.0;
        for (double r : ratios) s += std::pow(r, d);
        return s - 1.0;
    };
    double lo = 1e-12;  // excess > 0 here (at least two pieces)
    double hi = 1.0;
    if (excess(hi) >= 0.0) return 1.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (excess(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double moran_dimension(const SelfSimilarSystem& system, double tol) {
    return moran_dimension(std::span<const double>(system.ratios()), tol);
}

namespace {

// Rational detection via continued-fraction convergents. Generic irrationals
// reach |x - p/q| ~ 1/q^2, so the acceptance tolerance must shrink with q;
// true rationals computed in floating point sit at ~1e-16 regardless.
bool is_rational(double x, std::uint64_t den_cap, double tol) {
    double a = x;
    std::uint64_t p0 = 1, q0 = 0;  // convergents
    std::uint64_t p1 = static_cast<std::uint64_t>(std::floor(a)), q1 = 1;
    double frac = a - std::floor(a);
    for (int it = 0; it < 64; ++it) {
        double approx = static_cast<double>(p1) / static_cast<double>(q1);
        if (std::abs(x - approx) <= tol / static_cast<double>(q1)) return true;
        if (frac < 1e-15) break;
        a = 1.0 / frac;
        double fl = std::floor(a);
        if (fl > 9e15) break;
        std::uint64_t ai = static_cast<std::uint64_t>(fl);
        frac = a - fl;
        std::uint64_t p2 = ai * p1 + p0;
        std::uint64_t q2 = ai * q1 + q0;
        if (q2 > den_cap) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    return std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) <=
           tol / static_cast<double>(q1);
}

}  // namespace

bool is_independent(const SelfSimilarSystem& system) {
    const auto& r = system.ratios();
    double base = std::log(r[0]);
    for (std::size_t i = 1; i < r.size(); ++i) {
        double q = std::log(r[i]) / base;
        if (!is_rational(q, 1000000, 1e-12)) return true;
    }
    return false;  // all pairwise log-ratios rational: lattice case
}

double self_similar_content(const SelfSimilarSystem& system) {
    if (!is_independent(system))
        throw DependentSystem("content formula needs an independent system");
    double d = moran_dimension(system);
    double gaps = 0.0;
    for (double b : system.gaps()) gaps += std::pow(b, d);
    double mean = 0.0;
    for (double r : system.ratios()) mean += std::pow(r, d) * std::log(1.0 / r);
    return std::pow(2.0, 1.0 - d) / (d * (1.0 - d)) * gaps / mean;
}

double cantor_subsequence_limit(double a, double tol) {
    if (!(a > 1.0 && a <= 3.0)) throw Error("the subsequence parameter lies in (1, 3]");
    if (!(tol > 0.0)) throw Error("tolerance must be positive");
    double factor = std::pow(2.0, std::log(a) / std::log(3.0) - 1.0);

    CompensatedSum acc;
    acc.add(1.0);
    double pow2 = 1.0;  // 2^(k-1)
    double pow3 = 1.0;  // 3^(k-1)
    for (int k = 1; k < 4000; ++k) {
        double pk = std::ceil(a * pow3);
        acc.add(pow2 / pk);
        double tail_bound = factor * (3.0 / a) * (pow2 * 2.0) / (pow3 * 3.0);
        if (tail_bound <= tol && k >= 4) break;
        pow2 *= 2.0;
        pow3 *= 3.0;
    }
    return factor * acc.value();
}

GrowthConstants growth_constants(double dim) {
    if (!(dim > 0.0 && dim < 1.0)) throw Error("dimension must lie in (0,1)");
    return {0.25, std::pow(2.0, dim - 1.0)};
}

MassBounds mass_distribution_envelope(double scale_lo, double scale_hi, double dim,
                                      double tol) {
    if (!(scale_lo > 0.0 && scale_hi >= scale_lo))
        throw Error("need 0 < lower scale <= upper scale");
    SeriesValue a = packing_series(dim, tol);
    MassBounds mb;
    mb.lower = std::pow(scale_lo, dim) * a.midpoint();
    mb.upper = std::pow(scale_hi, dim) +
               dim / (1.0 - dim) * scale_hi * std::pow(scale_lo, dim - 1.0);
    return mb;
}

}  // namespace packlim
