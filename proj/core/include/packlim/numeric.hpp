#pragma once

#include <cmath>
#include <cstdint>

namespace packlim {

// Closed interval [lo, hi] used for rigorous two-sided brackets.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool is_point(double tol = 0.0) const { return width() <= tol; }

    Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
    Interval operator*(double c) const {
        return c >= 0 ? Interval{lo * c, hi * c} : Interval{hi * c, lo * c};
    }
};

// Neumaier compensated accumulator. Keeps 1e7-term prefix sums at ulp scale.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

// k^d - (k-1)^d without cancellation for large k.
inline double power_difference(double k, double d) {
    if (k <= 1.0) return std::pow(k, d);
    // k^d (1 - (1-1/k)^d)
    return -std::pow(k, d) * std::expm1(d * std::log1p(-1.0 / k));
}

// a^b - (a+h)^b for b < 0, h > 0, cancellation-free.
inline double power_window(double a, double h, double b) {
    return -std::pow(a, b) * std::expm1(b * std::log1p(h / a));
}

// Relative slack used when comparing point separations against epsilon.
// Attractor endpoints and block-geometric prefix sums carry O(1e-15) float
// noise while the interesting epsilons sit exactly on ties (3 gaps of 3^-n,
// the i/6 configuration in T).
inline constexpr double kSeparationSlack = 1e-12;

inline bool meets_separation(double distance, double eps, double slack) {
    return distance >= eps - slack * eps;
}

}  // namespace packlim
