#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace piexp {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

// The growth rate of the codimension sequence of W equals the maximum of
// Phi(x) = 1/prod x_i^{x_i} over the closure of the feasible region
//   x_1 >= x_2 >= x_3 >= x_4 >= 0,  sum x_i = 1,  x_1 - x_3 = 2*x_4,
// (the limit shape of the partitions that actually contribute). This header
// computes that maximum three independent ways:
//
//  1. cubic: at the interior maximizer the coordinates form a geometric
//     chain x_3/x_4 = x_2/x_3 = x_1/x_2 = r with r = 2*(1 - 2*x_4), and
//     sum = 1 collapses to 16*c^3 - 24*c^2 + 11*c - 1 = 0 for c = x_4
//     (the factorization sum - 1 = (1 - 4c)*(16c^3 - 24c^2 + 11c - 1)/(-1)
//      makes the two statements equivalent away from c = 1/4).
//  2. lagrange: with w = 2 - r the same cubic reads w^3 - 6w^2 + 11w - 4 = 0,
//     i.e. r^3 - r - 2 = 0, and the maximum is M = r + 1 + 1/r + 1/r^2
//     (= 1/x_2, since x_2 * (r^3 + r^2 + r + 1)/r^2 = sum = 1).
//  3. numeric: direct grid maximization over the two free parameters
//     u = x_3, s = x_4 with x_1 = u + 2s and x_2 = 1 - 2u - 3s.

inline double target_exponent() { return 3.610718614; }

// Value printed alongside the target in some write-ups; see erratum_note().
inline double printed_x2_constant() { return 0.276953179; }

inline BigFloat growth_cubic(const BigFloat& c) {
    return ((16 * c - 24) * c + 11) * c - 1;
}

// Number of sign changes of the cubic over [lo, hi] on a uniform scan.
inline int cubic_sign_changes(double lo, double hi, int steps = 10000) {
    int changes = 0;
    BigFloat prev = growth_cubic(BigFloat(lo));
    for (int i = 1; i <= steps; ++i) {
        const BigFloat x = BigFloat(lo) + (BigFloat(hi) - BigFloat(lo)) * i / steps;
        const BigFloat cur = growth_cubic(x);
        if ((prev < 0 && cur > 0) || (prev > 0 && cur < 0)) ++changes;
        if (cur != 0) prev = cur;
    }
    return changes;
}

// The root of 16c^3 - 24c^2 + 11c - 1 in (0, 0.25), by bisection to full
// working precision.
inline BigFloat solve_cubic() {
    BigFloat lo = 0, hi = BigFloat(1) / 4;
    if (!(growth_cubic(lo) < 0 && growth_cubic(hi) > 0))
        throw std::logic_error("cubic root bracket failed");
    for (int it = 0; it < 300; ++it) {
        const BigFloat mid = (lo + hi) / 2;
        const BigFloat f = growth_cubic(mid);
        if (f < 0)
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2;
}

struct BetaPoint {
    BigFloat x1, x2, x3, x4;

    std::vector<long double> as_long_double() const {
        return {x1.convert_to<long double>(), x2.convert_to<long double>(),
                x3.convert_to<long double>(), x4.convert_to<long double>()};
    }
};

// Builds the candidate maximizer from its last coordinate and validates
// that it is a genuine feasible stationary point. The chain
// x3 = 2*x4*(1 - 2*x4), x2 = x3^2/x4, x1 = x3^3/x4^2 encodes stationarity;
// sum = 1 and x1 - x3 = 2*x4 hold iff x4 is a root of the cubic.
inline BetaPoint beta_point(const BigFloat& x4, const BigFloat& tol = BigFloat("1e-40")) {
    if (!(x4 > 0)) throw std::invalid_argument("beta_point: x4 must be positive");
    BetaPoint b;
    b.x4 = x4;
    b.x3 = 2 * x4 - 4 * x4 * x4;
    if (!(b.x3 > 0)) throw std::invalid_argument("beta_point: x3 not positive");
    b.x2 = b.x3 * b.x3 / b.x4;
    b.x1 = b.x3 * b.x3 * b.x3 / (b.x4 * b.x4);
    const BigFloat sum = b.x1 + b.x2 + b.x3 + b.x4;
    if (boost::multiprecision::abs(sum - 1) > tol)
        throw std::invalid_argument("beta_point: coordinates sum to " +
                                    sum.str(12, std::ios_base::fixed) + ", not 1");
    if (!(b.x1 >= b.x2 && b.x2 >= b.x3 && b.x3 >= b.x4))
        throw std::invalid_argument("beta_point: coordinates are not weakly decreasing");
    if (boost::multiprecision::abs(b.x1 - b.x3 - 2 * b.x4) > tol)
        throw std::invalid_argument("beta_point: x1 - x3 = 2*x4 fails");
    return b;
}

inline BigFloat phi_big(const BetaPoint& b) {
    using boost::multiprecision::exp;
    using boost::multiprecision::log;
    BigFloat s = 0;
    for (const BigFloat* x : {&b.x1, &b.x2, &b.x3, &b.x4})
        if (*x > 0) s += (*x) * log(*x);
    return exp(-s);
}

inline BigFloat cubic_estimate() { return phi_big(beta_point(solve_cubic())); }

// Root of r^3 - r - 2 in [1, 2], then M = r + 1 + 1/r + 1/r^2.
inline BigFloat lagrange_estimate() {
    BigFloat lo = 1, hi = 2;
    const auto f = [](const BigFloat& r) { return r * r * r - r - 2; };
    if (!(f(lo) < 0 && f(hi) > 0)) throw std::logic_error("ratio root bracket failed");
    for (int it = 0; it < 300; ++it) {
        const BigFloat mid = (lo + hi) / 2;
        if (f(mid) < 0)
            lo = mid;
        else
            hi = mid;
    }
    const BigFloat r = (lo + hi) / 2;
    return r + 1 + 1 / r + 1 / (r * r);
}

namespace detail {

inline bool feasible_us(long double u, long double s) {
    // x = (u + 2s, 1 - 2u - 3s, u, s), ordered and nonnegative.
    if (s < 0.0L || u < s) return false;
    if (3.0L * u + 5.0L * s < 1.0L) return false;  // x1 >= x2
    if (3.0L * u + 3.0L * s > 1.0L) return false;  // x2 >= x3
    return true;
}

inline long double log_phi_us(long double u, long double s) {
    const long double x[4] = {u + 2 * s, 1 - 2 * u - 3 * s, u, s};
    long double acc = 0.0L;
    for (long double v : x)
        if (v > 0.0L) acc += v * std::log(v);
    return -acc;
}

inline std::uint64_t mix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace detail

struct NumericMax {
    long double value = 0.0L;
    long double u = 0.0L;
    long double s = 0.0L;
};

// Grid search with repeated zoom over the feasible (u, s) triangle.
inline NumericMax numeric_maximize() {
    long double ulo = 0.0L, uhi = 0.34L, slo = 0.0L, shi = 0.21L;
    NumericMax best;
    const int grid = 160;
    for (int round = 0; round < 14; ++round) {
        NumericMax round_best;
        for (int i = 0; i <= grid; ++i) {
            const long double u = ulo + (uhi - ulo) * i / grid;
            for (int j = 0; j <= grid; ++j) {
                const long double s = slo + (shi - slo) * j / grid;
                if (!detail::feasible_us(u, s)) continue;
                const long double lp = detail::log_phi_us(u, s);
                if (lp > round_best.value) round_best = NumericMax{lp, u, s};
            }
        }
        best = round_best;
        const long double du = (uhi - ulo) * 0.12L, ds = (shi - slo) * 0.12L;
        ulo = best.u - du;
        uhi = best.u + du;
        slo = best.s - ds;
        shi = best.s + ds;
    }
    best.value = std::exp(best.value);
    return best;
}

// Central finite differences of ln Phi along two directions spanning the
// tangent space of {sum = 1, x1 - x3 = 2*x4}; both must vanish at the
// maximizer.
struct GradientCheck {
    long double residual_a = 0.0L;
    long double residual_b = 0.0L;
    bool ok(long double tol = 1e-5L) const {
        return std::fabs(static_cast<double>(residual_a)) <= tol &&
               std::fabs(static_cast<double>(residual_b)) <= tol;
    }
};

inline GradientCheck gradient_check(const BetaPoint& b) {
    const auto x0 = b.as_long_double();
    const long double da[4] = {1.0L, -2.0L, 1.0L, 0.0L};
    const long double db[4] = {2.0L, -3.0L, 0.0L, 1.0L};
    const long double h = 1e-7L;
    const auto log_phi_at = [&](const long double* d, long double t) {
        long double acc = 0.0L;
        for (int i = 0; i < 4; ++i) {
            const long double v = x0[static_cast<size_t>(i)] + t * d[i];
            if (v > 0.0L) acc += v * std::log(v);
        }
        return -acc;
    };
    GradientCheck g;
    g.residual_a = (log_phi_at(da, h) - log_phi_at(da, -h)) / (2 * h);
    g.residual_b = (log_phi_at(db, h) - log_phi_at(db, -h)) / (2 * h);
    return g;
}

// Random feasible points must not beat the claimed maximum.
struct SampleCheck {
    std::uint64_t tried = 0;
    std::uint64_t feasible = 0;
    long double worst_excess = 0.0L;  // max over samples of phi - max
    bool ok = true;
};

inline SampleCheck sample_check(long double max_value, std::uint64_t count = 100000,
                                std::uint64_t seed = 12345) {
    SampleCheck sc;
    std::uint64_t state = seed;
    while (sc.feasible < count) {
        ++sc.tried;
        const long double u = 0.40L * (detail::mix64(state) >> 11) * 0x1.0p-53L;
        const long double s = 0.25L * (detail::mix64(state) >> 11) * 0x1.0p-53L;
        if (!detail::feasible_us(u, s)) continue;
        ++sc.feasible;
        const long double phi = std::exp(detail::log_phi_us(u, s));
        const long double excess = phi - max_value;
        if (excess > sc.worst_excess) sc.worst_excess = excess;
    }
    sc.ok = sc.worst_excess <= 1e-12L;
    return sc;
}

// The reciprocal of the maximum equals x2 at the maximizer; the companion
// constant often printed next to the growth rate is that reciprocal, and it
// is not a root of the defining cubic (the root near it is x4). The note
// records both residuals so the numbers speak for themselves.
struct ErratumNote {
    double printed_value = 0.0;
    double cubic_residual_at_printed = 0.0;  // far from 0
    double x2_at_maximizer = 0.0;            // matches printed_value
    double one_over_exponent = 0.0;
    std::string text;
};

inline ErratumNote erratum_note() {
    ErratumNote e;
    e.printed_value = printed_x2_constant();
    const BigFloat root = solve_cubic();
    const BetaPoint b = beta_point(root);
    e.cubic_residual_at_printed =
        growth_cubic(BigFloat(e.printed_value)).convert_to<double>();
    e.x2_at_maximizer = b.x2.convert_to<double>();
    e.one_over_exponent = (1 / phi_big(b)).convert_to<double>();
    e.text =
        "the constant " + std::to_string(e.printed_value) +
        " equals x2 at the maximizer (1/growth rate = " +
        std::to_string(e.one_over_exponent) +
        "); it is not a root of 16t^3 - 24t^2 + 11t - 1 (residual at that value: " +
        std::to_string(e.cubic_residual_at_printed) +
        "); the root of the cubic in (0, 1/4) is x4 = " +
        std::to_string(root.convert_to<double>());
    return e;
}

struct ExponentReport {
    BigFloat cubic_root;
    BetaPoint beta;
    BigFloat cubic_value;
    BigFloat lagrange_value;
    NumericMax numeric;
    GradientCheck gradient;
    SampleCheck sample;
    int sign_changes_above = 0;  // of the cubic on [0.3, 1.0]
    double pairwise_spread = 0.0;
    double target_error = 0.0;
    bool pairwise_ok = false;
    bool target_ok = false;
    ErratumNote erratum;

    bool ok() const {
        return pairwise_ok && target_ok && gradient.ok() && sample.ok &&
               sign_changes_above == 0;
    }
};

inline ExponentReport exp_estimate(double tol = 5e-9) {
    ExponentReport r;
    r.cubic_root = solve_cubic();
    r.beta = beta_point(r.cubic_root);
    r.cubic_value = phi_big(r.beta);
    r.lagrange_value = lagrange_estimate();
    r.numeric = numeric_maximize();
    r.gradient = gradient_check(r.beta);
    r.sample = sample_check(r.numeric.value);
    r.sign_changes_above = cubic_sign_changes(0.3, 1.0);

    const double c = r.cubic_value.convert_to<double>();
    const double l = r.lagrange_value.convert_to<double>();
    const double m = static_cast<double>(r.numeric.value);
    r.pairwise_spread = std::max({std::fabs(c - l), std::fabs(c - m), std::fabs(l - m)});
    r.pairwise_ok = r.pairwise_spread <= 1e-8;
    r.target_error = std::fabs(c - target_exponent());
    r.target_ok = r.target_error <= tol;
    r.erratum = erratum_note();
    return r;
}

// 1/x2 at the maximizer equals the growth rate itself.
inline double reciprocal_x2_agreement() {
    const BetaPoint b = beta_point(solve_cubic());
    const BigFloat diff = 1 / b.x2 - phi_big(b);
    return boost::multiprecision::abs(diff).convert_to<double>();
}

}  // namespace piexp
