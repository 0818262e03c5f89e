#include <catch2/catch_amalgamated.hpp>

#include "piexp/exponent.hpp"

#include <cmath>

using namespace piexp;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("the growth cubic has exactly one real root, inside [0.1196, 0.1197]") {
    const BigFloat root = solve_cubic();
    const double r = root.convert_to<double>();
    REQUIRE(r >= 0.1196);
    REQUIRE(r <= 0.1197);
    REQUIRE(boost::multiprecision::abs(growth_cubic(root)).convert_to<double>() < 1e-45);

    REQUIRE(cubic_sign_changes(0.0, 0.25) == 1);
    REQUIRE(cubic_sign_changes(0.3, 1.0) == 0);
    REQUIRE(cubic_sign_changes(0.13, 1.0) == 0);
}

TEST_CASE("beta_point at the root is a feasible chain point") {
    const BetaPoint b = beta_point(solve_cubic());
    REQUIRE(b.x1 > b.x2);
    REQUIRE(b.x2 > b.x3);
    REQUIRE(b.x3 > b.x4);
    REQUIRE(b.x4 > 0);
    const double sum = (b.x1 + b.x2 + b.x3 + b.x4).convert_to<double>();
    REQUIRE(sum == Catch::Approx(1.0).epsilon(1e-15));
    // Geometric chain: consecutive ratios agree.
    const double r1 = (b.x1 / b.x2).convert_to<double>();
    const double r2 = (b.x2 / b.x3).convert_to<double>();
    const double r3 = (b.x3 / b.x4).convert_to<double>();
    REQUIRE(r1 == Catch::Approx(r2).epsilon(1e-12));
    REQUIRE(r2 == Catch::Approx(r3).epsilon(1e-12));
    // x1 - x3 = 2*x4 within the validation tolerance.
    REQUIRE(boost::multiprecision::abs(b.x1 - b.x3 - 2 * b.x4).convert_to<double>() < 1e-40);
}

TEST_CASE("beta_point rejects non-root inputs, reporting the sum defect first") {
    REQUIRE_THROWS_WITH(beta_point(BigFloat("0.3")), ContainsSubstring("coordinates sum to"));
    REQUIRE_THROWS_WITH(beta_point(BigFloat("0.3")), ContainsSubstring("0.885600000000"));
    REQUIRE_THROWS_WITH(beta_point(BigFloat(-1)), ContainsSubstring("x4 must be positive"));
    REQUIRE_THROWS_WITH(beta_point(BigFloat("0.5")), ContainsSubstring("x3 not positive"));
}

TEST_CASE("the three growth-rate computations agree pairwise and hit the target") {
    const ExponentReport r = exp_estimate();
    REQUIRE(r.pairwise_ok);
    REQUIRE(r.pairwise_spread <= 1e-8);
    REQUIRE(r.target_ok);
    REQUIRE(r.target_error <= 5e-9);
    REQUIRE(r.sign_changes_above == 0);
    REQUIRE(r.ok());

    const double c = r.cubic_value.convert_to<double>();
    REQUIRE(c == Catch::Approx(3.610718614).margin(5e-9));
    const double l = r.lagrange_value.convert_to<double>();
    REQUIRE(l == Catch::Approx(c).margin(1e-12));
    REQUIRE(static_cast<double>(r.numeric.value) == Catch::Approx(c).margin(1e-9));
}

TEST_CASE("the maximizer passes the stationarity and sampling checks") {
    const BetaPoint b = beta_point(solve_cubic());
    const GradientCheck g = gradient_check(b);
    REQUIRE(g.ok(1e-5L));

    const NumericMax nm = numeric_maximize();
    const SampleCheck sc = sample_check(nm.value);
    REQUIRE(sc.ok);
    REQUIRE(sc.feasible == 100000);
    REQUIRE(static_cast<double>(sc.worst_excess) <= 1e-12);
}

TEST_CASE("the companion constant is 1/(growth rate), not a cubic root") {
    const ErratumNote e = erratum_note();
    REQUIRE(e.printed_value == Catch::Approx(0.276953179).margin(1e-12));
    REQUIRE(e.x2_at_maximizer == Catch::Approx(e.printed_value).margin(1e-9));
    REQUIRE(e.one_over_exponent == Catch::Approx(e.printed_value).margin(1e-9));
    // The cubic residual at the printed constant is far from zero.
    REQUIRE(std::fabs(e.cubic_residual_at_printed) > 0.5);
    REQUIRE(std::fabs(e.cubic_residual_at_printed) < 0.6);
    REQUIRE_FALSE(e.text.empty());
    REQUIRE_THAT(e.text, ContainsSubstring("not a root"));

    REQUIRE(reciprocal_x2_agreement() <= 1e-9);
}
