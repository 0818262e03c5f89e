#include <catch2/catch_amalgamated.hpp>

#include "piexp/phi.hpp"

#include <cmath>

using namespace piexp;
using Catch::Matchers::ContainsSubstring;

namespace {

Partition P(std::vector<int> parts) { return Partition(std::move(parts)); }

}  // namespace

TEST_CASE("phi of a one-row partition is 1") {
    for (int n : {1, 2, 5, 17, 100})
        REQUIRE(std::fabs(static_cast<double>(phi_partition(P({n})).log_value)) < 1e-17);
}

TEST_CASE("phi of the uniform four-row partition is 4") {
    REQUIRE(phi_partition(P({1, 1, 1, 1})).value() == Catch::Approx(4.0).epsilon(1e-15));
    REQUIRE(phi_partition(P({5, 5, 5, 5})).value() == Catch::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("phi anchor: (3,1,1,1) gives sqrt(12)") {
    const long double got = phi_partition(P({3, 1, 1, 1})).value();
    REQUIRE(static_cast<double>(got) == Catch::Approx(std::sqrt(12.0)).epsilon(1e-15));
}

TEST_CASE("phi anchor: (3q,3q,q,q) gives 8/27^(1/4) for every q") {
    const double want = 8.0 / std::pow(27.0, 0.25);
    for (int q : {1, 2, 7, 50}) {
        const long double got = phi_partition(P({3 * q, 3 * q, q, q})).value();
        REQUIRE(static_cast<double>(got) == Catch::Approx(want).epsilon(1e-14));
    }
}

TEST_CASE("phi rejects an empty partition") {
    REQUIRE_THROWS_AS(phi_partition(Partition{}), std::invalid_argument);
}

TEST_CASE("phi_point evaluates probability vectors with the 0^0 = 1 convention") {
    REQUIRE(phi_point({1.0L}).value() == Catch::Approx(1.0).epsilon(1e-15));
    REQUIRE(phi_point({0.5L, 0.5L}).value() == Catch::Approx(2.0).epsilon(1e-15));
    REQUIRE(phi_point({0.25L, 0.25L, 0.25L, 0.25L}).value() == Catch::Approx(4.0).epsilon(1e-15));
    REQUIRE(phi_point({1.0L, 0.0L, 0.0L}).value() == Catch::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("phi_point rejects bad inputs") {
    REQUIRE_THROWS_WITH(phi_point({0.5L, -0.5L, 1.0L}),
                        ContainsSubstring("negative coordinate"));
    REQUIRE_THROWS_WITH(phi_point({0.3L, 0.3L}), ContainsSubstring("sum to 1"));
}

TEST_CASE("weight and the support conditions") {
    REQUIRE(weight(P({4})) == -4);
    REQUIRE(weight(P({1, 1, 1, 1})) == 2);
    REQUIRE(weight(P({3, 1, 1, 1})) == 0);  // -3 + 1 + 2
    REQUIRE(weight(P({2, 2, 2, 2})) == 4);

    REQUIRE(necessary_ok(P({3, 1, 1, 1})));
    REQUIRE(necessary_ok(P({6})));
    REQUIRE_FALSE(necessary_ok(P({1, 1, 1, 1, 1})));  // five parts
    REQUIRE_FALSE(necessary_ok(P({2, 2, 2, 2})));     // weight 4

    // (3,3,1,1) has (k,l,m,t) = (1,0,2,0): m <= 2k and m+t >= 2k both hold.
    REQUIRE(sufficient_ok(P({3, 3, 1, 1})));
    // (2,1,1,1) has (k,l,m,t) = (1,0,0,1): m+t = 1 < 2k = 2.
    REQUIRE_FALSE(sufficient_ok(P({2, 1, 1, 1})));
}

TEST_CASE("push_down moves one box and validates the result") {
    REQUIRE(push_down(P({3, 1}), 1, 2) == P({2, 2}));
    REQUIRE(push_down(P({3, 1}), 1, 3) == P({2, 1, 1}));
    REQUIRE(push_down(P({2, 2}), 2, 3) == P({2, 1, 1}));

    REQUIRE_THROWS_WITH(push_down(P({2, 2}), 1, 2),
                        ContainsSubstring("breaks monotonicity"));
    REQUIRE_THROWS_WITH(push_down(P({3, 1}), 3, 4),
                        ContainsSubstring("source row out of range"));
    REQUIRE_THROWS_WITH(push_down(P({3, 1}), 2, 2),
                        ContainsSubstring("need i < j"));
    // A move whose source becomes smaller than the row below it is illegal.
    REQUIRE_THROWS_AS(push_down(P({2, 2, 1}), 1, 3), std::invalid_argument);
}

TEST_CASE("every legal push-down strictly increases phi") {
    // (3,1) -> (2,2): phi goes from 4/3^(3/4) to 4/2 = 2, so the log gap is
    // ln 2 - ln(4/3^(3/4)) = (3/4) ln 3 - ln 2.
    const auto [delta, thr] = push_ratio_pair(P({3, 1}), 1, 2);
    REQUIRE(static_cast<double>(delta) > 0.0);
    REQUIRE(static_cast<double>(delta) <= static_cast<double>(thr));
    const double want = 0.75 * std::log(3.0) - std::log(2.0);
    REQUIRE(static_cast<double>(delta) == Catch::Approx(want).epsilon(1e-13));
}

TEST_CASE("exhaustive push-down monotonicity check is clean at small n") {
    for (int n : {1, 2, 5, 12}) {
        const auto rep = check_lq(n);
        REQUIRE(rep.ok());
        REQUIRE(rep.n == n);
    }
    REQUIRE_THROWS_AS(check_lq(0), std::invalid_argument);
}

TEST_CASE("push-down monotonicity at n=20 matches frozen counts") {
    const auto rep = check_lq(20);
    REQUIRE(rep.ok());
    REQUIRE(rep.partitions_checked == 627);
    REQUIRE(rep.comparisons == 3545);
}

TEST_CASE("ratio bounds at n=20 match frozen counts with no violations") {
    const auto both = check_lemma7_both(20);
    REQUIRE(both.seven.ok());
    REQUIRE(both.seven.partitions_checked == 627);
    REQUIRE(both.seven.comparisons == 4171);
    REQUIRE(both.seven_a.ok());
    REQUIRE(both.seven_a.partitions_checked == 627);
    REQUIRE(both.seven_a.comparisons == 2714);
}

TEST_CASE("ratio bound checks agree between the single and combined entry points") {
    const auto both = check_lemma7_both(15);
    const auto seven = check_lemma7(15);
    const auto seven_a = check_lemma7a(15);
    REQUIRE(seven.comparisons == both.seven.comparisons);
    REQUIRE(seven_a.comparisons == both.seven_a.comparisons);
    REQUIRE(seven.ok());
    REQUIRE(seven_a.ok());
    REQUIRE_THROWS_AS(check_lemma7(1), std::invalid_argument);
}

TEST_CASE("degree envelope holds on the four-part partitions of n = 100") {
    const auto rep = check_eq0(100);
    REQUIRE(rep.ok());
    REQUIRE(rep.partitions_checked > 0);
    REQUIRE_THROWS_AS(check_eq0(99), std::invalid_argument);
    REQUIRE_THROWS_AS(check_eq0(100, 3), std::invalid_argument);
}

TEST_CASE("sandwich anchors at n = 6") {
    const SandwichRow row = sandwich(6);
    REQUIRE(row.n == 6);
    REQUIRE_FALSE(row.fallback_used);
    REQUIRE(static_cast<double>(row.b_weight0.value()) ==
            Catch::Approx(std::sqrt(12.0)).epsilon(1e-14));
    REQUIRE(row.argmax_b == P({3, 1, 1, 1}));
    REQUIRE(static_cast<double>(row.a_upper.value()) ==
            Catch::Approx(std::cbrt(54.0)).epsilon(1e-14));
    REQUIRE(row.argmax_a == P({2, 2, 1, 1}));
    REQUIRE(row.b_weight0.log_value <= row.a_upper.log_value);
    REQUIRE_THROWS_AS(sandwich(5), std::invalid_argument);
}

TEST_CASE("sandwich anchors at n = 6000") {
    const SandwichRow row = sandwich(6000);
    REQUIRE_FALSE(row.fallback_used);
    REQUIRE(static_cast<double>(row.b_weight0.value()) ==
            Catch::Approx(3.61071857912).margin(5e-10));
    REQUIRE(static_cast<double>(row.a_upper.value()) ==
            Catch::Approx(3.61122337002).margin(5e-10));
    REQUIRE(row.b_weight0.log_value <= row.a_upper.log_value);
}

TEST_CASE("sandwich rows are ordered and never fall back on 6..200") {
    long double prev_b = 0.0L;
    for (const auto& row : sandwich_range(6, 200, 1)) {
        REQUIRE_FALSE(row.fallback_used);
        REQUIRE(row.b_weight0.log_value <= row.a_upper.log_value);
        REQUIRE(weight(row.argmax_b) == 0);
        REQUIRE(sufficient_ok(row.argmax_b));
        REQUIRE(necessary_ok(row.argmax_a));
        // b is not monotone step to step, but it never drops far (sanity).
        REQUIRE(row.b_weight0.log_value > prev_b - 0.5L);
        prev_b = row.b_weight0.log_value;
    }
    REQUIRE_THROWS_AS(sandwich_range(6, 10, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(sandwich_range(5, 10, 1), std::invalid_argument);
}
