#include <catch2/catch_amalgamated.hpp>

#include "piexp/codim.hpp"

using namespace piexp;
using Catch::Matchers::ContainsSubstring;

namespace {

AlgebraSpec field_algebra() {
    AlgebraSpec F;
    F.dim = 1;
    F.basis = {"1"};
    F.unit_index = 0;
    F.table.assign(1, std::vector<std::vector<Rational>>(1, std::vector<Rational>(1)));
    F.table[0][0][0] = 1;
    return F;
}

AlgebraSpec zero_mult_algebra() {
    AlgebraSpec Z;
    Z.dim = 2;
    Z.basis = {"a", "b"};
    Z.table.assign(2, std::vector<std::vector<Rational>>(2, std::vector<Rational>(2)));
    return Z;
}

}  // namespace

TEST_CASE("codimension sequence of W starts 1, 2, 11, 65") {
    const AlgebraSpec W = build_w();
    const std::uint64_t expected[] = {0, 1, 2, 11, 65};
    for (int n = 1; n <= 4; ++n) {
        const CodimResult r = codim(W, n);
        REQUIRE(r.c_n == expected[n]);
        REQUIRE(r.rank_by_prime.at(kPrime1) == expected[n]);
        REQUIRE(r.rank_by_prime.at(kPrime2) == expected[n]);
        REQUIRE(r.cols == ipow_u64(4, n + 1));
        REQUIRE_FALSE(r.compressed);  // 4^(n+1) < 2^14 for n <= 5
        REQUIRE(r.rows_streamed == monomial_count(n));
        REQUIRE(r.notes.empty());
    }
}

TEST_CASE("the field has codimension 1 in every degree") {
    const AlgebraSpec F = field_algebra();
    for (int n = 1; n <= 4; ++n) REQUIRE(codim(F, n).c_n == 1);
}

TEST_CASE("a zero-multiplication algebra has codimension 0 past degree 1") {
    const AlgebraSpec Z = zero_mult_algebra();
    REQUIRE(codim(Z, 1).c_n == 1);
    REQUIRE(codim(Z, 2).c_n == 0);
    REQUIRE(codim(Z, 3).c_n == 0);
}

TEST_CASE("the column sketch reproduces the exact rank on a forced small case") {
    CodimOptions opt;
    opt.compress_threshold = 64;  // force sketching where cols = 256
    opt.initial_width = 32;
    const CodimResult r = codim(build_w(), 3, opt);
    REQUIRE(r.compressed);
    REQUIRE(r.c_n == 11);
    REQUIRE(r.rank_by_prime.at(kPrime1) == 11);
    REQUIRE(r.rank_by_prime.at(kPrime2) == 11);
    // Two seeds per prime, and the adaptive widening settles on one width.
    REQUIRE(r.runs.size() == 4);
    for (const CodimRun& run : r.runs) {
        REQUIRE(run.rank == 11);
        REQUIRE(run.rank + 64 < run.width);
    }
    // No disagreement notes.
    for (const auto& note : r.notes) REQUIRE_THAT(note, !ContainsSubstring("disagree"));
}

TEST_CASE("option validation") {
    const AlgebraSpec W = build_w();
    CodimOptions bad;
    bad.primes = {};
    REQUIRE_THROWS_WITH(codim(W, 2, bad), ContainsSubstring("at least one prime"));
    bad.primes = {15u};
    REQUIRE_THROWS_WITH(codim(W, 2, bad), ContainsSubstring("not prime"));
    bad.primes = {kPrime1, kPrime1};
    REQUIRE_THROWS_WITH(codim(W, 2, bad), ContainsSubstring("duplicate primes"));
}

TEST_CASE("the budget guard refuses oversized degrees with a sizing message") {
    const AlgebraSpec W = build_w();
    REQUIRE_THROWS_AS(codim(W, 8), BudgetError);
    REQUIRE_THROWS_WITH(codim(W, 8), ContainsSubstring("refused"));
    REQUIRE_THROWS_WITH(codim(W, 8), ContainsSubstring("set force to attempt anyway"));
    REQUIRE_THROWS_AS(codim(W, 400), BudgetError);

    // With force, the soft gate opens but the hard cap still holds.
    CodimOptions forced;
    forced.budget.force = true;
    REQUIRE_THROWS_AS(codim(W, 400, forced), BudgetError);
    REQUIRE_THROWS_WITH(codim(W, 400, forced), ContainsSubstring("hard limit"));

    REQUIRE_THROWS_AS(codim(W, 0), std::invalid_argument);
    REQUIRE_NOTHROW(check_codim_budget(4, 7, CodimBudget{}));
    REQUIRE_THROWS_AS(check_codim_budget(4, 8, CodimBudget{}), BudgetError);
}

TEST_CASE("row-space bases expose sorted pivots and exact ranks") {
    const AlgebraSpec W = build_w();
    const EvalBasis eb = eval_row_space_basis(W, 2, kPrime1);
    REQUIRE(eb.rref.rank() == 2);
    REQUIRE(eb.cols == 64);
    const auto& piv = eb.rref.pivots();
    REQUIRE(std::is_sorted(piv.begin(), piv.end()));

    // The uncompressed-column budget refuses W at n = 6.
    REQUIRE_THROWS_AS(eval_row_space_basis(W, 6, kPrime1), BudgetError);
}

TEST_CASE("degree-2 identities of the field are spanned by the commutator") {
    const IdentityBasis ib = identities_nullspace(field_algebra(), 2, kPrime1);
    REQUIRE(ib.rank == 1);
    REQUIRE(ib.identities.size() == 1);
    const MultilinearPoly& f = ib.identities[0];
    REQUIRE(f.terms.size() == 2);
    // Coefficients are +-1 and cancel: x1x2 - x2x1 up to overall sign.
    Rational sum = 0;
    for (const auto& [m, c] : f.terms) {
        REQUIRE((c == 1 || c == -1));
        sum += c;
    }
    REQUIRE(sum == 0);
}

TEST_CASE("W has no multilinear identities in degree 2") {
    const IdentityBasis ib = identities_nullspace(build_w(), 2, kPrime1);
    REQUIRE(ib.rank == 2);
    REQUIRE(ib.identities.empty());
    REQUIRE_THROWS_AS(identities_nullspace(build_w(), 6, kPrime1), BudgetError);
}

TEST_CASE("identity-basis elements evaluate to zero everywhere on the algebra") {
    const AlgebraSpec F = field_algebra();
    const IdentityBasis ib = identities_nullspace(F, 3, kPrime1);
    REQUIRE(ib.rank == 1);
    REQUIRE(ib.identities.size() == monomial_count(3) - 1);
    const std::vector<Element> assign(3, Element::basis(1, 0));
    for (const auto& f : ib.identities)
        REQUIRE(evaluate(F, f, assign).is_zero());
}
