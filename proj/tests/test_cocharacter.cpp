#include <catch2/catch_amalgamated.hpp>

#include "piexp/cocharacter.hpp"
#include "piexp/phi.hpp"

#include <map>

using namespace piexp;
using Catch::Matchers::ContainsSubstring;

namespace {

Partition P(std::vector<int> parts) { return Partition(std::move(parts)); }

AlgebraSpec field_algebra() {
    AlgebraSpec F;
    F.dim = 1;
    F.basis = {"1"};
    F.unit_index = 0;
    F.table.assign(1, std::vector<std::vector<Rational>>(1, std::vector<Rational>(1)));
    F.table[0][0][0] = 1;
    return F;
}

std::map<Partition, std::int64_t> as_map(const CocharacterResult& r) {
    std::map<Partition, std::int64_t> m;
    for (const auto& row : r.rows) m[row.lambda] = row.m;
    return m;
}

}  // namespace

TEST_CASE("the degree-2 quotient of W is the regular S_2 module") {
    const QuotientCharacter q = quotient_character(build_w(), 2, kPrime1);
    REQUIRE(q.rank == 2);
    REQUIRE(q.chi.at(P({1, 1})) == 2);
    REQUIRE(q.chi.at(P({2})) == 0);
}

TEST_CASE("cocharacter of W at n = 2") {
    const CocharacterResult r = cocharacter(build_w(), 2);
    REQUIRE(r.c_n == 2);
    REQUIRE(r.colength == 2);
    REQUIRE(r.within_limit);
    REQUIRE(r.primes_checked.size() == 2);
    const auto m = as_map(r);
    REQUIRE(m.size() == 2);
    REQUIRE(m.at(P({2})) == 1);
    REQUIRE(m.at(P({1, 1})) == 1);
}

TEST_CASE("cocharacter tables of W for n = 3, 4, 5 match the frozen values") {
    const AlgebraSpec W = build_w();

    const auto m3 = as_map(cocharacter(W, 3));
    REQUIRE(m3.size() == 3);
    REQUIRE(m3.at(P({3})) == 2);
    REQUIRE(m3.at(P({2, 1})) == 4);
    REQUIRE(m3.at(P({1, 1, 1})) == 1);

    const CocharacterResult r4 = cocharacter(W, 4);
    const auto m4 = as_map(r4);
    REQUIRE(r4.c_n == 65);
    REQUIRE(r4.colength == 27);
    REQUIRE(m4.size() == 4);
    REQUIRE(m4.at(P({4})) == 5);
    REQUIRE(m4.at(P({3, 1})) == 11);
    REQUIRE(m4.at(P({2, 2})) == 6);
    REQUIRE(m4.at(P({2, 1, 1})) == 5);
    REQUIRE(m4.count(P({1, 1, 1, 1})) == 0);  // weight 2 but multiplicity 0

    const CocharacterResult r5 = cocharacter(W, 5);
    const auto m5 = as_map(r5);
    REQUIRE(r5.c_n == 311);
    REQUIRE(r5.colength == 72);
    REQUIRE(m5.size() == 6);
    REQUIRE(m5.at(P({5})) == 10);
    REQUIRE(m5.at(P({4, 1})) == 21);
    REQUIRE(m5.at(P({3, 2})) == 19);
    REQUIRE(m5.at(P({3, 1, 1})) == 13);
    REQUIRE(m5.at(P({2, 2, 1})) == 8);
    REQUIRE(m5.at(P({2, 1, 1, 1})) == 1);
}

TEST_CASE("multiplicities cross-check the rank computed independently") {
    const AlgebraSpec W = build_w();
    for (int n = 1; n <= 4; ++n) {
        const CocharacterResult r = cocharacter(W, n);
        BigInt total = 0;
        for (const auto& row : r.rows) total += row.contribution;
        REQUIRE(total == BigInt(codim(W, n).c_n));
    }
}

TEST_CASE("the field's cocharacter is the trivial character alone") {
    const AlgebraSpec F = field_algebra();
    for (int n : {2, 3, 4}) {
        const CocharacterResult r = cocharacter(F, n);
        REQUIRE(r.c_n == 1);
        REQUIRE(r.rows.size() == 1);
        REQUIRE(r.rows[0].lambda == P({n}));
        REQUIRE(r.rows[0].m == 1);
    }
}

TEST_CASE("cocharacter support obeys the part/weight constraint for n up to 5") {
    const AlgebraSpec W = build_w();
    for (int n = 1; n <= 5; ++n)
        for (const auto& row : cocharacter(W, n).rows) {
            REQUIRE(row.lambda.count() <= 4);
            REQUIRE(weight(row.lambda) <= 2);
            REQUIRE(necessary_ok(row.lambda));
        }
}

TEST_CASE("sufficient partitions have positive multiplicity and a nonzero witness") {
    const AlgebraSpec W = build_w();
    for (int n = 1; n <= 5; ++n) {
        const auto m = as_map(cocharacter(W, n));
        for (const auto& lambda : enumerate_partitions(n, 4)) {
            if (!sufficient_ok(lambda)) continue;
            REQUIRE(m.count(lambda) == 1);
            REQUIRE(m.at(lambda) >= 1);
            const WitnessReport w = partition_witness(W, decompose_klmt(lambda));
            REQUIRE(w.nonzero);
            REQUIRE((w.e0_coordinate == 1 || w.e0_coordinate == -1));
        }
    }
}

TEST_CASE("witness assembly for (k,l,m,t) = (1,0,2,0)") {
    const KlmtDecomposition klmt{1, 0, 2, 0};
    REQUIRE(klmt.reconstruct() == P({3, 3, 1, 1}));
    const WitnessReport w = partition_witness(build_w(), klmt);
    REQUIRE(w.factors == std::vector<std::string>{"f4"});
    REQUIRE_FALSE(w.substituted);
    Element minus_e0(4);
    minus_e0.c[1] = -1;
    REQUIRE(w.value == minus_e0);
    REQUIRE(w.e0_coordinate == -1);
}

TEST_CASE("witness assembly for (k,l,m,t) = (0,2,0,1) pads with a generic element") {
    const KlmtDecomposition klmt{0, 2, 0, 1};
    REQUIRE(klmt.reconstruct() == P({3, 2, 2}));
    const WitnessReport w = partition_witness(build_w(), klmt);
    REQUIRE(w.factors == std::vector<std::string>{"f2", "f2", "e(-1)+e0"});
    REQUIRE(w.substituted);
    Element want(4);
    want.c[0] = 1;  // e(-1) + e0: the two f2 factors give (-e0)(-e0) = e0,
    want.c[1] = 1;  // then the generic pad multiplies in e(-1) + e0.
    REQUIRE(w.value == want);
    REQUIRE(w.e0_coordinate == 1);
}

TEST_CASE("witness assembly for (k,l,m,t) = (1,1,2,0) multiplies f2 and f4") {
    const WitnessReport w = partition_witness(build_w(), KlmtDecomposition{1, 1, 2, 0});
    REQUIRE(w.factors == std::vector<std::string>{"f2", "f4"});
    Element e0(4);
    e0.c[1] = 1;  // (-e0)(-e0) = e0
    REQUIRE(w.value == e0);
    REQUIRE(w.e0_coordinate == 1);
}

TEST_CASE("witness preconditions are enforced with explicit messages") {
    const AlgebraSpec W = build_w();
    REQUIRE_THROWS_WITH(partition_witness(W, KlmtDecomposition{1, 0, 3, 3}),
                        ContainsSubstring("m <= 2k fails"));
    REQUIRE_THROWS_WITH(partition_witness(W, KlmtDecomposition{2, 0, 1, 1}),
                        ContainsSubstring("m + t >= 2k fails"));
    REQUIRE_THROWS_WITH(partition_witness(W, KlmtDecomposition{0, 0, 0, 0}),
                        ContainsSubstring("nonempty partition"));
    REQUIRE_THROWS_WITH(partition_witness(W, KlmtDecomposition{1, -1, 0, 2}),
                        ContainsSubstring("nonnegative"));

    AlgebraSpec F;
    F.dim = 1;
    F.basis = {"1"};
    F.table.assign(1, std::vector<std::vector<Rational>>(1, std::vector<Rational>(1)));
    REQUIRE_THROWS_WITH(partition_witness(F, KlmtDecomposition{0, 0, 0, 1}),
                        ContainsSubstring("4-dimensional"));
}

TEST_CASE("klmt decomposition round-trips partitions with at most four parts") {
    for (int n = 1; n <= 8; ++n)
        for (const auto& lambda : enumerate_partitions(n, 4)) {
            const KlmtDecomposition d = decompose_klmt(lambda);
            REQUIRE(d.reconstruct() == lambda);
            REQUIRE(d.n() == n);
        }
    REQUIRE_THROWS_AS(decompose_klmt(P({1, 1, 1, 1, 1})), std::invalid_argument);
}
