#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "piexp/altexpr.hpp"
#include "piexp/characters.hpp"
#include "piexp/codim.hpp"
#include "piexp/partitions.hpp"
#include "piexp/perm.hpp"

namespace piexp {

// The multilinear part in degree n is an S_n-module under variable
// permutation, and the quotient by the identities of A is spanned by the
// image of the evaluation map. The character of that quotient module is
// computable from a reduced row-space basis: the action of sigma on rows is
// a column permutation (relabeling the assignment tuple by tau -> tau o
// sigma), and in an RREF basis the trace reads off directly at the pivot
// columns. Character values are integers bounded by the rank, so the
// symmetric lift from a 31-bit prime is exact.

struct QuotientCharacter {
    int n = 0;
    uint32_t prime = 0;
    uint64_t rank = 0;      // character value at the identity
    ClassFunction chi;      // cycle type -> integer character value
};

inline QuotientCharacter quotient_character(const AlgebraSpec& A, int n, uint32_t prime,
                                            int threads = 1) {
    const EvalBasis eb = eval_row_space_basis(A, n, prime, threads);
    const PrimeField F(prime);
    const int d = A.dim;

    QuotientCharacter out;
    out.n = n;
    out.prime = prime;
    out.rank = eb.rref.rank();

    std::vector<uint64_t> weight(static_cast<size_t>(n));  // d^(n-1-v)
    {
        uint64_t w = 1;
        for (int v = n - 1; v >= 0; --v) {
            weight[static_cast<size_t>(v)] = w;
            w *= static_cast<uint64_t>(d);
        }
    }

    std::vector<int> digits(static_cast<size_t>(n));
    for (const auto& type : enumerate_partitions(n)) {
        const Perm sigma = perm_of_cycle_type(type.parts, n);
        uint32_t tr = 0;
        for (size_t i = 0; i < eb.rref.rows().size(); ++i) {
            const uint32_t J = eb.rref.pivots()[i];
            const uint64_t tau = J / static_cast<uint32_t>(d);
            const uint32_t k = J % static_cast<uint32_t>(d);
            for (int v = 0; v < n; ++v)
                digits[static_cast<size_t>(v)] =
                    static_cast<int>((tau / weight[static_cast<size_t>(v)]) % static_cast<uint64_t>(d));
            uint64_t tau_sigma = 0;
            for (int v = 0; v < n; ++v)
                tau_sigma += static_cast<uint64_t>(digits[static_cast<size_t>(sigma[static_cast<size_t>(v)])]) *
                             weight[static_cast<size_t>(v)];
            tr = F.add(tr, eb.rref.rows()[i][tau_sigma * static_cast<uint64_t>(d) + k]);
        }
        out.chi[type] = Rational(F.lift(tr));
    }
    return out;
}

struct CocharRow {
    Partition lambda;
    std::int64_t m = 0;        // multiplicity of chi_lambda
    BigInt degree;             // deg chi_lambda
    BigInt contribution;       // m * degree
};

struct CocharacterResult {
    int n = 0;
    uint64_t c_n = 0;
    std::vector<uint32_t> primes_checked;
    std::vector<CocharRow> rows;  // nonzero multiplicities, partition order
    BigInt colength;              // sum of multiplicities
    BigInt colength_limit;        // dim * (n+1)^(dim^2 + dim)
    bool within_limit = false;
};

// dim * (n+1)^(dim^2 + dim), a coarse a-priori cap on the colength.
inline BigInt colength_limit(int d, int n) {
    return BigInt(d) * boost::multiprecision::pow(BigInt(n + 1),
                                                  static_cast<unsigned>(d * d + d));
}

// Full degree-n cocharacter of A: multiplicities of every irreducible S_n
// character in the quotient module. Computed modulo prime1 and verified
// against prime2; every multiplicity must come out a nonnegative integer and
// the degree-weighted sum must equal the rank, else the computation aborts.
inline CocharacterResult cocharacter(const AlgebraSpec& A, int n, uint32_t prime1 = kPrime1,
                                     uint32_t prime2 = kPrime2, int threads = 1) {
    const QuotientCharacter q1 = quotient_character(A, n, prime1, threads);
    CocharacterResult res;
    res.n = n;
    res.c_n = q1.rank;
    res.primes_checked.push_back(prime1);

    if (prime2 != 0) {
        if (prime2 == prime1) throw std::invalid_argument("verification prime must differ");
        const QuotientCharacter q2 = quotient_character(A, n, prime2, threads);
        if (q2.rank != q1.rank || !(q2.chi == q1.chi))
            throw std::runtime_error(
                "quotient characters disagree between primes; modular computation is unreliable "
                "for this input");
        res.primes_checked.push_back(prime2);
    }

    BigInt total = 0;
    res.colength = 0;
    for (const auto& lambda : enumerate_partitions(n)) {
        ClassFunction chi_l;
        for (const auto& [type, unused] : q1.chi)
            chi_l[type] = Rational(mn_character(lambda, type));
        const Rational m = inner_product(n, q1.chi, chi_l);
        const BigInt num = boost::multiprecision::numerator(m);
        const BigInt den = boost::multiprecision::denominator(m);
        if (den != 1)
            throw std::logic_error("multiplicity of " + lambda.str() +
                                   " is not an integer: " + format_rational(m));
        if (num < 0)
            throw std::logic_error("multiplicity of " + lambda.str() +
                                   " is negative: " + num.str());
        if (num == 0) continue;
        CocharRow row;
        row.lambda = lambda;
        row.m = num.convert_to<std::int64_t>();
        row.degree = hook_degree(lambda);
        row.contribution = num * row.degree;
        total += row.contribution;
        res.colength += num;
        res.rows.push_back(std::move(row));
    }
    if (total != BigInt(res.c_n))
        throw std::logic_error("degree-weighted multiplicity sum " + total.str() +
                               " does not match the rank " + std::to_string(res.c_n));
    res.colength_limit = colength_limit(A.dim, n);
    res.within_limit = res.colength <= res.colength_limit;
    return res;
}

// Witness that the multiplicity of chi_lambda is positive, for lambda given
// by its (k, l, m, t) parameters. The witness polynomial alternates in k
// sets of size 4, l of size 3, m of size 2 and has t unconstrained
// variables; it is assembled as a left-normed product of the named factor
// expressions, whose alternation sets are disjoint, so the factors evaluate
// independently. Requires m <= 2k and m + t >= 2k (the factor pool provides
// exactly 2k - m unconstrained slots, padded up to t with generic elements).
struct WitnessReport {
    KlmtDecomposition klmt;
    Partition lambda;
    std::vector<std::string> factors;  // construction, in product order
    bool substituted = false;          // free/alternated e(-1) payloads widened to e(-1)+e0
    Element value;
    bool nonzero = false;
    Rational e0_coordinate;
};

inline WitnessReport partition_witness(const AlgebraSpec& A, const KlmtDecomposition& klmt) {
    if (A.dim != 4)
        throw std::invalid_argument("witness construction targets the 4-dimensional algebra");
    const int k = klmt.k, l = klmt.l, m = klmt.m, t = klmt.t;
    if (k < 0 || l < 0 || m < 0 || t < 0)
        throw std::invalid_argument("witness parameters must be nonnegative");
    if (klmt.n() < 1) throw std::invalid_argument("witness needs a nonempty partition");
    if (m > 2 * k)
        throw std::invalid_argument("witness precondition violated: m <= 2k fails (m=" +
                                    std::to_string(m) + ", k=" + std::to_string(k) + ")");
    if (m + t < 2 * k)
        throw std::invalid_argument("witness precondition violated: m + t >= 2k fails (m=" +
                                    std::to_string(m) + ", t=" + std::to_string(t) +
                                    ", k=" + std::to_string(k) + ")");

    WitnessReport rep;
    rep.klmt = klmt;
    rep.lambda = klmt.reconstruct();

    std::vector<AltExpr> exprs;
    const auto push = [&](const std::string& name, int copies) {
        for (int i = 0; i < copies; ++i) {
            exprs.push_back(make_witness_expr(name, 4));
            rep.factors.push_back(name);
        }
    };
    if (m % 2 == 0) {
        push("f1", k - m / 2);
        push("f2", l);
        push("f4", m / 2);
    } else {
        push("f1", k - (m + 1) / 2);
        push("f2", l);
        push("f3", 1);
        push("f4", (m - 1) / 2);
    }

    const int free_slots = 2 * k - m;
    Element em1 = Element::basis(4, 0);
    Element generic = Element::basis(4, 0);
    generic += Element::basis(4, 1);  // e(-1) + e0

    if (t > 0) {
        // Widening e(-1) to e(-1) + e0 changes nothing inside alternation
        // sets that also contain e0 (a column operation on the alternated
        // tuple) but makes the unconstrained slots generic.
        rep.substituted = true;
        for (auto& e : exprs) e.substitute_payload(em1, generic);
    }

    Element value(4);
    bool started = false;
    for (const auto& e : exprs) {
        const Element v = evaluate_alt(A, e);
        if (!started) {
            value = v;
            started = true;
        } else {
            value = multiply(A, value, v);
        }
    }
    for (int i = 0; i < t - free_slots; ++i) {
        rep.factors.push_back("e(-1)+e0");
        if (!started) {
            value = generic;
            started = true;
        } else {
            value = multiply(A, value, generic);
        }
    }

    rep.value = value;
    rep.nonzero = !value.is_zero();
    rep.e0_coordinate = value.c[1];
    return rep;
}

}  // namespace piexp
