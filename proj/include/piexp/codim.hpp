#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "piexp/algebra.hpp"
#include "piexp/freepoly.hpp"
#include "piexp/modrank.hpp"

namespace piexp {

// The n-th codimension of an algebra A is the rank of the evaluation matrix
// whose rows are the multilinear degree-n monomials and whose columns are
// indexed by (basis assignment tuple, output coordinate): the row of monomial
// m holds, at column tau * dim + k, the k-th coordinate of m evaluated at the
// basis tuple tau. Ranks are computed modulo large primes; every modular rank
// is a lower bound for the rank over Q, so the consensus value is the maximum
// across primes (and across sketch seeds when column sketching is in use).

inline bool is_prime_u32(uint32_t v) {
    if (v < 2) return false;
    for (uint32_t q = 2; static_cast<uint64_t>(q) * q <= v; ++q)
        if (v % q == 0) return false;
    return true;
}

inline uint64_t ipow_u64(uint64_t base, int exp) {
    uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > ~0ull / base) throw std::overflow_error("ipow_u64 overflow");
        r *= base;
    }
    return r;
}

struct CodimBudget {
    uint64_t max_rows = 1'000'000;     // multilinear monomials per degree
    uint64_t max_cols = 1ull << 26;    // raw evaluation columns d^(n+1)
    bool force = false;                // attempt anyway (hard caps still apply)
};

namespace detail {

// log10 of the monomial count n! * Catalan(n-1) = (2n-2)! / (n-1)!,
// usable far beyond the range where the count fits in an integer.
inline double log10_monomial_count(int n) {
    if (n <= 1) return 0.0;
    return (std::lgamma(2.0 * n - 1.0) - std::lgamma(static_cast<double>(n))) / std::log(10.0);
}

inline std::string approx_pow10(double log10v) {
    if (log10v < 15.0) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", std::pow(10.0, log10v));
        return buf;
    }
    const double e = std::floor(log10v);
    const double m = std::pow(10.0, log10v - e);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "about %.2fe+%.0f", m, e);
    return buf;
}

}  // namespace detail

// Throws BudgetError when the requested degree is out of the configured
// bounds. The error message reports the sizes the computation would need.
inline void check_codim_budget(int dim, int n, const CodimBudget& budget) {
    if (n < 1) throw std::invalid_argument("degree must be at least 1");
    const double lrows = detail::log10_monomial_count(n);
    const double lcols = (n + 1) * std::log10(static_cast<double>(dim));
    const auto refuse = [&](const std::string& why) {
        std::ostringstream os;
        os << "codimension computation refused: " << why << "; degree n=" << n << " over a "
           << dim << "-dimensional algebra needs " << detail::approx_pow10(lrows)
           << " monomial rows and " << detail::approx_pow10(lcols)
           << " evaluation columns (budget: " << budget.max_rows << " rows, " << budget.max_cols
           << " columns)";
        if (!budget.force) os << "; set force to attempt anyway";
        throw BudgetError(os.str());
    };
    if (!budget.force) {
        if (dim == 4 && n >= 8) refuse("n >= 8 for a 4-dimensional algebra exceeds the default budget");
        if (lrows > std::log10(static_cast<double>(budget.max_rows))) refuse("row count over budget");
        if (lcols > std::log10(static_cast<double>(budget.max_cols))) refuse("column count over budget");
    }
    if (n > 12)
        throw BudgetError(
            "codimension computation refused: degrees above 12 are beyond the hard limit "
            "(monomial row count " +
            detail::approx_pow10(lrows) + " no longer fits in 64 bits)");
}

namespace detail {

// Evaluates one monomial (shape, labels) on a basis assignment for a
// monomial-valued table: every intermediate is a basis index or -1 (zero).
// digits[v] is the basis index assigned to variable v.
inline int eval_monomial_unit(const MonomialTable& T, const Bracketing& shape,
                              const std::vector<int>& labels, const std::vector<int>& digits,
                              std::vector<int>& scratch) {
    const int n = shape.n;
    scratch.resize(static_cast<size_t>(n) + shape.ops.size());
    for (int p = 0; p < n; ++p)
        scratch[static_cast<size_t>(p)] = digits[static_cast<size_t>(labels[static_cast<size_t>(p)])];
    for (size_t i = 0; i < shape.ops.size(); ++i) {
        const int a = scratch[static_cast<size_t>(shape.ops[i][0])];
        const int b = scratch[static_cast<size_t>(shape.ops[i][1])];
        scratch[static_cast<size_t>(n) + i] = (a < 0 || b < 0) ? -1 : T.at(a, b);
    }
    return scratch[static_cast<size_t>(shape.root())];
}

// Same for a general table: intermediates are residue coordinate vectors.
inline void eval_monomial_residues(const CompiledTableP& T, const PrimeField& F,
                                   const Bracketing& shape, const std::vector<int>& labels,
                                   const std::vector<int>& digits,
                                   std::vector<std::vector<uint32_t>>& scratch,
                                   const std::vector<uint32_t>*& out) {
    const int n = shape.n;
    const size_t total = static_cast<size_t>(n) + shape.ops.size();
    if (scratch.size() < total) scratch.resize(total);
    for (int p = 0; p < n; ++p) {
        auto& v = scratch[static_cast<size_t>(p)];
        v.assign(static_cast<size_t>(T.dim), 0u);
        v[static_cast<size_t>(digits[static_cast<size_t>(labels[static_cast<size_t>(p)])])] = 1u;
    }
    for (size_t i = 0; i < shape.ops.size(); ++i)
        scratch[static_cast<size_t>(n) + i] =
            multiply_mod(T, F, scratch[static_cast<size_t>(shape.ops[i][0])],
                         scratch[static_cast<size_t>(shape.ops[i][1])]);
    out = &scratch[static_cast<size_t>(shape.root())];
}

// Iterates digits over all d^n assignments in counting order: digits[n-1] is
// the least significant position, so the running counter equals
// sum_i digits[i] * d^(n-1-i).
template <class Fn>
void for_each_assignment(int d, int n, Fn&& fn) {
    std::vector<int> digits(static_cast<size_t>(n), 0);
    const uint64_t total = ipow_u64(static_cast<uint64_t>(d), n);
    for (uint64_t tau = 0;; ) {
        fn(tau, digits);
        if (++tau == total) break;
        int i = n - 1;
        while (digits[static_cast<size_t>(i)] == d - 1) {
            digits[static_cast<size_t>(i)] = 0;
            --i;
        }
        ++digits[static_cast<size_t>(i)];
    }
}

}  // namespace detail

// Streams the evaluation rows of a monomial-valued algebra, one call per
// monomial, in the canonical monomial order. Each row is the sorted list of
// columns holding value 1: column = tau * dim + (basis index of the value).
template <class Fn>
void stream_unit_rows(const MonomialTable& T, int n, Fn&& fn) {
    std::vector<uint32_t> cols;
    std::vector<int> scratch;
    for_each_monomial(n, [&](const Bracketing& shape, const std::vector<int>& labels) {
        cols.clear();
        detail::for_each_assignment(T.dim, n, [&](uint64_t tau, const std::vector<int>& digits) {
            const int k = detail::eval_monomial_unit(T, shape, labels, digits, scratch);
            if (k >= 0)
                cols.push_back(static_cast<uint32_t>(tau * static_cast<uint64_t>(T.dim) +
                                                     static_cast<uint64_t>(k)));
        });
        fn(static_cast<const std::vector<uint32_t>&>(cols));
    });
}

// Streams the evaluation rows of a general algebra modulo one prime; rows
// are (column, residue) entry lists.
template <class Fn>
void stream_valued_rows(const CompiledTableP& T, const PrimeField& F, int n, Fn&& fn) {
    std::vector<std::pair<uint32_t, uint32_t>> entries;
    std::vector<std::vector<uint32_t>> scratch;
    for_each_monomial(n, [&](const Bracketing& shape, const std::vector<int>& labels) {
        entries.clear();
        detail::for_each_assignment(T.dim, n, [&](uint64_t tau, const std::vector<int>& digits) {
            const std::vector<uint32_t>* value = nullptr;
            detail::eval_monomial_residues(T, F, shape, labels, digits, scratch, value);
            for (int k = 0; k < T.dim; ++k) {
                const uint32_t v = (*value)[static_cast<size_t>(k)];
                if (v)
                    entries.emplace_back(static_cast<uint32_t>(tau * static_cast<uint64_t>(T.dim) +
                                                               static_cast<uint64_t>(k)),
                                         v);
            }
        });
        fn(static_cast<const std::vector<std::pair<uint32_t, uint32_t>>&>(entries));
    });
}

struct CodimOptions {
    std::vector<uint32_t> primes{kPrime1, kPrime2};
    uint64_t base_seed = 0x9E3779B97F4A7C15ull;
    int seeds_per_prime = 2;                    // sketching only
    int threads = 1;
    uint32_t compress_threshold = 1u << 14;     // sketch when cols >= this
    uint32_t initial_width = 1u << 11;
    uint32_t max_width = 1u << 17;
    CodimBudget budget{};
};

struct CodimRun {
    uint32_t prime = 0;
    uint64_t seed = 0;
    uint32_t width = 0;
    uint64_t rank = 0;
};

struct CodimResult {
    int n = 0;
    uint64_t rows_streamed = 0;
    uint64_t rows_distinct = 0;
    uint64_t cols = 0;
    bool compressed = false;
    std::vector<CodimRun> runs;
    std::map<uint32_t, uint64_t> rank_by_prime;
    uint64_t c_n = 0;
    double seconds = 0.0;
    std::vector<std::string> notes;
};

inline CodimResult codim(const AlgebraSpec& A, int n, const CodimOptions& opt = {}) {
    A.validate();
    if (opt.primes.empty()) throw std::invalid_argument("at least one prime is required");
    for (size_t i = 0; i < opt.primes.size(); ++i) {
        if (!is_prime_u32(opt.primes[i]))
            throw std::invalid_argument("modulus " + std::to_string(opt.primes[i]) + " is not prime");
        for (size_t j = i + 1; j < opt.primes.size(); ++j)
            if (opt.primes[i] == opt.primes[j])
                throw std::invalid_argument("duplicate primes in codimension options");
    }
    check_codim_budget(A.dim, n, opt.budget);

    const auto t0 = std::chrono::steady_clock::now();
    CodimResult res;
    res.n = n;
    res.cols = ipow_u64(static_cast<uint64_t>(A.dim), n + 1);
    if (res.cols > (1ull << 40))
        throw BudgetError("evaluation columns exceed the addressable range even with force");
    res.compressed = res.cols >= opt.compress_threshold;

    std::vector<PrimeField> fields;
    fields.reserve(opt.primes.size());
    for (uint32_t p : opt.primes) fields.emplace_back(p);

    // Materialize rows once; they are shared by every (prime, seed) run.
    const auto mt = as_monomial_table(A);
    RowDeduper dd;
    std::vector<std::vector<std::vector<std::pair<uint32_t, uint32_t>>>> valued(
        mt ? 0 : opt.primes.size());
    if (mt) {
        stream_unit_rows(*mt, n, [&](const std::vector<uint32_t>& cols) {
            ++res.rows_streamed;
            dd.add(cols);
        });
        res.rows_distinct = dd.size();
    } else {
        std::vector<CompiledTableP> tables;
        for (const auto& F : fields) tables.push_back(compile_table(A, F));
        for (size_t pi = 0; pi < fields.size(); ++pi) {
            uint64_t streamed = 0;
            stream_valued_rows(tables[pi], fields[pi], n,
                               [&](const std::vector<std::pair<uint32_t, uint32_t>>& entries) {
                                   ++streamed;
                                   valued[pi].push_back(entries);
                               });
            res.rows_streamed = streamed;
        }
        res.rows_distinct = res.rows_streamed;
    }

    const uint32_t full_width = static_cast<uint32_t>(res.cols);
    for (size_t pi = 0; pi < fields.size(); ++pi) {
        const PrimeField& F = fields[pi];
        std::vector<uint64_t> seeds;
        if (res.compressed) {
            for (int s = 0; s < std::max(1, opt.seeds_per_prime); ++s)
                seeds.push_back(splitmix64_mix(opt.base_seed, (static_cast<uint64_t>(pi) << 8) |
                                                                  static_cast<uint64_t>(s)));
        } else {
            seeds.push_back(0);
        }

        uint64_t best = 0;
        bool first = true;
        bool seeds_agree = true;
        uint64_t first_rank = 0;
        for (uint64_t seed : seeds) {
            uint32_t w = res.compressed ? opt.initial_width : full_width;
            uint64_t rank = 0;
            for (;;) {
                if (res.compressed) {
                    ColumnCompressor cc(seed, w);
                    StreamingRank sr(F, w, &cc, opt.threads);
                    if (mt) sr.consume_unit_rows(dd.rows());
                    else sr.consume_valued_rows(valued[pi]);
                    rank = sr.rank();
                } else {
                    StreamingRank sr(F, w, nullptr, opt.threads);
                    if (mt) sr.consume_unit_rows(dd.rows());
                    else sr.consume_valued_rows(valued[pi]);
                    rank = sr.rank();
                }
                if (!res.compressed) break;
                // A rank close to the sketch width may be truncated: widen
                // and redo this run until the rank sits comfortably inside.
                if (rank + 64 < w) break;
                if (w >= opt.max_width || static_cast<uint64_t>(w) >= res.cols) {
                    res.notes.push_back("sketch width exhausted at " + std::to_string(w) +
                                        " for prime " + std::to_string(F.prime()) +
                                        "; rank may be truncated");
                    break;
                }
                const uint64_t next = std::min<uint64_t>(
                    {static_cast<uint64_t>(w) * 2, opt.max_width, res.cols});
                w = static_cast<uint32_t>(next);
            }
            res.runs.push_back(CodimRun{F.prime(), seed, w, rank});
            if (first) {
                first_rank = rank;
                first = false;
            } else if (rank != first_rank) {
                seeds_agree = false;
            }
            best = std::max(best, rank);
        }
        if (!seeds_agree)
            res.notes.push_back("sketch seeds disagreed for prime " + std::to_string(F.prime()) +
                                "; using the larger rank");
        res.rank_by_prime[F.prime()] = best;
    }

    uint64_t cn = 0;
    for (const auto& [p, r] : res.rank_by_prime) cn = std::max(cn, r);
    bool primes_agree = true;
    for (const auto& [p, r] : res.rank_by_prime)
        if (r != cn) primes_agree = false;
    if (!primes_agree)
        res.notes.push_back("ranks disagreed across primes; using the maximum (every modular "
                            "rank is a lower bound for the rank over Q)");
    res.c_n = cn;
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

// Canonical (RREF) basis of the row space of the evaluation matrix modulo
// one prime, with pivot columns — the representation-theoretic quotient
// computations need the actual column geometry, so no sketching here.
struct EvalBasis {
    int n = 0;
    uint32_t prime = 0;
    uint64_t cols = 0;
    uint64_t rows_streamed = 0;
    uint64_t rows_distinct = 0;
    RowReducer rref;
};

inline EvalBasis eval_row_space_basis(const AlgebraSpec& A, int n, uint32_t prime,
                                      int threads = 1) {
    A.validate();
    if (!is_prime_u32(prime)) throw std::invalid_argument("modulus is not prime");
    if (n < 1) throw std::invalid_argument("degree must be at least 1");
    const uint64_t cols = ipow_u64(static_cast<uint64_t>(A.dim), n + 1);
    if (cols > (1ull << 13))
        throw BudgetError("row-space basis needs uncompressed columns; " + std::to_string(cols) +
                          " exceeds the 8192-column budget");
    if (detail::log10_monomial_count(n) > 6.0)
        throw BudgetError("row-space basis is limited to a million monomial rows");

    const PrimeField F(prime);
    EvalBasis out{n, prime, cols, 0, 0, RowReducer(F, static_cast<uint32_t>(cols), true)};
    const auto mt = as_monomial_table(A);
    StreamingRank sr(F, static_cast<uint32_t>(cols), nullptr, threads, true);
    if (mt) {
        RowDeduper dd;
        stream_unit_rows(*mt, n, [&](const std::vector<uint32_t>& cs) {
            ++out.rows_streamed;
            dd.add(cs);
        });
        out.rows_distinct = dd.size();
        sr.consume_unit_rows(dd.rows());
    } else {
        const CompiledTableP ct = compile_table(A, F);
        std::vector<std::vector<std::pair<uint32_t, uint32_t>>> rows;
        stream_valued_rows(ct, F, n, [&](const std::vector<std::pair<uint32_t, uint32_t>>& es) {
            ++out.rows_streamed;
            rows.push_back(es);
        });
        out.rows_distinct = rows.size();
        sr.consume_valued_rows(rows);
    }
    out.rref = sr.take_reducer();
    return out;
}

// Basis of the degree-n multilinear identities of A modulo one prime: the
// left null space of the evaluation matrix, read off from an elimination of
// the matrix augmented with an identity block. Coefficients are reported as
// symmetric lifts, exact whenever the true coefficients are small.
struct IdentityBasis {
    int n = 0;
    uint32_t prime = 0;
    uint64_t rank = 0;  // rank of the evaluation matrix = c_n mod p
    std::vector<MultilinearPoly> identities;
};

inline IdentityBasis identities_nullspace(const AlgebraSpec& A, int n, uint32_t prime) {
    A.validate();
    if (!is_prime_u32(prime)) throw std::invalid_argument("modulus is not prime");
    if (n < 1 || n > 5)
        throw BudgetError("identity nullspace extraction is limited to degrees 1..5");

    const auto monomials = enumerate_monomials(n);
    const uint32_t nrows = static_cast<uint32_t>(monomials.size());
    const uint64_t cols = ipow_u64(static_cast<uint64_t>(A.dim), n + 1);
    const uint64_t width64 = cols + nrows;
    if (width64 > (1ull << 20)) throw BudgetError("augmented elimination width over budget");
    const uint32_t width = static_cast<uint32_t>(width64);

    const PrimeField F(prime);
    const CompiledTableP ct = compile_table(A, F);
    RowReducer red(F, width, false);

    std::vector<uint32_t> dense(width);
    std::vector<std::vector<uint32_t>> scratch;
    for (uint32_t idx = 0; idx < nrows; ++idx) {
        std::fill(dense.begin(), dense.end(), 0u);
        const auto& m = monomials[idx];
        detail::for_each_assignment(A.dim, n, [&](uint64_t tau, const std::vector<int>& digits) {
            const std::vector<uint32_t>* value = nullptr;
            detail::eval_monomial_residues(ct, F, m.shape, m.labels, digits, scratch, value);
            for (int k = 0; k < A.dim; ++k) {
                const uint32_t v = (*value)[static_cast<size_t>(k)];
                if (v) dense[tau * static_cast<uint64_t>(A.dim) + static_cast<uint64_t>(k)] = v;
            }
        });
        dense[cols + idx] = 1u;
        red.insert(dense);
    }

    IdentityBasis out;
    out.n = n;
    out.prime = prime;
    for (size_t r = 0; r < red.rows().size(); ++r) {
        if (red.pivots()[r] < cols) {
            ++out.rank;
            continue;
        }
        MultilinearPoly f;
        const auto& row = red.rows()[r];
        for (uint32_t j = 0; j < nrows; ++j) {
            const uint32_t v = row[cols + j];
            if (v) f.add_term(monomials[j], Rational(F.lift(v)));
        }
        out.identities.push_back(std::move(f));
    }
    return out;
}

}  // namespace piexp
