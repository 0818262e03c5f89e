#pragma once

#include "piexp/partitions.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace piexp {

// Conjugacy class size of the class with the given cycle type in S_n:
// n! / (prod_k k^{a_k} a_k!) where a_k is the multiplicity of k.
inline BigInt class_size(const Partition& type) {
    const int n = type.n();
    BigInt z = 1;
    int run = 0;
    for (std::size_t i = 0; i < type.parts.size(); ++i) {
        z *= type.parts[i];
        run = (i > 0 && type.parts[i] == type.parts[i - 1]) ? run + 1 : 1;
        z *= run;
    }
    return factorial_big(n) / z;
}

namespace detail {

// Murnaghan-Nakayama on beta-sets: the partition lambda with q parts is
// encoded as the strictly decreasing set beta_i = lambda_i + q - i.
// Removing a border strip of size r replaces some b in B by b - r (must
// stay nonnegative and outside B); the strip's sign is (-1)^(number of
// elements of B strictly between b - r and b).
inline std::int64_t mn_beta(std::vector<int>& B, const std::vector<int>& cls, std::size_t idx) {
    if (idx == cls.size()) {
        for (std::size_t i = 0; i < B.size(); ++i)
            if (B[i] != static_cast<int>(B.size() - 1 - i)) return 0;
        return 1;
    }
    const int r = cls[idx];
    std::int64_t total = 0;
    for (std::size_t pos = 0; pos < B.size(); ++pos) {
        const int b = B[pos];
        const int nb = b - r;
        if (nb < 0) continue;
        bool clash = false;
        int between = 0;
        for (int x : B) {
            if (x == nb) { clash = true; break; }
            if (x > nb && x < b) ++between;
        }
        if (clash) continue;
        std::vector<int> next = B;
        next[pos] = nb;
        std::sort(next.begin(), next.end(), std::greater<int>());
        const std::int64_t sub = mn_beta(next, cls, idx + 1);
        total += (between % 2 == 0) ? sub : -sub;
    }
    return total;
}

}  // namespace detail

// Irreducible S_n character chi_lambda evaluated on the class with cycle
// type `type`, by the Murnaghan-Nakayama rule. Intended for small n (the
// cocharacter computations use n <= 7).
inline std::int64_t mn_character(const Partition& lambda, const Partition& type) {
    if (lambda.n() != type.n()) throw std::invalid_argument("partition and cycle type sizes differ");
    if (lambda.count() == 0) throw std::invalid_argument("empty partition");
    const int q = lambda.count();
    std::vector<int> B(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i)
        B[static_cast<std::size_t>(i)] = lambda.parts[static_cast<std::size_t>(i)] + q - 1 - i;
    return detail::mn_beta(B, type.parts, 0);
}

// Class function on S_n with exact rational values, keyed by cycle type.
using ClassFunction = std::map<Partition, Rational>;

// <f, g> = (1/n!) sum_classes |class| f g for integer-valued class functions.
inline Rational inner_product(int n, const ClassFunction& f, const ClassFunction& g) {
    Rational acc = 0;
    for (const auto& [type, fv] : f) {
        const auto it = g.find(type);
        if (it == g.end()) throw std::invalid_argument("class functions on different class sets");
        acc += Rational(class_size(type)) * fv * it->second;
    }
    return acc / Rational(factorial_big(n));
}

}  // namespace piexp
