#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace piexp {

// Exact scalar types. Library-level arithmetic (multiplication tables,
// witness evaluation, nullspaces over Q) runs on arbitrary-precision
// rationals; the large rank computations run on residues modulo 31-bit
// primes with a consensus step on top.

using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Default prime pair used for modular rank consensus.
inline constexpr std::uint32_t kPrime1 = 2147483647u;  // 2^31 - 1
inline constexpr std::uint32_t kPrime2 = 2147483629u;  // 2^31 - 19

// Canonical textual form: "num" when the denominator is 1, else "num/den",
// lowest terms, sign on the numerator.
inline std::string format_rational(const Rational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        const BigInt num(text.substr(0, slash));
        const BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational literal: " + text);
    }
}

// Residue field F_p for a runtime prime p < 2^31. Multiplication uses a
// Barrett-style reduction: with magic = floor(2^64 / p) the quotient
// estimate floor(x * magic / 2^64) is off by at most one, so a single
// conditional subtraction finishes the job.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (p < 3 || (p >> 31) != 0) throw std::invalid_argument("prime out of range");
        magic_ = static_cast<std::uint64_t>(~static_cast<std::uint64_t>(0)) / p;
        // ~0/p == floor((2^64 - 1)/p) == floor(2^64/p) since p does not divide 2^64.
    }

    std::uint32_t prime() const { return p_; }

    std::uint32_t reduce(std::uint64_t x) const {
        const std::uint64_t q = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(x) * magic_) >> 64);
        std::uint64_t r = x - q * p_;
        if (r >= p_) r -= p_;
        return static_cast<std::uint32_t>(r);
    }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        if (s >= p_) s -= p_;
        return s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return reduce(static_cast<std::uint64_t>(a) * b);
    }

    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw std::domain_error("inverse of zero residue");
        return pow(a, p_ - 2);
    }

    // Embeds a rational with denominator coprime to p.
    std::uint32_t from_rational(const Rational& q) const {
        const BigInt num = boost::multiprecision::numerator(q);
        const BigInt den = boost::multiprecision::denominator(q);
        const std::uint32_t n = from_bigint(num);
        const std::uint32_t d = from_bigint(den);
        if (d == 0) throw std::domain_error("denominator divisible by modulus");
        return mul(n, inv(d));
    }

    std::uint32_t from_bigint(const BigInt& v) const {
        BigInt r = v % p_;
        if (r < 0) r += p_;
        return static_cast<std::uint32_t>(r);
    }

    // Symmetric lift to the integer of least absolute value.
    std::int64_t lift(std::uint32_t a) const {
        return a <= p_ / 2 ? static_cast<std::int64_t>(a)
                           : static_cast<std::int64_t>(a) - static_cast<std::int64_t>(p_);
    }

private:
    std::uint32_t p_;
    std::uint64_t magic_;
};

}  // namespace piexp
