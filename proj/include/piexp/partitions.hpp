#pragma once

#include "piexp/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace piexp {

// Integer partition: weakly decreasing positive parts.
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    explicit Partition(std::vector<int> p) : parts(std::move(p)) {
        // Trailing zeros are tolerated on input and stripped.
        while (!parts.empty() && parts.back() == 0) parts.pop_back();
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] <= 0) throw std::invalid_argument("partition parts must be positive");
            if (i > 0 && parts[i] > parts[i - 1])
                throw std::invalid_argument("partition parts must be weakly decreasing");
        }
    }

    int n() const {
        int s = 0;
        for (int p : parts) s += p;
        return s;
    }
    int count() const { return static_cast<int>(parts.size()); }
    // 1-based access with zero padding past the end.
    int at(int i) const {
        return (i >= 1 && i <= count()) ? parts[static_cast<std::size_t>(i - 1)] : 0;
    }

    bool operator==(const Partition& o) const { return parts == o.parts; }
    bool operator<(const Partition& o) const { return parts < o.parts; }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) s += "+";
            s += std::to_string(parts[i]);
        }
        return s.empty() ? "0" : s;
    }
};

// Accepts "3,1,1,1", "3+1+1+1" or "3 1 1 1".
inline Partition parse_partition(const std::string& text) {
    std::vector<int> parts;
    std::string cur;
    const auto flush = [&]() {
        if (cur.empty()) return;
        parts.push_back(std::stoi(cur));
        cur.clear();
    };
    for (char ch : text) {
        if (ch == ',' || ch == '+' || ch == ' ') flush();
        else if (ch >= '0' && ch <= '9') cur += ch;
        else throw std::invalid_argument("bad partition literal: " + text);
    }
    flush();
    if (parts.empty()) throw std::invalid_argument("empty partition literal");
    return Partition(std::move(parts));
}

// All partitions of n with parts bounded by maxpart, largest parts first.
template <class Fn>
void for_each_partition_bounded(int n, int maxpart, Fn&& fn) {
    std::vector<int> parts;
    const auto rec = [&](auto&& self, int rem, int bound) -> void {
        if (rem == 0) {
            fn(parts);
            return;
        }
        for (int v = std::min(bound, rem); v >= 1; --v) {
            parts.push_back(v);
            self(self, rem - v, v);
            parts.pop_back();
        }
    };
    rec(rec, n, maxpart);
}

template <class Fn>
void for_each_partition(int n, Fn&& fn) {
    for_each_partition_bounded(n, n, fn);
}

inline std::vector<Partition> enumerate_partitions(int n, int max_parts = -1) {
    std::vector<Partition> out;
    for_each_partition(n, [&](const std::vector<int>& parts) {
        if (max_parts < 0 || static_cast<int>(parts.size()) <= max_parts)
            out.push_back(Partition(std::vector<int>(parts)));
    });
    return out;
}

// Partitions streamed in run form: runs[i] = (value, multiplicity) with
// strictly decreasing values. This is the fast path for the large bound
// scans, where only run boundaries matter.
struct PartitionRuns {
    const std::pair<int, int>* runs;
    int run_count;
    int total_parts;
};

template <class Fn>
void for_each_partition_runs(int n, Fn&& fn) {
    std::vector<std::pair<int, int>> runs;
    runs.reserve(64);
    int total_parts = 0;
    const auto rec = [&](auto&& self, int rem, int bound) -> void {
        if (rem == 0) {
            fn(PartitionRuns{runs.data(), static_cast<int>(runs.size()), total_parts});
            return;
        }
        for (int v = std::min(bound, rem); v >= 1; --v) {
            const int maxmult = rem / v;
            for (int m = 1; m <= maxmult; ++m) {
                runs.emplace_back(v, m);
                total_parts += m;
                self(self, rem - v * m, v - 1);
                total_parts -= m;
                runs.pop_back();
            }
        }
    };
    rec(rec, n, n);
}

inline BigInt factorial_big(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Hook lengths of the Young diagram, row-major.
inline std::vector<std::vector<int>> hook_lengths(const Partition& lambda) {
    const int q = lambda.count();
    std::vector<std::vector<int>> hooks(static_cast<std::size_t>(q));
    const int width = q ? lambda.parts[0] : 0;
    std::vector<int> conj(static_cast<std::size_t>(width), 0);
    for (int j = 0; j < width; ++j)
        for (int i = 0; i < q; ++i)
            if (lambda.parts[static_cast<std::size_t>(i)] > j) conj[static_cast<std::size_t>(j)] = i + 1;
    for (int i = 0; i < q; ++i) {
        hooks[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(lambda.parts[static_cast<std::size_t>(i)]));
        for (int j = 0; j < lambda.parts[static_cast<std::size_t>(i)]; ++j)
            hooks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                lambda.parts[static_cast<std::size_t>(i)] - j + conj[static_cast<std::size_t>(j)] - i - 1;
    }
    return hooks;
}

// Degree of the irreducible S_n character chi_lambda by the hook length
// formula, exact.
inline BigInt hook_degree(const Partition& lambda) {
    if (lambda.count() == 0) throw std::invalid_argument("empty partition");
    const int n = lambda.n();
    BigInt denom = 1;
    for (const auto& row : hook_lengths(lambda))
        for (int h : row) denom *= h;
    BigInt num = factorial_big(n);
    BigInt deg = num / denom;
    if (deg * denom != num) throw std::logic_error("hook product does not divide n!");
    return deg;
}

// Natural log of a positive big integer, accurate to ~1e-18 relative.
inline long double log_bigint(const BigInt& x) {
    if (x <= 0) throw std::domain_error("log of non-positive integer");
    const unsigned bits = boost::multiprecision::msb(x) + 1;
    if (bits <= 63) return std::log(static_cast<long double>(x.convert_to<std::uint64_t>()));
    const unsigned shift = bits - 63;
    const std::uint64_t top = (x >> shift).convert_to<std::uint64_t>();
    return std::log(static_cast<long double>(top)) + static_cast<long double>(shift) * 0.6931471805599453094172321214581766L;
}

// The (k, l, m, t) parameters of a partition with at most four parts:
// lambda = (k+l+m+t, k+l+m, k+l, k).
struct KlmtDecomposition {
    int k = 0, l = 0, m = 0, t = 0;

    Partition reconstruct() const {
        return Partition(std::vector<int>{k + l + m + t, k + l + m, k + l, k});
    }
    int n() const { return 4 * k + 3 * l + 2 * m + t; }
};

inline KlmtDecomposition decompose_klmt(const Partition& lambda) {
    if (lambda.count() > 4)
        throw std::invalid_argument("klmt decomposition requires at most 4 parts");
    KlmtDecomposition d;
    d.k = lambda.at(4);
    d.l = lambda.at(3) - lambda.at(4);
    d.m = lambda.at(2) - lambda.at(3);
    d.t = lambda.at(1) - lambda.at(2);
    return d;
}

}  // namespace piexp
