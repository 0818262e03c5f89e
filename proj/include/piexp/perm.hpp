#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

namespace piexp {

// Permutations of {0, ..., n-1} stored as images: p[i] is the image of i.
using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
    Perm p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

// (a * b)(i) = a(b(i))
inline Perm perm_compose(const Perm& a, const Perm& b) {
    Perm c(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        c[i] = a[static_cast<std::size_t>(b[i])];
    return c;
}

inline Perm perm_inverse(const Perm& a) {
    Perm inv(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        inv[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
    return inv;
}

inline int perm_sign(const Perm& a) {
    std::vector<bool> seen(a.size(), false);
    int sign = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (seen[i]) continue;
        std::size_t j = i;
        int len = 0;
        while (!seen[j]) {
            seen[j] = true;
            j = static_cast<std::size_t>(a[j]);
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

// Canonical representative of a cycle type: consecutive blocks, e.g. type
// (3,2) on 5 points gives the permutation (0 1 2)(3 4).
inline Perm perm_of_cycle_type(const std::vector<int>& type, int n) {
    Perm p = perm_identity(n);
    int start = 0;
    for (int len : type) {
        if (len <= 0 || start + len > n) throw std::invalid_argument("cycle type does not fit");
        for (int i = 0; i < len; ++i)
            p[static_cast<std::size_t>(start + i)] = start + (i + 1) % len;
        start += len;
    }
    if (start != n) throw std::invalid_argument("cycle type does not sum to n");
    return p;
}

}  // namespace piexp
