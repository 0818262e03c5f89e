#pragma once

#include "piexp/algebra.hpp"
#include "piexp/perm.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace piexp {

// A bracketing of n factors is a full binary tree with n leaves, stored as
// a straight-line program: node ids 0..n-1 are the leaf positions in
// left-to-right order, node n+i is the result of ops[i], and ops is in
// post-order (children precede parents), so the root is n + ops.size() - 1.
struct Bracketing {
    int n = 0;
    std::vector<std::array<int, 2>> ops;

    int root() const { return n + static_cast<int>(ops.size()) - 1; }
    bool operator==(const Bracketing& o) const { return n == o.n && ops == o.ops; }
    bool operator<(const Bracketing& o) const {
        return n != o.n ? n < o.n : ops < o.ops;
    }
};

namespace detail {

struct BTree {
    int leaf = -1;
    std::shared_ptr<const BTree> l, r;
};
using BTreePtr = std::shared_ptr<const BTree>;

inline void flatten(const BTreePtr& t, Bracketing& b, int& out_id) {
    if (t->leaf >= 0) {
        out_id = t->leaf;
        return;
    }
    int li = 0, ri = 0;
    flatten(t->l, b, li);
    flatten(t->r, b, ri);
    b.ops.push_back({li, ri});
    out_id = b.n + static_cast<int>(b.ops.size()) - 1;
}

// All full binary trees over leaf positions [lo, hi); splits are taken with
// the left block growing from size 1 upward, which fixes the canonical
// enumeration order.
inline std::vector<BTreePtr> all_trees(int lo, int hi) {
    std::vector<BTreePtr> out;
    if (hi - lo == 1) {
        auto leaf = std::make_shared<BTree>();
        const_cast<BTree&>(*leaf).leaf = lo;
        out.push_back(leaf);
        return out;
    }
    for (int s = lo + 1; s < hi; ++s) {
        const auto lefts = all_trees(lo, s);
        const auto rights = all_trees(s, hi);
        for (const auto& l : lefts)
            for (const auto& r : rights) {
                auto node = std::make_shared<BTree>();
                const_cast<BTree&>(*node).l = l;
                const_cast<BTree&>(*node).r = r;
                out.push_back(node);
            }
    }
    return out;
}

}  // namespace detail

inline std::uint64_t catalan(int k) {
    // C(0)=1; C(k+1) = C(k)*2(2k+1)/(k+2)
    std::uint64_t c = 1;
    for (int i = 0; i < k; ++i)
        c = c * 2 * (2 * static_cast<std::uint64_t>(i) + 1) / (static_cast<std::uint64_t>(i) + 2);
    return c;
}

inline std::uint64_t factorial_u64(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

// dim of the multilinear part in degree n: n! * Catalan(n-1).
inline std::uint64_t monomial_count(int n) {
    if (n < 1 || n > 12) throw std::invalid_argument("monomial_count supports 1 <= n <= 12");
    return factorial_u64(n) * catalan(n - 1);
}

inline std::vector<Bracketing> enumerate_bracketings(int n) {
    if (n < 1) throw std::invalid_argument("bracketing degree must be positive");
    std::vector<Bracketing> out;
    for (const auto& t : detail::all_trees(0, n)) {
        Bracketing b;
        b.n = n;
        int root = 0;
        detail::flatten(t, b, root);
        out.push_back(std::move(b));
    }
    return out;
}

// A multilinear monomial: a bracketing shape plus a labeling that places
// variable x_{labels[p]+1} at leaf position p. Labels form a permutation.
struct Monomial {
    Bracketing shape;
    std::vector<int> labels;

    int degree() const { return shape.n; }
    bool operator==(const Monomial& o) const { return shape == o.shape && labels == o.labels; }
    bool operator<(const Monomial& o) const {
        if (!(shape == o.shape)) return shape < o.shape;
        return labels < o.labels;
    }
};

// Canonical enumeration order: bracketings in their canonical order (outer
// loop), labelings in lexicographic order (inner loop).
template <class Fn>
void for_each_monomial(int n, Fn&& fn) {
    const auto shapes = enumerate_bracketings(n);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (const auto& shape : shapes) {
        std::iota(labels.begin(), labels.end(), 0);
        do {
            fn(shape, labels);
        } while (std::next_permutation(labels.begin(), labels.end()));
    }
}

inline std::vector<Monomial> enumerate_monomials(int n) {
    if (n > 6) throw std::invalid_argument("materializing monomials is limited to n <= 6; stream instead");
    std::vector<Monomial> out;
    out.reserve(static_cast<std::size_t>(monomial_count(n)));
    for_each_monomial(n, [&](const Bracketing& b, const std::vector<int>& labels) {
        out.push_back(Monomial{b, labels});
    });
    return out;
}

// Evaluates a monomial at an assignment: leaf position p takes the value
// assignment[labels[p]].
inline Element evaluate_monomial(const AlgebraSpec& A, const Monomial& m,
                                 const std::vector<Element>& assignment) {
    const int n = m.shape.n;
    if (static_cast<int>(assignment.size()) != n)
        throw std::invalid_argument("assignment size does not match monomial degree");
    std::vector<Element> vals;
    vals.reserve(static_cast<std::size_t>(n) + m.shape.ops.size());
    for (int p = 0; p < n; ++p)
        vals.push_back(assignment[static_cast<std::size_t>(m.labels[static_cast<std::size_t>(p)])]);
    for (const auto& op : m.shape.ops)
        vals.push_back(multiply(A, vals[static_cast<std::size_t>(op[0])], vals[static_cast<std::size_t>(op[1])]));
    return vals.back();
}

inline std::string to_string(const Monomial& m) {
    std::string out;
    const auto rec = [&](auto&& self, int node) -> void {
        if (node < m.shape.n) {
            out += "x" + std::to_string(m.labels[static_cast<std::size_t>(node)] + 1);
            return;
        }
        const auto& op = m.shape.ops[static_cast<std::size_t>(node - m.shape.n)];
        out += "(";
        self(self, op[0]);
        self(self, op[1]);
        out += ")";
    };
    rec(rec, m.shape.root());
    return out;
}

namespace detail {

struct MonomialParser {
    const std::string& s;
    std::size_t pos = 0;

    explicit MonomialParser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    // term := 'x' digits | '(' expr ')'
    BTreePtr term(std::vector<int>& leaf_vars) {
        skip_ws();
        if (pos >= s.size()) throw std::invalid_argument("unexpected end of monomial text");
        if (s[pos] == '(') {
            ++pos;
            auto t = expr(leaf_vars);
            skip_ws();
            if (pos >= s.size() || s[pos] != ')')
                throw std::invalid_argument("missing ')' in monomial text");
            ++pos;
            return t;
        }
        if (s[pos] == 'x' || s[pos] == 'X') {
            ++pos;
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (start == pos) throw std::invalid_argument("variable index missing after 'x'");
            const int var = std::stoi(s.substr(start, pos - start));
            if (var < 1) throw std::invalid_argument("variable indices start at x1");
            auto node = std::make_shared<BTree>();
            const_cast<BTree&>(*node).leaf = static_cast<int>(leaf_vars.size());
            leaf_vars.push_back(var - 1);
            return node;
        }
        throw std::invalid_argument(std::string("unexpected character '") + s[pos] + "' in monomial text");
    }

    // expr := term term* ; juxtaposition is left-normed: abc = (ab)c.
    BTreePtr expr(std::vector<int>& leaf_vars) {
        BTreePtr acc = term(leaf_vars);
        while (true) {
            skip_ws();
            if (pos >= s.size() || s[pos] == ')') break;
            auto rhs = term(leaf_vars);
            auto node = std::make_shared<BTree>();
            const_cast<BTree&>(*node).l = acc;
            const_cast<BTree&>(*node).r = rhs;
            acc = node;
        }
        return acc;
    }
};

}  // namespace detail

// Parses the textual monomial format: explicit parentheses, variables
// x1..xn; unparenthesized sequences associate to the left, so x1x2x3 means
// ((x1x2)x3). Labels must be a permutation of x1..xn.
inline Monomial parse_monomial(const std::string& text) {
    detail::MonomialParser parser(text);
    std::vector<int> leaf_vars;
    auto tree = parser.expr(leaf_vars);
    parser.skip_ws();
    if (parser.pos != text.size()) throw std::invalid_argument("trailing characters in monomial text");

    Monomial m;
    m.shape.n = static_cast<int>(leaf_vars.size());
    if (m.shape.n == 0) throw std::invalid_argument("empty monomial");
    int root = 0;
    detail::flatten(tree, m.shape, root);
    m.labels = leaf_vars;

    std::vector<bool> seen(leaf_vars.size(), false);
    for (int v : leaf_vars) {
        if (v >= static_cast<int>(leaf_vars.size()) || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("monomial labels must be a permutation of x1..xn");
        seen[static_cast<std::size_t>(v)] = true;
    }
    return m;
}

// Formal Q-linear combination of multilinear monomials of one degree.
struct MultilinearPoly {
    std::map<Monomial, Rational> terms;

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    MultilinearPoly& operator+=(const MultilinearPoly& o) {
        for (const auto& [m, c] : o.terms) add_term(m, c);
        return *this;
    }
    MultilinearPoly& operator*=(const Rational& s) {
        if (s == 0) { terms.clear(); return *this; }
        for (auto& [m, c] : terms) c *= s;
        return *this;
    }
    bool operator==(const MultilinearPoly& o) const { return terms == o.terms; }
};

// Left action of S_n on polynomials: (sigma . f)(x_1,...,x_n) =
// f(x_{sigma(1)},...,x_{sigma(n)}); on a monomial it maps each label v to
// sigma(v).
inline Monomial act(const Perm& sigma, const Monomial& m) {
    Monomial out = m;
    for (auto& v : out.labels) v = sigma[static_cast<std::size_t>(v)];
    return out;
}

inline MultilinearPoly act(const Perm& sigma, const MultilinearPoly& f) {
    MultilinearPoly out;
    for (const auto& [m, c] : f.terms) out.add_term(act(sigma, m), c);
    return out;
}

inline Element evaluate(const AlgebraSpec& A, const MultilinearPoly& f,
                        const std::vector<Element>& assignment) {
    Element out(A.dim);
    for (const auto& [m, c] : f.terms) {
        Element v = evaluate_monomial(A, m, assignment);
        v *= c;
        out += v;
    }
    return out;
}

// Young tableau on variables 0..n-1: rows of weakly decreasing lengths,
// each variable appearing exactly once.
struct Tableau {
    std::vector<std::vector<int>> rows;

    int size() const {
        int n = 0;
        for (const auto& r : rows) n += static_cast<int>(r.size());
        return n;
    }

    void validate() const {
        const int n = size();
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].empty()) throw std::invalid_argument("tableau has an empty row");
            if (i > 0 && rows[i].size() > rows[i - 1].size())
                throw std::invalid_argument("tableau row lengths must weakly decrease");
            for (int v : rows[i]) {
                if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
                    throw std::invalid_argument("tableau entries must be a permutation of 0..n-1");
                seen[static_cast<std::size_t>(v)] = true;
            }
        }
    }
};

namespace detail {

// Enumerates the subgroup of S_n preserving each block setwise, as global
// permutations (images of 0..n-1).
template <class Fn>
void for_each_block_perm(const std::vector<std::vector<int>>& blocks, int n, Fn&& fn) {
    std::vector<std::vector<int>> arrangements(blocks.size());
    std::vector<std::vector<int>> sorted(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        sorted[b] = blocks[b];
        std::sort(sorted[b].begin(), sorted[b].end());
        arrangements[b] = sorted[b];
    }
    Perm p = perm_identity(n);
    const auto apply_block = [&](std::size_t b) {
        for (std::size_t i = 0; i < sorted[b].size(); ++i)
            p[static_cast<std::size_t>(sorted[b][i])] = arrangements[b][i];
    };
    const auto rec = [&](auto&& self, std::size_t b) -> void {
        if (b == blocks.size()) {
            fn(p);
            return;
        }
        do {
            apply_block(b);
            self(self, b + 1);
        } while (std::next_permutation(arrangements[b].begin(), arrangements[b].end()));
        arrangements[b] = sorted[b];
        apply_block(b);
    };
    rec(rec, 0);
}

}  // namespace detail

// Young symmetrizer e_T = (sum over the row group R(T)) * (signed sum over
// the column group C(T)) applied as e_T . f = sum_{s in R} sum_{t in C}
// sgn(t) (s t) . f. Quasi-idempotent: e_T e_T = (n! / deg chi) e_T.
inline MultilinearPoly apply_symmetrizer(const Tableau& T, const MultilinearPoly& f) {
    T.validate();
    const int n = T.size();

    std::vector<std::vector<int>> columns;
    for (std::size_t j = 0; !T.rows.empty() && j < T.rows[0].size(); ++j) {
        std::vector<int> col;
        for (const auto& row : T.rows)
            if (j < row.size()) col.push_back(row[j]);
        columns.push_back(std::move(col));
    }

    MultilinearPoly col_alt;
    detail::for_each_block_perm(columns, n, [&](const Perm& t) {
        MultilinearPoly g = act(t, f);
        g *= Rational(perm_sign(t));
        col_alt += g;
    });

    MultilinearPoly out;
    detail::for_each_block_perm(T.rows, n, [&](const Perm& s) {
        out += act(s, col_alt);
    });
    return out;
}

}  // namespace piexp
