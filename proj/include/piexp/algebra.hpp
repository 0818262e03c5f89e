#pragma once

#include "piexp/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace piexp {

// A finite-dimensional (not necessarily associative) algebra given by its
// structure constants over Q: table[i][j] is the coordinate vector of
// basis_i * basis_j.
struct AlgebraSpec {
    int dim = 0;
    std::vector<std::string> basis;               // size dim
    std::optional<std::vector<int>> grades;       // Z-grading of basis elements
    std::optional<int> unit_index;                // index of a declared unit
    std::vector<std::vector<std::vector<Rational>>> table;  // dim x dim x dim

    void validate() const {
        if (dim <= 0) throw std::invalid_argument("algebra dimension must be positive");
        if (static_cast<int>(basis.size()) != dim)
            throw std::invalid_argument("basis name count does not match dim");
        if (static_cast<int>(table.size()) != dim)
            throw std::invalid_argument("multiplication table is not dim x dim");
        for (const auto& row : table) {
            if (static_cast<int>(row.size()) != dim)
                throw std::invalid_argument("multiplication table is not dim x dim");
            for (const auto& cell : row)
                if (static_cast<int>(cell.size()) != dim)
                    throw std::invalid_argument("table entry has wrong coordinate count");
        }
        if (grades && static_cast<int>(grades->size()) != dim)
            throw std::invalid_argument("grade count does not match dim");
        if (unit_index && (*unit_index < 0 || *unit_index >= dim))
            throw std::invalid_argument("unit index out of range");
    }
};

// Element of an algebra: coordinates in the given basis.
struct Element {
    std::vector<Rational> c;

    explicit Element(int dim = 0) : c(static_cast<std::size_t>(dim)) {}
    static Element basis(int dim, int i) {
        Element e(dim);
        e.c[static_cast<std::size_t>(i)] = 1;
        return e;
    }

    int dim() const { return static_cast<int>(c.size()); }
    bool is_zero() const {
        return std::all_of(c.begin(), c.end(), [](const Rational& q) { return q == 0; });
    }
    bool operator==(const Element& o) const { return c == o.c; }

    Element& operator+=(const Element& o) {
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
    Element& operator-=(const Element& o) {
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
        return *this;
    }
    Element& operator*=(const Rational& s) {
        for (auto& q : c) q *= s;
        return *this;
    }
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Rational& s, Element a) { return a *= s; }
};

inline Element multiply(const AlgebraSpec& A, const Element& x, const Element& y) {
    Element out(A.dim);
    for (int i = 0; i < A.dim; ++i) {
        const Rational& xi = x.c[static_cast<std::size_t>(i)];
        if (xi == 0) continue;
        for (int j = 0; j < A.dim; ++j) {
            const Rational& yj = y.c[static_cast<std::size_t>(j)];
            if (yj == 0) continue;
            const Rational s = xi * yj;
            const auto& cell = A.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            for (int k = 0; k < A.dim; ++k)
                if (cell[static_cast<std::size_t>(k)] != 0)
                    out.c[static_cast<std::size_t>(k)] += s * cell[static_cast<std::size_t>(k)];
        }
    }
    return out;
}

// The four-dimensional simple algebra W with basis e(-1), e0, e1, e2.
// Products of basis elements are defined by the Z-grading: e0 is a
// two-sided unit; for nonzero grades i, j the product e_i e_j is e_{i+j}
// when i <= j and -1 <= i+j <= 2, and zero otherwise.
inline AlgebraSpec build_w() {
    AlgebraSpec A;
    A.dim = 4;
    A.basis = {"e-1", "e0", "e1", "e2"};
    A.grades = std::vector<int>{-1, 0, 1, 2};
    A.unit_index = 1;
    A.table.assign(4, std::vector<std::vector<Rational>>(4, std::vector<Rational>(4)));
    const auto grade = [](int idx) { return idx - 1; };
    const auto index = [](int g) { return g + 1; };
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const int gi = grade(i), gj = grade(j);
            if (gi == 0) {
                A.table[i][j][j] = 1;
            } else if (gj == 0) {
                A.table[i][j][i] = 1;
            } else if (gi <= gj && gi + gj >= -1 && gi + gj <= 2) {
                A.table[i][j][static_cast<std::size_t>(index(gi + gj))] = 1;
            }
        }
    }
    return A;
}

// True iff u is a two-sided unit. Checking against basis elements suffices
// by bilinearity.
inline bool check_unit(const AlgebraSpec& A, const Element& u) {
    for (int i = 0; i < A.dim; ++i) {
        const Element b = Element::basis(A.dim, i);
        if (!(multiply(A, u, b) == b)) return false;
        if (!(multiply(A, b, u) == b)) return false;
    }
    return true;
}

// True iff the table respects the grading: e_i e_j is supported on basis
// elements of grade g_i + g_j (products falling outside the grade range
// must be zero, which the support condition enforces automatically).
inline bool check_grading(const AlgebraSpec& A, const std::vector<int>& grades) {
    if (static_cast<int>(grades.size()) != A.dim)
        throw std::invalid_argument("grade count does not match dim");
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j)
            for (int k = 0; k < A.dim; ++k)
                if (A.table[i][j][static_cast<std::size_t>(k)] != 0 &&
                    grades[static_cast<std::size_t>(k)] != grades[static_cast<std::size_t>(i)] + grades[static_cast<std::size_t>(j)])
                    return false;
    return true;
}

// Convenience forms against the AlgebraSpec's own declared unit/grading.
inline bool check_unit(const AlgebraSpec& A) {
    return A.unit_index && check_unit(A, Element::basis(A.dim, *A.unit_index));
}

inline bool check_grading(const AlgebraSpec& A) { return A.grades && check_grading(A, *A.grades); }

namespace detail {

// Incremental row space over Q in reduced echelon form; used for the small
// dense eliminations (operator spans, witness cross-checks).
class RationalSpan {
public:
    explicit RationalSpan(std::size_t width) : width_(width) {}

    std::size_t dimension() const { return rows_.size(); }

    // Reduces v against the span; if a nonzero remainder survives, adds it
    // (normalized) and returns true.
    bool insert(std::vector<Rational> v) {
        reduce(v);
        std::size_t lead = width_;
        for (std::size_t c = 0; c < width_; ++c)
            if (v[c] != 0) { lead = c; break; }
        if (lead == width_) return false;
        const Rational inv = Rational(1) / v[lead];
        for (auto& q : v) q *= inv;
        for (auto& row : rows_) {
            const Rational f = row.vec[lead];
            if (f == 0) continue;
            for (std::size_t c = lead; c < width_; ++c) row.vec[c] -= f * v[c];
        }
        rows_.push_back(Row{lead, std::move(v)});
        return true;
    }

    bool contains(std::vector<Rational> v) const {
        reduce(v);
        return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
    }

private:
    struct Row {
        std::size_t pivot;
        std::vector<Rational> vec;
    };

    void reduce(std::vector<Rational>& v) const {
        for (const auto& row : rows_) {
            const Rational f = v[row.pivot];
            if (f == 0) continue;
            for (std::size_t c = row.pivot; c < width_; ++c) v[c] -= f * row.vec[c];
        }
    }

    std::size_t width_;
    std::vector<Row> rows_;
};

}  // namespace detail

// Certifies simplicity by saturating the unital span-closure of all left
// and right multiplication operators under composition: if it exhausts the
// full endomorphism space End(A) (dimension d^2), the algebra has no proper
// two-sided ideals and A*A != 0 makes it simple. Returns false when A*A = 0.
// Exact rational arithmetic throughout.
inline bool check_simple(const AlgebraSpec& A) {
    const int d = A.dim;
    const std::size_t dd = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);

    bool product_nonzero = false;
    for (int i = 0; i < d && !product_nonzero; ++i)
        for (int j = 0; j < d && !product_nonzero; ++j)
            for (int k = 0; k < d; ++k)
                if (A.table[i][j][static_cast<std::size_t>(k)] != 0) { product_nonzero = true; break; }
    if (!product_nonzero) return false;

    using Matrix = std::vector<Rational>;  // row-major d x d
    const auto at = [d](Matrix& m, int r, int c) -> Rational& {
        return m[static_cast<std::size_t>(r) * d + c];
    };
    const auto cat = [d](const Matrix& m, int r, int c) -> const Rational& {
        return m[static_cast<std::size_t>(r) * d + c];
    };

    std::vector<Matrix> generators;
    for (int i = 0; i < d; ++i) {
        Matrix L(dd), R(dd);
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                at(L, k, j) = A.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                at(R, k, j) = A.table[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            }
        generators.push_back(std::move(L));
        generators.push_back(std::move(R));
    }

    Matrix identity(dd);
    for (int i = 0; i < d; ++i) at(identity, i, i) = 1;

    const auto compose = [&](const Matrix& X, const Matrix& Y) {
        Matrix Z(dd);
        for (int r = 0; r < d; ++r)
            for (int k = 0; k < d; ++k) {
                const Rational& x = cat(X, r, k);
                if (x == 0) continue;
                for (int c = 0; c < d; ++c)
                    if (cat(Y, k, c) != 0) at(Z, r, c) += x * cat(Y, k, c);
            }
        return Z;
    };

    detail::RationalSpan span(dd);
    std::vector<Matrix> worklist;
    const auto offer = [&](Matrix m) {
        if (span.insert(m)) worklist.push_back(std::move(m));
    };

    offer(identity);
    for (const auto& g : generators) offer(g);

    while (!worklist.empty() && span.dimension() < dd) {
        const Matrix current = std::move(worklist.back());
        worklist.pop_back();
        for (const auto& g : generators) {
            offer(compose(current, g));
            if (span.dimension() == dd) break;
            offer(compose(g, current));
            if (span.dimension() == dd) break;
        }
    }
    return span.dimension() == dd;
}

// Residue-mode view of a multiplication table, for evaluation mod p.
struct CompiledTableP {
    int dim = 0;
    std::vector<std::uint32_t> coeff;  // dim^3, [i][j][k]

    std::uint32_t at(int i, int j, int k) const {
        return coeff[(static_cast<std::size_t>(i) * dim + j) * dim + k];
    }
};

inline CompiledTableP compile_table(const AlgebraSpec& A, const PrimeField& F) {
    CompiledTableP t;
    t.dim = A.dim;
    t.coeff.resize(static_cast<std::size_t>(A.dim) * A.dim * A.dim);
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j)
            for (int k = 0; k < A.dim; ++k)
                t.coeff[(static_cast<std::size_t>(i) * A.dim + j) * A.dim + k] =
                    F.from_rational(A.table[i][j][static_cast<std::size_t>(k)]);
    return t;
}

inline std::vector<std::uint32_t> multiply_mod(const CompiledTableP& T, const PrimeField& F,
                                               const std::vector<std::uint32_t>& x,
                                               const std::vector<std::uint32_t>& y) {
    std::vector<std::uint32_t> out(static_cast<std::size_t>(T.dim), 0);
    for (int i = 0; i < T.dim; ++i) {
        if (x[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < T.dim; ++j) {
            if (y[static_cast<std::size_t>(j)] == 0) continue;
            const std::uint32_t s = F.mul(x[static_cast<std::size_t>(i)], y[static_cast<std::size_t>(j)]);
            for (int k = 0; k < T.dim; ++k) {
                const std::uint32_t c = T.at(i, j, k);
                if (c) out[static_cast<std::size_t>(k)] =
                    F.add(out[static_cast<std::size_t>(k)], F.mul(s, c));
            }
        }
    }
    return out;
}

// A table is "monomial" if every basis product is zero or a single basis
// element with coefficient 1 (W is of this kind). Such algebras admit a
// fast evaluation path where intermediate values stay basis elements.
struct MonomialTable {
    int dim = 0;
    std::vector<int> prod;  // dim x dim, -1 for zero product

    int at(int i, int j) const { return prod[static_cast<std::size_t>(i) * dim + j]; }
};

inline std::optional<MonomialTable> as_monomial_table(const AlgebraSpec& A) {
    MonomialTable t;
    t.dim = A.dim;
    t.prod.assign(static_cast<std::size_t>(A.dim) * A.dim, -1);
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) {
            int hit = -1;
            for (int k = 0; k < A.dim; ++k) {
                const Rational& q = A.table[i][j][static_cast<std::size_t>(k)];
                if (q == 0) continue;
                if (q != 1 || hit != -1) return std::nullopt;
                hit = k;
            }
            t.prod[static_cast<std::size_t>(i) * A.dim + j] = hit;
        }
    return t;
}

}  // namespace piexp
