#pragma once

#include "piexp/algebra.hpp"
#include "piexp/perm.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace piexp {

// Expression tree whose leaves carry algebra elements. A leaf may be tagged
// with an alternation class (expansion sums over all permutations of the
// payloads within each class, with the sign of the permutation) or a
// symmetrization class (same, unsigned). Distinct classes expand
// independently, so an expression with classes of sizes k1, k2, ... expands
// into prod(ki!) evaluations; subtree values are memoized per class
// assignment so shared structure is not recomputed.
struct AltExpr {
    struct Node {
        int leaf_payload = -1;   // index into payloads, or -1 for internal
        int alt_class = -1;      // alternation class id, or -1
        int sym_class = -1;      // symmetrization class id, or -1
        int left = -1, right = -1;
    };

    std::vector<Node> nodes;         // post-order, root last
    std::vector<Element> payloads;   // one per leaf, in leaf creation order

    int root() const { return static_cast<int>(nodes.size()) - 1; }

    int add_leaf(Element payload, int alt_class = -1, int sym_class = -1) {
        if (alt_class >= 0 && sym_class >= 0)
            throw std::invalid_argument("a leaf cannot be in both an alternation and a symmetrization class");
        Node n;
        n.leaf_payload = static_cast<int>(payloads.size());
        n.alt_class = alt_class;
        n.sym_class = sym_class;
        payloads.push_back(std::move(payload));
        nodes.push_back(n);
        return static_cast<int>(nodes.size()) - 1;
    }

    int add_mul(int left, int right) {
        Node n;
        n.left = left;
        n.right = right;
        nodes.push_back(n);
        return static_cast<int>(nodes.size()) - 1;
    }

    // Replaces every payload equal to `from` by `to` (exact comparison).
    void substitute_payload(const Element& from, const Element& to) {
        for (auto& p : payloads)
            if (p == from) p = to;
    }
};

namespace detail {

struct AltClassInfo {
    std::vector<int> leaf_nodes;     // node indices of the class members, in leaf order
    bool signed_class = false;
};

// Per-node set of classes occurring in the subtree, used as memo key mask.
inline void collect_class_masks(const AltExpr& e, std::vector<std::uint64_t>& mask,
                                const std::map<int, int>& class_slot_alt,
                                const std::map<int, int>& class_slot_sym) {
    mask.assign(e.nodes.size(), 0);
    for (std::size_t i = 0; i < e.nodes.size(); ++i) {
        const auto& n = e.nodes[i];
        if (n.leaf_payload >= 0) {
            if (n.alt_class >= 0) mask[i] |= 1ull << class_slot_alt.at(n.alt_class);
            if (n.sym_class >= 0) mask[i] |= 1ull << class_slot_sym.at(n.sym_class);
        } else {
            mask[i] = mask[static_cast<std::size_t>(n.left)] | mask[static_cast<std::size_t>(n.right)];
        }
    }
}

}  // namespace detail

// Expands all alternation / symmetrization classes of the expression and
// evaluates the resulting sum in A. Exact rational arithmetic.
inline Element evaluate_alt(const AlgebraSpec& A, const AltExpr& e) {
    if (e.nodes.empty()) throw std::invalid_argument("empty expression");
    for (const auto& p : e.payloads)
        if (p.dim() != A.dim) throw std::invalid_argument("payload dimension does not match algebra");

    // Gather classes.
    std::map<int, detail::AltClassInfo> classes;  // slot -> info
    std::map<int, int> slot_of_alt, slot_of_sym;
    for (std::size_t i = 0; i < e.nodes.size(); ++i) {
        const auto& n = e.nodes[i];
        if (n.leaf_payload < 0) continue;
        if (n.alt_class >= 0) {
            auto [it, fresh] = slot_of_alt.try_emplace(n.alt_class, static_cast<int>(slot_of_alt.size() + slot_of_sym.size()));
            (void)fresh;
            auto& info = classes[it->second];
            info.signed_class = true;
            info.leaf_nodes.push_back(static_cast<int>(i));
        } else if (n.sym_class >= 0) {
            auto [it, fresh] = slot_of_sym.try_emplace(n.sym_class, static_cast<int>(slot_of_alt.size() + slot_of_sym.size()));
            (void)fresh;
            auto& info = classes[it->second];
            info.signed_class = false;
            info.leaf_nodes.push_back(static_cast<int>(i));
        }
    }
    const int nclasses = static_cast<int>(classes.size());
    if (nclasses > 60) throw std::invalid_argument("too many classes");

    std::vector<std::uint64_t> mask;
    detail::collect_class_masks(e, mask, slot_of_alt, slot_of_sym);

    // Current permutation per class (images within the class), iterated as
    // an odometer over the product of symmetric groups.
    std::vector<Perm> assignment(static_cast<std::size_t>(nclasses));
    std::vector<const detail::AltClassInfo*> infos(static_cast<std::size_t>(nclasses));
    for (auto& [slot, info] : classes) {
        assignment[static_cast<std::size_t>(slot)] = perm_identity(static_cast<int>(info.leaf_nodes.size()));
        infos[static_cast<std::size_t>(slot)] = &info;
    }

    // leaf node -> (class slot, position within class) for payload lookup.
    std::vector<std::pair<int, int>> leaf_class_pos(e.nodes.size(), {-1, -1});
    for (auto& [slot, info] : classes)
        for (std::size_t pos = 0; pos < info.leaf_nodes.size(); ++pos)
            leaf_class_pos[static_cast<std::size_t>(info.leaf_nodes[pos])] = {slot, static_cast<int>(pos)};

    // Memo: per node, map from encoded restricted assignment to value.
    // Key encodes, for each class in the node's mask, the permutation index
    // sequence; classes here are tiny (size <= 4), so a string key is fine.
    std::vector<std::map<std::string, Element>> memo(e.nodes.size());

    const auto key_for = [&](std::uint64_t m) {
        std::string key;
        for (int s = 0; s < nclasses; ++s) {
            if (!(m >> s & 1)) continue;
            key += static_cast<char>('A' + s);
            for (int v : assignment[static_cast<std::size_t>(s)]) key += static_cast<char>('0' + v);
        }
        return key;
    };

    const auto eval_node = [&](auto&& self, int id) -> const Element& {
        const auto& n = e.nodes[static_cast<std::size_t>(id)];
        const std::string key = key_for(mask[static_cast<std::size_t>(id)]);
        auto it = memo[static_cast<std::size_t>(id)].find(key);
        if (it != memo[static_cast<std::size_t>(id)].end()) return it->second;

        Element value(A.dim);
        if (n.leaf_payload >= 0) {
            const auto [slot, pos] = leaf_class_pos[static_cast<std::size_t>(id)];
            if (slot < 0) {
                value = e.payloads[static_cast<std::size_t>(n.leaf_payload)];
            } else {
                // Leaf at class position pos receives the payload of the
                // member at position perm(pos).
                const auto& info = *infos[static_cast<std::size_t>(slot)];
                const int src_node = info.leaf_nodes[static_cast<std::size_t>(
                    assignment[static_cast<std::size_t>(slot)][static_cast<std::size_t>(pos)])];
                const int payload = e.nodes[static_cast<std::size_t>(src_node)].leaf_payload;
                value = e.payloads[static_cast<std::size_t>(payload)];
            }
        } else {
            value = multiply(A, self(self, n.left), self(self, n.right));
        }
        return memo[static_cast<std::size_t>(id)].emplace(key, std::move(value)).first->second;
    };

    Element total(A.dim);
    while (true) {
        int sign = 1;
        for (int s = 0; s < nclasses; ++s)
            if (infos[static_cast<std::size_t>(s)]->signed_class)
                sign *= perm_sign(assignment[static_cast<std::size_t>(s)]);
        Element term = eval_node(eval_node, e.root());
        term *= Rational(sign);
        total += term;

        // Odometer step over the product of symmetric groups.
        int s = 0;
        for (; s < nclasses; ++s) {
            auto& p = assignment[static_cast<std::size_t>(s)];
            if (std::next_permutation(p.begin(), p.end())) break;
        }
        if (s == nclasses) break;
    }
    return total;
}

// The witness expressions. Bars, tildes and double bars in the source
// construction become alternation classes 0, 1, 2. Payload order within a
// class follows the leaf order of the construction, e.g. the barred
// quadruple is (e-1, e0, e1, e2).
//
//   f1 = e-1 [ e-1~0 (( e0~0 e-1 )( e1~0 e2~0 )) ]            (~0: class 0)
//   f2 = ( e-1~0 e0~0 ) e1~0
//   a  = [ e-1~0 (( e0~0 e-1~1 )( e1~0 e2~0 )) ] e0~1
//   f3 = ( e-1 [ e-1~0 (( e0~0 e-1~1 )( e1~0 e2~0 )) ] ) e0~1
//   f4 = e-1~2 [ ( a-tree ) e0~2 ]
//
// On W: f1 = f2 = f3 = f4 = -e0 and a = -e1.
inline AltExpr make_witness_expr(const std::string& name, int dim = 4) {
    if (dim != 4) throw std::invalid_argument("witness expressions are defined over a 4-dimensional algebra");
    const auto em1 = Element::basis(4, 0);
    const auto e0 = Element::basis(4, 1);
    const auto e1 = Element::basis(4, 2);
    const auto e2 = Element::basis(4, 3);

    AltExpr e;
    // Core bracket [ e-1~0 (( e0~0 X )( e1~0 e2~0 )) ] with X either a free
    // e-1 (for f1) or a class-1 e-1 (for a, f3, f4).
    const auto core = [&](bool inner_tilde) {
        const int l_em1 = e.add_leaf(em1, 0);
        const int l_e0 = e.add_leaf(e0, 0);
        const int l_x = inner_tilde ? e.add_leaf(em1, 1) : e.add_leaf(em1);
        const int l_e1 = e.add_leaf(e1, 0);
        const int l_e2 = e.add_leaf(e2, 0);
        const int p1 = e.add_mul(l_e0, l_x);
        const int p2 = e.add_mul(l_e1, l_e2);
        const int p3 = e.add_mul(p1, p2);
        return e.add_mul(l_em1, p3);
    };

    if (name == "f1") {
        const int lead = e.add_leaf(em1);
        const int c = core(false);
        e.add_mul(lead, c);
        return e;
    }
    if (name == "f2") {
        const int a = e.add_leaf(em1, 0);
        const int b = e.add_leaf(e0, 0);
        const int c = e.add_leaf(e1, 0);
        const int ab = e.add_mul(a, b);
        e.add_mul(ab, c);
        return e;
    }
    if (name == "a") {
        const int c = core(true);
        const int trail = e.add_leaf(e0, 1);
        e.add_mul(c, trail);
        return e;
    }
    if (name == "f3") {
        const int lead = e.add_leaf(em1);
        const int c = core(true);
        const int prod = e.add_mul(lead, c);
        const int trail = e.add_leaf(e0, 1);
        e.add_mul(prod, trail);
        return e;
    }
    if (name == "f4") {
        const int lead = e.add_leaf(em1, 2);
        const int c = core(true);
        const int trail1 = e.add_leaf(e0, 1);
        const int atree = e.add_mul(c, trail1);
        const int trail2 = e.add_leaf(e0, 2);
        const int inner = e.add_mul(atree, trail2);
        e.add_mul(lead, inner);
        return e;
    }
    throw std::invalid_argument("unknown witness name: " + name + " (expected f1, f2, f3, f4 or a)");
}

inline Element evaluate_witness(const AlgebraSpec& A, const std::string& name) {
    if (A.dim != 4) throw std::invalid_argument("witness evaluation requires a 4-dimensional algebra");
    return evaluate_alt(A, make_witness_expr(name, A.dim));
}

}  // namespace piexp
