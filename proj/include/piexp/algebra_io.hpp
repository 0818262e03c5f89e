#pragma once

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "piexp/algebra.hpp"

namespace piexp {

// On-disk algebra format:
//   {"dim": d, "basis": [names], "grades": [ints]|null, "unit": index|null,
//    "table": [[[ [k, "num/den"], ... ], ...], ...]}
// where table[i][j] lists the nonzero (basis index, coefficient) pairs of
// basis_i * basis_j. Serialization is canonical (fixed key order, sparse
// cells sorted by basis index), so equal algebras produce identical bytes
// and the byte stream doubles as the hashing preimage.

inline nlohmann::ordered_json algebra_to_json(const AlgebraSpec& A) {
    A.validate();
    nlohmann::ordered_json j;
    j["dim"] = A.dim;
    j["basis"] = A.basis;
    if (A.grades)
        j["grades"] = *A.grades;
    else
        j["grades"] = nullptr;
    if (A.unit_index)
        j["unit"] = *A.unit_index;
    else
        j["unit"] = nullptr;
    nlohmann::ordered_json table = nlohmann::ordered_json::array();
    for (int i = 0; i < A.dim; ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int jj = 0; jj < A.dim; ++jj) {
            nlohmann::ordered_json cell = nlohmann::ordered_json::array();
            for (int k = 0; k < A.dim; ++k) {
                const Rational& q = A.table[static_cast<size_t>(i)][static_cast<size_t>(jj)]
                                           [static_cast<size_t>(k)];
                if (q == 0) continue;
                cell.push_back(nlohmann::ordered_json::array({k, format_rational(q)}));
            }
            row.push_back(std::move(cell));
        }
        table.push_back(std::move(row));
    }
    j["table"] = std::move(table);
    return j;
}

inline std::string serialize_algebra(const AlgebraSpec& A) {
    return algebra_to_json(A).dump(2) + "\n";
}

namespace detail {

[[noreturn]] inline void schema_error(const std::string& where, const std::string& what) {
    throw std::invalid_argument("algebra file: " + where + ": " + what);
}

}  // namespace detail

inline AlgebraSpec algebra_from_json(const nlohmann::json& j) {
    using detail::schema_error;
    if (!j.is_object()) schema_error("document", "expected a JSON object");
    for (const char* key : {"dim", "basis", "grades", "unit", "table"})
        if (!j.contains(key)) schema_error(key, "missing field");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "dim" && it.key() != "basis" && it.key() != "grades" &&
            it.key() != "unit" && it.key() != "table")
            schema_error(it.key(), "unknown field");

    AlgebraSpec A;
    if (!j["dim"].is_number_integer()) schema_error("dim", "expected an integer");
    A.dim = j["dim"].get<int>();
    if (A.dim <= 0) schema_error("dim", "must be positive");

    if (!j["basis"].is_array()) schema_error("basis", "expected an array of names");
    if (static_cast<int>(j["basis"].size()) != A.dim)
        schema_error("basis", "expected exactly dim entries");
    for (const auto& b : j["basis"]) {
        if (!b.is_string()) schema_error("basis", "names must be strings");
        A.basis.push_back(b.get<std::string>());
    }

    if (!j["grades"].is_null()) {
        if (!j["grades"].is_array()) schema_error("grades", "expected an array or null");
        if (static_cast<int>(j["grades"].size()) != A.dim)
            schema_error("grades", "expected exactly dim entries");
        std::vector<int> g;
        for (const auto& v : j["grades"]) {
            if (!v.is_number_integer()) schema_error("grades", "entries must be integers");
            g.push_back(v.get<int>());
        }
        A.grades = std::move(g);
    }

    if (!j["unit"].is_null()) {
        if (!j["unit"].is_number_integer()) schema_error("unit", "expected an index or null");
        const int u = j["unit"].get<int>();
        if (u < 0 || u >= A.dim) schema_error("unit", "index out of range");
        A.unit_index = u;
    }

    if (!j["table"].is_array() || static_cast<int>(j["table"].size()) != A.dim)
        schema_error("table", "expected a dim x dim array");
    A.table.assign(static_cast<size_t>(A.dim),
                   std::vector<std::vector<Rational>>(
                       static_cast<size_t>(A.dim),
                       std::vector<Rational>(static_cast<size_t>(A.dim))));
    for (int i = 0; i < A.dim; ++i) {
        const auto& row = j["table"][static_cast<size_t>(i)];
        const std::string rw = "table[" + std::to_string(i) + "]";
        if (!row.is_array() || static_cast<int>(row.size()) != A.dim)
            schema_error(rw, "expected a row of dim cells");
        for (int jj = 0; jj < A.dim; ++jj) {
            const auto& cell = row[static_cast<size_t>(jj)];
            const std::string cw = rw + "[" + std::to_string(jj) + "]";
            if (!cell.is_array()) schema_error(cw, "expected a list of [index, coeff] pairs");
            int prev = -1;
            for (const auto& pair : cell) {
                if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
                    !pair[1].is_string())
                    schema_error(cw, "entries must be [basis index, coefficient string]");
                const int k = pair[0].get<int>();
                if (k < 0 || k >= A.dim) schema_error(cw, "basis index out of range");
                if (k <= prev) schema_error(cw, "basis indices must be strictly increasing");
                prev = k;
                Rational q;
                try {
                    q = parse_rational(pair[1].get<std::string>());
                } catch (const std::invalid_argument& e) {
                    schema_error(cw, e.what());
                }
                if (q == 0) schema_error(cw, "zero coefficients must be omitted");
                A.table[static_cast<size_t>(i)][static_cast<size_t>(jj)][static_cast<size_t>(k)] =
                    q;
            }
        }
    }
    A.validate();
    return A;
}

inline AlgebraSpec parse_algebra_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("algebra file: not valid JSON: ") + e.what());
    }
    return algebra_from_json(j);
}

inline AlgebraSpec parse_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("algebra file: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_algebra_text(ss.str());
}

inline void write_algebra_file(const AlgebraSpec& A, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << serialize_algebra(A);
}

// FNV-1a over the canonical serialization; used as the cache key.
inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

inline std::string algebra_hash(const AlgebraSpec& A) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, fnv1a64(serialize_algebra(A)));
    return std::string(buf);
}

}  // namespace piexp
