#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "piexp/scalar.hpp"
#include "piexp/threading.hpp"

namespace piexp {

// Thrown when a requested computation exceeds the configured size budget.
// Callers that merely forgot `force` should catch this and report, not crash:
// the CLI maps it to exit code 2.
class BudgetError : public std::runtime_error {
  public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

inline uint64_t splitmix64_next(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline uint64_t splitmix64_mix(uint64_t a, uint64_t b) {
    uint64_t s = a ^ (0x9E3779B97F4A7C15ull * (b + 1));
    return splitmix64_next(s);
}

// Maps every (virtual) column index of a wide matrix to a fixed small set of
// positions in a narrow sketch, with pseudo-random nonzero values derived from
// a seed. Row sketches are sums of column sketches, so rank(sketch) <=
// rank(matrix), with equality holding with high probability once the sketch
// width exceeds the rank. Determinism: the (seed, width, column) triple fully
// determines the expansion, so re-runs are reproducible.
class ColumnCompressor {
  public:
    static constexpr int kEntriesPerColumn = 4;

    ColumnCompressor(uint64_t seed, uint32_t width) : seed_(seed), width_(width) {
        if (width_ == 0) throw std::invalid_argument("ColumnCompressor: width must be positive");
    }

    uint64_t seed() const { return seed_; }
    uint32_t width() const { return width_; }

    // Writes kEntriesPerColumn (position, value) pairs for `col` into `out`.
    // Values are nonzero residues mod F.p(). Positions may repeat; the caller
    // adds values, so repeats are harmless.
    void expand(uint64_t col, const PrimeField& F,
                std::pair<uint32_t, uint32_t> (&out)[kEntriesPerColumn]) const {
        uint64_t s = splitmix64_mix(seed_, col);
        for (int k = 0; k < kEntriesPerColumn; ++k) {
            const uint64_t r = splitmix64_next(s);
            const uint32_t pos = static_cast<uint32_t>((r >> 32) % width_);
            const uint32_t val = 1u + static_cast<uint32_t>(r % (F.prime() - 1));
            out[k] = {pos, val};
        }
    }

  private:
    uint64_t seed_;
    uint32_t width_;
};

// Incremental Gaussian elimination over a prime field. Rows are inserted one
// at a time; each is reduced against the pivots seen so far and either joins
// the basis (insert returns true) or collapses to zero (false). With
// full_rref=true the stored basis is kept in reduced row echelon form (every
// stored row is zero at every other row's pivot column), which costs an extra
// back-elimination pass per insert but makes the stored rows directly usable
// as a canonical basis of the row space.
class RowReducer {
  public:
    RowReducer(PrimeField field, uint32_t width, bool full_rref = false)
        : F_(field), width_(width), full_rref_(full_rref), col2row_(width, -1) {}

    uint32_t width() const { return width_; }
    const PrimeField& field() const { return F_; }
    uint64_t rank() const { return rows_.size(); }
    const std::vector<std::vector<uint32_t>>& rows() const { return rows_; }
    const std::vector<uint32_t>& pivots() const { return pivots_; }

    // Row index owning the pivot at column c, or -1.
    int32_t pivot_row_of(uint32_t c) const { return col2row_[c]; }

    // Reduces v in place against the current basis (forward elimination only;
    // does not modify the basis). After this, v is zero at every pivot column
    // that precedes its leading nonzero entry.
    void reduce_against(std::vector<uint32_t>& v) const {
        for (uint32_t c = 0; c < width_; ++c) {
            if (v[c] == 0) continue;
            const int32_t r = col2row_[c];
            if (r < 0) {
                if (!full_rref_) return;  // leading term found; tail cleanup happens at insert
                continue;
            }
            axpy_from(v, v[c], rows_[static_cast<size_t>(r)], c);
        }
    }

    // Consumes v. Returns true if v was independent of the basis (rank grew).
    bool insert(std::vector<uint32_t> v) {
        if (v.size() != width_) throw std::invalid_argument("RowReducer: row width mismatch");
        uint32_t lead = width_;
        for (uint32_t c = 0; c < width_; ++c) {
            if (v[c] == 0) continue;
            const int32_t r = col2row_[c];
            if (r >= 0) {
                axpy_from(v, v[c], rows_[static_cast<size_t>(r)], c);
                continue;
            }
            lead = c;
            if (!full_rref_) break;  // echelon form: later pivot columns may stay nonzero
            // RREF: keep eliminating every later pivot column too.
            for (uint32_t c2 = c + 1; c2 < width_; ++c2) {
                if (v[c2] == 0) continue;
                const int32_t r2 = col2row_[c2];
                if (r2 >= 0) axpy_from(v, v[c2], rows_[static_cast<size_t>(r2)], c2);
            }
            break;
        }
        if (lead == width_) return false;

        const uint32_t inv = F_.inv(v[lead]);
        for (uint32_t i = lead; i < width_; ++i) v[i] = F_.mul(v[i], inv);

        if (full_rref_) {
            for (size_t j = 0; j < rows_.size(); ++j) {
                const uint32_t f = rows_[j][lead];
                if (f) axpy_from(rows_[j], f, v, lead);
            }
        }
        col2row_[lead] = static_cast<int32_t>(rows_.size());
        rows_.push_back(std::move(v));
        pivots_.push_back(lead);
        return true;
    }

  private:
    // v -= f * src, acting on columns [from, width).
    void axpy_from(std::vector<uint32_t>& v, uint32_t f, const std::vector<uint32_t>& src,
                   uint32_t from) const {
        for (uint32_t i = from; i < width_; ++i) {
            if (src[i]) v[i] = F_.sub(v[i], F_.mul(f, src[i]));
        }
    }

    PrimeField F_;
    uint32_t width_;
    bool full_rref_;
    std::vector<std::vector<uint32_t>> rows_;
    std::vector<uint32_t> pivots_;
    std::vector<int32_t> col2row_;
};

// Deduplicates sparse 0/1 rows (each row given as a sorted list of column
// indices). Duplicate and empty rows never change the rank, and dropping them
// early saves most of the elimination work. Hash collisions are resolved by
// full comparison, so the filter is exact.
class RowDeduper {
  public:
    // Returns true if the row is new (first occurrence).
    bool add(const std::vector<uint32_t>& cols) {
        if (cols.empty()) return false;
        uint64_t h = 0xcbf29ce484222325ull;
        for (uint32_t c : cols) {
            h ^= c + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
            h *= 0x100000001b3ull;
        }
        auto [it, inserted] = buckets_.try_emplace(h);
        if (!inserted) {
            for (size_t idx : it->second) {
                if (stored_[idx] == cols) return false;
            }
        }
        it->second.push_back(stored_.size());
        stored_.push_back(cols);
        return true;
    }

    const std::vector<std::vector<uint32_t>>& rows() const { return stored_; }
    size_t size() const { return stored_.size(); }

  private:
    std::unordered_map<uint64_t, std::vector<size_t>> buckets_;
    std::vector<std::vector<uint32_t>> stored_;
};

namespace detail {

// Scatters one sparse row (columns with unit value) into a dense work row,
// optionally through a column compressor.
inline void densify_unit_row(const std::vector<uint32_t>& cols, const PrimeField& F,
                             const ColumnCompressor* cc, std::vector<uint32_t>& dense) {
    std::fill(dense.begin(), dense.end(), 0u);
    if (cc) {
        std::pair<uint32_t, uint32_t> ent[ColumnCompressor::kEntriesPerColumn];
        for (uint32_t c : cols) {
            cc->expand(c, F, ent);
            for (const auto& [pos, val] : ent) dense[pos] = F.add(dense[pos], val);
        }
    } else {
        for (uint32_t c : cols) dense[c] = F.add(dense[c], 1u);
    }
}

// Same for rows with explicit values (already reduced mod F.p()).
inline void densify_valued_row(const std::vector<std::pair<uint32_t, uint32_t>>& entries,
                               const PrimeField& F, const ColumnCompressor* cc,
                               std::vector<uint32_t>& dense) {
    std::fill(dense.begin(), dense.end(), 0u);
    if (cc) {
        std::pair<uint32_t, uint32_t> ent[ColumnCompressor::kEntriesPerColumn];
        for (const auto& [c, v] : entries) {
            if (!v) continue;
            cc->expand(c, F, ent);
            for (const auto& [pos, val] : ent) dense[pos] = F.add(dense[pos], F.mul(v, val));
        }
    } else {
        for (const auto& [c, v] : entries) dense[c] = F.add(dense[c], v);
    }
}

}  // namespace detail

// Computes the rank of a list of sparse rows over one prime field, optionally
// sketched to `width` columns with the given seed. Rows are either unit rows
// (vector<uint32_t> of columns) or valued rows; the overloads share the
// reducer. `threads` parallelizes the speculative pre-reduction of batches
// against a frozen basis snapshot; inserts stay serial, so results are
// identical for any thread count.
class StreamingRank {
  public:
    StreamingRank(PrimeField field, uint32_t width, const ColumnCompressor* cc, int threads,
                  bool full_rref = false)
        : F_(field), cc_(cc), reducer_(field, width, full_rref), threads_(threads) {}

    uint64_t rank() const { return reducer_.rank(); }
    const RowReducer& reducer() const { return reducer_; }
    RowReducer take_reducer() { return std::move(reducer_); }

    void consume_unit_rows(const std::vector<std::vector<uint32_t>>& rows) {
        consume(rows.size(), [&](size_t i, std::vector<uint32_t>& dense) {
            detail::densify_unit_row(rows[i], F_, cc_, dense);
        });
    }

    void consume_valued_rows(const std::vector<std::vector<std::pair<uint32_t, uint32_t>>>& rows) {
        consume(rows.size(), [&](size_t i, std::vector<uint32_t>& dense) {
            detail::densify_valued_row(rows[i], F_, cc_, dense);
        });
    }

  private:
    template <class Densify>
    void consume(size_t count, Densify&& densify) {
        const uint32_t w = reducer_.width();
        if (threads_ <= 1) {
            std::vector<uint32_t> dense(w);
            for (size_t i = 0; i < count; ++i) {
                densify(i, dense);
                std::vector<uint32_t> copy = dense;
                reducer_.insert(std::move(copy));
            }
            return;
        }
        constexpr size_t kBatch = 256;
        std::vector<std::vector<uint32_t>> batch;
        for (size_t base = 0; base < count; base += kBatch) {
            const size_t end = std::min(count, base + kBatch);
            batch.assign(end - base, std::vector<uint32_t>(w));
            parallel_for(end - base, threads_, [&](size_t lo, size_t hi) {
                for (size_t j = lo; j < hi; ++j) {
                    densify(base + j, batch[j]);
                    reducer_.reduce_against(batch[j]);
                }
            });
            for (auto& row : batch) reducer_.insert(std::move(row));
        }
    }

    PrimeField F_;
    const ColumnCompressor* cc_;
    RowReducer reducer_;
    int threads_;
};

}  // namespace piexp
