#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "piexp/algebra_io.hpp"
#include "piexp/codim.hpp"

namespace piexp {

// Rank results are content-addressed by the algebra's canonical hash and
// stored one file per (n, prime):
//   <cache dir>/<algebra-hash>/codim_n<k>_p<prime>.json
// Writes are atomic (temp file in the same directory, then rename), so a
// crashed run never leaves a torn entry. A version bump invalidates every
// existing entry.

inline constexpr int kCacheVersion = 1;

// Precedence: explicit directory > PI_CODIM_CACHE > ./cache.
inline std::string resolve_cache_dir(const std::string& explicit_dir = "") {
    if (!explicit_dir.empty()) return explicit_dir;
    if (const char* env = std::getenv("PI_CODIM_CACHE"); env && *env) return env;
    return "cache";
}

inline std::string codim_entry_path(const std::string& dir, const std::string& hash, int n,
                                    uint32_t prime) {
    return dir + "/" + hash + "/codim_n" + std::to_string(n) + "_p" + std::to_string(prime) +
           ".json";
}

namespace detail {

inline nlohmann::ordered_json codim_prime_payload(const CodimResult& r, uint32_t prime,
                                                  const std::string& hash) {
    nlohmann::ordered_json j;
    j["version"] = kCacheVersion;
    j["algebra"] = hash;
    j["n"] = r.n;
    j["prime"] = prime;
    j["rank"] = r.rank_by_prime.at(prime);
    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    for (const CodimRun& run : r.runs) {
        if (run.prime != prime) continue;
        runs.push_back({{"seed", run.seed}, {"width", run.width}, {"rank", run.rank}});
    }
    j["runs"] = std::move(runs);
    j["rows_streamed"] = r.rows_streamed;
    j["rows_distinct"] = r.rows_distinct;
    j["cols"] = r.cols;
    j["compressed"] = r.compressed;
    j["seconds"] = r.seconds;
    return j;
}

inline void atomic_write(const std::string& path, const std::string& bytes) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::create_directories(target.parent_path());
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << bytes;
    }
    fs::rename(tmp, target);
}

// Returns the parsed entry if it exists, matches the current version, and
// describes the same (algebra, n, prime) triple.
inline std::optional<nlohmann::json> load_entry(const std::string& path, const std::string& hash,
                                                int n, uint32_t prime) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error&) {
        return std::nullopt;  // torn or foreign file: treat as a miss
    }
    if (!j.is_object() || !j.contains("version") || j["version"] != kCacheVersion)
        return std::nullopt;
    if (j.value("algebra", "") != hash) return std::nullopt;
    if (j.value("n", -1) != n || j.value("prime", 0ull) != prime) return std::nullopt;
    return j;
}

}  // namespace detail

struct CachedCodim {
    CodimResult result;
    std::vector<uint32_t> hit_primes;
    std::vector<uint32_t> computed_primes;
    std::string cache_dir;
    std::string hash;
};

// Codimension with per-prime caching. Only the primes without a valid
// entry are recomputed (rows are streamed once for those); `force`
// recomputes everything and overwrites.
inline CachedCodim codim_cached(const AlgebraSpec& A, int n, const CodimOptions& opt = {},
                                const std::string& dir_flag = "", bool force = false) {
    CachedCodim out;
    out.cache_dir = resolve_cache_dir(dir_flag);
    out.hash = algebra_hash(A);

    std::vector<uint32_t> missing;
    std::vector<std::pair<uint32_t, nlohmann::json>> hits;
    for (uint32_t p : opt.primes) {
        const std::string path = codim_entry_path(out.cache_dir, out.hash, n, p);
        if (!force)
            if (auto j = detail::load_entry(path, out.hash, n, p)) {
                hits.emplace_back(p, std::move(*j));
                out.hit_primes.push_back(p);
                continue;
            }
        missing.push_back(p);
        out.computed_primes.push_back(p);
    }

    CodimResult merged;
    merged.n = n;
    if (!missing.empty()) {
        CodimOptions sub = opt;
        sub.primes = missing;
        merged = codim(A, n, sub);
        for (uint32_t p : missing) {
            const std::string path = codim_entry_path(out.cache_dir, out.hash, n, p);
            detail::atomic_write(path,
                                 detail::codim_prime_payload(merged, p, out.hash).dump(2) + "\n");
        }
    }

    for (auto& [p, j] : hits) {
        merged.rank_by_prime[p] = j["rank"].get<uint64_t>();
        for (const auto& run : j["runs"])
            merged.runs.push_back(CodimRun{p, run["seed"].get<uint64_t>(),
                                           run["width"].get<uint32_t>(),
                                           run["rank"].get<uint64_t>()});
        merged.rows_streamed = j["rows_streamed"].get<uint64_t>();
        merged.rows_distinct = j["rows_distinct"].get<uint64_t>();
        merged.cols = j["cols"].get<uint64_t>();
        merged.compressed = j["compressed"].get<bool>();
        merged.notes.push_back("prime " + std::to_string(p) + ": cache hit");
    }

    merged.c_n = 0;
    for (const auto& [p, r] : merged.rank_by_prime) merged.c_n = std::max(merged.c_n, r);
    bool agree = true;
    for (const auto& [p, r] : merged.rank_by_prime)
        if (r != merged.c_n) agree = false;
    if (!agree) merged.notes.push_back("prime ranks disagree; consensus takes the maximum");
    out.result = std::move(merged);
    return out;
}

}  // namespace piexp
