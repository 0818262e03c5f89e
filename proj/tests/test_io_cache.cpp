#include <catch2/catch_amalgamated.hpp>

#include "piexp/algebra_io.hpp"
#include "piexp/cache.hpp"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <unistd.h>

using namespace piexp;
using Catch::Matchers::ContainsSubstring;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const std::string& path, const std::string& bytes) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << bytes;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("piexp-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(reinterpret_cast<uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("algebra serialization round-trips bit-exactly") {
    const AlgebraSpec W = build_w();
    const std::string text = serialize_algebra(W);
    const AlgebraSpec back = parse_algebra_text(text);
    REQUIRE(serialize_algebra(back) == text);
    REQUIRE(back.dim == W.dim);
    REQUIRE(back.basis == W.basis);
    REQUIRE(back.grades == W.grades);
    REQUIRE(back.unit_index == W.unit_index);
    REQUIRE(back.table == W.table);
    REQUIRE(algebra_hash(back) == algebra_hash(W));
}

TEST_CASE("the canonical hash of W is frozen") {
    REQUIRE(algebra_hash(build_w()) == "0db2d82c26131b2f");
}

TEST_CASE("rational coefficients survive the file format exactly") {
    AlgebraSpec A;
    A.dim = 2;
    A.basis = {"u", "v"};
    A.table.assign(2, std::vector<std::vector<Rational>>(2, std::vector<Rational>(2)));
    A.table[0][0][1] = Rational(1) / 3;
    A.table[1][1][0] = Rational(-7) / 2;
    const AlgebraSpec back = parse_algebra_text(serialize_algebra(A));
    REQUIRE(back.table[0][0][1] == Rational(1) / 3);
    REQUIRE(back.table[1][1][0] == Rational(-7) / 2);
}

TEST_CASE("schema violations are reported with their field path") {
    const auto mutate = [](const std::function<void(nlohmann::json&)>& fn) {
        nlohmann::json j = nlohmann::json::parse(serialize_algebra(build_w()));
        fn(j);
        return j;
    };

    REQUIRE_THROWS_WITH(parse_algebra_text("[1, 2]"), ContainsSubstring("expected a JSON object"));
    REQUIRE_THROWS_WITH(parse_algebra_text("{\"dim\": 4}"), ContainsSubstring("missing field"));
    REQUIRE_THROWS_WITH(parse_algebra_text("not json at all"),
                        ContainsSubstring("not valid JSON"));
    REQUIRE_THROWS_WITH(algebra_from_json(mutate([](nlohmann::json& j) { j["extra"] = 1; })),
                        ContainsSubstring("extra: unknown field"));
    REQUIRE_THROWS_WITH(algebra_from_json(mutate([](nlohmann::json& j) { j["dim"] = 0; })),
                        ContainsSubstring("dim: must be positive"));

    // Bad coefficient text inside one table cell.
    REQUIRE_THROWS_WITH(
        algebra_from_json(mutate([](nlohmann::json& j) { j["table"][0][1][0][1] = "one"; })),
        ContainsSubstring("table[0][1]"));
    // Out-of-range basis index inside a cell.
    REQUIRE_THROWS_WITH(
        algebra_from_json(mutate([](nlohmann::json& j) { j["table"][0][1][0][0] = 9; })),
        ContainsSubstring("basis index out of range"));
    // Explicit zero coefficients are rejected (zeros are encoded by omission).
    REQUIRE_THROWS_WITH(
        algebra_from_json(mutate([](nlohmann::json& j) { j["table"][0][1][0][1] = "0"; })),
        ContainsSubstring("zero coefficients must be omitted"));
    // Duplicate / non-increasing basis indices within a cell.
    REQUIRE_THROWS_WITH(
        algebra_from_json(mutate([](nlohmann::json& j) {
            j["table"][0][1] = nlohmann::json::array({{0, "1"}, {0, "2"}});
        })),
        ContainsSubstring("strictly increasing"));
    // Unit index out of range.
    REQUIRE_THROWS_WITH(algebra_from_json(mutate([](nlohmann::json& j) { j["unit"] = 7; })),
                        ContainsSubstring("unit: index out of range"));
    // Grades array of the wrong length.
    REQUIRE_THROWS_WITH(
        algebra_from_json(mutate([](nlohmann::json& j) { j["grades"] = {-1}; })),
        ContainsSubstring("grades: expected exactly dim entries"));
}

TEST_CASE("a non-square table is rejected") {
    REQUIRE_THROWS_WITH(
        parse_algebra_text("{\"dim\": 2, \"basis\": [\"a\", \"b\"], \"grades\": null, "
                           "\"unit\": null, \"table\": [[[], []]]}"),
        ContainsSubstring("table: expected a dim x dim array"));
    REQUIRE_THROWS_WITH(
        parse_algebra_text("{\"dim\": 2, \"basis\": [\"a\", \"b\"], \"grades\": null, "
                           "\"unit\": null, \"table\": [[[], []], [[]]]}"),
        ContainsSubstring("table[1]: expected a row of dim cells"));
}

TEST_CASE("cache directory resolution: explicit flag beats the environment") {
    ::setenv("PI_CODIM_CACHE", "/tmp/from-env", 1);
    REQUIRE(resolve_cache_dir("/tmp/explicit") == "/tmp/explicit");
    REQUIRE(resolve_cache_dir("") == "/tmp/from-env");
    ::unsetenv("PI_CODIM_CACHE");
    REQUIRE(resolve_cache_dir("") == "cache");
}

TEST_CASE("cache entry paths follow the content-addressed layout") {
    REQUIRE(codim_entry_path("cache", "0db2d82c26131b2f", 4, 2147483647u) ==
            "cache/0db2d82c26131b2f/codim_n4_p2147483647.json");
}

TEST_CASE("codim results are cached per prime and reused verbatim") {
    const TempDir dir;
    const AlgebraSpec W = build_w();

    const CachedCodim cold = codim_cached(W, 3, {}, dir.str());
    REQUIRE(cold.result.c_n == 11);
    REQUIRE(cold.hit_primes.empty());
    REQUIRE(cold.computed_primes == std::vector<uint32_t>{kPrime1, kPrime2});

    const std::string p1 = codim_entry_path(dir.str(), cold.hash, 3, kPrime1);
    const std::string p2 = codim_entry_path(dir.str(), cold.hash, 3, kPrime2);
    REQUIRE(fs::exists(p1));
    REQUIRE(fs::exists(p2));
    const std::string bytes1 = slurp(p1);
    const std::string bytes2 = slurp(p2);

    const CachedCodim warm = codim_cached(W, 3, {}, dir.str());
    REQUIRE(warm.result.c_n == 11);
    REQUIRE(warm.computed_primes.empty());
    REQUIRE(warm.hit_primes == std::vector<uint32_t>{kPrime1, kPrime2});
    REQUIRE(slurp(p1) == bytes1);  // a hit never rewrites the entry
    REQUIRE(slurp(p2) == bytes2);
    REQUIRE(warm.result.rank_by_prime.at(kPrime1) == 11);
    REQUIRE(warm.result.rank_by_prime.at(kPrime2) == 11);

    const CachedCodim forced = codim_cached(W, 3, {}, dir.str(), true);
    REQUIRE(forced.hit_primes.empty());
    REQUIRE(forced.computed_primes == std::vector<uint32_t>{kPrime1, kPrime2});
    REQUIRE(forced.result.c_n == 11);
}

TEST_CASE("a partial cache only computes the missing prime") {
    const TempDir dir;
    const AlgebraSpec W = build_w();
    CodimOptions only_p1;
    only_p1.primes = {kPrime1};
    REQUIRE(codim_cached(W, 2, only_p1, dir.str()).result.c_n == 2);

    const CachedCodim mixed = codim_cached(W, 2, {}, dir.str());
    REQUIRE(mixed.hit_primes == std::vector<uint32_t>{kPrime1});
    REQUIRE(mixed.computed_primes == std::vector<uint32_t>{kPrime2});
    REQUIRE(mixed.result.c_n == 2);
}

TEST_CASE("version bumps and torn files invalidate cache entries") {
    const TempDir dir;
    const AlgebraSpec W = build_w();
    const CachedCodim cold = codim_cached(W, 2, {}, dir.str());
    const std::string path = codim_entry_path(dir.str(), cold.hash, 2, kPrime1);

    // Stale version: entry is recomputed, not trusted.
    std::string stale = slurp(path);
    const auto vpos = stale.find("\"version\": 1");
    REQUIRE(vpos != std::string::npos);
    spit(path, stale.replace(vpos, 12, "\"version\": 0"));
    const CachedCodim after_bump = codim_cached(W, 2, {}, dir.str());
    REQUIRE(after_bump.hit_primes == std::vector<uint32_t>{kPrime2});
    REQUIRE(after_bump.computed_primes == std::vector<uint32_t>{kPrime1});
    REQUIRE(after_bump.result.c_n == 2);

    // Torn file: a parse failure is a miss, never an error.
    spit(path, "{\"version\": 1, \"algebra\":");
    const CachedCodim after_tear = codim_cached(W, 2, {}, dir.str());
    REQUIRE(after_tear.computed_primes == std::vector<uint32_t>{kPrime1});
    REQUIRE(after_tear.result.c_n == 2);

    // A different algebra never reads W's entries (content addressing).
    AlgebraSpec F;
    F.dim = 1;
    F.basis = {"1"};
    F.unit_index = 0;
    F.table.assign(1, std::vector<std::vector<Rational>>(1, std::vector<Rational>(1)));
    F.table[0][0][0] = 1;
    const CachedCodim other = codim_cached(F, 2, {}, dir.str());
    REQUIRE(other.hash != cold.hash);
    REQUIRE(other.computed_primes.size() == 2);
    REQUIRE(other.result.c_n == 1);
}
