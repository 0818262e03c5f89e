// Acceptance gate: runs the full verification suite and prints one line per
// criterion with its measured runtime against the pinned budget. Exits 0
// only when every criterion passes (including the runtime budgets).
//
//   acceptance [--deep] [--threads N] [--cache DIR]
//
// --deep additionally computes the degree-6 consensus rank (budget 15 min),
// reusing the on-disk cache when one exists.

#include <cstdio>
#include <cstring>
#include <string>

#include "piexp/verify.hpp"

namespace {

struct Criterion {
    int number;                // 1..11
    const char* check_name;    // name produced by the verify suite
    double budget_seconds;     // 0 = no runtime budget pinned
    const char* label;
};

constexpr Criterion kCriteria[] = {
    {1, "structure", 1.0, "multiplication table, unit, grading, simplicity"},
    {2, "witnesses", 1.0, "f1..f4 = -e0 and a = -e1, exact"},
    {3, "codim-cochar-cross", 120.0, "rank route = character route, n = 1..5, two primes"},
    {4, "multiplicity-support", 0.0, "support has <= 4 parts and weight <= 2"},
    {5, "witness-support", 0.0, "sufficient partitions carry multiplicity, witness unit = +-1"},
    {6, "colength", 0.0, "colength within 4*(n+1)^20"},
    {7, "degree-envelope", 10.0, "degree envelope exhaustive for n = 100..105"},
    {8, "pushdown-bounds", 30.0, "push-down monotone to n = 60, ratio bounds at 50/60/100"},
    {9, "growth-rate", 0.0, "three estimates agree; root localized; companion constant flagged"},
    {10, "sandwich", 60.0, "b(6) = sqrt(12); b/a converge at n = 6000; b <= a"},
    {11, "scale-limits", 0.0, "out-of-scale computations refused, not simulated"},
};

const piexp::CheckResult* find_check(const piexp::RunReport& rep, const char* name) {
    for (const auto& c : rep.checks)
        if (c.name == name) return &c;
    return nullptr;
}

}  // namespace

int main(int argc, char** argv) {
    bool deep = false;
    int threads = 0;
    std::string cache_dir;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--deep") == 0) {
            deep = true;
        } else if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) {
            threads = std::atoi(argv[++i]);
        } else if (std::strcmp(argv[i], "--cache") == 0 && i + 1 < argc) {
            cache_dir = argv[++i];
        } else {
            std::fprintf(stderr, "usage: %s [--deep] [--threads N] [--cache DIR]\n", argv[0]);
            return 2;
        }
    }
    // The budgets are pinned against 4 worker threads (8 for the deep rank).
    if (threads <= 0) threads = deep ? 8 : 4;

    const piexp::RunReport rep = piexp::run_paper_checks(deep, threads, cache_dir);

    std::printf("acceptance run: %s, algebra %s, threads %d, seed %llu\n",
                rep.timestamp.c_str(), rep.inputs_hash.c_str(), rep.threads,
                static_cast<unsigned long long>(rep.base_seed));

    bool all_ok = true;
    for (const Criterion& cr : kCriteria) {
        const piexp::CheckResult* c = find_check(rep, cr.check_name);
        if (!c) {
            std::printf("[%2d] FAIL   missing check '%s'\n", cr.number, cr.check_name);
            all_ok = false;
            continue;
        }
        const bool in_budget = cr.budget_seconds <= 0.0 || c->seconds <= cr.budget_seconds;
        const bool ok = c->pass && in_budget;
        all_ok = all_ok && ok;
        char timing[64];
        if (cr.budget_seconds > 0.0)
            std::snprintf(timing, sizeof(timing), "%7.2fs / %.0fs", c->seconds,
                          cr.budget_seconds);
        else
            std::snprintf(timing, sizeof(timing), "%7.2fs", c->seconds);
        std::printf("[%2d] %s %-18s %s -- %s\n", cr.number, ok ? "PASS" : "FAIL", timing,
                    cr.label, c->detail.c_str());
        if (c->pass && !in_budget)
            std::printf("     (correct result, but over the %.0fs budget)\n", cr.budget_seconds);
    }

    if (deep) {
        const piexp::CheckResult* c = find_check(rep, "codim-n6");
        const double budget = 900.0;
        if (!c) {
            std::printf("[3d] FAIL   missing deep check\n");
            all_ok = false;
        } else {
            const bool ok = c->pass && c->seconds <= budget;
            all_ok = all_ok && ok;
            std::printf("[3d] %s %7.2fs / %.0fs degree-6 consensus rank -- %s\n",
                        ok ? "PASS" : "FAIL", c->seconds, budget, c->detail.c_str());
        }
    }

    std::printf("acceptance total: %.2fs -- %s\n", rep.total_seconds,
                all_ok ? "PASS" : "FAIL");
    return all_ok ? 0 : 1;
}
