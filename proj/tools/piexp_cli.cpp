// Command-line front end: exact codimension sequences, cocharacter
// multiplicities, witness elements, Phi asymptotics, and the growth-rate
// estimates for small nonassociative algebras, plus the one-shot
// verification suite.
//
// Exit codes: 0 success / all checks pass, 1 check failure,
// 2 usage or schema error (including budget refusals).

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "piexp/algebra.hpp"
#include "piexp/algebra_io.hpp"
#include "piexp/altexpr.hpp"
#include "piexp/cache.hpp"
#include "piexp/cocharacter.hpp"
#include "piexp/codim.hpp"
#include "piexp/exponent.hpp"
#include "piexp/phi.hpp"
#include "piexp/threading.hpp"
#include "piexp/verify.hpp"

namespace {

using nlohmann::ordered_json;

piexp::AlgebraSpec load_algebra(const std::string& spec, const std::string& file) {
    if (!file.empty()) return piexp::parse_algebra_file(file);
    if (spec == "W" || spec == "w") return piexp::build_w();
    throw std::invalid_argument("unknown algebra spec '" + spec + "' (built-in: W)");
}

std::string element_str(const piexp::AlgebraSpec& A, const piexp::Element& x) {
    std::string s;
    for (int i = 0; i < A.dim; ++i) {
        const auto& q = x.c[static_cast<size_t>(i)];
        if (q == 0) continue;
        if (!s.empty()) s += " + ";
        s += piexp::format_rational(q) + "*" + A.basis[static_cast<size_t>(i)];
    }
    return s.empty() ? "0" : s;
}

ordered_json element_json(const piexp::AlgebraSpec& A, const piexp::Element& x) {
    ordered_json coords = ordered_json::array();
    for (int i = 0; i < A.dim; ++i)
        coords.push_back(piexp::format_rational(x.c[static_cast<size_t>(i)]));
    return coords;
}

std::string fmt(double v, int digits = 12) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

int cmd_algebra_verify(const std::string& spec, const std::string& file, bool json) {
    const piexp::AlgebraSpec A = load_algebra(spec, file);
    A.validate();
    const bool unit_ok = !A.unit_index || piexp::check_unit(A);
    const bool grading_ok = !A.grades || piexp::check_grading(A);
    const bool simple = piexp::check_simple(A);
    const std::string bytes = piexp::serialize_algebra(A);
    const bool roundtrip_ok = piexp::serialize_algebra(piexp::parse_algebra_text(bytes)) == bytes;
    const std::string hash = piexp::algebra_hash(A);
    const bool ok = unit_ok && grading_ok && roundtrip_ok;

    if (json) {
        ordered_json j;
        j["dim"] = A.dim;
        j["hash"] = hash;
        j["declared_unit_ok"] = unit_ok;
        j["declared_grading_ok"] = grading_ok;
        j["simple"] = simple;
        j["roundtrip_ok"] = roundtrip_ok;
        j["ok"] = ok;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "dim:       " << A.dim << "\n"
                  << "hash:      " << hash << "\n"
                  << "unit:      " << (A.unit_index ? (unit_ok ? "declared, verified" : "declared, FAILS") : "none declared")
                  << "\n"
                  << "grading:   " << (A.grades ? (grading_ok ? "declared, closes" : "declared, VIOLATED") : "none declared")
                  << "\n"
                  << "simple:    " << (simple ? "yes" : "no") << "\n"
                  << "roundtrip: " << (roundtrip_ok ? "bit-exact" : "MISMATCH") << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_codim(const std::vector<int>& ns, const std::string& spec, const std::string& file,
              std::vector<uint32_t> primes, bool force, bool csv, int threads,
              const std::string& cache_dir, bool no_cache) {
    const piexp::AlgebraSpec A = load_algebra(spec, file);
    piexp::CodimOptions opt;
    if (!primes.empty()) opt.primes = std::move(primes);
    opt.threads = piexp::resolve_threads(threads);
    opt.budget.force = force;

    if (csv) std::cout << "n,c_n,prime1_rank,prime2_rank,seconds\n";
    for (int n : ns) {
        piexp::CodimResult r;
        if (no_cache) {
            r = piexp::codim(A, n, opt);
        } else {
            r = piexp::codim_cached(A, n, opt, cache_dir, force).result;
        }
        const uint64_t r1 = opt.primes.size() > 0 && r.rank_by_prime.count(opt.primes[0])
                                ? r.rank_by_prime.at(opt.primes[0])
                                : 0;
        const uint64_t r2 = opt.primes.size() > 1 && r.rank_by_prime.count(opt.primes[1])
                                ? r.rank_by_prime.at(opt.primes[1])
                                : 0;
        if (csv) {
            std::cout << n << "," << r.c_n << "," << r1 << "," << r2 << "," << fmt(r.seconds, 6)
                      << "\n";
        } else {
            std::cout << "n = " << n << ": c_n = " << r.c_n << "  (ranks " << r1 << "/" << r2
                      << ", rows " << r.rows_distinct << " of " << r.rows_streamed << ", cols "
                      << r.cols << (r.compressed ? ", sketched" : "") << ", " << fmt(r.seconds, 4)
                      << " s)\n";
            for (const auto& note : r.notes) std::cout << "  note: " << note << "\n";
        }
    }
    return 0;
}

int cmd_cochar(int n, const std::string& spec, const std::string& file, bool json, int threads) {
    const piexp::AlgebraSpec A = load_algebra(spec, file);
    const piexp::CocharacterResult r =
        piexp::cocharacter(A, n, piexp::kPrime1, piexp::kPrime2, piexp::resolve_threads(threads));

    bool support_conforms = true;
    for (const auto& row : r.rows)
        if (!piexp::necessary_ok(row.lambda)) support_conforms = false;
    bool sufficient_covered = true;
    if (A.dim == 4) {
        for (const piexp::Partition& lam : piexp::enumerate_partitions(n, 4)) {
            if (!piexp::sufficient_ok(lam)) continue;
            bool found = false;
            for (const auto& row : r.rows)
                if (row.lambda.parts == lam.parts && row.m >= 1) found = true;
            if (!found) sufficient_covered = false;
        }
    }

    if (json) {
        ordered_json j;
        j["n"] = r.n;
        j["c_n"] = r.c_n;
        j["primes"] = r.primes_checked;
        ordered_json rows = ordered_json::array();
        for (const auto& row : r.rows)
            rows.push_back({{"lambda", row.lambda.str()},
                            {"m", row.m},
                            {"degree", row.degree.str()},
                            {"contribution", row.contribution.str()},
                            {"support_ok", piexp::necessary_ok(row.lambda)},
                            {"sufficient", piexp::sufficient_ok(row.lambda)}});
        j["rows"] = std::move(rows);
        j["colength"] = r.colength.str();
        j["colength_limit"] = r.colength_limit.str();
        j["within_limit"] = r.within_limit;
        j["support_conforms"] = support_conforms;
        j["sufficient_covered"] = sufficient_covered;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "lambda,m,deg,contribution\n";
        for (const auto& row : r.rows)
            std::cout << row.lambda.str() << "," << row.m << "," << row.degree.str() << ","
                      << row.contribution.str() << "\n";
        std::cout << "# c_" << n << " = " << r.c_n << ", colength = " << r.colength.str()
                  << " (limit " << r.colength_limit.str() << ", "
                  << (r.within_limit ? "ok" : "EXCEEDED") << ")\n"
                  << "# support conforms: " << (support_conforms ? "yes" : "NO")
                  << ", sufficient covered: " << (sufficient_covered ? "yes" : "NO") << "\n";
    }
    return (r.within_limit && support_conforms && sufficient_covered) ? 0 : 1;
}

int cmd_witness(const std::string& name, int k, int l, int m, int t, bool use_klmt, bool json) {
    const piexp::AlgebraSpec W = piexp::build_w();
    if (!use_klmt) {
        const piexp::Element v = piexp::evaluate_witness(W, name);
        piexp::Element expected(4);
        expected.c[name == "a" ? 2 : 1] = -1;
        const bool ok = v == expected;
        if (json) {
            ordered_json j;
            j["name"] = name;
            j["value"] = element_json(W, v);
            j["pretty"] = element_str(W, v);
            j["expected"] = element_str(W, expected);
            j["ok"] = ok;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << name << " = " << element_str(W, v) << "  ["
                      << (ok ? "matches " : "EXPECTED ") << element_str(W, expected) << "]\n";
        }
        return ok ? 0 : 1;
    }

    const piexp::KlmtDecomposition klmt{k, l, m, t};
    const piexp::WitnessReport rep = piexp::partition_witness(W, klmt);
    const bool e0_ok = rep.e0_coordinate == 1 || rep.e0_coordinate == -1;
    const bool ok = rep.nonzero && e0_ok;
    if (json) {
        ordered_json j;
        j["k"] = k;
        j["l"] = l;
        j["m"] = m;
        j["t"] = t;
        j["lambda"] = rep.lambda.str();
        j["factors"] = rep.factors;
        j["substituted"] = rep.substituted;
        j["value"] = element_json(W, rep.value);
        j["pretty"] = element_str(W, rep.value);
        j["nonzero"] = rep.nonzero;
        j["e0_coordinate"] = piexp::format_rational(rep.e0_coordinate);
        j["ok"] = ok;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "lambda = " << rep.lambda.str() << "  (k=" << k << ", l=" << l << ", m=" << m
                  << ", t=" << t << ")\n";
        std::cout << "factors:";
        for (const auto& f : rep.factors) std::cout << " [" << f << "]";
        std::cout << (rep.substituted ? "  (with e-1 -> e-1 + e0)" : "") << "\n";
        std::cout << "value  = " << element_str(W, rep.value) << "\n";
        std::cout << "verdict: " << (rep.nonzero ? "nonzero" : "ZERO") << ", e0 coordinate "
                  << piexp::format_rational(rep.e0_coordinate) << (ok ? " (ok)" : " (FAIL)")
                  << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_phi(const std::string& lambda_text, const std::string& point_text, bool json) {
    ordered_json j;
    std::ostringstream human;
    if (!lambda_text.empty()) {
        const piexp::Partition lam = piexp::parse_partition(lambda_text);
        const piexp::PhiValue phi = piexp::phi_partition(lam);
        const bool nec = piexp::necessary_ok(lam);
        const bool suf = lam.count() <= 4 && piexp::sufficient_ok(lam);
        j["lambda"] = lam.str();
        j["n"] = lam.n();
        j["phi"] = static_cast<double>(phi.value());
        j["log_phi"] = static_cast<double>(phi.log_value);
        human << "lambda = " << lam.str() << " (n = " << lam.n() << ")\n"
              << "Phi    = " << fmt(static_cast<double>(phi.value())) << "\n";
        if (lam.count() <= 4) {
            const auto d = piexp::decompose_klmt(lam);
            j["weight"] = piexp::weight(lam);
            j["klmt"] = {{"k", d.k}, {"l", d.l}, {"m", d.m}, {"t", d.t}};
            human << "weight = " << piexp::weight(lam) << ", (k,l,m,t) = (" << d.k << "," << d.l
                  << "," << d.m << "," << d.t << ")\n";
        }
        j["necessary_ok"] = nec;
        j["sufficient_ok"] = suf;
        human << "necessary: " << (nec ? "yes" : "no") << ", sufficient: " << (suf ? "yes" : "no")
              << "\n";
    }
    if (!point_text.empty()) {
        std::vector<long double> x;
        std::stringstream ss(point_text);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) x.push_back(std::stold(tok));
        const piexp::PhiValue phi = piexp::phi_point(x);
        j["point_phi"] = static_cast<double>(phi.value());
        human << "Phi(point) = " << fmt(static_cast<double>(phi.value())) << "\n";
    }
    if (lambda_text.empty() && point_text.empty())
        throw std::invalid_argument("phi: provide --lambda and/or --point");
    if (json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << human.str();
    return 0;
}

void print_bound_report(const piexp::BoundCheckReport& rep, bool json, ordered_json& sink) {
    if (json) {
        ordered_json j;
        j["check"] = rep.name;
        j["n"] = rep.n;
        j["partitions"] = rep.partitions_checked;
        j["comparisons"] = rep.comparisons;
        j["violations"] = rep.violation_count;
        ordered_json v = ordered_json::array();
        for (const auto& viol : rep.violations)
            v.push_back({{"lambda", viol.lambda}, {"detail", viol.detail}});
        j["violation_samples"] = std::move(v);
        sink.push_back(std::move(j));
    } else {
        std::cout << rep.name << " @ n=" << rep.n << ": " << rep.partitions_checked
                  << " partitions, " << rep.comparisons << " comparisons, "
                  << rep.violation_count << " violations\n";
        for (const auto& viol : rep.violations)
            std::cout << "  VIOLATION " << viol.lambda << ": " << viol.detail << "\n";
    }
}

int cmd_bounds(int n, std::vector<std::string> checks, bool json) {
    if (checks.empty()) checks = {"eq0", "lemma7", "lemma7a"};
    ordered_json sink = ordered_json::array();
    uint64_t violations = 0;
    bool want7 = false, want7a = false;
    for (const auto& c : checks) {
        if (c == "eq0") {
            const auto rep = piexp::check_eq0(n);
            violations += rep.violation_count;
            print_bound_report(rep, json, sink);
        } else if (c == "lq") {
            const auto rep = piexp::check_lq(n);
            violations += rep.violation_count;
            print_bound_report(rep, json, sink);
        } else if (c == "lemma7") {
            want7 = true;
        } else if (c == "lemma7a") {
            want7a = true;
        } else {
            throw std::invalid_argument("unknown check '" + c +
                                        "' (known: eq0, lemma7, lemma7a, lq)");
        }
    }
    if (want7 || want7a) {
        const auto both = piexp::detail::run_push_checks(n, want7, want7a);
        if (want7) {
            violations += both.seven.violation_count;
            print_bound_report(both.seven, json, sink);
        }
        if (want7a) {
            violations += both.seven_a.violation_count;
            print_bound_report(both.seven_a, json, sink);
        }
    }
    if (json) std::cout << sink.dump(2) << "\n";
    return violations == 0 ? 0 : 1;
}

int cmd_sandwich(int from, int to, int step, const std::string& out) {
    const auto rows = piexp::sandwich_range(from, to, step);
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out.empty() && out != "-") {
        file.open(out);
        if (!file) throw std::runtime_error("cannot write " + out);
        os = &file;
    }
    *os << "n,b_weight0,a_upper,argmax_b,argmax_a\n";
    for (const auto& r : rows)
        *os << r.n << "," << fmt(static_cast<double>(r.b_weight0.value())) << ","
            << fmt(static_cast<double>(r.a_upper.value())) << "," << r.argmax_b.str() << ","
            << r.argmax_a.str() << "\n";
    return 0;
}

int cmd_exponent(const std::string& method, double tol, bool json) {
    const piexp::ExponentReport rep = piexp::exp_estimate(tol);
    const double cubic = rep.cubic_value.convert_to<double>();
    const double lagrange = rep.lagrange_value.convert_to<double>();
    const double numeric = static_cast<double>(rep.numeric.value);

    if (json) {
        ordered_json j;
        j["target"] = piexp::target_exponent();
        ordered_json methods;
        if (method == "cubic" || method == "all")
            methods["cubic"] = {{"value", rep.cubic_value.str(20)},
                                {"root", rep.cubic_root.str(20)},
                                {"point",
                                 {rep.beta.x1.str(20), rep.beta.x2.str(20), rep.beta.x3.str(20),
                                  rep.beta.x4.str(20)}},
                                {"cubic_residual_at_root",
                                 piexp::growth_cubic(rep.cubic_root).convert_to<double>()}};
        if (method == "lagrange" || method == "all")
            methods["lagrange"] = {{"value", rep.lagrange_value.str(20)}};
        if (method == "numeric" || method == "all")
            methods["numeric"] = {{"value", fmt(numeric, 15)},
                                  {"x3", fmt(static_cast<double>(rep.numeric.u), 15)},
                                  {"x4", fmt(static_cast<double>(rep.numeric.s), 15)}};
        j["methods"] = std::move(methods);
        j["pairwise_spread"] = rep.pairwise_spread;
        j["target_error"] = rep.target_error;
        j["gradient_residuals"] = {static_cast<double>(rep.gradient.residual_a),
                                   static_cast<double>(rep.gradient.residual_b)};
        j["sample_worst_excess"] = static_cast<double>(rep.sample.worst_excess);
        j["cubic_sign_changes_on_0.3_1.0"] = rep.sign_changes_above;
        j["erratum"] = {{"text", rep.erratum.text},
                        {"printed_value", rep.erratum.printed_value},
                        {"cubic_residual_at_printed", rep.erratum.cubic_residual_at_printed},
                        {"x2_at_maximizer", rep.erratum.x2_at_maximizer},
                        {"one_over_exponent", rep.erratum.one_over_exponent}};
        j["ok"] = rep.ok();
        std::cout << j.dump(2) << "\n";
    } else {
        if (method == "cubic" || method == "all")
            std::cout << "cubic:    " << fmt(cubic, 15) << "  (root x4 = "
                      << fmt(rep.cubic_root.convert_to<double>(), 10) << ")\n";
        if (method == "lagrange" || method == "all")
            std::cout << "lagrange: " << fmt(lagrange, 15) << "\n";
        if (method == "numeric" || method == "all")
            std::cout << "numeric:  " << fmt(numeric, 15) << "\n";
        std::cout << "pairwise spread " << fmt(rep.pairwise_spread, 3) << ", |value - "
                  << fmt(piexp::target_exponent(), 10) << "| = " << fmt(rep.target_error, 3)
                  << "\n"
                  << "note: " << rep.erratum.text << "\n"
                  << (rep.ok() ? "all exponent checks pass\n" : "EXPONENT CHECKS FAIL\n");
    }
    return rep.ok() ? 0 : 1;
}

int cmd_verify_paper(bool deep, int threads, bool json, const std::string& cache_dir) {
    const piexp::RunReport rep = piexp::run_paper_checks(deep, threads, cache_dir);
    if (json) {
        ordered_json j;
        j["command"] = rep.command;
        j["inputs_hash"] = rep.inputs_hash;
        j["timestamp"] = rep.timestamp;
        j["base_seed"] = rep.base_seed;
        j["threads"] = rep.threads;
        ordered_json checks = ordered_json::array();
        for (const auto& c : rep.checks)
            checks.push_back({{"name", c.name},
                              {"pass", c.pass},
                              {"detail", c.detail},
                              {"seconds", c.seconds}});
        j["checks"] = std::move(checks);
        j["total_seconds"] = rep.total_seconds;
        j["all_pass"] = rep.all_pass();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "inputs " << rep.inputs_hash << ", seed " << rep.base_seed << ", "
                  << rep.threads << " thread(s), " << rep.timestamp << "\n";
        for (const auto& c : rep.checks) {
            std::printf("[%s] %-21s %8.2fs  %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                        c.seconds, c.detail.c_str());
        }
        std::cout << (rep.all_pass() ? "all checks passed" : "CHECKS FAILED") << " in "
                  << fmt(rep.total_seconds, 4) << " s\n";
    }
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact codimension growth toolkit for small nonassociative algebras"};
    app.require_subcommand(1);
    int rc = 0;

    // algebra verify
    auto* alg = app.add_subcommand("algebra", "algebra-spec file operations");
    alg->require_subcommand(1);
    auto* algv = alg->add_subcommand("verify", "validate a spec and report its invariants");
    std::string alg_spec = "W", alg_file;
    bool alg_json = false;
    algv->add_option("--spec", alg_spec, "built-in algebra name (W)");
    algv->add_option("--file", alg_file, "algebra JSON file");
    algv->add_flag("--json", alg_json, "JSON output");
    algv->callback([&] { rc = cmd_algebra_verify(alg_spec, alg_file, alg_json); });

    // codim
    auto* cd = app.add_subcommand("codim", "codimension c_n by exact modular rank");
    std::vector<int> cd_ns;
    std::string cd_spec = "W", cd_file, cd_cache;
    std::vector<uint32_t> cd_primes;
    bool cd_force = false, cd_csv = false, cd_nocache = false;
    int cd_threads = 0;
    cd->add_option("--n", cd_ns, "degree(s)")->required()->delimiter(',');
    cd->add_option("--spec", cd_spec, "built-in algebra name (W)");
    cd->add_option("--file", cd_file, "algebra JSON file");
    cd->add_option("--primes", cd_primes, "primes for the modular ranks")->delimiter(',');
    cd->add_flag("--force", cd_force, "override the budget guard and recompute cached entries");
    cd->add_flag("--csv", cd_csv, "CSV output");
    cd->add_option("--threads", cd_threads, "worker threads (0 = auto)");
    cd->add_option("--cache", cd_cache, "cache directory (default: $PI_CODIM_CACHE or ./cache)");
    cd->add_flag("--no-cache", cd_nocache, "skip the result cache entirely");
    cd->callback([&] {
        rc = cmd_codim(cd_ns, cd_spec, cd_file, cd_primes, cd_force, cd_csv, cd_threads, cd_cache,
                       cd_nocache);
    });

    // cochar
    auto* cc = app.add_subcommand("cochar", "cocharacter multiplicities m_lambda");
    int cc_n = 0, cc_threads = 0;
    std::string cc_spec = "W", cc_file;
    bool cc_json = false;
    cc->add_option("--n", cc_n, "degree")->required();
    cc->add_option("--spec", cc_spec, "built-in algebra name (W)");
    cc->add_option("--file", cc_file, "algebra JSON file");
    cc->add_flag("--json", cc_json, "JSON output");
    cc->add_option("--threads", cc_threads, "worker threads (0 = auto)");
    cc->callback([&] { rc = cmd_cochar(cc_n, cc_spec, cc_file, cc_json, cc_threads); });

    // witness
    auto* wit = app.add_subcommand("witness", "evaluate a witness element on W");
    std::string wit_name;
    int wk = 0, wl = 0, wm = 0, wt = 0;
    bool wit_json = false;
    auto* wit_name_opt = wit->add_option("--name", wit_name, "named witness: f1 f2 f3 f4 a");
    auto* wk_opt = wit->add_option("--k", wk, "k of (k,l,m,t)");
    wit->add_option("--l", wl, "l of (k,l,m,t)");
    wit->add_option("--m", wm, "m of (k,l,m,t)");
    wit->add_option("--t", wt, "t of (k,l,m,t)");
    wit->add_flag("--json", wit_json, "JSON output");
    wit_name_opt->excludes(wk_opt);
    wit->callback([&] {
        const bool use_klmt = wit_name.empty();
        if (use_klmt && wk == 0 && wl == 0 && wm == 0 && wt == 0 && wk_opt->count() == 0)
            throw CLI::ValidationError("witness", "provide --name or --k/--l/--m/--t");
        rc = cmd_witness(wit_name, wk, wl, wm, wt, use_klmt, wit_json);
    });

    // phi
    auto* ph = app.add_subcommand("phi", "evaluate Phi on a partition or a point");
    std::string ph_lambda, ph_point;
    bool ph_json = false;
    ph->add_option("--lambda", ph_lambda, "partition, e.g. 3,1,1,1 or 3+1+1+1");
    ph->add_option("--point", ph_point, "probability vector, e.g. 0.25,0.25,0.25,0.25");
    ph->add_flag("--json", ph_json, "JSON output");
    ph->callback([&] { rc = cmd_phi(ph_lambda, ph_point, ph_json); });

    // bounds
    auto* bd = app.add_subcommand("bounds", "combinatorial bound checks at a given degree");
    int bd_n = 0;
    std::vector<std::string> bd_checks;
    bool bd_json = false;
    bd->add_option("--n", bd_n, "degree")->required();
    bd->add_option("--check", bd_checks, "checks: eq0, lemma7, lemma7a, lq")->delimiter(',');
    bd->add_flag("--json", bd_json, "JSON output");
    bd->callback([&] { rc = cmd_bounds(bd_n, bd_checks, bd_json); });

    // sandwich
    auto* sw = app.add_subcommand("sandwich", "lower/upper Phi-maximum rows as CSV");
    int sw_from = 6, sw_to = 6, sw_step = 1;
    std::string sw_out;
    sw->add_option("--from", sw_from, "first degree (>= 6)");
    sw->add_option("--to", sw_to, "last degree")->required();
    sw->add_option("--step", sw_step, "degree step");
    sw->add_option("--out", sw_out, "output file (default stdout)");
    sw->callback([&] { rc = cmd_sandwich(sw_from, sw_to, sw_step, sw_out); });

    // exponent
    auto* ex = app.add_subcommand("exponent", "growth-rate estimates");
    std::string ex_method = "all";
    double ex_tol = 5e-9;
    bool ex_json = false;
    ex->add_option("--method", ex_method, "cubic | lagrange | numeric | all")
        ->check(CLI::IsMember({"cubic", "lagrange", "numeric", "all"}));
    ex->add_option("--tol", ex_tol, "tolerance against the reference value");
    ex->add_flag("--json", ex_json, "JSON output (always embeds the erratum note)");
    ex->callback([&] { rc = cmd_exponent(ex_method, ex_tol, ex_json); });

    // verify-paper
    auto* vp = app.add_subcommand("verify-paper", "run the full verification suite");
    bool vp_deep = false, vp_json = false;
    int vp_threads = 0;
    std::string vp_cache;
    vp->add_flag("--deep", vp_deep, "include the expensive c_6 consensus run");
    vp->add_option("--threads", vp_threads, "worker threads (0 = auto)");
    vp->add_flag("--json", vp_json, "JSON output");
    vp->add_option("--cache", vp_cache, "cache directory for the deep run");
    vp->callback([&] { rc = cmd_verify_paper(vp_deep, vp_threads, vp_json, vp_cache); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const piexp::BudgetError& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
