// radex: command-line front end for the p_2(n) exact formula, Rademacher's
// series, the coefficient oracles and the verification suites.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "radex/formula.hpp"
#include "radex/kloosterman.hpp"
#include "radex/qseries.hpp"
#include "radex/verify.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;
constexpr std::int64_t kOracleCap = 2000;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::int64_t parse_int(const std::string& s, const std::string& what) {
    std::int64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw UsageError("invalid " + what + ": '" + s + "'");
    return v;
}

struct Common {
    std::optional<std::int64_t> n;
    std::string range;
    std::string k_max = "auto";
    std::string bits = "auto";
    std::string tol = "0.01";
    std::string output = "plain";
    std::string threads = "auto";
    bool check = false;
    int k1_sign = 1;
    int k8_phase = 1;
};

std::vector<std::int64_t> targets(const Common& c) {
    if (c.n && !c.range.empty()) throw UsageError("--n and --range are mutually exclusive");
    if (c.n) {
        if (*c.n < 1) throw UsageError("--n must be positive");
        return {*c.n};
    }
    if (c.range.empty()) throw UsageError("one of --n or --range is required");
    const auto dots = c.range.find("..");
    if (dots == std::string::npos) throw UsageError("--range must look like a..b");
    const std::int64_t a = parse_int(c.range.substr(0, dots), "range start");
    const std::int64_t b = parse_int(c.range.substr(dots + 2), "range end");
    if (a < 1 || b < a) throw UsageError("--range needs 1 <= a <= b");
    std::vector<std::int64_t> out;
    for (std::int64_t i = a; i <= b; ++i) out.push_back(i);
    return out;
}

std::optional<int> bits_override(const Common& c) {
    std::string s = c.bits;
    if (const char* env = std::getenv("RADEX_BITS"); env && *env) s = env;
    if (s == "auto") return std::nullopt;
    const std::int64_t b = parse_int(s, "bits");
    if (b < radex::PrecisionContext::kMinBits || b > (1 << 20)) throw UsageError("bits must be in [64, 2^20]");
    return static_cast<int>(b);
}

radex::FormulaConfig formula_config(const Common& c) {
    radex::FormulaConfig cfg;
    if (c.k1_sign != 1 && c.k1_sign != -1) throw UsageError("--k1-sign must be +1 or -1");
    if (c.k8_phase != 1 && c.k8_phase != -1) throw UsageError("--k8-phase must be +1 or -1");
    cfg.k1_sign = c.k1_sign;
    cfg.k8_phase = c.k8_phase;
    char* end = nullptr;
    const double tol = std::strtod(c.tol.c_str(), &end);
    if (c.tol.empty() || *end != '\0' || !(tol > 0)) throw UsageError("--tol must be a positive decimal");
    cfg.quadrature_budget = tol;
    if (c.threads == "auto") {
        cfg.threads = 0;
    } else {
        const std::int64_t t = parse_int(c.threads, "threads");
        if (t < 1 || t > 1024) throw UsageError("--threads must be a positive integer or auto");
        cfg.threads = static_cast<int>(t);
    }
    return cfg;
}

void check_output(const std::string& o) {
    if (o != "plain" && o != "csv" && o != "json") throw UsageError("--output must be json, csv or plain");
}

struct Row {
    radex::ConvergenceCertificate cert;
    std::string oracle;  // empty unless --check
    bool ok = true;
};

json cert_json(const Row& r) {
    const auto& c = r.cert;
    json j;
    j["n"] = c.n;
    j["rounded"] = c.rounded;
    j["stabilized"] = c.stabilized;
    j["k_used"] = c.k_used;
    json ps = json::array();
    for (const auto& p : c.partial_sums) ps.push_back(p.to_fixed(6));
    j["partial_sums"] = ps;
    j["final_value"] = c.final_value.to_fixed(12);
    j["residual"] = c.residual.to_string(6);
    j["window_spread"] = c.window_spread.to_string(6);
    j["im_residue"] = c.im_residue.to_string(6);
    j["bits"] = c.bits;
    j["quadrature_budget"] = c.quadrature_budget.to_string(6);
    j["config"] = {{"k1_sign", c.config.k1_sign}, {"k8_phase", c.config.k8_phase}};
    if (!r.oracle.empty()) {
        j["oracle"] = r.oracle;
        j["match"] = r.oracle == c.rounded;
    }
    return j;
}

void emit_rows(const std::string& command, const std::vector<Row>& rows, const std::string& output, bool check) {
    if (output == "json") {
        json j;
        j["schema"] = "1";
        j["command"] = command;
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(cert_json(r));
        j["results"] = arr;
        std::cout << j.dump(2) << '\n';
    } else if (output == "csv") {
        std::cout << "n,rounded,stabilized,residual,im_residue,k_used,bits,k1_sign,k8_phase";
        if (check) std::cout << ",oracle,match";
        std::cout << '\n';
        for (const auto& r : rows) {
            const auto& c = r.cert;
            std::cout << c.n << ',' << c.rounded << ',' << (c.stabilized ? "true" : "false") << ','
                      << c.residual.to_string(6) << ',' << c.im_residue.to_string(6) << ',' << c.k_used << ','
                      << c.bits << ',' << c.config.k1_sign << ',' << c.config.k8_phase;
            if (check) std::cout << ',' << r.oracle << ',' << (r.oracle == c.rounded ? "true" : "false");
            std::cout << '\n';
        }
    } else {
        for (const auto& r : rows) {
            const auto& c = r.cert;
            std::cout << command << '(' << c.n << ") = " << c.rounded << "  value " << c.final_value.to_fixed(6)
                      << "  residual " << c.residual.to_string(4) << "  "
                      << (c.stabilized ? "stabilized" : "NOT stabilized") << "  k_used " << c.k_used << "  bits "
                      << c.bits;
            if (check) std::cout << "  oracle " << r.oracle << (r.oracle == c.rounded ? " ok" : " MISMATCH");
            std::cout << '\n';
        }
    }
}

int run_series(const std::string& command, const Common& c) {
    check_output(c.output);
    const auto ns = targets(c);
    const radex::FormulaConfig cfg = formula_config(c);
    const auto bits = bits_override(c);
    std::optional<std::int64_t> k_max;
    if (c.k_max != "auto") {
        k_max = parse_int(c.k_max, "k-max");
        if (*k_max < 1) throw UsageError("--k-max must be positive");
    }
    const std::int64_t n_top = *std::max_element(ns.begin(), ns.end());
    std::vector<mpz_class> oracle;
    if (c.check) {
        if (n_top > kOracleCap) throw UsageError("--check supports n <= 2000");
        oracle = command == "p2" ? radex::p2_counts(static_cast<std::size_t>(n_top))
                                 : radex::partition_counts(static_cast<std::size_t>(n_top));
    }
    std::vector<Row> rows;
    bool all_ok = true;
    for (std::int64_t n : ns) {
        Row r;
        if (command == "p2") {
            const auto ctx = radex::make_context(bits.value_or(radex::default_bits(n)));
            r.cert = radex::p2_exact(n, k_max.value_or(radex::default_k_max(n)), ctx, cfg);
        } else {
            const auto ctx = radex::make_context(bits.value_or(radex::default_bits_p(n)));
            const auto kd = static_cast<std::int64_t>(std::ceil(3.0 * std::sqrt(static_cast<double>(n)))) + 20;
            r.cert = radex::rademacher_p(n, k_max.value_or(kd), ctx, cfg);
        }
        r.ok = r.cert.stabilized;
        if (c.check) {
            r.oracle = oracle[static_cast<std::size_t>(n)].get_str();
            r.ok = r.ok && r.oracle == r.cert.rounded;
        }
        all_ok = all_ok && r.ok;
        rows.push_back(std::move(r));
    }
    emit_rows(command, rows, c.output, c.check);
    return all_ok ? kExitOk : kExitFailure;
}

int run_oracle(const std::string& kind, std::int64_t to, const std::string& output) {
    check_output(output);
    if (to < 0 || to > kOracleCap) throw UsageError("--to must be in [0, 2000]");
    const auto N = static_cast<std::size_t>(to);
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> cols;
    auto add = [&](const std::string& name, const std::vector<mpz_class>& v) {
        names.push_back(name);
        std::vector<std::string> s;
        for (std::size_t i = 0; i <= N; ++i) s.push_back(v[i].get_str());
        cols.push_back(std::move(s));
    };
    auto coeffs = [](const radex::IntegerSeries& s) { return s.coeffs(); };
    const bool all = kind == "all";
    if (all || kind == "p") add("p", radex::partition_counts(N));
    if (all || kind == "p2") add("p2", radex::p2_counts(N));
    if (kind == "alpha") add("alpha", coeffs(radex::f_series(N)));
    if (all || kind == "a4") add("a4", coeffs(radex::g1_series(N).body));
    if (all || kind == "r") add("r", coeffs(radex::xi_series(N)));
    if (names.empty()) throw UsageError("oracle kind must be p, p2, alpha, a4, r or all");
    if (output == "json") {
        json j;
        j["schema"] = "1";
        j["command"] = "oracle";
        j["to"] = to;
        for (std::size_t c = 0; c < names.size(); ++c) j[names[c]] = cols[c];
        std::cout << j.dump(2) << '\n';
    } else if (output == "csv" || all) {
        std::cout << 'n';
        for (const auto& nm : names) std::cout << ',' << nm;
        std::cout << '\n';
        for (std::size_t i = 0; i <= N; ++i) {
            std::cout << i;
            for (const auto& col : cols) std::cout << ',' << col[i];
            std::cout << '\n';
        }
    } else {
        for (std::size_t i = 0; i <= N; ++i) std::cout << (i ? "," : "") << cols[0][i];
        std::cout << '\n';
    }
    return kExitOk;
}

int emit_suite(const radex::SuiteResult& r, const std::string& output) {
    check_output(output);
    if (output == "json") {
        json j;
        j["schema"] = "1";
        j["command"] = "verify";
        j["suite"] = r.name;
        j["passed"] = r.passed;
        j["summary"] = r.summary;
        j["failures"] = r.failures;
        j["notes"] = r.notes;
        std::cout << j.dump(2) << '\n';
    } else if (output == "csv") {
        std::cout << "suite,kind,text\n";
        std::cout << r.name << ",verdict," << (r.passed ? "pass" : "fail") << '\n';
        std::cout << r.name << ",summary,\"" << r.summary << "\"\n";
        for (const auto& f : r.failures) std::cout << r.name << ",failure,\"" << f << "\"\n";
        for (const auto& n : r.notes) std::cout << r.name << ",note,\"" << n << "\"\n";
    } else {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.summary << '\n';
        for (const auto& n : r.notes) std::cout << "  note: " << n << '\n';
        for (const auto& f : r.failures) std::cout << "  failure: " << f << '\n';
    }
    return r.passed ? kExitOk : kExitFailure;
}

int run_bound_report(const std::string& family, std::int64_t k_max, std::int64_t n_max, double eps, double threshold,
                     int k8_phase, const std::string& output) {
    check_output(output);
    if (k_max < 1 || n_max < 1) throw UsageError("--k-max and --n-max must be positive");
    if (!(eps > 0)) throw UsageError("--epsilon must be positive");
    std::vector<int> families;
    if (family == "all") {
        for (int f = 1; f <= 8; ++f) families.push_back(f);
    } else {
        const std::int64_t f = parse_int(family, "family");
        if (f < 1 || f > 8) throw UsageError("--family must be 1..8 or all");
        families.push_back(static_cast<int>(f));
    }
    radex::FamilyOptions opts;
    opts.k8_phase = k8_phase;
    bool ok = true;
    json summary = json::array();
    if (output == "csv") std::cout << "family,k,n,nu,abs_value,ratio\n";
    for (int f : families) {
        const radex::BoundReport rep = radex::bound_report(f, k_max, n_max, eps, opts);
        const bool fam_ok = std::isfinite(rep.max_ratio) && rep.max_ratio <= threshold;
        ok = ok && fam_ok;
        if (output == "csv") {
            char buf[64];
            for (const auto& row : rep.rows) {
                std::cout << row.family << ',' << row.k << ',' << row.n << ',' << row.nu << ',';
                std::snprintf(buf, sizeof buf, "%.9g", row.abs_value);
                std::cout << buf << ',';
                std::snprintf(buf, sizeof buf, "%.9g", row.ratio);
                std::cout << buf << '\n';
            }
        } else if (output == "json") {
            summary.push_back({{"family", f}, {"rows", rep.rows.size()}, {"max_ratio", rep.max_ratio}, {"ok", fam_ok}});
        } else {
            std::cout << "family " << f << ": " << rep.rows.size() << " rows, max ratio " << rep.max_ratio
                      << (fam_ok ? "" : "  EXCEEDS THRESHOLD") << '\n';
        }
    }
    if (output == "json") {
        json j;
        j["schema"] = "1";
        j["command"] = "bound-report";
        j["epsilon"] = eps;
        j["threshold"] = threshold;
        j["families"] = summary;
        std::cout << j.dump(2) << '\n';
    }
    return ok ? kExitOk : kExitFailure;
}

void add_common(CLI::App* app, Common& c) {
    app->add_option("--n", c.n, "single n");
    app->add_option("--range", c.range, "inclusive range a..b");
    app->add_option("--k-max", c.k_max, "truncation (integer or auto)");
    app->add_option("--bits", c.bits, "working precision (integer or auto; RADEX_BITS overrides)");
    app->add_option("--tol", c.tol, "total quadrature budget");
    app->add_option("--output", c.output, "json, csv or plain");
    app->add_option("--threads", c.threads, "worker threads (integer or auto)");
    app->add_flag("--check", c.check, "compare against the q-series oracle");
    app->add_option("--k1-sign", c.k1_sign, "sign of the k = 1 modular term (+1/-1)");
    app->add_option("--k8-phase", c.k8_phase, "sign of the linear nu term in the K^[8] phase (+1/-1)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact formula for partitions without consecutive parts"};
    app.require_subcommand(1);

    Common p2c, pc;
    auto* p2 = app.add_subcommand("p2", "p_2(n) from the exact formula");
    add_common(p2, p2c);
    auto* p = app.add_subcommand("p", "p(n) from Rademacher's series");
    add_common(p, pc);

    std::string kind;
    std::int64_t to = 0;
    std::string oracle_output = "plain";
    auto* oracle = app.add_subcommand("oracle", "exact coefficient tables");
    oracle->add_option("kind", kind, "p, p2, alpha, a4, r or all")->required();
    oracle->add_option("--to", to, "last n (<= 2000)")->required();
    oracle->add_option("--output", oracle_output, "json, csv or plain");

    std::string suite;
    std::int64_t v_k_max = -1, v_to = -1, v_nm_max = 10;
    int v_bits = 128;
    std::string v_output = "plain";
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "multipliers, kloosterman, mordell, decomposition or logconcavity")->required();
    verify->add_option("--k-max", v_k_max, "largest k (defaults: 60, 50, 12)");
    verify->add_option("--to", v_to, "last n / series order (defaults: 500, 2000)");
    verify->add_option("--nm-max", v_nm_max, "largest n and m for the reductions");
    verify->add_option("--bits", v_bits, "precision for the mordell suite");
    verify->add_option("--output", v_output, "json, csv or plain");

    std::string b_family = "all", b_output = "plain";
    std::int64_t b_k_max = 40, b_n_max = 40;
    double b_eps = 0.01, b_threshold = 100;
    int b_k8 = 1;
    auto* bound = app.add_subcommand("bound-report", "|K| / (n^{1/3} k^{2/3+eps}) over a grid");
    bound->add_option("--family", b_family, "1..8 or all");
    bound->add_option("--k-max", b_k_max, "largest k");
    bound->add_option("--n-max", b_n_max, "largest n");
    bound->add_option("--epsilon", b_eps, "epsilon in the exponent");
    bound->add_option("--threshold", b_threshold, "fail above this ratio");
    bound->add_option("--k8-phase", b_k8, "sign of the linear nu term in the K^[8] phase");
    bound->add_option("--output", b_output, "json, csv or plain");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*p2) return run_series("p2", p2c);
        if (*p) return run_series("p", pc);
        if (*oracle) return run_oracle(kind, to, oracle_output);
        if (*bound) {
            if (b_k8 != 1 && b_k8 != -1) throw UsageError("--k8-phase must be +1 or -1");
            return run_bound_report(b_family, b_k_max, b_n_max, b_eps, b_threshold, b_k8, b_output);
        }
        if (*verify) {
            check_output(v_output);
            if (v_bits < radex::PrecisionContext::kMinBits) throw UsageError("--bits must be at least 64");
            radex::SuiteResult r;
            if (suite == "multipliers") {
                r = radex::verify_multipliers(v_k_max < 0 ? 60 : v_k_max);
            } else if (suite == "kloosterman") {
                r = radex::verify_kloosterman(v_k_max < 0 ? 50 : v_k_max, v_nm_max);
            } else if (suite == "mordell") {
                r = radex::verify_mordell(v_k_max < 0 ? 12 : v_k_max, v_bits);
            } else if (suite == "decomposition") {
                r = radex::verify_decomposition(v_to < 0 ? 500 : v_to);
            } else if (suite == "logconcavity") {
                if (v_to > kOracleCap) throw UsageError("--to must be <= 2000");
                r = radex::verify_logconcavity(v_to < 0 ? 2000 : v_to);
            } else {
                throw UsageError("unknown suite '" + suite + "'");
            }
            return emit_suite(r, v_output);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
