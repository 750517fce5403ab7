#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "matcount/exponents.hpp"
#include "matcount/harness.hpp"
#include "matcount/moments.hpp"
#include "matcount/multipoly.hpp"
#include "matcount/rng.hpp"
#include "matcount/symgroup.hpp"

namespace {

using matcount::Int;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct GlobalOpts {
    std::string config;
    std::optional<int> shards;
    std::optional<std::string> budget;
    std::optional<uint64_t> seed;
    std::optional<std::string> out;
};

void apply_overrides(matcount::ExperimentConfig& cfg, const GlobalOpts& g) {
    if (g.shards) cfg.shards = *g.shards;
    if (g.budget) cfg.budget = Int(*g.budget);
    if (g.seed) cfg.seed = *g.seed;
    if (g.out) cfg.out = *g.out;
}

int report_exit(const matcount::VerifyReport& report) {
    for (const auto& row : report.rows)
        if (!row.passed) return kExitFail;
    return kExitPass;
}

// Experiments print the CSV body to stdout; --out additionally persists it
// with the generation-time header comment.
int run_config_suite(const std::string& expected_suite, const GlobalOpts& g) {
    if (g.config.empty())
        throw std::invalid_argument(expected_suite + " requires --config <path>");
    matcount::ExperimentConfig cfg = matcount::load_config_file(g.config);
    if (cfg.suite != expected_suite)
        throw std::invalid_argument("config suite is '" + cfg.suite + "', expected '" +
                                    expected_suite + "'");
    apply_overrides(cfg, g);
    const matcount::VerifyReport report = matcount::run_experiment(cfg);
    std::cout << matcount::csv_string(report.rows, cfg.timing);
    return report_exit(report);
}

matcount::IntMatrix matrix_from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open matrix file: " + path);
    json j;
    f >> j;
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix file must be an array of rows");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j.at(0).size());
    matcount::IntMatrix A(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j.at(static_cast<size_t>(i));
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw std::invalid_argument("matrix rows must all have the same length");
        for (int k = 0; k < cols; ++k) {
            const json& v = row.at(static_cast<size_t>(k));
            if (v.is_number_integer())
                A.at(i, k) = Int(static_cast<long>(v.get<long long>()));
            else if (v.is_string())
                A.at(i, k) = Int(v.get<std::string>());
            else
                throw std::invalid_argument("matrix entries must be integers or decimal strings");
        }
    }
    return A;
}

int cmd_immanant(const std::string& matrix_path, std::vector<int> lambda_parts) {
    const matcount::IntMatrix A = matrix_from_file(matrix_path);
    if (A.rows != A.cols) throw std::invalid_argument("immanant needs a square matrix");
    const matcount::Partition lambda(std::move(lambda_parts));
    Int value;
    const std::vector<int> ones(static_cast<size_t>(A.rows), 1);
    if (lambda.parts == ones) {
        value = matcount::det(A);
    } else if (lambda.parts.size() == 1) {
        value = matcount::permanent_ryser(A);
    } else {
        value = matcount::immanant(A, lambda);
    }
    std::cout << value.get_str() << "\n";
    return kExitPass;
}

// Cross-validates the symbolic pipeline: the expanded determinant,
// evaluated at seeded integer points, must match the numeric determinant,
// and for 3 <= n <= 5 the first-row bordered specialization must reduce to
// f11 - sum of the remaining first-row entries.
int cmd_symbolic_check(const std::optional<std::string>& spec_path, uint64_t seed) {
    std::vector<matcount::PolyMatrixSpec> specs;
    if (spec_path) {
        specs.push_back(matcount::load_spec_file(*spec_path));
    } else {
        specs.push_back(matcount::PolyMatrixSpec::monomial(2, 2, 2));
        specs.push_back(matcount::PolyMatrixSpec::linear(3, 3));
    }
    bool all_ok = true;
    for (const auto& spec : specs) {
        if (!spec.square() || spec.n > 5)
            throw std::invalid_argument("symbolic-check handles square specs with n <= 5");
        const int n = spec.n;
        const matcount::MultiPoly sym = matcount::symbolic_determinant(spec);
        matcount::Rng rng(seed);
        bool points_ok = true;
        for (int t = 0; t < 20; ++t) {
            std::vector<Int> args;
            matcount::IntMatrix A(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const Int x(rng.range(-9, 9));
                    args.push_back(x);
                    A.at(i, j) = spec.at(i, j).eval(x);
                }
            if (sym.eval(args) != matcount::det(A)) points_ok = false;
        }
        std::cout << (points_ok ? "pass" : "FAIL") << " symbolic det matches numeric det ("
                  << n << "x" << n << ", 20 seeded points)\n";
        all_ok = all_ok && points_ok;

        if (n >= 3 && spec.all_nonconstant()) {
            std::vector<std::string> names;
            for (int j = 1; j <= n; ++j) names.push_back("X1" + std::to_string(j));
            matcount::MultiPoly want = matcount::MultiPoly::lift(names, 0, spec.at(0, 0));
            for (int j = 1; j < n; ++j)
                want = want - matcount::MultiPoly::lift(names, static_cast<size_t>(j), spec.at(0, j));
            const bool ok = matcount::specialize_first_row(spec) == want;
            std::cout << (ok ? "pass" : "FAIL")
                      << " bordered specialization reduces to the first-row combination\n";
            all_ok = all_ok && ok;
        }
    }
    return all_ok ? kExitPass : kExitFail;
}

// Reads (H, value) pairs either from --point H=V flags or from a CSV in
// the harness schema, then reports the fitted log-log slope.
int cmd_slope(const std::vector<std::string>& point_args, const std::string& csv_path,
              const std::string& quantity_filter, std::optional<double> max_slope) {
    std::vector<std::pair<Int, Int>> points;
    for (const std::string& s : point_args) {
        const size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--point expects H=VALUE, got: " + s);
        points.emplace_back(Int(s.substr(0, eq)), Int(s.substr(eq + 1)));
    }
    if (!csv_path.empty()) {
        std::ifstream f(csv_path);
        if (!f) throw std::invalid_argument("cannot open CSV file: " + csv_path);
        std::string line;
        bool header_seen = false;
        while (std::getline(f, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (!header_seen) { // schema header
                header_seen = true;
                continue;
            }
            std::vector<std::string> fields;
            std::stringstream ss(line);
            std::string field;
            while (std::getline(ss, field, ',')) fields.push_back(field);
            if (fields.size() < 13) continue;
            const std::string& quantity = fields[1];
            const std::string& H = fields[6];
            const std::string& value = fields[12];
            if (!quantity_filter.empty() && quantity != quantity_filter) continue;
            if (H.empty() || value.empty()) continue;
            if (value.find('/') != std::string::npos) continue; // rationals are not counts
            points.emplace_back(Int(H), Int(value));
        }
    }
    std::sort(points.begin(), points.end());
    const double slope = matcount::slope_estimate(points);
    std::cout << "slope " << slope << "\n";
    if (max_slope && slope > *max_slope) return kExitFail;
    return kExitPass;
}

void print_row_line(const matcount::CaseRow& row) {
    const char* tag = row.passed ? (row.status.rfind("skipped", 0) == 0 ? "SKIP" : "PASS") : "FAIL";
    std::cout << "[" << tag << "] " << row.suite << "/" << row.quantity;
    auto dim = [&](const char* name, const auto& opt) {
        if (opt) std::cout << " " << name << "=" << *opt;
    };
    dim("m", row.m);
    dim("n", row.n);
    dim("r", row.r);
    dim("d", row.d);
    dim("H", row.H);
    dim("p", row.p);
    dim("k", row.k);
    if (!row.lambda.empty()) std::cout << " lambda=" << row.lambda;
    if (!row.a.empty()) std::cout << " a=" << row.a;
    if (!row.value.empty()) std::cout << " value=" << row.value;
    if (!row.reference.empty()) std::cout << " reference=" << row.reference;
    if (!row.passed || row.status.rfind("skipped", 0) == 0) std::cout << " status=" << row.status;
    std::cout << "\n";
}

int cmd_verify(const std::string& suite, const GlobalOpts& g) {
    Int budget = matcount::default_eval_budget();
    if (g.budget) budget = Int(*g.budget);
    const int shards = g.shards.value_or(1);

    std::vector<std::string> names;
    if (suite == "all")
        names.assign(std::begin(matcount::kVerifySuiteNames), std::end(matcount::kVerifySuiteNames));
    else
        names.push_back(suite);

    std::vector<matcount::CaseRow> all_rows;
    bool ok = true;
    for (const std::string& name : names) {
        const matcount::VerifyReport report = matcount::verify_suite(name, budget, shards);
        for (const auto& row : report.rows) print_row_line(row);
        std::cout << "suite " << name << ": " << (report.verdict() ? "PASS" : "FAIL") << "\n";
        ok = ok && report.verdict();
        all_rows.insert(all_rows.end(), report.rows.begin(), report.rows.end());
    }
    if (g.out) matcount::write_csv(*g.out, all_rows, false);
    return ok ? kExitPass : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact matrix counting laboratory"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config, "experiment config (JSON)");
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", g.config, "experiment config (JSON)");
        sub->add_option("--shards", g.shards, "shard count override");
        sub->add_option("--budget", g.budget, "evaluation budget override");
        sub->add_option("--seed", g.seed, "seed override");
        sub->add_option("--out", g.out, "CSV output path");
    };

    CLI::App* count = app.add_subcommand("count", "run a counting experiment");
    add_common(count);
    CLI::App* moments = app.add_subcommand("moments", "run a moment experiment");
    add_common(moments);

    CLI::App* imm = app.add_subcommand("immanant", "evaluate one immanant exactly");
    std::string matrix_path;
    std::vector<int> lambda_parts;
    imm->add_option("--matrix", matrix_path, "JSON file: array of integer rows")->required();
    imm->add_option("--lambda", lambda_parts, "partition parts, e.g. --lambda 2 1")->required();

    CLI::App* exps = app.add_subcommand("exponents", "evaluate bound exponents");
    add_common(exps);
    std::optional<int> x_d, x_m, x_n, x_r;
    std::optional<long> x_H;
    std::optional<uint64_t> x_p;
    std::vector<std::string> x_formulas;
    exps->add_option("-d", x_d, "entry degree");
    exps->add_option("-m", x_m, "rows");
    exps->add_option("-n", x_n, "columns");
    exps->add_option("-r", x_r, "rank");
    exps->add_option("-H", x_H, "box half-width (branch selection)");
    exps->add_option("-p", x_p, "modulus (branch selection)");
    exps->add_option("--formula", x_formulas, "formula names (default: all)");

    CLI::App* sym = app.add_subcommand("symbolic-check", "cross-validate the symbolic pipeline");
    std::string sym_spec;
    uint64_t sym_seed = 1;
    sym->add_option("--spec", sym_spec, "matrix spec JSON file");
    sym->add_option("--seed", sym_seed, "seed for evaluation points");

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    add_common(verify);
    std::string verify_name;
    verify->add_option("suite", verify_name, "langweil|rank_oracle|moment_oracle|slope_bounds|singular_asymptotic|identities|all")
        ->required();

    CLI::App* slope = app.add_subcommand("slope", "fit a log-log slope");
    std::vector<std::string> slope_points;
    std::string slope_csv, slope_quantity;
    std::optional<double> slope_max;
    slope->add_option("--point", slope_points, "data point H=VALUE (repeatable)");
    slope->add_option("--in", slope_csv, "CSV in the harness schema");
    slope->add_option("--quantity", slope_quantity, "restrict CSV rows to this quantity");
    slope->add_option("--max", slope_max, "fail (exit 1) when the slope exceeds this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitConfig;
    }

    try {
        if (count->parsed()) return run_config_suite("count", g);
        if (moments->parsed()) return run_config_suite("moments", g);
        if (imm->parsed()) return cmd_immanant(matrix_path, lambda_parts);
        if (exps->parsed()) {
            matcount::ExperimentConfig cfg;
            if (!g.config.empty()) {
                cfg = matcount::load_config_file(g.config);
                if (cfg.suite != "exponents")
                    throw std::invalid_argument("config suite is '" + cfg.suite +
                                                "', expected 'exponents'");
            } else {
                cfg.suite = "exponents";
                if (!x_m || !x_n || !x_r)
                    throw std::invalid_argument("exponents needs -m, -n, -r (or --config)");
                cfg.m = x_m;
                cfg.n = x_n;
                cfg.r = x_r;
                cfg.d = x_d;
                if (x_H) cfg.H_list.push_back(*x_H);
                if (x_p) cfg.p_list.push_back(*x_p);
                cfg.formulas = x_formulas;
            }
            apply_overrides(cfg, g);
            const matcount::VerifyReport report = matcount::run_experiment(cfg);
            std::cout << matcount::csv_string(report.rows, cfg.timing);
            return report_exit(report);
        }
        if (sym->parsed())
            return cmd_symbolic_check(
                sym_spec.empty() ? std::nullopt : std::optional<std::string>(sym_spec), sym_seed);
        if (verify->parsed()) return cmd_verify(verify_name, g);
        if (slope->parsed()) return cmd_slope(slope_points, slope_csv, slope_quantity, slope_max);
    } catch (const matcount::budget_error& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
