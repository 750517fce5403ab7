#ifndef MATCOUNT_HARNESS_HPP
#define MATCOUNT_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "matcount/counting.hpp"
#include "matcount/int.hpp"
#include "matcount/poly.hpp"
#include "matcount/symgroup.hpp"

namespace matcount {

// One CSV row. Every value travels with its full parameter tuple; fields
// that do not apply stay empty. `criterion` tags rows consumed by the
// acceptance gate and is not part of the CSV schema.
struct CaseRow {
    std::string suite;
    std::string quantity;
    std::optional<int> m, n, r, d;
    std::optional<long> H;
    std::optional<uint64_t> p;
    std::optional<int> k;
    std::string lambda;    // partition label, e.g. (2,1)
    std::string a;         // target value
    std::optional<uint64_t> seed;
    std::string value;     // computed, exact decimal/rational string
    std::string reference; // expected value when the case has one
    std::string deviation;
    std::string tolerance;
    std::string status; // ok | pass | fail | skipped: ... | error: ...
    double elapsed = 0.0;
    bool passed = true;
    int criterion = 0;
};

// Header line of the CSV schema, without a trailing newline.
extern const char* const kCsvHeader;

// CSV body: header plus one line per row, deterministic. elapsed_s stays
// empty unless timing is set (timestamps live only in a # comment written
// by write_csv).
std::string csv_string(const std::vector<CaseRow>& rows, bool timing);
void write_csv(const std::string& path, const std::vector<CaseRow>& rows, bool timing);

struct VerifyReport {
    std::string suite;
    std::vector<CaseRow> rows;
    bool verdict() const; // AND of row pass flags
};

// A fully resolved experiment: suite, instance, parameter grids, budgets.
// Parsed from a single JSON document; no environment variables.
struct ExperimentConfig {
    std::string suite;    // count | moments | exponents
    std::string quantity; // optional; inferred from the parameters when empty

    std::optional<PolyMatrixSpec> spec; // matrix instance, resolved at load
    std::optional<IntPoly> f;           // univariate instance (moments)
    std::vector<IntPoly> f_list;        // diophantine summands
    std::vector<Int> a_list;            // diophantine coefficients

    std::vector<long> H_list;
    std::vector<uint64_t> p_list;
    std::optional<int> r;
    std::optional<int> k;
    std::optional<Partition> lambda;
    std::optional<int> d;
    std::optional<int> m, n; // exponent-formula parameters
    std::vector<std::string> formulas;
    Int a = 0; // determinant target

    Int budget = default_eval_budget();
    int shards = 1;
    std::optional<uint64_t> seed;
    std::string out; // CSV path; empty writes no file
    bool timing = false;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path);

// Runs the configured suite, writes the CSV when an output path is set,
// and returns the rows. Reruns with the same config are byte-identical
// (timing off). Budget refusals become per-case "skipped" rows; anything
// invalid in the config throws before any case runs.
VerifyReport run_experiment(const ExperimentConfig& cfg);

// Fixed verification suites comparing computed quantities against
// independent formulas, oracles, and deviation bands. Tolerances are
// constants in the suite definitions, documented per case.
extern const char* const kVerifySuiteNames[6]; // langweil, rank_oracle, moment_oracle,
                                               // slope_bounds, singular_asymptotic, identities
VerifyReport verify_suite(const std::string& name, const Int& budget = default_eval_budget(),
                          int shards = 1);

// All acceptance criteria (1..12) evaluated from the verify suites; the
// returned reports are keyed by criterion number.
struct CriterionResult {
    int criterion = 0;
    std::string name;
    bool passed = false;
    std::vector<CaseRow> rows;
};
std::vector<CriterionResult> run_acceptance(const Int& budget = default_eval_budget(),
                                            int shards = 1);

} // namespace matcount

#endif
