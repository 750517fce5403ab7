#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "matcount/harness.hpp"

using namespace matcount;
using nlohmann::json;

TEST_SUITE_BEGIN("harness");

namespace {
json inline_linear_2x2() {
    // Every entry is the polynomial X, coefficients low to high.
    json entry = json::array({0, 1});
    json row = json::array({entry, entry});
    return json{{"m", 2}, {"n", 2}, {"entries", json::array({row, row})}};
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

size_t count_char(const std::string& s, char c) {
    size_t k = 0;
    for (char x : s)
        if (x == c) ++k;
    return k;
}
} // namespace

TEST_CASE("csv header is the pinned schema") {
    CHECK(std::string(kCsvHeader) ==
          "suite,quantity,m,n,r,d,H,p,k,lambda,a,seed,value,reference,deviation,tolerance,"
          "status,elapsed_s");
    CHECK(count_char(kCsvHeader, ',') == 17);
}

TEST_CASE("csv rows have one field per column and sanitize separators") {
    CaseRow row;
    row.suite = "count";
    row.quantity = "rank_count";
    row.m = 2;
    row.n = 2;
    row.r = 1;
    row.H = 1;
    row.value = "32";
    row.status = "ok, really\nok";
    row.elapsed = 0.125;
    const std::string body = csv_string({row}, false);
    const auto lines = lines_of(body);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == kCsvHeader);
    CHECK(count_char(lines[1], ',') == 17);
    CHECK(lines[1].find("ok; really;ok") != std::string::npos);
    CHECK(lines[1].back() == ','); // elapsed stays empty with timing off

    const std::string timed = csv_string({row}, true);
    const auto tlines = lines_of(timed);
    CHECK(tlines[1].substr(tlines[1].rfind(',') + 1) == "0.125");
}

TEST_CASE("count experiment reproduces the pinned rank value") {
    json j{{"suite", "count"},
           {"instance", {{"inline", inline_linear_2x2()}}},
           {"H", json::array({1})},
           {"r", 1}};
    const ExperimentConfig cfg = config_from_json(j);
    CHECK(cfg.suite == "count");
    CHECK(cfg.H_list == std::vector<long>{1});
    const VerifyReport rep = run_experiment(cfg);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].quantity == "rank_count");
    CHECK(rep.rows[0].value == "32");
    CHECK(rep.rows[0].status == "ok");
    CHECK(rep.rows[0].m == 2);
    CHECK(rep.rows[0].H == 1);
    CHECK(rep.verdict());

    // Reruns are byte-identical with timing off.
    const VerifyReport again = run_experiment(cfg);
    CHECK(csv_string(rep.rows, false) == csv_string(again.rows, false));
}

TEST_CASE("count experiment grids expand H x p in declared order") {
    json j{{"suite", "count"},
           {"instance", {{"inline", inline_linear_2x2()}}},
           {"H", json::array({1, 2})},
           {"p", 3},
           {"r", 2}};
    const VerifyReport rep = run_experiment(config_from_json(j));
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].quantity == "rank_count_modp");
    CHECK(rep.rows[0].H == 1);
    CHECK(rep.rows[0].p == 3);
    CHECK(rep.rows[0].value == "48");
    CHECK(rep.rows[1].H == 2);
}

TEST_CASE("determinant quantity is inferred when neither r nor lambda is set") {
    json j{{"suite", "count"},
           {"instance", {{"inline", inline_linear_2x2()}}},
           {"H", 1},
           {"a", 0}};
    const VerifyReport rep = run_experiment(config_from_json(j));
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].quantity == "det_count");
    CHECK(rep.rows[0].a == "0");
    CHECK(rep.rows[0].value == "33");
}

TEST_CASE("moment experiment emits exact and grid rows") {
    json even{{"suite", "moments"}, {"f", json::array({0, 1})}, {"k", 4}, {"H", json::array({1, 2})}};
    const VerifyReport rep = run_experiment(config_from_json(even));
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].quantity == "moment_I");
    CHECK(rep.rows[0].value == "19");
    CHECK(rep.rows[0].tolerance.empty());

    // Odd k goes through the complex grid; the row carries an error bound.
    json odd{{"suite", "moments"},
             {"f", json::array({0, 1})},
             {"k", 3},
             {"H", 2},
             {"p", json::array({7})}};
    const VerifyReport orep = run_experiment(config_from_json(odd));
    REQUIRE(orep.rows.size() == 1);
    CHECK(orep.rows[0].quantity == "moment_J");
    CHECK(orep.rows[0].k == 3);
    CHECK_FALSE(orep.rows[0].tolerance.empty());
    CHECK(orep.rows[0].status == "ok");
}

TEST_CASE("exponent experiment reproduces the pinned formula values") {
    json j{{"suite", "exponents"},
           {"d", 3},
           {"m", 5},
           {"n", 5},
           {"r", 4},
           {"formulas", json::array({"poly_rank_box", "blomer_li"})}};
    const VerifyReport rep = run_experiment(config_from_json(j));
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].quantity == "poly_rank_box");
    CHECK(rep.rows[0].value == "91/4");
    CHECK(rep.rows[0].status == "ok");
    CHECK(rep.rows[1].quantity == "blomer_li");
    CHECK(rep.rows[1].value == "23");

    // A formula whose hypotheses fail becomes a skipped row, not an error.
    json skip{{"suite", "exponents"}, {"m", 2}, {"n", 2}, {"r", 2},
              {"formulas", json::array({"poly_rank_box"})}};
    const VerifyReport srep = run_experiment(config_from_json(skip));
    REQUIRE(srep.rows.size() == 1);
    CHECK(srep.rows[0].status.rfind("skipped: ", 0) == 0);
    CHECK(srep.rows[0].value.empty());
}

TEST_CASE("exponent experiment labels selected branches") {
    json j{{"suite", "exponents"},
           {"m", 3},
           {"n", 3},
           {"r", 2},
           {"H", 10},
           {"p", 7},
           {"formulas", json::array({"rank_mod_minmax"})}};
    const VerifyReport rep = run_experiment(config_from_json(j));
    // box branch: H-only; density branch: H and p rows.
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[0].quantity == "rank_mod_minmax.box.H");
    CHECK(rep.rows[1].quantity == "rank_mod_minmax.density.H");
    CHECK(rep.rows[2].quantity == "rank_mod_minmax.density.p");
    int selected = 0;
    for (const CaseRow& r : rep.rows)
        if (r.status.find(" selected") != std::string::npos) ++selected;
    CHECK(selected >= 1);
}

TEST_CASE("random instances carry their seed into the rows") {
    json j{{"suite", "count"},
           {"instance", {{"random", {{"seed", 9}, {"m", 2}, {"n", 2}, {"degree", 1}}}}},
           {"H", 1},
           {"r", 1}};
    const ExperimentConfig cfg = config_from_json(j);
    REQUIRE(cfg.spec.has_value());
    CHECK(cfg.seed == 9);
    const VerifyReport rep = run_experiment(cfg);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].seed == 9);
}

TEST_CASE("budget refusals become skipped rows, not failures") {
    json j{{"suite", "count"},
           {"instance", {{"inline", inline_linear_2x2()}}},
           {"H", 5},
           {"r", 1},
           {"budget", 10}};
    const VerifyReport rep = run_experiment(config_from_json(j));
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].status.rfind("skipped: ", 0) == 0);
    CHECK(rep.rows[0].status.find("budget") != std::string::npos);
    CHECK(rep.rows[0].passed);
    CHECK(rep.verdict());
}

TEST_CASE("config validation") {
    CHECK_THROWS(config_from_json(json{{"H", 1}})); // no suite
    CHECK_THROWS_AS(config_from_json(json{{"suite", "nope"}}), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(json::array({1, 2})), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(json{{"suite", "count"}, {"shards", 0}}),
                    std::invalid_argument);
    // Instance source must be unique, and random instances need a seed.
    json multi{{"suite", "count"},
               {"instance",
                {{"inline", inline_linear_2x2()}, {"random", {{"seed", 1}, {"m", 2}, {"n", 2}, {"degree", 1}}}}}};
    CHECK_THROWS_AS(config_from_json(multi), std::invalid_argument);
    json noseed{{"suite", "count"},
                {"instance", {{"random", {{"m", 2}, {"n", 2}, {"degree", 1}}}}}};
    CHECK_THROWS_AS(config_from_json(noseed), std::invalid_argument);

    // Structural gaps surface before any case runs.
    json no_grid{{"suite", "count"}, {"instance", {{"inline", inline_linear_2x2()}}}, {"r", 1}};
    CHECK_THROWS_AS(run_experiment(config_from_json(no_grid)), std::invalid_argument);
    json no_inst{{"suite", "count"}, {"H", 1}, {"r", 1}};
    CHECK_THROWS_AS(run_experiment(config_from_json(no_inst)), std::invalid_argument);
    json bad_formula{{"suite", "exponents"}, {"m", 3}, {"n", 3}, {"r", 3},
                     {"formulas", json::array({"no_such_bound"})}};
    CHECK_THROWS_AS(run_experiment(config_from_json(bad_formula)), std::invalid_argument);
    json bad_qty{{"suite", "count"}, {"quantity", "nope"},
                 {"instance", {{"inline", inline_linear_2x2()}}}, {"H", 1}};
    CHECK_THROWS_AS(run_experiment(config_from_json(bad_qty)), std::invalid_argument);
}

TEST_CASE("config files round through disk") {
    const std::string path = "harness_config_roundtrip.json";
    {
        json j{{"suite", "count"},
               {"instance", {{"inline", inline_linear_2x2()}}},
               {"H", 1},
               {"r", 2}};
        std::ofstream f(path);
        f << j.dump(2);
    }
    const ExperimentConfig cfg = load_config_file(path);
    const VerifyReport rep = run_experiment(cfg);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].value == "48");
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_config_file("no_such_config.json"), std::invalid_argument);
}

TEST_CASE("write_csv stamps a comment and keeps the body deterministic") {
    CaseRow row;
    row.suite = "count";
    row.quantity = "det_count";
    row.value = "33";
    row.status = "ok";
    const std::string path = "harness_write_test.csv";
    write_csv(path, {row}, false);
    std::ifstream f(path);
    REQUIRE(f.good());
    std::string first, second, third;
    std::getline(f, first);
    std::getline(f, second);
    std::getline(f, third);
    CHECK(first.rfind("# generated ", 0) == 0);
    CHECK(second == kCsvHeader);
    CHECK(third.rfind("count,det_count,", 0) == 0);
    f.close();
    std::remove(path.c_str());
}

TEST_CASE("verify_suite rejects unknown names") {
    CHECK_THROWS_AS((void)verify_suite("nope"), std::invalid_argument);
}

TEST_CASE("slope_bounds verify suite passes and fills the schema") {
    const VerifyReport rep = verify_suite("slope_bounds");
    CHECK(rep.verdict());
    CHECK(!rep.rows.empty());
    for (const CaseRow& row : rep.rows) {
        CHECK(row.suite == "slope_bounds");
        CHECK(!row.value.empty());
        CHECK(!row.tolerance.empty());
        CHECK(row.status == "pass");
        CHECK(row.criterion == 6);
    }
}

TEST_SUITE_END();
