#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "support.hpp"
#include "topotensor/harness.hpp"

using namespace topotensor;

namespace {

const ValidationReport& default_report() {
    static const ValidationReport report = run_validation(default_config());
    return report;
}

// Structural comparison with a numeric tolerance, so the golden report stays
// meaningful across toolchains whose libm rounds the seeded normals apart.
bool json_close(const nlohmann::json& a, const nlohmann::json& b, std::string& where) {
    if (a.is_number() && b.is_number()) {
        const double x = a.get<double>();
        const double y = b.get<double>();
        if (std::abs(x - y) <= 1e-6 * std::max({1.0, std::abs(x), std::abs(y)})) return true;
        where = "number " + a.dump() + " vs " + b.dump();
        return false;
    }
    if (a.type() != b.type()) {
        where = "type mismatch: " + a.dump() + " vs " + b.dump();
        return false;
    }
    if (a.is_object()) {
        if (a.size() != b.size()) {
            where = "object size: " + a.dump() + " vs " + b.dump();
            return false;
        }
        for (auto it = a.begin(); it != a.end(); ++it) {
            if (!b.contains(it.key())) {
                where = "missing key " + it.key();
                return false;
            }
            if (!json_close(it.value(), b.at(it.key()), where)) {
                where = it.key() + "." + where;
                return false;
            }
        }
        return true;
    }
    if (a.is_array()) {
        if (a.size() != b.size()) {
            where = "array size " + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size());
            return false;
        }
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!json_close(a[i], b[i], where)) return false;
        return true;
    }
    if (a != b) {
        where = a.dump() + " vs " + b.dump();
        return false;
    }
    return true;
}

}  // namespace

TEST_CASE("run_validation: default config produces three clean records") {
    const ValidationReport& report = default_report();
    REQUIRE(report.records.size() == 3);
    // sorted by scenario name
    CHECK(report.records[0].name == "low_rank");
    CHECK(report.records[1].name == "random");
    CHECK(report.records[2].name == "rank_deficient");
    for (const ScenarioResult& r : report.records) {
        CHECK(r.error.empty());
        CHECK(r.betti.size() == 3);
        CHECK(r.coeffs == std::vector<double>{2, 3, 4});
        CHECK(r.seed != 0);
        CHECK(r.cp_eigenvalues.size() == 3);
        CHECK(r.tucker_eigenvalues.size() == 3);
        CHECK(r.mse_cp >= 0.0);
        CHECK(r.mse_tucker >= 0.0);
        CHECK(r.solver_distinct_eigenvalues > 0);
    }
}

TEST_CASE("run_validation: records are self-consistent") {
    for (const ScenarioResult& r : default_report().records) {
        CHECK(r.lambda_topo == topological_eigenvalue(r.betti, r.coeffs));
        CHECK(r.count_bound == eigenvalue_count_bound(r.betti));
    }
}

TEST_CASE("run_validation: empty scenario list still serializes") {
    ExperimentConfig cfg = default_config();
    cfg.scenarios.clear();
    const ValidationReport report = run_validation(cfg);
    CHECK(report.records.empty());
    const std::string json = report_to_json(report);
    CHECK(json.find("\"records\": []") != std::string::npos);
}

TEST_CASE("run_validation: diagonal scenario is an exact CP fit at rank n") {
    ExperimentConfig cfg = default_config();
    cfg.scenarios.clear();
    Scenario diag;
    diag.name = "diag";
    diag.spec.kind = GenKind::diagonal;
    diag.spec.dims = {3, 3, 3};
    diag.spec.diag = {3.0, 2.0, 1.0};
    diag.spec.seed = 1;
    cfg.scenarios.push_back(diag);
    cfg.cp_rank = 3;
    cfg.cp_restarts = 8;

    const ValidationReport report = run_validation(cfg);
    REQUIRE(report.records.size() == 1);
    CHECK(report.records[0].error.empty());
    CHECK(report.records[0].mse_cp < 1e-8);
}

TEST_CASE("run_validation: per-scenario failures are data") {
    ExperimentConfig cfg = default_config();
    Scenario bad;
    bad.name = "bad";
    bad.spec.kind = GenKind::low_rank;
    bad.spec.dims = {3, 3, 3};
    bad.spec.rank = 0;  // invalid
    cfg.scenarios.push_back(bad);

    const ValidationReport report = run_validation(cfg);
    REQUIRE(report.records.size() == 4);
    int failures = 0;
    for (const ScenarioResult& r : report.records) {
        if (!r.error.empty()) {
            ++failures;
            CHECK(r.name == "bad");
        }
    }
    CHECK(failures == 1);
}

TEST_CASE("reports are byte-deterministic") {
    const ExperimentConfig cfg = default_config();
    const std::string a = report_to_json(run_validation(cfg));
    const std::string b = report_to_json(run_validation(cfg));
    CHECK(a == b);
    CHECK(report_to_csv(run_validation(cfg)) == report_to_csv(run_validation(cfg)));
}

TEST_CASE("csv and json carry the same scalar fields") {
    const std::string json = report_to_json(default_report());
    const std::string csv = report_to_csv(default_report());
    const std::string header = csv.substr(0, csv.find('\n'));
    for (const char* field :
         {"name", "seed", "lambda_topo", "count_bound", "mse_cp", "mse_tucker",
          "solver_distinct_eigenvalues", "bound_satisfied", "error"}) {
        CHECK_MESSAGE(header.find(field) != std::string::npos, "csv missing ", field);
        CHECK_MESSAGE(json.find(std::string("\"") + field + "\"") != std::string::npos,
                      "json missing ", field);
    }
    // one header plus one row per record
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("config round-trips through json") {
    ExperimentConfig cfg = default_config();
    cfg.master_seed = 777;
    cfg.cp_rank = 2;
    cfg.scheme = CoefficientScheme::explicit_values({2, 3, 4});
    cfg.strategy.mode = StrategyMode::symmetric_clique;
    cfg.strategy.threshold = 0.25;

    const ExperimentConfig back = load_config(config_to_json(cfg));
    CHECK(back.master_seed == 777);
    CHECK(back.cp_rank == 2);
    CHECK(back.scheme.kind == SchemeKind::explicit_values);
    CHECK(back.scheme.values == std::vector<double>{2, 3, 4});
    CHECK(back.strategy.mode == StrategyMode::symmetric_clique);
    CHECK(back.strategy.threshold == 0.25);
    REQUIRE(back.scenarios.size() == 3);
    CHECK(back.scenarios[1].spec.rank == 2);
    CHECK(back.scenarios[2].spec.core_dims == std::vector<int>{2, 2, 2});
}

TEST_CASE("load_config validates invariants") {
    CHECK_THROWS_AS(load_config("{"), FormatError);
    CHECK_THROWS_AS(load_config(R"({"output_format": "xml"})"), FormatError);
    CHECK_THROWS_AS(load_config(R"({"cp_rank": 0})"), FormatError);
    CHECK_THROWS_AS(
        load_config(
            R"({"scenarios": [{"name": "a", "kind": "random", "dims": [2,2]},
                              {"name": "a", "kind": "random", "dims": [2,2]}]})"),
        FormatError);
    CHECK_THROWS_AS(load_config(R"({"scheme": {"scheme": "mystery"}})"), FormatError);
    CHECK_THROWS_AS(
        load_config(R"({"scenarios": [{"name": "big", "kind": "random",
                                       "dims": [2,2,2,2,2]}]})"),
        FormatError);
}

TEST_CASE("coefficient scheme serialization matches the documented shape") {
    const std::string json = config_to_json(default_config());
    CHECK(json.find("\"scheme\": {\"a\": 1, \"b\": 2, \"scheme\": \"affine\"}") !=
          std::string::npos);
    const ExperimentConfig cfg =
        load_config(R"({"scheme": {"scheme": "affine", "a": 1, "b": 2}})");
    CHECK(cfg.scheme.kind == SchemeKind::affine);
    CHECK(cfg.scheme.a == 1.0);
    CHECK(cfg.scheme.b == 2.0);
}

TEST_CASE("TOPOTENSOR_SEED overrides the master seed at load time") {
    setenv("TOPOTENSOR_SEED", "123456", 1);
    const ExperimentConfig cfg = load_config(R"({"master_seed": 9})");
    unsetenv("TOPOTENSOR_SEED");
    CHECK(cfg.master_seed == 123456);
    const ExperimentConfig plain = load_config(R"({"master_seed": 9})");
    CHECK(plain.master_seed == 9);
}

TEST_CASE("default report matches the recorded golden run") {
    std::ifstream is(std::string(GOLDEN_DIR) + "/validation_default.json");
    REQUIRE(is.good());
    std::stringstream ss;
    ss << is.rdbuf();
    const nlohmann::json golden = nlohmann::json::parse(ss.str());
    const nlohmann::json current = nlohmann::json::parse(report_to_json(default_report()));
    std::string where;
    CHECK_MESSAGE(json_close(golden, current, where), "diverged at ", where);
}

TEST_CASE("lambda_topo is recomputable from the serialized report alone") {
    const nlohmann::json j = nlohmann::json::parse(report_to_json(default_report()));
    REQUIRE(j.at("records").size() == 3);
    for (const auto& rec : j.at("records")) {
        double lambda = 0.0;
        for (std::size_t k = 0; k < rec.at("betti").size(); ++k)
            lambda += rec.at("coeffs")[k].get<double>() * rec.at("betti")[k].get<double>();
        CHECK(lambda == rec.at("lambda_topo").get<double>());
        long long bound = 0;
        for (const auto& b : rec.at("betti")) bound += b.get<long long>();
        CHECK(bound == rec.at("count_bound").get<long long>());
    }
}

TEST_CASE("explicit scenario seeds are honored, zero seeds are derived") {
    ExperimentConfig cfg = default_config();
    cfg.scenarios[0].spec.seed = 4321;
    const ValidationReport report = run_validation(cfg);
    for (const ScenarioResult& r : report.records) {
        if (r.name == "random") CHECK(r.seed == 4321);
        else CHECK(r.seed != 0);
    }
}
