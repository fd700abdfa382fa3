#ifndef TOPOTENSOR_HARNESS_HPP
#define TOPOTENSOR_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "topotensor/decomp.hpp"
#include "topotensor/eigenpairs.hpp"
#include "topotensor/simplicial.hpp"
#include "topotensor/tensor.hpp"
#include "topotensor/topo.hpp"

namespace topotensor {

inline constexpr const char* kToolName = "topotensor";
inline constexpr const char* kToolVersion = "1.0.0";

struct Scenario {
    std::string name;
    GenSpec spec;
};

/**
 * Everything a validation run needs. A scenario whose GenSpec seed is 0
 * receives a stream derived from (master_seed, scenario index); the
 * TOPOTENSOR_SEED environment variable, when set, replaces master_seed at
 * config-load time.
 */
struct ExperimentConfig {
    std::vector<Scenario> scenarios;
    ComplexStrategy strategy;
    CoefficientScheme scheme = CoefficientScheme::affine(1.0, 2.0);
    SolverConfig solver;
    int cp_rank = 3;
    int cp_restarts = 8;
    std::vector<int> tucker_core_dims = {2, 2, 2};
    std::string output_format = "json";  // json | csv
    std::uint64_t master_seed = 42;
};

// One record per scenario. `error` is empty on success; on failure it holds
// the message and the fields computed before the failure stay populated.
struct ScenarioResult {
    std::string name;
    std::uint64_t seed = 0;
    std::vector<int> dims;
    BettiSignature betti;
    std::vector<double> coeffs;
    double lambda_topo = 0.0;
    long long count_bound = 0;
    std::vector<double> cp_eigenvalues;
    std::vector<std::vector<double>> tucker_eigenvalues;
    double mse_cp = 0.0;
    double mse_tucker = 0.0;
    long long solver_distinct_eigenvalues = 0;
    bool bound_satisfied = false;
    std::string error;
};

struct ValidationReport {
    std::string tool = kToolName;
    std::string version = kToolVersion;
    ExperimentConfig config;
    std::vector<ScenarioResult> records;  // sorted by scenario name
};

// Three-scenario config mirroring the shape of the validation study:
// random / low_rank (rank 2) / rank_deficient (core 2x2x2), all 3x3x3,
// multipartite strategy, affine(1, 2) coefficients, CP rank 3.
ExperimentConfig default_config();

/**
 * Runs every scenario, capturing per-scenario failures in the record instead
 * of aborting the run. The result is a pure function of the config.
 */
ValidationReport run_validation(const ExperimentConfig& cfg);

// Byte-deterministic serializations: keys sorted, floats at 17 significant
// digits. CSV carries the same scalar fields, one scenario per row.
std::string report_to_json(const ValidationReport& report);
std::string report_to_csv(const ValidationReport& report);

std::string config_to_json(const ExperimentConfig& cfg);

// Parses a config, validating invariants (unique scenario names, positive
// solver parameters). Applies the TOPOTENSOR_SEED override when present.
ExperimentConfig load_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

}  // namespace topotensor

#endif
