#include "topotensor/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "topotensor/rng.hpp"

namespace topotensor {

namespace {

using nlohmann::json;

// 17 significant digits round-trip a double exactly, and producing the text
// ourselves keeps the report bytes independent of any json library's float
// formatter.
std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += "\"";
    return out;
}

template <typename T, typename F>
std::string list(const std::vector<T>& xs, F f) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += f(xs[i]);
    }
    out += "]";
    return out;
}

std::string int_list(const std::vector<int>& xs) {
    return list(xs, [](int x) { return std::to_string(x); });
}

std::string double_list(const std::vector<double>& xs) {
    return list(xs, fmt);
}

const char* kind_name(GenKind k) {
    switch (k) {
        case GenKind::random: return "random";
        case GenKind::low_rank: return "low_rank";
        case GenKind::rank_deficient: return "rank_deficient";
        case GenKind::diagonal: return "diagonal";
        case GenKind::explicit_values: return "explicit";
    }
    return "unknown";
}

GenKind kind_from_name(const std::string& name) {
    if (name == "random") return GenKind::random;
    if (name == "low_rank") return GenKind::low_rank;
    if (name == "rank_deficient") return GenKind::rank_deficient;
    if (name == "diagonal") return GenKind::diagonal;
    if (name == "explicit") return GenKind::explicit_values;
    throw FormatError("unknown generator kind: " + name);
}

const char* strategy_name(StrategyMode m) {
    return m == StrategyMode::multipartite ? "multipartite" : "symmetric_clique";
}

StrategyMode strategy_from_name(const std::string& name) {
    if (name == "multipartite") return StrategyMode::multipartite;
    if (name == "symmetric_clique" || name == "symmetric-clique")
        return StrategyMode::symmetric_clique;
    throw FormatError("unknown strategy: " + name);
}

// Keys emitted in sorted order, by hand; the schema is fixed.
std::string scenario_spec_json(const Scenario& sc) {
    const GenSpec& g = sc.spec;
    std::string out = "{";
    if (!g.core_dims.empty()) out += "\"core_dims\": " + int_list(g.core_dims) + ", ";
    if (!g.diag.empty()) out += "\"diag\": " + double_list(g.diag) + ", ";
    out += "\"dims\": " + int_list(g.dims) + ", ";
    out += "\"kind\": " + quote(kind_name(g.kind)) + ", ";
    out += "\"name\": " + quote(sc.name) + ", ";
    if (g.kind == GenKind::low_rank) out += "\"rank\": " + std::to_string(g.rank) + ", ";
    out += "\"seed\": " + std::to_string(g.seed);
    if (g.kind == GenKind::explicit_values) out += ", \"values\": " + double_list(g.values);
    out += "}";
    return out;
}

std::string scheme_json(const CoefficientScheme& s) {
    if (s.kind == SchemeKind::affine) {
        return "{\"a\": " + fmt(s.a) + ", \"b\": " + fmt(s.b) + ", \"scheme\": \"affine\"}";
    }
    return "{\"scheme\": \"explicit\", \"values\": " + double_list(s.values) + "}";
}

}  // namespace

std::string config_to_json(const ExperimentConfig& cfg) {
    std::string out = "{";
    out += "\"cp_rank\": " + std::to_string(cfg.cp_rank) + ", ";
    out += "\"cp_restarts\": " + std::to_string(cfg.cp_restarts) + ", ";
    out += "\"master_seed\": " + std::to_string(cfg.master_seed) + ", ";
    out += "\"output_format\": " + quote(cfg.output_format) + ", ";
    out += "\"scenarios\": " +
           list(cfg.scenarios, [](const Scenario& sc) { return scenario_spec_json(sc); }) + ", ";
    out += "\"scheme\": " + scheme_json(cfg.scheme) + ", ";
    out += "\"solver\": {\"dedup_tol\": " + fmt(cfg.solver.dedup_tol) +
           ", \"max_iters\": " + std::to_string(cfg.solver.max_iters) +
           ", \"seed\": " + std::to_string(cfg.solver.seed) +
           ", \"starts\": " + std::to_string(cfg.solver.starts) +
           ", \"tol\": " + fmt(cfg.solver.tol) + "}, ";
    out += "\"strategy\": {\"mode\": " + quote(strategy_name(cfg.strategy.mode)) +
           ", \"threshold\": " + fmt(cfg.strategy.threshold) + "}, ";
    out += "\"tucker_core_dims\": " + int_list(cfg.tucker_core_dims);
    out += "}";
    return out;
}

ExperimentConfig default_config() {
    ExperimentConfig cfg;
    cfg.strategy = ComplexStrategy{StrategyMode::multipartite, 0.0};
    cfg.scheme = CoefficientScheme::affine(1.0, 2.0);
    cfg.solver = SolverConfig{};
    cfg.solver.tol = 1e-8;
    cfg.cp_rank = 3;
    cfg.cp_restarts = 8;
    cfg.tucker_core_dims = {2, 2, 2};
    cfg.master_seed = 42;

    Scenario random;
    random.name = "random";
    random.spec.kind = GenKind::random;
    random.spec.dims = {3, 3, 3};

    Scenario low_rank;
    low_rank.name = "low_rank";
    low_rank.spec.kind = GenKind::low_rank;
    low_rank.spec.dims = {3, 3, 3};
    low_rank.spec.rank = 2;

    Scenario rank_deficient;
    rank_deficient.name = "rank_deficient";
    rank_deficient.spec.kind = GenKind::rank_deficient;
    rank_deficient.spec.dims = {3, 3, 3};
    rank_deficient.spec.core_dims = {2, 2, 2};

    cfg.scenarios = {random, low_rank, rank_deficient};
    return cfg;
}

ValidationReport run_validation(const ExperimentConfig& cfg) {
    ValidationReport report;
    report.config = cfg;

    for (std::size_t idx = 0; idx < cfg.scenarios.size(); ++idx) {
        const Scenario& sc = cfg.scenarios[idx];
        ScenarioResult rec;
        rec.name = sc.name;

        try {
            GenSpec spec = sc.spec;
            if (spec.seed == 0) spec.seed = mix_seed(cfg.master_seed, idx);
            rec.seed = spec.seed;
            rec.dims = spec.dims;

            const Tensor t = generate(spec);
            const int d = t.order();

            const SimplicialComplex complex = build_complex(t, cfg.strategy);
            rec.betti = betti(complex, d - 1);
            rec.coeffs = make_coefficients(cfg.scheme, d);
            rec.lambda_topo = topological_eigenvalue(rec.betti, rec.coeffs);
            rec.count_bound = eigenvalue_count_bound(rec.betti);

            const CPModel cp = cp_als(t, cfg.cp_rank, cfg.cp_restarts, mix_seed(spec.seed, 1));
            rec.cp_eigenvalues = cp_eigenvalues(cp);
            rec.mse_cp = mse(t, reconstruct(cp));

            const TuckerModel tucker = tucker_hosvd(t, cfg.tucker_core_dims);
            rec.tucker_eigenvalues = tucker_eigenvalues(t, tucker);
            rec.mse_tucker = mse(t, reconstruct(tucker));

            // The solver demands symmetry, so the diagnostic runs on the
            // symmetrized tensor (complex and bound included, same strategy).
            SolverConfig solver = cfg.solver;
            if (solver.seed == 0) solver.seed = mix_seed(spec.seed, 2);
            const CountBoundDiagnostic diag =
                count_bound_diagnostic(symmetrize(t), cfg.strategy, solver);
            rec.solver_distinct_eigenvalues = diag.distinct_eigenvalues;
            rec.bound_satisfied = diag.satisfied;
        } catch (const std::exception& e) {
            rec.error = e.what();
        }
        report.records.push_back(std::move(rec));
    }

    std::sort(report.records.begin(), report.records.end(),
              [](const ScenarioResult& a, const ScenarioResult& b) { return a.name < b.name; });
    return report;
}

std::string report_to_json(const ValidationReport& report) {
    std::string out = "{\n";
    out += "  \"config\": " + config_to_json(report.config) + ",\n";
    out += "  \"records\": [";
    for (std::size_t i = 0; i < report.records.size(); ++i) {
        const ScenarioResult& r = report.records[i];
        out += i ? ",\n    {" : "\n    {";
        out += "\"betti\": " + int_list(r.betti) + ", ";
        out += "\"bound_satisfied\": " + std::string(r.bound_satisfied ? "true" : "false") + ", ";
        out += "\"coeffs\": " + double_list(r.coeffs) + ", ";
        out += "\"count_bound\": " + std::to_string(r.count_bound) + ", ";
        out += "\"cp_eigenvalues\": " + double_list(r.cp_eigenvalues) + ", ";
        out += "\"dims\": " + int_list(r.dims) + ", ";
        out += "\"error\": " + quote(r.error) + ", ";
        out += "\"lambda_topo\": " + fmt(r.lambda_topo) + ", ";
        out += "\"mse_cp\": " + fmt(r.mse_cp) + ", ";
        out += "\"mse_tucker\": " + fmt(r.mse_tucker) + ", ";
        out += "\"name\": " + quote(r.name) + ", ";
        out += "\"seed\": " + std::to_string(r.seed) + ", ";
        out += "\"solver_distinct_eigenvalues\": " + std::to_string(r.solver_distinct_eigenvalues) + ", ";
        out += "\"tucker_eigenvalues\": " +
               list(r.tucker_eigenvalues,
                    [](const std::vector<double>& row) { return double_list(row); });
        out += "}";
    }
    out += report.records.empty() ? "],\n" : "\n  ],\n";
    out += "  \"tool\": " + quote(report.tool) + ",\n";
    out += "  \"version\": " + quote(report.version) + "\n";
    out += "}\n";
    return out;
}

std::string report_to_csv(const ValidationReport& report) {
    std::string out =
        "name,seed,dims,betti,coeffs,lambda_topo,count_bound,cp_eigenvalues,"
        "tucker_eigenvalues,mse_cp,mse_tucker,solver_distinct_eigenvalues,"
        "bound_satisfied,error\n";
    auto join = [](const std::vector<std::string>& xs, const std::string& sep) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i) s += sep;
            s += xs[i];
        }
        return s;
    };
    for (const ScenarioResult& r : report.records) {
        std::vector<std::string> dims, betti_s, coeffs, cps, tuckers;
        for (int x : r.dims) dims.push_back(std::to_string(x));
        for (int x : r.betti) betti_s.push_back(std::to_string(x));
        for (double x : r.coeffs) coeffs.push_back(fmt(x));
        for (double x : r.cp_eigenvalues) cps.push_back(fmt(x));
        for (const auto& row : r.tucker_eigenvalues) {
            std::vector<std::string> cells;
            for (double x : row) cells.push_back(fmt(x));
            tuckers.push_back(join(cells, ";"));
        }
        std::string error = r.error;
        for (char& c : error)
            if (c == ',' || c == '\n') c = ';';
        out += r.name + "," + std::to_string(r.seed) + "," + join(dims, "x") + "," +
               join(betti_s, ";") + "," + join(coeffs, ";") + "," + fmt(r.lambda_topo) + "," +
               std::to_string(r.count_bound) + "," + join(cps, ";") + "," + join(tuckers, "|") +
               "," + fmt(r.mse_cp) + "," + fmt(r.mse_tucker) + "," +
               std::to_string(r.solver_distinct_eigenvalues) + "," +
               (r.bound_satisfied ? "true" : "false") + "," + error + "\n";
    }
    return out;
}

namespace {

GenSpec parse_spec(const json& j) {
    GenSpec g;
    g.kind = kind_from_name(j.at("kind").get<std::string>());
    g.dims = j.at("dims").get<std::vector<int>>();
    g.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("rank")) g.rank = j.at("rank").get<int>();
    if (j.contains("core_dims")) g.core_dims = j.at("core_dims").get<std::vector<int>>();
    if (j.contains("diag")) g.diag = j.at("diag").get<std::vector<double>>();
    if (j.contains("values")) g.values = j.at("values").get<std::vector<double>>();
    return g;
}

}  // namespace

ExperimentConfig load_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("config: ") + e.what());
    }

    ExperimentConfig cfg = default_config();
    try {
        if (j.contains("master_seed")) cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
        if (j.contains("output_format")) {
            cfg.output_format = j.at("output_format").get<std::string>();
            if (cfg.output_format != "json" && cfg.output_format != "csv")
                throw FormatError("config: output_format must be json or csv");
        }
        if (j.contains("cp_rank")) cfg.cp_rank = j.at("cp_rank").get<int>();
        if (j.contains("cp_restarts")) cfg.cp_restarts = j.at("cp_restarts").get<int>();
        if (j.contains("tucker_core_dims"))
            cfg.tucker_core_dims = j.at("tucker_core_dims").get<std::vector<int>>();
        if (j.contains("strategy")) {
            const json& s = j.at("strategy");
            cfg.strategy.mode = strategy_from_name(s.at("mode").get<std::string>());
            cfg.strategy.threshold = s.value("threshold", 0.0);
        }
        if (j.contains("scheme")) {
            const json& s = j.at("scheme");
            const std::string kind = s.at("scheme").get<std::string>();
            if (kind == "affine") {
                cfg.scheme = CoefficientScheme::affine(s.value("a", 1.0), s.value("b", 2.0));
            } else if (kind == "explicit") {
                cfg.scheme = CoefficientScheme::explicit_values(
                    s.at("values").get<std::vector<double>>());
            } else {
                throw FormatError("config: scheme must be affine or explicit");
            }
        }
        if (j.contains("solver")) {
            const json& s = j.at("solver");
            cfg.solver.starts = s.value("starts", cfg.solver.starts);
            cfg.solver.max_iters = s.value("max_iters", cfg.solver.max_iters);
            cfg.solver.tol = s.value("tol", cfg.solver.tol);
            cfg.solver.dedup_tol = s.value("dedup_tol", cfg.solver.dedup_tol);
            cfg.solver.seed = s.value("seed", cfg.solver.seed);
        }
        if (j.contains("scenarios")) {
            cfg.scenarios.clear();
            for (const json& sj : j.at("scenarios")) {
                Scenario sc;
                sc.name = sj.at("name").get<std::string>();
                sc.spec = parse_spec(sj);
                cfg.scenarios.push_back(std::move(sc));
            }
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("config: ") + e.what());
    }

    std::set<std::string> names;
    for (const Scenario& sc : cfg.scenarios) {
        if (!names.insert(sc.name).second)
            throw FormatError("config: duplicate scenario name: " + sc.name);
        if (sc.spec.dims.size() > 4)
            throw FormatError("config: scenario tensors are capped at order 4");
    }
    if (cfg.cp_rank < 1 || cfg.cp_restarts < 1)
        throw FormatError("config: cp_rank and cp_restarts must be positive");
    if (cfg.solver.starts < 1 || cfg.solver.max_iters < 1 || cfg.solver.tol <= 0.0 ||
        cfg.solver.dedup_tol <= 0.0)
        throw FormatError("config: invalid solver parameters");

    if (const char* env = std::getenv("TOPOTENSOR_SEED")) {
        cfg.master_seed = std::strtoull(env, nullptr, 10);
    }
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw FormatError("cannot open: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return load_config(ss.str());
}

}  // namespace topotensor
