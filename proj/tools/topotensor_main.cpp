// topotensor command-line driver: synthetic tensor generation, Betti
// signatures, Z-eigenpairs, topological eigenvalues, CP/Tucker summaries,
// and the validation harness.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "topotensor/harness.hpp"

namespace tt = topotensor;

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// "3x3x3" or "3,3,3" -> {3, 3, 3}
std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    std::string token;
    std::istringstream ss(text);
    while (std::getline(ss, token, text.find('x') != std::string::npos ? 'x' : ',')) {
        if (token.empty()) continue;
        dims.push_back(std::stoi(token));
    }
    if (dims.empty()) throw CLI::ValidationError("dims", "expected e.g. 3x3x3");
    return dims;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> xs;
    std::string token;
    std::istringstream ss(text);
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        xs.push_back(std::stod(token));
    }
    return xs;
}

// "affine:1,2" or "explicit:2,3,4"
tt::CoefficientScheme parse_scheme(const std::string& text) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (kind == "affine") {
        const auto values = parse_double_list(args);
        if (values.size() != 2) throw CLI::ValidationError("scheme", "affine needs a,b");
        return tt::CoefficientScheme::affine(values[0], values[1]);
    }
    if (kind == "explicit") {
        const auto values = parse_double_list(args);
        if (values.empty()) throw CLI::ValidationError("scheme", "explicit needs values");
        return tt::CoefficientScheme::explicit_values(values);
    }
    throw CLI::ValidationError("scheme", "expected affine:a,b or explicit:v1,v2,...");
}

tt::StrategyMode parse_strategy(const std::string& text) {
    if (text == "multipartite") return tt::StrategyMode::multipartite;
    if (text == "symmetric-clique" || text == "symmetric_clique")
        return tt::StrategyMode::symmetric_clique;
    throw CLI::ValidationError("strategy", "expected multipartite or symmetric-clique");
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw tt::FormatError("cannot open for writing: " + out_path);
    os << text;
}

std::string betti_to_string(const tt::BettiSignature& b) {
    std::string s = "[";
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(b[i]);
    }
    return s + "]";
}

bool is_scpx_file(const std::string& path) {
    std::ifstream is(path);
    std::string magic;
    is >> magic;
    return magic == "scpx";
}

struct CommonOpts {
    double threshold = 0.0;
    std::string strategy = "multipartite";
    std::string scheme = "affine:1,2";
    std::string out;
    std::uint64_t seed = 0;
    double tol = 1e-10;
    int max_iters = 500;
    int starts = 64;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"topological tensor eigenvalue analysis"};
    app.require_subcommand(1);

    CommonOpts opt;

    // gen
    auto* gen = app.add_subcommand("gen", "generate a tensor and write it as dten");
    std::string gen_kind = "random", gen_dims = "3x3x3", gen_diag, gen_core;
    int gen_rank = 1;
    gen->add_option("--kind", gen_kind, "random|low-rank|rank-deficient|diagonal");
    gen->add_option("--dims", gen_dims, "tensor shape, e.g. 3x3x3");
    gen->add_option("--seed", opt.seed, "generator seed");
    gen->add_option("--rank", gen_rank, "component count for low-rank");
    gen->add_option("--core", gen_core, "core shape for rank-deficient, e.g. 2x2x2");
    gen->add_option("--diag", gen_diag, "diagonal values, e.g. 3,1");
    gen->add_option("--out", opt.out, "output path (stdout if omitted)");

    // betti
    auto* betti_cmd = app.add_subcommand("betti", "Betti signature of a dten or scpx file");
    std::string betti_file;
    betti_cmd->add_option("file", betti_file, "input file")->required();
    betti_cmd->add_option("--threshold", opt.threshold, "complex threshold");
    betti_cmd->add_option("--strategy", opt.strategy, "multipartite|symmetric-clique");
    betti_cmd->add_option("--out", opt.out, "output path");

    // eig
    auto* eig = app.add_subcommand("eig", "Z-eigenpairs of a symmetric tensor");
    std::string eig_file;
    eig->add_option("file", eig_file, "dten file")->required();
    eig->add_option("--tol", opt.tol, "residual tolerance");
    eig->add_option("--max-iters", opt.max_iters, "iteration cap per start");
    eig->add_option("--starts", opt.starts, "random starts");
    eig->add_option("--seed", opt.seed, "start seed");
    eig->add_option("--out", opt.out, "output path");

    // topo-eig
    auto* topo = app.add_subcommand("topo-eig", "topological eigenvalue report");
    std::string topo_file;
    topo->add_option("file", topo_file, "dten file")->required();
    topo->add_option("--threshold", opt.threshold, "complex threshold");
    topo->add_option("--strategy", opt.strategy, "multipartite|symmetric-clique");
    topo->add_option("--scheme", opt.scheme, "affine:a,b or explicit:v1,v2,...");
    topo->add_option("--out", opt.out, "output path");

    // decomp cp | tucker
    auto* decomp = app.add_subcommand("decomp", "CP or Tucker summary");
    decomp->require_subcommand(1);
    auto* cp = decomp->add_subcommand("cp", "CP decomposition by ALS");
    std::string cp_file;
    int cp_rank = 3, cp_restarts = 8;
    cp->add_option("file", cp_file, "dten file")->required();
    cp->add_option("--rank", cp_rank, "CP rank");
    cp->add_option("--restarts", cp_restarts, "ALS restarts");
    cp->add_option("--seed", opt.seed, "restart seed");
    cp->add_option("--out", opt.out, "output path");
    auto* tucker = decomp->add_subcommand("tucker", "Tucker decomposition by HOSVD");
    std::string tucker_file, tucker_core = "2x2x2";
    tucker->add_option("file", tucker_file, "dten file")->required();
    tucker->add_option("--core", tucker_core, "core shape, e.g. 2x2x2");
    tucker->add_option("--out", opt.out, "output path");

    // validate
    auto* validate = app.add_subcommand("validate", "run the validation harness");
    std::string config_path, format;
    validate->add_option("config", config_path, "config json (built-in default if omitted)");
    validate->add_option("--format", format, "json|csv (overrides config)");
    validate->add_option("--out", opt.out, "output path");

    // subdivide
    auto* subdivide = app.add_subcommand("subdivide", "barycentric subdivision of a scpx file");
    std::string sub_file;
    subdivide->add_option("file", sub_file, "scpx file")->required();
    subdivide->add_option("--out", opt.out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 1;
    }

    try {
        if (*gen) {
            tt::GenSpec spec;
            std::string kind = gen_kind;
            for (char& c : kind)
                if (c == '-') c = '_';
            if (kind == "random") spec.kind = tt::GenKind::random;
            else if (kind == "low_rank") spec.kind = tt::GenKind::low_rank;
            else if (kind == "rank_deficient") spec.kind = tt::GenKind::rank_deficient;
            else if (kind == "diagonal") spec.kind = tt::GenKind::diagonal;
            else {
                std::cerr << "unknown kind: " << gen_kind << "\n";
                return 1;
            }
            spec.dims = parse_dims(gen_dims);
            spec.seed = opt.seed;
            spec.rank = gen_rank;
            if (!gen_core.empty()) spec.core_dims = parse_dims(gen_core);
            if (!gen_diag.empty()) spec.diag = parse_double_list(gen_diag);
            std::ostringstream os;
            tt::write_dten(os, tt::generate(spec));
            write_output(opt.out, os.str());
        } else if (*betti_cmd) {
            tt::SimplicialComplex complex;
            int up_to = 0;
            if (is_scpx_file(betti_file)) {
                complex = tt::read_scpx_file(betti_file);
                up_to = std::max(complex.dimension(), 0);
            } else {
                const tt::Tensor t = tt::read_dten_file(betti_file);
                complex = tt::build_complex(
                    t, tt::ComplexStrategy{parse_strategy(opt.strategy), opt.threshold});
                up_to = t.order() - 1;
            }
            write_output(opt.out, betti_to_string(tt::betti(complex, up_to)) + "\n");
        } else if (*eig) {
            const tt::Tensor t = tt::read_dten_file(eig_file);
            tt::SolverConfig cfg;
            cfg.tol = opt.tol;
            cfg.max_iters = opt.max_iters;
            cfg.starts = opt.starts;
            cfg.seed = opt.seed;
            std::string out;
            for (const tt::EigenPair& p : tt::z_eigenpairs(t, cfg)) {
                out += "lambda " + fmt(p.lambda) + "  v [";
                for (std::size_t i = 0; i < p.v.size(); ++i)
                    out += (i ? ", " : "") + fmt(p.v[i]);
                out += "]  residual " + fmt(p.residual) + "\n";
            }
            write_output(opt.out, out);
        } else if (*topo) {
            const tt::Tensor t = tt::read_dten_file(topo_file);
            const tt::SimplicialComplex complex = tt::build_complex(
                t, tt::ComplexStrategy{parse_strategy(opt.strategy), opt.threshold});
            const tt::BettiSignature b = tt::betti(complex, t.order() - 1);
            const tt::TopoEigenReport r = tt::topo_eigen_report(b, parse_scheme(opt.scheme));
            std::string out = "{\"betti\": " + betti_to_string(r.betti) + ", \"coeffs\": [";
            for (std::size_t i = 0; i < r.coeffs.size(); ++i)
                out += (i ? ", " : "") + fmt(r.coeffs[i]);
            out += "], \"count_bound\": " + std::to_string(r.count_bound);
            out += ", \"lambda_topo\": " + fmt(r.lambda_topo) + "}\n";
            write_output(opt.out, out);
        } else if (*cp) {
            const tt::Tensor t = tt::read_dten_file(cp_file);
            const tt::CPModel model = tt::cp_als(t, cp_rank, cp_restarts, opt.seed);
            std::string out = "cp rank " + std::to_string(model.rank) + "\nweights [";
            for (std::size_t i = 0; i < model.weights.size(); ++i)
                out += (i ? ", " : "") + fmt(model.weights[i]);
            out += "]\nmse " + fmt(tt::mse(t, tt::reconstruct(model))) + "\n";
            write_output(opt.out, out);
        } else if (*tucker) {
            const tt::Tensor t = tt::read_dten_file(tucker_file);
            const tt::TuckerModel model = tt::tucker_hosvd(t, parse_dims(tucker_core));
            std::string out = "tucker core";
            for (int d : model.core.dims()) out += " " + std::to_string(d);
            out += "\nmode singular values\n";
            for (const auto& row : tt::tucker_eigenvalues(t, model)) {
                out += "[";
                for (std::size_t i = 0; i < row.size(); ++i) out += (i ? ", " : "") + fmt(row[i]);
                out += "]\n";
            }
            out += "mse " + fmt(tt::mse(t, tt::reconstruct(model))) + "\n";
            write_output(opt.out, out);
        } else if (*validate) {
            tt::ExperimentConfig cfg;
            if (config_path.empty()) {
                cfg = tt::default_config();
                if (const char* env = std::getenv("TOPOTENSOR_SEED"))
                    cfg.master_seed = std::strtoull(env, nullptr, 10);
            } else {
                cfg = tt::load_config_file(config_path);
            }
            if (!format.empty()) {
                if (format != "json" && format != "csv") {
                    std::cerr << "format must be json or csv\n";
                    return 1;
                }
                cfg.output_format = format;
            }
            const tt::ValidationReport report = tt::run_validation(cfg);
            write_output(opt.out, cfg.output_format == "csv" ? tt::report_to_csv(report)
                                                             : tt::report_to_json(report));
        } else if (*subdivide) {
            const tt::SimplicialComplex complex = tt::read_scpx_file(sub_file);
            std::ostringstream os;
            tt::write_scpx(os, tt::barycentric_subdivide(complex));
            write_output(opt.out, os.str());
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
