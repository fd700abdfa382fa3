// End-to-end checks of the command-line tool. Expects the binary path as
// argv[1] and a scratch directory as argv[2].

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "topotensor/harness.hpp"

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    std::cout << (ok ? "  ok  " : "  FAIL ") << what << "\n";
    if (!ok) ++failures;
}

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

int run(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return status < 0 ? status : WEXITSTATUS(status);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: test_cli <topotensor-binary> <scratch-dir>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const std::string dir = argv[2];
    const std::string quiet = " 2>/dev/null";

    // gen writes a dten file
    const std::string dten = dir + "/t.dten";
    check(run(cli + " gen --kind random --dims 3x3x3 --seed 7 --out " + dten) == 0,
          "gen exits 0");
    {
        std::ifstream is(dten);
        std::string magic;
        int version = 0;
        is >> magic >> version;
        check(magic == "dten" && version == 1, "gen wrote a dten v1 header");
    }

    // the written file is bitwise the in-memory generate() result
    {
        topotensor::GenSpec spec;
        spec.kind = topotensor::GenKind::random;
        spec.dims = {3, 3, 3};
        spec.seed = 7;
        const topotensor::Tensor mem = topotensor::generate(spec);
        const topotensor::Tensor file = topotensor::read_dten_file(dten);
        check(file.dims() == mem.dims() && file.values() == mem.values(),
              "gen round-trips the in-memory tensor bitwise");
    }

    // betti on the generated tensor (dense 3x3x3, multipartite): the join of
    // three 3-point sets, which leaves one component, no loops, 8 voids
    check(run(cli + " betti " + dten + " --out " + dir + "/b.txt") == 0, "betti exits 0");
    check(slurp(dir + "/b.txt") == "[1, 0, 8]\n", "betti of a dense 3x3x3 tensor");

    // betti accepts a scpx file: boundary of the tetrahedron
    const std::string scpx = dir + "/tet.scpx";
    {
        std::ofstream os(scpx);
        os << "scpx 1\n4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n";
    }
    check(run(cli + " betti " + scpx + " --out " + dir + "/tet.txt") == 0,
          "betti on scpx exits 0");
    check(slurp(dir + "/tet.txt") == "[1, 0, 1]\n", "betti of the tetrahedron boundary");

    // topo-eig: dense 2x3 matrix gives the complete bipartite complex with
    // betti [1, 2]; explicit scheme 2,3 puts lambda at 8
    const std::string k23 = dir + "/k23.dten";
    {
        std::ofstream os(k23);
        os << "dten 1\n2\n2 3\n1 1 1 1 1 1\n";
    }
    check(run(cli + " topo-eig " + k23 + " --scheme explicit:2,3 --out " + dir + "/topo.json") == 0,
          "topo-eig exits 0");
    {
        const std::string out = slurp(dir + "/topo.json");
        check(out.find("\"betti\": [1, 2]") != std::string::npos, "topo-eig betti [1, 2]");
        check(out.find("\"lambda_topo\": 8") != std::string::npos, "topo-eig lambda 8");
    }

    // eig on a symmetric tensor file matches the in-memory pipeline
    const std::string sym = dir + "/sym.dten";
    {
        std::ofstream os(sym);
        os << "dten 1\n3\n2 2 2\n";
        os << "3 0 0 0 0 0 0 1\n";  // diagonal tensor diag = (3, 1)
    }
    check(run(cli + " eig " + sym + " --out " + dir + "/eig.txt") == 0, "eig exits 0");
    {
        const std::string out = slurp(dir + "/eig.txt");
        check(out.find("lambda 3") != std::string::npos, "eig found lambda 3");
        check(out.find("lambda 1") != std::string::npos, "eig found lambda 1");

        // the file pipeline agrees with the in-memory solver
        const topotensor::Tensor t = topotensor::read_dten_file(sym);
        const auto pairs = topotensor::z_eigenpairs(t, topotensor::SolverConfig{});
        bool all_present = true;
        for (const auto& p : pairs) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "lambda %.17g", p.lambda);
            if (out.find(buf) == std::string::npos) all_present = false;
        }
        check(all_present && !pairs.empty(), "eig output matches the in-memory pairs");
    }

    // decomp summaries
    check(run(cli + " decomp cp " + dten + " --rank 3 --seed 5 --out " + dir + "/cp.txt") == 0,
          "decomp cp exits 0");
    check(slurp(dir + "/cp.txt").find("weights [") != std::string::npos, "cp prints weights");
    check(run(cli + " decomp tucker " + dten + " --core 2x2x2 --out " + dir + "/tk.txt") == 0,
          "decomp tucker exits 0");
    check(slurp(dir + "/tk.txt").find("mode singular values") != std::string::npos,
          "tucker prints singular values");

    // subdivide: the 4-cycle becomes the 8-cycle
    const std::string cyc = dir + "/cycle.scpx";
    {
        std::ofstream os(cyc);
        os << "scpx 1\n4\n0 1\n1 2\n2 3\n0 3\n";
    }
    check(run(cli + " subdivide " + cyc + " --out " + dir + "/sd.scpx") == 0,
          "subdivide exits 0");
    {
        const std::string out = slurp(dir + "/sd.scpx");
        int lines = 0;
        for (char ch : out)
            if (ch == '\n') ++lines;
        check(out.rfind("scpx 1\n8\n", 0) == 0, "subdivision has 8 vertices");
        check(lines == 2 + 8, "subdivision has 8 maximal edges");
    }

    // validate: byte-identical output across runs, csv variant works
    const std::string r1 = dir + "/r1.json", r2 = dir + "/r2.json";
    check(run(cli + " validate --out " + r1) == 0, "validate exits 0");
    check(run(cli + " validate --out " + r2) == 0, "validate again exits 0");
    check(!slurp(r1).empty() && slurp(r1) == slurp(r2), "validate is byte-deterministic");
    check(run(cli + " validate --format csv --out " + dir + "/r.csv") == 0, "validate csv");
    check(slurp(dir + "/r.csv").rfind("name,seed,", 0) == 0, "csv header present");

    // config file path + TOPOTENSOR_SEED override changes the report
    const std::string cfg_path = dir + "/cfg.json";
    {
        std::ofstream os(cfg_path);
        os << R"({"master_seed": 42})";
    }
    check(run(cli + " validate " + cfg_path + " --out " + dir + "/r3.json") == 0,
          "validate with config file");
    check(slurp(dir + "/r3.json") == slurp(r1), "master_seed 42 matches the default");
    check(run("TOPOTENSOR_SEED=99 " + cli + " validate " + cfg_path + " --out " + dir +
              "/r4.json") == 0,
          "validate with env override");
    check(slurp(dir + "/r4.json") != slurp(r1), "env seed changes the report");

    // exit codes: usage errors are 1, computation errors are 2
    check(run(cli + " --definitely-not-a-flag" + quiet) == 1, "unknown flag exits 1");
    check(run(cli + " betti /nonexistent.dten" + quiet) == 2, "missing file exits 2");
    {
        std::ofstream os(dir + "/asym.dten");
        os << "dten 1\n2\n2 2\n1 2 3 4\n";
    }
    check(run(cli + " eig " + dir + "/asym.dten" + quiet) == 2,
          "non-symmetric input exits 2");

    std::cout << (failures ? "FAILED " : "passed ") << "cli checks\n";
    return failures ? 1 : 0;
}
