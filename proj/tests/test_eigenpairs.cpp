#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"
#include "topotensor/eigenpairs.hpp"
#include "topotensor/linalg.hpp"

using namespace topotensor;

namespace {

Tensor diagonal_3way(std::vector<double> diag) {
    const int n = static_cast<int>(diag.size());
    Tensor t({n, n, n});
    for (int i = 0; i < n; ++i) t.at({i, i, i}) = diag[i];
    return t;
}

bool has_pair(const std::vector<EigenPair>& pairs, double lambda,
              const std::vector<double>& v, double tol) {
    for (const EigenPair& p : pairs) {
        if (std::abs(p.lambda - lambda) > tol) continue;
        double dminus = 0.0, dplus = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            dminus += (p.v[i] - v[i]) * (p.v[i] - v[i]);
            dplus += (p.v[i] + v[i]) * (p.v[i] + v[i]);
        }
        if (std::min(std::sqrt(dminus), std::sqrt(dplus)) < 1e-6) return true;
    }
    return false;
}

bool has_lambda(const std::vector<EigenPair>& pairs, double lambda, double tol) {
    return std::any_of(pairs.begin(), pairs.end(), [&](const EigenPair& p) {
        return std::abs(p.lambda - lambda) <= tol;
    });
}

}  // namespace

TEST_CASE("z_eigenpairs: 2x2 diagonal matrix") {
    Tensor t({2, 2}, {2, 0, 0, 1});
    const auto pairs = z_eigenpairs(t, SolverConfig{});
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].lambda == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(pairs[1].lambda == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(has_pair(pairs, 2.0, {1.0, 0.0}, 1e-8));
    CHECK(has_pair(pairs, 1.0, {0.0, 1.0}, 1e-8));
}

TEST_CASE("z_eigenpairs: 3-way diagonal tensor contains the axis pairs") {
    const auto pairs = z_eigenpairs(diagonal_3way({3.0, 1.0}), SolverConfig{});
    CHECK(has_pair(pairs, 3.0, {1.0, 0.0}, 1e-8));
    CHECK(has_pair(pairs, 1.0, {0.0, 1.0}, 1e-8));
    // the mixed stationary direction: v = (1, 3)/sqrt(10), lambda = 3/sqrt(10)
    CHECK(has_lambda(pairs, 3.0 / std::sqrt(10.0), 1e-8));
    CHECK(pairs.size() == 3);
}

TEST_CASE("z_eigenpairs: rejects non-symmetric and bad configs") {
    CHECK_THROWS_AS(z_eigenpairs(ttest::random_tensor({2, 2, 2}, 3), SolverConfig{}),
                    SymmetryError);
    SolverConfig bad;
    bad.tol = 0.0;
    CHECK_THROWS_AS(z_eigenpairs(ttest::random_symmetric(2, 3, 3), bad), ValueError);
}

TEST_CASE("z_eigenpairs: unreachable tolerance raises ConvergenceError") {
    SolverConfig cfg;
    cfg.tol = 1e-40;
    cfg.starts = 4;
    try {
        z_eigenpairs(ttest::random_symmetric(2, 3, 21), cfg);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.best_residual > 0.0);
        CHECK(e.best_residual < 1e-8);  // it converged fine, just not to 1e-40
    }
}

TEST_CASE("z_eigenpairs: returned pairs satisfy the defining equation") {
    for (std::uint64_t seed : {100u, 101u, 102u}) {
        const Tensor t = ttest::random_symmetric(3, 3, seed);
        const auto pairs = z_eigenpairs(t, SolverConfig{});
        REQUIRE(!pairs.empty());
        for (const EigenPair& p : pairs) {
            CHECK(p.residual < 1e-10);
            CHECK(residual(t, p) == doctest::Approx(p.residual).epsilon(1e-12));
            double nrm = 0.0;
            for (double x : p.v) nrm += x * x;
            CHECK(std::abs(std::sqrt(nrm) - 1.0) < 1e-10);
            // lambda equals the Rayleigh-style contraction value
            const auto w = contract_all_but_one(t, p.v);
            double vw = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i) vw += p.v[i] * w[i];
            CHECK(std::abs(vw - p.lambda) < 1e-10);
            // canonical orientation: first significant component positive
            for (double x : p.v) {
                if (std::abs(x) > 1e-9) {
                    CHECK(x > 0.0);
                    break;
                }
            }
        }
        // descending order
        for (std::size_t i = 0; i + 1 < pairs.size(); ++i)
            CHECK(pairs[i].lambda >= pairs[i + 1].lambda);
    }
}

TEST_CASE("z_eigenpairs matches a classical eigensolver for matrices") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const int n = 2 + static_cast<int>(seed % 3);
        const Tensor t = ttest::random_symmetric(n, 2, 7000 + seed);
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = t.at({i, j});
        const EighResult classical = jacobi_eigh(m);

        const auto pairs = z_eigenpairs(t, SolverConfig{});
        REQUIRE(pairs.size() == static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            CHECK(pairs[i].lambda == doctest::Approx(classical.eigenvalues[i]).epsilon(1e-8));
    }
}

TEST_CASE("oracle_sweep_2: isotropic matrix collapses to one pair") {
    Tensor id({2, 2}, {1, 0, 0, 1});
    const auto pairs = oracle_sweep_2(id);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].lambda == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("oracle_sweep_2: diagonal 3-way tensor") {
    const auto pairs = oracle_sweep_2(diagonal_3way({3.0, 1.0}));
    CHECK(has_pair(pairs, 3.0, {1.0, 0.0}, 1e-9));
    CHECK(has_pair(pairs, 1.0, {0.0, 1.0}, 1e-9));
    CHECK(pairs.size() == 3);
}

TEST_CASE("oracle_sweep_2: all-ones 2x2x2 tensor") {
    Tensor t({2, 2, 2}, std::vector<double>(8, 1.0));
    const auto pairs = oracle_sweep_2(t);
    // stationary at v = (1,1)/sqrt(2) with lambda = 2*sqrt(2), and along
    // (1,-1)/sqrt(2) the contraction vanishes, giving lambda = 0
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].lambda == doctest::Approx(2.8284271247461903).epsilon(1e-9));
    CHECK(pairs[1].lambda == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(has_pair(pairs, 2.8284271247461903,
                   {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}, 1e-6));
}

TEST_CASE("solver recalls every oracle pair on n = 2 tensors") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const int d = seed % 2 == 0 ? 3 : 4;
        const Tensor t = ttest::random_symmetric(2, d, 8000 + seed);
        const auto oracle = oracle_sweep_2(t);
        const auto pairs = z_eigenpairs(t, SolverConfig{});
        for (const EigenPair& o : oracle) {
            CHECK_MESSAGE(has_lambda(pairs, o.lambda, 1e-6),
                          "seed ", seed, " lost lambda ", o.lambda);
        }
        // anything extra the solver found must still be a certified pair
        for (const EigenPair& p : pairs) CHECK(p.residual < SolverConfig{}.tol);
    }
}

TEST_CASE("eigenvalues scale linearly with the tensor") {
    const double alpha = 3.7;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const Tensor t = ttest::random_symmetric(2, 3, 600 + seed);
        Tensor scaled = t;
        for (double& x : scaled.values()) x *= alpha;

        const auto base = z_eigenpairs(t, SolverConfig{});
        const auto big = z_eigenpairs(scaled, SolverConfig{});
        for (const EigenPair& p : base) {
            CHECK_MESSAGE(has_lambda(big, alpha * p.lambda,
                                     1e-8 * std::max(1.0, std::abs(alpha * p.lambda))),
                          "missing scaled eigenvalue for seed ", seed);
        }
        // dominant eigenvector is unchanged
        double dminus = 0.0, dplus = 0.0;
        for (std::size_t i = 0; i < base[0].v.size(); ++i) {
            dminus += (base[0].v[i] - big[0].v[i]) * (base[0].v[i] - big[0].v[i]);
            dplus += (base[0].v[i] + big[0].v[i]) * (base[0].v[i] + big[0].v[i]);
        }
        CHECK(std::min(std::sqrt(dminus), std::sqrt(dplus)) < 1e-6);
    }
}

TEST_CASE("residual: hand values") {
    Tensor id({2, 2}, {1, 0, 0, 1});
    EigenPair exact{1.0, {1.0, 0.0}, 0.0};
    CHECK(residual(id, exact) < 1e-10);

    EigenPair off{2.0, {1.0, 0.0}, 0.0};
    CHECK(residual(id, off) == doctest::Approx(1.0).epsilon(1e-14));

    EigenPair wrong_size{1.0, {1.0, 0.0, 0.0}, 0.0};
    CHECK_THROWS_AS(residual(id, wrong_size), DimsError);
}
