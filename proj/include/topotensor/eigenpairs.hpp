#ifndef TOPOTENSOR_EIGENPAIRS_HPP
#define TOPOTENSOR_EIGENPAIRS_HPP

#include <cstdint>
#include <vector>

#include "topotensor/tensor.hpp"

namespace topotensor {

/**
 * Solution of T v^{d-1} = lambda v with ||v|| = 1. Pairs are stored in
 * canonical orientation: the first nonzero component of v is positive (for
 * odd order, flipping v also flips lambda).
 */
struct EigenPair {
    double lambda = 0.0;
    std::vector<double> v;
    double residual = 0.0;
};

struct SolverConfig {
    int starts = 64;
    int max_iters = 500;
    double tol = 1e-10;        // residual acceptance gate
    double dedup_tol = 1e-6;   // pair-identification tolerance
    std::uint64_t seed = 0;
};

/**
 * All Z-eigenpairs the multi-start search can certify, sorted by descending
 * lambda and deduplicated. Each seeded start is driven by shifted symmetric
 * higher-order power iteration (shift 1 + ||T||_F, run in both ascent and
 * descent senses) and then polished by Newton steps on the stationarity
 * system, which also captures interior pairs the power iteration cannot
 * reach. Throws SymmetryError for non-symmetric input and ConvergenceError
 * (carrying the best residual seen) if no start converges.
 */
std::vector<EigenPair> z_eigenpairs(const Tensor& t, const SolverConfig& cfg);

/**
 * Exhaustive eigenpair search for n = 2 by angle sweep: v = (cos t, sin t),
 * t over [0, pi) at step 1e-4; roots of the tangential component are
 * bracketed by sign changes and refined by bisection to width 1e-12.
 * Independent of the iterative solver; used as its oracle.
 */
std::vector<EigenPair> oracle_sweep_2(const Tensor& t);

// || T p.v^{d-1} - p.lambda * p.v ||_2
double residual(const Tensor& t, const EigenPair& p);

}  // namespace topotensor

#endif
