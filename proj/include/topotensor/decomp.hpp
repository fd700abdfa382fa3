#ifndef TOPOTENSOR_DECOMP_HPP
#define TOPOTENSOR_DECOMP_HPP

#include <cstdint>
#include <vector>

#include "topotensor/linalg.hpp"
#include "topotensor/tensor.hpp"

namespace topotensor {

/**
 * Rank-R sum-of-outer-products model. Factor columns are unit norm; the
 * component scale lives in `weights`, sorted by descending magnitude.
 */
struct CPModel {
    int rank = 0;
    std::vector<double> weights;
    std::vector<Matrix> factors;  // factors[m] is n_m x rank
};

/**
 * Core-times-orthonormal-factors model. factors[m] has core_dims[m]
 * orthonormal columns.
 */
struct TuckerModel {
    Tensor core;
    std::vector<Matrix> factors;

    TuckerModel() : core(std::vector<int>{1}, std::vector<double>{0.0}) {}
};

// Per-sweep relative fit error of the restart that won; exposed for the
// monotonicity check.
struct CpTrace {
    std::vector<double> fit_history;
    int best_restart = -1;
};

/**
 * CP decomposition by alternating least squares. Runs `restarts` seeded
 * starts and keeps the best reconstruction (ties break toward the earlier
 * restart). Each sweep solves the normal equations with a 1e-12 ridge, so
 * rank-deficient updates degrade instead of crashing. Stops when the
 * relative fit changes by less than 1e-8 or after 500 sweeps.
 */
CPModel cp_als(const Tensor& t, int rank, int restarts, std::uint64_t seed,
               CpTrace* trace = nullptr);

/**
 * Tucker decomposition by plain truncated higher-order SVD: factor m holds
 * the leading core_dims[m] left singular vectors of the mode-m unfolding.
 * Optional HOOI sweeps refine the subspaces (default 0, plain HOSVD).
 */
TuckerModel tucker_hosvd(const Tensor& t, const std::vector<int>& core_dims,
                         int hooi_sweeps = 0);

// Component weights, descending |.|, signs preserved.
std::vector<double> cp_eigenvalues(const CPModel& m);

// Row m: leading core_dims[m] singular values of the mode-m unfolding.
std::vector<std::vector<double>> tucker_eigenvalues(const Tensor& t, const TuckerModel& m);

Tensor reconstruct(const CPModel& m);
Tensor reconstruct(const TuckerModel& m);

// Mean of squared elementwise differences.
double mse(const Tensor& a, const Tensor& b);

}  // namespace topotensor

#endif
