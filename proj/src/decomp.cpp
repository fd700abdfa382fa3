#include "topotensor/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "topotensor/rng.hpp"

namespace topotensor {

namespace {

// Khatri-Rao product of every factor except `skip`, in increasing mode
// order. Row ordering then matches the unfolding's column convention
// (last remaining index fastest).
Matrix khatri_rao_skip(const std::vector<Matrix>& factors, int skip) {
    Matrix k;
    bool first = true;
    for (int m = 0; m < static_cast<int>(factors.size()); ++m) {
        if (m == skip) continue;
        if (first) {
            k = factors[m];
            first = false;
        } else {
            k = khatri_rao(k, factors[m]);
        }
    }
    return k;
}

// Hadamard product of the factor Grams, skipping one mode.
Matrix gram_product_skip(const std::vector<Matrix>& factors, int skip, int rank) {
    Matrix v(rank, rank);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) v.at(i, j) = 1.0;
    for (int m = 0; m < static_cast<int>(factors.size()); ++m) {
        if (m == skip) continue;
        const Matrix g = matmul(transpose(factors[m]), factors[m]);
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) v.at(i, j) *= g.at(i, j);
    }
    return v;
}

struct AlsRun {
    std::vector<double> weights;
    std::vector<Matrix> factors;
    double abs_error = 0.0;  // ||t - reconstruction||_F
    std::vector<double> fit_history;
};

AlsRun run_als(const Tensor& t, int rank, std::uint64_t seed) {
    const int d = t.order();
    const auto& dims = t.dims();
    const double norm_t = frobenius_norm(t);

    Xoshiro256StarStar rng(seed);
    std::vector<Matrix> factors(d);
    for (int m = 0; m < d; ++m) {
        factors[m] = Matrix(dims[m], rank);
        for (double& x : factors[m].a) x = rng.normal();
        for (int r = 0; r < rank; ++r) {
            double nrm = 0.0;
            for (int i = 0; i < dims[m]; ++i) nrm += factors[m].at(i, r) * factors[m].at(i, r);
            nrm = std::sqrt(nrm);
            if (nrm > 1e-300)
                for (int i = 0; i < dims[m]; ++i) factors[m].at(i, r) /= nrm;
            else
                factors[m].at(std::min(r, dims[m] - 1), r) = 1.0;
        }
    }
    std::vector<double> weights(rank, 1.0);
    std::vector<Matrix> unfoldings(d);
    for (int m = 0; m < d; ++m) unfoldings[m] = unfold(t, m + 1);

    AlsRun run;
    double prev_fit = std::numeric_limits<double>::infinity();
    for (int sweep = 0; sweep < 500; ++sweep) {
        for (int m = 0; m < d; ++m) {
            Matrix v = gram_product_skip(factors, m, rank);
            for (int r = 0; r < rank; ++r) v.at(r, r) += 1e-12;  // ridge
            const Matrix k = khatri_rao_skip(factors, m);
            const Matrix mttkrp = matmul(unfoldings[m], k);
            // Solve v * x = mttkrp^T, factor update is x^T.
            Matrix updated = transpose(solve(v, transpose(mttkrp)));

            for (int r = 0; r < rank; ++r) {
                double nrm = 0.0;
                for (int i = 0; i < dims[m]; ++i) nrm += updated.at(i, r) * updated.at(i, r);
                nrm = std::sqrt(nrm);
                weights[r] = nrm;
                if (nrm > 1e-300) {
                    for (int i = 0; i < dims[m]; ++i) factors[m].at(i, r) = updated.at(i, r) / nrm;
                }
                // A vanished column keeps its previous unit direction with
                // weight zero.
            }
        }

        // Relative fit error; absolute when the input is the zero tensor.
        const Tensor rec = reconstruct(CPModel{rank, weights, factors});
        double err_sq = 0.0;
        for (std::size_t i = 0; i < t.numel(); ++i) {
            const double diff = t.values()[i] - rec.values()[i];
            err_sq += diff * diff;
        }
        const double abs_err = std::sqrt(err_sq);
        const double fit = norm_t > 0.0 ? abs_err / norm_t : abs_err;
        run.fit_history.push_back(fit);
        run.abs_error = abs_err;
        if (std::abs(prev_fit - fit) < 1e-8) break;
        prev_fit = fit;
    }

    run.weights = std::move(weights);
    run.factors = std::move(factors);
    return run;
}

}  // namespace

CPModel cp_als(const Tensor& t, int rank, int restarts, std::uint64_t seed, CpTrace* trace) {
    if (rank < 1) throw ValueError("cp_als: rank must be positive");
    if (restarts < 1) throw ValueError("cp_als: restarts must be positive");
    for (double x : t.values())
        if (!std::isfinite(x)) throw ValueError("cp_als: input must be finite");

    AlsRun best;
    int best_restart = -1;
    for (int rs = 0; rs < restarts; ++rs) {
        AlsRun run = run_als(t, rank, mix_seed(seed, static_cast<std::uint64_t>(rs)));
        if (best_restart < 0 || run.abs_error < best.abs_error) {
            best = std::move(run);
            best_restart = rs;
        }
    }

    // Components sorted by descending weight magnitude.
    std::vector<int> order(rank);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return std::abs(best.weights[i]) > std::abs(best.weights[j]);
    });

    CPModel model;
    model.rank = rank;
    model.weights.resize(rank);
    model.factors.assign(t.order(), Matrix());
    for (int m = 0; m < t.order(); ++m) model.factors[m] = Matrix(t.dims()[m], rank);
    for (int rr = 0; rr < rank; ++rr) {
        model.weights[rr] = best.weights[order[rr]];
        for (int m = 0; m < t.order(); ++m)
            for (int i = 0; i < t.dims()[m]; ++i)
                model.factors[m].at(i, rr) = best.factors[m].at(i, order[rr]);
    }
    if (trace) {
        trace->fit_history = std::move(best.fit_history);
        trace->best_restart = best_restart;
    }
    return model;
}

TuckerModel tucker_hosvd(const Tensor& t, const std::vector<int>& core_dims, int hooi_sweeps) {
    const int d = t.order();
    if (static_cast<int>(core_dims.size()) != d)
        throw DimsError("tucker_hosvd: core_dims order mismatch");
    for (int m = 0; m < d; ++m)
        if (core_dims[m] < 1 || core_dims[m] > t.dims()[m])
            throw DimsError("tucker_hosvd: core_dims must be between 1 and dims");

    TuckerModel model;
    model.factors.resize(d);
    for (int m = 0; m < d; ++m) {
        const SvdResult svd = jacobi_svd(unfold(t, m + 1));
        Matrix u(t.dims()[m], core_dims[m]);
        for (int i = 0; i < t.dims()[m]; ++i)
            for (int j = 0; j < core_dims[m]; ++j) u.at(i, j) = svd.u.at(i, j);
        model.factors[m] = std::move(u);
    }

    // Optional orthogonal-iteration refinement; 0 keeps plain HOSVD.
    for (int sweep = 0; sweep < hooi_sweeps; ++sweep) {
        for (int m = 0; m < d; ++m) {
            Tensor projected = t;
            for (int mm = 0; mm < d; ++mm) {
                if (mm == m) continue;
                projected = mode_multiply(projected, transpose(model.factors[mm]), mm + 1);
            }
            const SvdResult svd = jacobi_svd(unfold(projected, m + 1));
            Matrix u(t.dims()[m], core_dims[m]);
            for (int i = 0; i < t.dims()[m]; ++i)
                for (int j = 0; j < core_dims[m]; ++j) u.at(i, j) = svd.u.at(i, j);
            model.factors[m] = std::move(u);
        }
    }

    Tensor core = t;
    for (int m = 0; m < d; ++m)
        core = mode_multiply(core, transpose(model.factors[m]), m + 1);
    model.core = std::move(core);
    return model;
}

std::vector<double> cp_eigenvalues(const CPModel& m) { return m.weights; }

std::vector<std::vector<double>> tucker_eigenvalues(const Tensor& t, const TuckerModel& m) {
    std::vector<std::vector<double>> rows(t.order());
    for (int mode = 0; mode < t.order(); ++mode) {
        const SvdResult svd = jacobi_svd(unfold(t, mode + 1));
        const int keep = m.factors[mode].cols;
        rows[mode].assign(svd.sigma.begin(), svd.sigma.begin() + keep);
    }
    return rows;
}

Tensor reconstruct(const CPModel& m) {
    if (m.factors.empty()) throw DimsError("reconstruct: model has no factors");
    std::vector<int> dims(m.factors.size());
    for (std::size_t mm = 0; mm < m.factors.size(); ++mm) dims[mm] = m.factors[mm].rows;

    Tensor t(dims);
    const int d = static_cast<int>(dims.size());
    std::vector<int> index(d, 0);
    for (std::size_t lin = 0; lin < t.numel(); ++lin) {
        std::size_t rem = lin;
        for (int mm = d - 1; mm >= 0; --mm) {
            index[mm] = static_cast<int>(rem % static_cast<std::size_t>(dims[mm]));
            rem /= static_cast<std::size_t>(dims[mm]);
        }
        double s = 0.0;
        for (int r = 0; r < m.rank; ++r) {
            double p = m.weights[r];
            for (int mm = 0; mm < d; ++mm) p *= m.factors[mm].at(index[mm], r);
            s += p;
        }
        t.values()[lin] = s;
    }
    return t;
}

Tensor reconstruct(const TuckerModel& m) {
    Tensor t = m.core;
    for (int mode = 0; mode < static_cast<int>(m.factors.size()); ++mode)
        t = mode_multiply(t, m.factors[mode], mode + 1);
    return t;
}

double mse(const Tensor& a, const Tensor& b) {
    if (a.dims() != b.dims()) throw DimsError("mse: dimensions differ");
    double s = 0.0;
    for (std::size_t i = 0; i < a.numel(); ++i) {
        const double diff = a.values()[i] - b.values()[i];
        s += diff * diff;
    }
    return s / static_cast<double>(a.numel());
}

}  // namespace topotensor
