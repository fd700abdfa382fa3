#ifndef TOPOTENSOR_TESTS_SUPPORT_HPP
#define TOPOTENSOR_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "topotensor/rng.hpp"
#include "topotensor/simplicial.hpp"
#include "topotensor/tensor.hpp"

namespace ttest {

// Brute-force (T v^{d-1})_i by explicit index loops. Deliberately written
// against Tensor::at with an index odometer, independent of the mode
// reduction used by the library.
inline std::vector<double> contract_bruteforce(const topotensor::Tensor& t,
                                               const std::vector<double>& v) {
    const int n = t.dims()[0];
    const int d = t.order();
    std::vector<double> w(n, 0.0);
    std::vector<int> index(d, 0);
    for (int i = 0; i < n; ++i) {
        index[0] = i;
        std::fill(index.begin() + 1, index.end(), 0);
        double sum = 0.0;
        while (true) {
            double prod = t.at(index);
            for (int m = 1; m < d; ++m) prod *= v[index[m]];
            sum += prod;
            int m = d - 1;
            while (m >= 1 && ++index[m] == n) {
                index[m] = 0;
                --m;
            }
            if (m == 0) break;
        }
        w[i] = sum;
    }
    return w;
}

// Per-entry average over all index permutations, the direct reading of the
// symmetrization definition.
inline topotensor::Tensor symmetrize_bruteforce(const topotensor::Tensor& t) {
    const int d = t.order();
    topotensor::Tensor out(t.dims());
    std::vector<int> perm(d), index(d, 0), pindex(d, 0);

    for (std::size_t lin = 0; lin < t.numel(); ++lin) {
        std::size_t rem = lin;
        for (int m = d - 1; m >= 0; --m) {
            index[m] = static_cast<int>(rem % t.dims()[m]);
            rem /= t.dims()[m];
        }
        std::iota(perm.begin(), perm.end(), 0);
        double sum = 0.0;
        int count = 0;
        do {
            for (int m = 0; m < d; ++m) pindex[m] = index[perm[m]];
            sum += t.at(pindex);
            ++count;
        } while (std::next_permutation(perm.begin(), perm.end()));
        out.values()[lin] = sum / count;
    }
    return out;
}

inline topotensor::Tensor random_tensor(const std::vector<int>& dims, std::uint64_t seed) {
    topotensor::GenSpec spec;
    spec.kind = topotensor::GenKind::random;
    spec.dims = dims;
    spec.seed = seed;
    return topotensor::generate(spec);
}

inline topotensor::Tensor random_symmetric(int n, int d, std::uint64_t seed) {
    return topotensor::symmetrize(random_tensor(std::vector<int>(d, n), seed));
}

inline std::vector<double> random_unit_vector(int n, std::uint64_t seed) {
    topotensor::Xoshiro256StarStar rng(seed);
    std::vector<double> v(n);
    double nrm = 0.0;
    for (double& x : v) {
        x = rng.normal();
        nrm += x * x;
    }
    nrm = std::sqrt(nrm);
    for (double& x : v) x /= nrm;
    return v;
}

// Random complex: `count` random simplices of dimension <= max_dim on
// `num_vertices` vertices, closed downward.
inline topotensor::SimplicialComplex random_complex(std::uint64_t seed, int num_vertices,
                                                    int max_dim, int count) {
    topotensor::Xoshiro256StarStar rng(seed);
    std::vector<topotensor::Simplex> maximal;
    for (int c = 0; c < count; ++c) {
        const int size = 1 + static_cast<int>(rng.next() % (max_dim + 1));
        topotensor::Simplex s;
        for (int i = 0; i < size; ++i)
            s.push_back(static_cast<int>(rng.next() % num_vertices));
        maximal.push_back(std::move(s));
    }
    return topotensor::SimplicialComplex::from_maximal(num_vertices, maximal);
}

inline double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace ttest

#endif
