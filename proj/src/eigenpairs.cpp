#include "topotensor/eigenpairs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "topotensor/linalg.hpp"
#include "topotensor/rng.hpp"

namespace topotensor {

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void normalize(std::vector<double>& v) {
    const double n = norm2(v);
    for (double& x : v) x /= n;
}

// Orientation: first nonzero component positive. For odd order the pair
// (lambda, v) is identified with (-lambda, -v), so lambda flips with v.
// Components below 1e-9 rank as zero so that converged noise (~1e-16 on a
// unit vector) cannot decide the orientation.
void canonicalize(EigenPair& p, int order) {
    for (double x : p.v) {
        if (x > 1e-9) return;
        if (x < -1e-9) break;
    }
    for (double& x : p.v) x = -x;
    if (order % 2 == 1) p.lambda = -p.lambda;
}

double pair_residual(const Tensor& t, const std::vector<double>& v, double lambda) {
    const std::vector<double> w = contract_all_but_one(t, v);
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double diff = w[i] - lambda * v[i];
        s += diff * diff;
    }
    return std::sqrt(s);
}

// Shifted symmetric higher-order power iteration. ascent=true climbs toward
// a constrained local maximum, ascent=false descends to a local minimum.
// Returns the final iterate; acceptance is decided by the caller.
std::vector<double> shifted_power_iteration(const Tensor& t, std::vector<double> v,
                                            double shift, bool ascent, int max_iters) {
    double lambda_prev = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        std::vector<double> w = contract_all_but_one(t, v);
        const double lambda = dot(v, w);
        std::vector<double> u(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            u[i] = ascent ? w[i] + shift * v[i] : shift * v[i] - w[i];
        normalize(u);
        v = std::move(u);
        if (it > 0 && std::abs(lambda - lambda_prev) <= 1e-13 * (1.0 + std::abs(lambda)))
            break;
        lambda_prev = lambda;
    }
    return v;
}

// Newton iteration on the stationarity system
//   T v^{d-1} - lambda v = 0,  (1 - v.v)/2 = 0.
// Quadratic near any nondegenerate eigenpair, including interior ones the
// power iteration cannot converge to. Returns false when a step fails.
bool newton_polish(const Tensor& t, std::vector<double>& v, double& lambda, int iters) {
    const int n = static_cast<int>(v.size());
    const int d = t.order();
    for (int it = 0; it < iters; ++it) {
        const std::vector<double> w = contract_all_but_one(t, v);
        Matrix jac(n + 1, n + 1);
        const Matrix m = contract_all_but_two(t, v);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) jac.at(i, j) = (d - 1) * m.at(i, j);
        for (int i = 0; i < n; ++i) {
            jac.at(i, i) -= lambda;
            jac.at(i, n) = -v[i];
            jac.at(n, i) = -v[i];
        }

        Matrix rhs(n + 1, 1);
        double fnorm = 0.0;
        for (int i = 0; i < n; ++i) {
            rhs.at(i, 0) = -(w[i] - lambda * v[i]);
            fnorm += rhs.at(i, 0) * rhs.at(i, 0);
        }
        const double vres = (1.0 - dot(v, v)) / 2.0;
        rhs.at(n, 0) = vres;
        fnorm = std::sqrt(fnorm + vres * vres);
        if (fnorm <= 1e-15 * (1.0 + std::abs(lambda))) return true;

        Matrix step;
        try {
            step = solve(jac, rhs);
        } catch (const ValueError&) {
            return false;
        }
        double step_norm = 0.0;
        for (int i = 0; i <= n; ++i) step_norm += step.at(i, 0) * step.at(i, 0);
        if (!std::isfinite(step_norm) || step_norm > 1e6) return false;
        for (int i = 0; i < n; ++i) v[i] += step.at(i, 0);
        lambda += step.at(n, 0);
    }
    return true;
}

// Duplicate means both lambda and the vector (up to sign) agree within tol.
bool same_pair(const EigenPair& a, const EigenPair& b, double tol) {
    if (std::abs(a.lambda - b.lambda) > tol) return false;
    double dminus = 0.0, dplus = 0.0;
    for (std::size_t i = 0; i < a.v.size(); ++i) {
        const double m = a.v[i] - b.v[i];
        const double p = a.v[i] + b.v[i];
        dminus += m * m;
        dplus += p * p;
    }
    return std::min(std::sqrt(dminus), std::sqrt(dplus)) <= tol;
}

std::vector<EigenPair> dedup_and_sort(std::vector<EigenPair> pairs, double tol) {
    std::sort(pairs.begin(), pairs.end(), [](const EigenPair& a, const EigenPair& b) {
        if (a.lambda != b.lambda) return a.lambda > b.lambda;
        return a.v > b.v;
    });
    std::vector<EigenPair> out;
    for (auto& p : pairs) {
        bool dup = false;
        for (const auto& q : out) {
            if (same_pair(p, q, tol)) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

double residual(const Tensor& t, const EigenPair& p) {
    if (static_cast<int>(p.v.size()) != t.cubical_extent())
        throw DimsError("residual: vector length does not match the tensor");
    return pair_residual(t, p.v, p.lambda);
}

std::vector<EigenPair> z_eigenpairs(const Tensor& t, const SolverConfig& cfg) {
    if (cfg.starts < 1 || cfg.max_iters < 1 || cfg.tol <= 0.0 || cfg.dedup_tol <= 0.0)
        throw ValueError("invalid solver configuration");
    const int n = t.cubical_extent();
    if (t.order() < 2) throw ShapeError("z_eigenpairs requires order >= 2");
    if (!is_symmetric(t)) throw SymmetryError("z_eigenpairs requires a symmetric tensor");

    const double shift = 1.0 + frobenius_norm(t);

    // Seeded random unit starts plus the canonical basis directions.
    std::vector<std::vector<double>> starts;
    Xoshiro256StarStar rng(cfg.seed);
    for (int s = 0; s < cfg.starts; ++s) {
        std::vector<double> v(n);
        double nrm = 0.0;
        while (nrm < 1e-12) {
            for (double& x : v) x = rng.normal();
            nrm = norm2(v);
        }
        for (double& x : v) x /= nrm;
        starts.push_back(std::move(v));
    }
    for (int i = 0; i < n; ++i) {
        std::vector<double> e(n, 0.0);
        e[i] = 1.0;
        starts.push_back(std::move(e));
    }

    std::vector<EigenPair> found;
    double best_residual_seen = std::numeric_limits<double>::infinity();

    auto evaluate = [&](std::vector<double> v) {
        EigenPair p;
        normalize(v);
        const std::vector<double> w = contract_all_but_one(t, v);
        p.lambda = dot(v, w);
        p.v = std::move(v);
        p.residual = pair_residual(t, p.v, p.lambda);
        return p;
    };

    auto submit = [&](std::vector<double> v) {
        const double nrm = norm2(v);
        if (!std::isfinite(nrm) || nrm < 1e-12) return;
        for (double& x : v) x /= nrm;

        EigenPair best = evaluate(v);
        std::vector<double> vn = best.v;
        double lambda = best.lambda;
        if (newton_polish(t, vn, lambda, 25)) {
            EigenPair polished = evaluate(std::move(vn));
            if (polished.residual < best.residual) best = std::move(polished);
        }

        best_residual_seen = std::min(best_residual_seen, best.residual);
        if (best.residual < cfg.tol) {
            canonicalize(best, t.order());
            found.push_back(std::move(best));
        }
    };

    for (const auto& start : starts) {
        submit(shifted_power_iteration(t, start, shift, true, cfg.max_iters));
        submit(shifted_power_iteration(t, start, shift, false, cfg.max_iters));
        submit(start);  // raw Newton
    }

    // Second-order round: the power iteration only reaches constrained
    // extrema, so probe the eigenvectors of the local linearization
    // T v^{d-2} at the pairs found so far (and at one random point). For
    // d = 2 that matrix is the input itself, which completes the spectrum
    // with interior eigenpairs in one pass.
    std::vector<std::vector<double>> probes;
    probes.push_back(starts.front());
    for (const EigenPair& p : dedup_and_sort(found, cfg.dedup_tol)) {
        probes.push_back(p.v);
        if (probes.size() >= 13) break;
    }
    for (const auto& probe : probes) {
        const Matrix m = contract_all_but_two(t, probe);
        const EighResult local = jacobi_eigh(m);
        for (int j = 0; j < n; ++j) {
            std::vector<double> v(n);
            for (int i = 0; i < n; ++i) v[i] = local.eigenvectors.at(i, j);
            submit(std::move(v));
        }
        if (t.order() == 2) break;  // the linearization is constant
    }

    if (found.empty())
        throw ConvergenceError("no start converged to the requested residual",
                               best_residual_seen);
    return dedup_and_sort(std::move(found), cfg.dedup_tol);
}

std::vector<EigenPair> oracle_sweep_2(const Tensor& t) {
    if (t.cubical_extent() != 2) throw ShapeError("oracle_sweep_2 requires n = 2");
    if (t.order() < 2) throw ShapeError("oracle_sweep_2 requires order >= 2");

    const double pi = 3.14159265358979323846;
    const double step = 1e-4;

    // Tangential component of w = T v^{d-1} at v = (cos theta, sin theta);
    // zero exactly when v is an eigenvector.
    auto cross = [&](double theta) {
        const std::vector<double> v{std::cos(theta), std::sin(theta)};
        const std::vector<double> w = contract_all_but_one(t, v);
        return w[1] * v[0] - w[0] * v[1];
    };

    const int samples = static_cast<int>(std::floor(pi / step));
    std::vector<double> g(samples + 1);
    double gmax = 0.0;
    for (int k = 0; k <= samples; ++k) {
        const double theta = std::min(k * step, pi);
        g[k] = cross(theta);
        gmax = std::max(gmax, std::abs(g[k]));
    }

    std::vector<EigenPair> pairs;
    auto emit = [&](double theta) {
        EigenPair p;
        p.v = {std::cos(theta), std::sin(theta)};
        const std::vector<double> w = contract_all_but_one(t, p.v);
        p.lambda = dot(p.v, w);
        p.residual = pair_residual(t, p.v, p.lambda);
        canonicalize(p, t.order());
        pairs.push_back(std::move(p));
    };

    if (gmax == 0.0) {
        // Isotropic: every direction solves the equation; report one
        // representative.
        emit(0.0);
        return pairs;
    }

    const double zero_tol = 1e-13 * std::max(1.0, gmax);
    for (int k = 0; k < samples; ++k) {
        const double a = k * step;
        const double b = std::min((k + 1) * step, pi);
        if (std::abs(g[k]) <= zero_tol) {
            emit(a);
            continue;
        }
        if (std::abs(g[k + 1]) <= zero_tol) continue;  // handled as next interval's endpoint
        if (g[k] * g[k + 1] < 0.0) {
            double lo = a, hi = b;
            double glo = g[k];
            while (hi - lo > 1e-12) {
                const double mid = 0.5 * (lo + hi);
                const double gm = cross(mid);
                if (gm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (glo * gm < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    glo = gm;
                }
            }
            emit(0.5 * (lo + hi));
        }
    }
    if (std::abs(g[samples]) <= zero_tol && samples * step < pi) emit(samples * step);

    // Tangential roots: g can touch zero without changing sign (degenerate
    // eigenpairs). Since |g(theta)| equals the residual of the pair built at
    // theta, refine every deep local minimum of |g| and accept it exactly
    // when the refined residual is negligible.
    const double touch_tol = 1e-9 * std::max(1.0, gmax);
    for (int k = 1; k < samples; ++k) {
        const double ga = std::abs(g[k - 1]);
        const double gb = std::abs(g[k]);
        const double gc = std::abs(g[k + 1]);
        if (gb > ga || gb > gc || gb > 1e-5 * std::max(1.0, gmax)) continue;
        if (g[k - 1] * g[k + 1] < 0.0) continue;  // sign change, already handled
        double lo = (k - 1) * step, hi = std::min((k + 1) * step, pi);
        for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (std::abs(cross(m1)) <= std::abs(cross(m2)))
                hi = m2;
            else
                lo = m1;
        }
        const double theta = 0.5 * (lo + hi);
        if (std::abs(cross(theta)) <= touch_tol) emit(theta);
    }

    // Wrap-around interval (samples*step, pi): at theta = pi the direction is
    // -v(0), so the tangential component there is (-1)^d * g(0).
    const double g_end = (t.order() % 2 == 0 ? g[0] : -g[0]);
    if (samples * step < pi && std::abs(g[samples]) > zero_tol &&
        std::abs(g_end) > zero_tol && g[samples] * g_end < 0.0) {
        double lo = samples * step, hi = pi;
        double glo = g[samples];
        while (hi - lo > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            const double gm = cross(mid);
            if (gm == 0.0) {
                lo = hi = mid;
                break;
            }
            if (glo * gm < 0.0) {
                hi = mid;
            } else {
                lo = mid;
                glo = gm;
            }
        }
        emit(0.5 * (lo + hi));
    }

    return dedup_and_sort(std::move(pairs), 1e-6);
}

}  // namespace topotensor
