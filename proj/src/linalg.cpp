#include "topotensor/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "topotensor/errors.hpp"

namespace topotensor {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Matrix matmul(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw DimsError("matmul: inner dimensions differ");
    Matrix r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int k = 0; k < x.cols; ++k) {
            const double xik = x.at(i, k);
            if (xik == 0.0) continue;
            for (int j = 0; j < y.cols; ++j) {
                r.at(i, j) += xik * y.at(k, j);
            }
        }
    }
    return r;
}

Matrix transpose(const Matrix& x) {
    Matrix r(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

Matrix khatri_rao(const Matrix& x, const Matrix& y) {
    if (x.cols != y.cols) throw DimsError("khatri_rao: column counts differ");
    Matrix r(x.rows * y.rows, x.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < y.rows; ++j)
            for (int c = 0; c < x.cols; ++c)
                r.at(i * y.rows + j, c) = x.at(i, c) * y.at(j, c);
    return r;
}

namespace {

double column_dot(const Matrix& m, int p, int q) {
    double s = 0.0;
    for (int i = 0; i < m.rows; ++i) s += m.at(i, p) * m.at(i, q);
    return s;
}

void rotate_columns(Matrix& m, int p, int q, double c, double s) {
    for (int i = 0; i < m.rows; ++i) {
        const double mp = m.at(i, p);
        const double mq = m.at(i, q);
        m.at(i, p) = c * mp - s * mq;
        m.at(i, q) = s * mp + c * mq;
    }
}

// Makes column `col` of u a unit vector orthogonal to columns [0, col) by
// Gram-Schmidt on canonical basis candidates. Used to complete the basis
// when a singular value vanishes.
void fill_orthonormal_column(Matrix& u, int col) {
    for (int cand = 0; cand < u.rows; ++cand) {
        std::vector<double> w(u.rows, 0.0);
        w[cand] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j < col; ++j) {
                double d = 0.0;
                for (int i = 0; i < u.rows; ++i) d += w[i] * u.at(i, j);
                for (int i = 0; i < u.rows; ++i) w[i] -= d * u.at(i, j);
            }
        }
        double nrm = 0.0;
        for (double x : w) nrm += x * x;
        nrm = std::sqrt(nrm);
        if (nrm > 0.5) {  // candidate not inside the span of previous columns
            for (int i = 0; i < u.rows; ++i) u.at(i, col) = w[i] / nrm;
            return;
        }
    }
    throw ValueError("fill_orthonormal_column: no candidate found");
}

// Core one-sided Jacobi on a tall (rows >= cols) matrix.
SvdResult jacobi_svd_tall(const Matrix& input) {
    const int n = input.cols;
    Matrix b = input;
    Matrix v = Matrix::identity(n);

    const double eps = 1e-15;
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double app = column_dot(b, p, p);
                const double aqq = column_dot(b, q, q);
                const double apq = column_dot(b, p, q);
                const double denom = std::sqrt(app * aqq);
                if (denom == 0.0 || std::abs(apq) <= eps * denom) continue;
                off = std::max(off, std::abs(apq) / denom);

                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                rotate_columns(b, p, q, c, s);
                rotate_columns(v, p, q, c, s);
            }
        }
        if (off <= eps) break;
    }

    std::vector<double> sigma(n);
    for (int j = 0; j < n; ++j) sigma[j] = std::sqrt(std::max(0.0, column_dot(b, j, j)));

    // Stable descending order.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return sigma[i] > sigma[j]; });

    SvdResult r;
    r.u = Matrix(input.rows, n);
    r.v = Matrix(n, n);
    r.sigma.resize(n);
    const double sigma_max = sigma.empty() ? 0.0 : sigma[order.empty() ? 0 : order[0]];
    const double tiny = std::max(sigma_max, 1.0) * 1e-300;
    for (int jj = 0; jj < n; ++jj) {
        const int src = order[jj];
        r.sigma[jj] = sigma[src];
        for (int i = 0; i < n; ++i) r.v.at(i, jj) = v.at(i, src);
        if (sigma[src] > tiny) {
            for (int i = 0; i < input.rows; ++i) r.u.at(i, jj) = b.at(i, src) / sigma[src];
        } else {
            r.sigma[jj] = 0.0;
            fill_orthonormal_column(r.u, jj);
        }
    }

    // Sign convention: largest-magnitude entry of each left singular vector
    // is positive. Keeps repeated runs and reflected inputs comparable.
    for (int j = 0; j < n; ++j) {
        int arg = 0;
        for (int i = 1; i < input.rows; ++i)
            if (std::abs(r.u.at(i, j)) > std::abs(r.u.at(arg, j))) arg = i;
        if (r.u.at(arg, j) < 0.0) {
            for (int i = 0; i < input.rows; ++i) r.u.at(i, j) = -r.u.at(i, j);
            for (int i = 0; i < n; ++i) r.v.at(i, j) = -r.v.at(i, j);
        }
    }
    return r;
}

}  // namespace

SvdResult jacobi_svd(const Matrix& m) {
    if (m.rows <= 0 || m.cols <= 0) throw DimsError("jacobi_svd: empty matrix");
    if (m.rows >= m.cols) return jacobi_svd_tall(m);
    SvdResult t = jacobi_svd_tall(transpose(m));
    return SvdResult{std::move(t.v), std::move(t.sigma), std::move(t.u)};
}

EighResult jacobi_eigh(const Matrix& m) {
    if (m.rows != m.cols) throw DimsError("jacobi_eigh: matrix not square");
    const int n = m.rows;
    Matrix a = m;
    Matrix v = Matrix::identity(n);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) off += a.at(p, q) * a.at(p, q);
        if (off <= 1e-30) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (apq == 0.0) continue;
                const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (int i = 0; i < n; ++i) {
                    const double aip = a.at(i, p);
                    const double aiq = a.at(i, q);
                    a.at(i, p) = c * aip - s * aiq;
                    a.at(i, q) = s * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    const double apj = a.at(p, j);
                    const double aqj = a.at(q, j);
                    a.at(p, j) = c * apj - s * aqj;
                    a.at(q, j) = s * apj + c * aqj;
                }
                for (int i = 0; i < n; ++i) {
                    const double vip = v.at(i, p);
                    const double viq = v.at(i, q);
                    v.at(i, p) = c * vip - s * viq;
                    v.at(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a.at(i, i) > a.at(j, j); });

    EighResult r;
    r.eigenvalues.resize(n);
    r.eigenvectors = Matrix(n, n);
    for (int jj = 0; jj < n; ++jj) {
        r.eigenvalues[jj] = a.at(order[jj], order[jj]);
        for (int i = 0; i < n; ++i) r.eigenvectors.at(i, jj) = v.at(i, order[jj]);
    }
    return r;
}

Matrix solve(const Matrix& m, const Matrix& rhs) {
    if (m.rows != m.cols) throw DimsError("solve: matrix not square");
    if (m.rows != rhs.rows) throw DimsError("solve: rhs row count differs");
    const int n = m.rows;
    Matrix a = m;
    Matrix x = rhs;

    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int i = col + 1; i < n; ++i)
            if (std::abs(a.at(i, col)) > std::abs(a.at(pivot, col))) pivot = i;
        if (std::abs(a.at(pivot, col)) < 1e-300)
            throw ValueError("solve: singular system");
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(a.at(pivot, j), a.at(col, j));
            for (int j = 0; j < x.cols; ++j) std::swap(x.at(pivot, j), x.at(col, j));
        }
        const double d = a.at(col, col);
        for (int i = col + 1; i < n; ++i) {
            const double f = a.at(i, col) / d;
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) a.at(i, j) -= f * a.at(col, j);
            for (int j = 0; j < x.cols; ++j) x.at(i, j) -= f * x.at(col, j);
        }
    }
    for (int col = n - 1; col >= 0; --col) {
        const double d = a.at(col, col);
        for (int j = 0; j < x.cols; ++j) {
            double s = x.at(col, j);
            for (int k = col + 1; k < n; ++k) s -= a.at(col, k) * x.at(k, j);
            x.at(col, j) = s / d;
        }
    }
    return x;
}

Matrix orthonormalize_columns(const Matrix& m) {
    Matrix q = m;
    for (int j = 0; j < q.cols; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k < j; ++k) {
                double d = column_dot(q, j, k);
                for (int i = 0; i < q.rows; ++i) q.at(i, j) -= d * q.at(i, k);
            }
        }
        double nrm = std::sqrt(column_dot(q, j, j));
        if (nrm > 1e-12) {
            for (int i = 0; i < q.rows; ++i) q.at(i, j) /= nrm;
        } else {
            fill_orthonormal_column(q, j);
        }
    }
    return q;
}

}  // namespace topotensor
