#ifndef TOPOTENSOR_LINALG_HPP
#define TOPOTENSOR_LINALG_HPP

#include <cstddef>
#include <vector>

namespace topotensor {

// Small dense row-major matrix. Everything in this project is desk-scale,
// so the kernels below favour determinism and clarity over blocking.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static Matrix identity(int n);
};

Matrix matmul(const Matrix& x, const Matrix& y);
Matrix transpose(const Matrix& x);

// Columnwise Khatri-Rao product: row (i*b.rows + j) of the result is
// x.row(i) .* y.row(j). Both inputs must have the same column count.
Matrix khatri_rao(const Matrix& x, const Matrix& y);

struct SvdResult {
    Matrix u;                    // m x r, orthonormal columns
    std::vector<double> sigma;   // r = min(m, n), descending, nonnegative
    Matrix v;                    // n x r, orthonormal columns
};

/**
 * One-sided Jacobi SVD. Deterministic cyclic sweeps; zero singular directions
 * are completed to an orthonormal basis so u and v always satisfy
 * u^T u = v^T v = I. Accurate to machine precision for the small matrices
 * used here.
 */
SvdResult jacobi_svd(const Matrix& m);

struct EighResult {
    std::vector<double> eigenvalues;  // descending
    Matrix eigenvectors;              // column k pairs with eigenvalue k
};

// Cyclic Jacobi rotations for a dense symmetric matrix.
EighResult jacobi_eigh(const Matrix& m);

// Gaussian elimination with partial pivoting; solves m * x = rhs for each
// column of rhs. Throws ValueError on a numerically singular system.
Matrix solve(const Matrix& m, const Matrix& rhs);

// Modified Gram-Schmidt on the columns (two passes). Columns that vanish are
// replaced by canonical basis directions orthogonal to the previous ones.
Matrix orthonormalize_columns(const Matrix& m);

}  // namespace topotensor

#endif
