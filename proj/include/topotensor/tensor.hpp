#ifndef TOPOTENSOR_TENSOR_HPP
#define TOPOTENSOR_TENSOR_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "topotensor/errors.hpp"
#include "topotensor/linalg.hpp"

namespace topotensor {

/**
 * Dense d-way real tensor. Values are stored row-major: the last index
 * varies fastest. Every entry must be finite; the constructor enforces it.
 */
class Tensor {
public:
    Tensor(std::vector<int> dims, std::vector<double> values);

    // Zero tensor of the given shape.
    explicit Tensor(std::vector<int> dims);

    int order() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }
    std::size_t numel() const { return values_.size(); }

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double at(const std::vector<int>& index) const { return values_[offset(index)]; }
    double& at(const std::vector<int>& index) { return values_[offset(index)]; }

    // Row-major linear offset of a multi-index.
    std::size_t offset(const std::vector<int>& index) const;

    // True when every mode has the same extent.
    bool is_cubical() const;

    // Extent shared by all modes; throws ShapeError if not cubical.
    int cubical_extent() const;

private:
    std::vector<int> dims_;
    std::vector<double> values_;
};

enum class GenKind { random, low_rank, rank_deficient, diagonal, explicit_values };

/**
 * Recipe for a synthetic tensor. `seed` fully determines the result.
 * `values` is consumed only by kind explicit_values.
 */
struct GenSpec {
    GenKind kind = GenKind::random;
    std::vector<int> dims;
    std::uint64_t seed = 0;
    int rank = 1;                     // low_rank
    std::vector<int> core_dims;       // rank_deficient
    std::vector<double> diag;         // diagonal
    std::vector<double> values;       // explicit_values
};

double frobenius_norm(const Tensor& t);

/**
 * w_i = sum over i_2..i_d of T[i, i_2..i_d] * v[i_2] * ... * v[i_d].
 * Requires a cubical tensor of order >= 2 and a vector of matching length.
 * For d = 2 this is the ordinary matrix-vector product.
 */
std::vector<double> contract_all_but_one(const Tensor& t, const std::vector<double>& v);

/**
 * Matrix M with M[i][j] = sum over i_3..i_d of T[i, j, i_3..i_d] * v[i_3]...v[i_d].
 * The Jacobian of contract_all_but_one is (d-1) * M for symmetric T.
 */
Matrix contract_all_but_two(const Tensor& t, const std::vector<double>& v);

/**
 * Mode-m unfolding (m in 1..d): rows indexed by the mode-m index, columns by
 * the remaining indices in lexicographic order with the last one fastest.
 */
Matrix unfold(const Tensor& t, int mode);

// Inverse of unfold for the same column convention.
Tensor fold(const Matrix& m, int mode, const std::vector<int>& dims);

// Mode-m product: contracts mode m of t with the columns of a (p x n_m) matrix.
Tensor mode_multiply(const Tensor& t, const Matrix& m, int mode);

// Average over all index permutations. Exactly symmetric and idempotent.
Tensor symmetrize(const Tensor& t);

// Max |T[idx] - T[perm(idx)]| over all permutations <= tol * max|T|.
bool is_symmetric(const Tensor& t, double rel_tol = 1e-12);

// Builds the tensor described by the spec. Same spec, same bits.
Tensor generate(const GenSpec& spec);

// dten v1 text format.
void write_dten(std::ostream& os, const Tensor& t);
Tensor read_dten(std::istream& is);
void write_dten_file(const std::string& path, const Tensor& t);
Tensor read_dten_file(const std::string& path);

}  // namespace topotensor

#endif
