#ifndef TOPOTENSOR_SIMPLICIAL_HPP
#define TOPOTENSOR_SIMPLICIAL_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "topotensor/errors.hpp"

namespace topotensor {

class Tensor;

using Simplex = std::vector<int>;          // strictly increasing vertex ids
using BettiSignature = std::vector<int>;   // beta_0 .. beta_K

/**
 * Abstract simplicial complex: a downward-closed family of vertex sets.
 * Simplices are grouped by dimension and kept sorted lexicographically, so
 * boundary matrices and serialized output are deterministic.
 */
class SimplicialComplex {
public:
    SimplicialComplex() = default;
    explicit SimplicialComplex(int num_vertices) : num_vertices_(num_vertices) {}

    // Builds the downward closure of the given simplices. Vertex lists may be
    // unsorted and may repeat vertices; they are treated as sets.
    static SimplicialComplex from_maximal(int num_vertices,
                                          const std::vector<Simplex>& maximal);

    int num_vertices() const { return num_vertices_; }

    // -1 for the empty complex.
    int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }

    // f_k, zero when k exceeds the dimension.
    std::size_t count(int k) const;

    // Lexicographically sorted k-simplices; empty list when out of range.
    const std::vector<Simplex>& simplices(int k) const;

    std::size_t total_simplices() const;

    bool operator==(const SimplicialComplex& other) const = default;

private:
    int num_vertices_ = 0;
    std::vector<std::vector<Simplex>> by_dim_;
};

enum class StrategyMode { multipartite, symmetric_clique };

/**
 * Rule associating a complex with a tensor: which vertex set to use and the
 * magnitude threshold an entry must exceed (strictly) to contribute.
 */
struct ComplexStrategy {
    StrategyMode mode = StrategyMode::multipartite;
    double threshold = 0.0;
};

/**
 * multipartite: one vertex per (mode, index) pair; an entry with
 * |value| > threshold contributes the simplex spanning its d coordinates,
 * one from each part. symmetric_clique (cubical tensors only): vertices are
 * the index range; an entry contributes the simplex on its distinct indices.
 */
SimplicialComplex build_complex(const Tensor& t, const ComplexStrategy& s);

/**
 * GF(2) matrix with bit-packed rows. Enough machinery for boundary-operator
 * ranks and the chain-complex identity; no floating point anywhere.
 */
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void set(std::size_t i, std::size_t j, bool value = true);
    bool get(std::size_t i, std::size_t j) const;

    // Rank over GF(2) via Gaussian elimination on a copy.
    std::size_t rank() const;

    // Product over GF(2); column count must match other.rows().
    BitMatrix multiply(const BitMatrix& other) const;

    bool is_zero() const;

private:
    std::size_t rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<std::uint64_t> bits_;
};

/**
 * Boundary operator from k-chains to (k-1)-chains over GF(2). Rows index the
 * (k-1)-simplices and columns the k-simplices, both in lexicographic order.
 */
BitMatrix boundary_matrix(int k, const SimplicialComplex& c);

/**
 * Betti numbers beta_0..beta_up_to: beta_k = f_k - rank d_k - rank d_{k+1},
 * zero-padded past the dimension of the complex.
 */
BettiSignature betti(const SimplicialComplex& c, int up_to);

// Alternating sum of simplex counts.
long long euler_characteristic(const SimplicialComplex& c);

/**
 * Barycentric subdivision: vertices are the simplices of the input and
 * k-simplices are the inclusion chains of length k+1. Homeomorphic to the
 * input, so every Betti number is preserved.
 */
SimplicialComplex barycentric_subdivide(const SimplicialComplex& c);

// scpx v1 text format. The writer emits maximal simplices only; the reader
// rebuilds the closure.
void write_scpx(std::ostream& os, const SimplicialComplex& c);
SimplicialComplex read_scpx(std::istream& is);
void write_scpx_file(const std::string& path, const SimplicialComplex& c);
SimplicialComplex read_scpx_file(const std::string& path);

}  // namespace topotensor

#endif
