#include "topotensor/simplicial.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "topotensor/tensor.hpp"

namespace topotensor {

namespace {

// Normalizes a vertex list to a strictly increasing set.
Simplex as_simplex(Simplex vertices) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return vertices;
}

}  // namespace

SimplicialComplex SimplicialComplex::from_maximal(int num_vertices,
                                                  const std::vector<Simplex>& maximal) {
    if (num_vertices < 0) throw ValueError("negative vertex count");
    std::vector<std::set<Simplex>> closed;

    for (const Simplex& raw : maximal) {
        Simplex s = as_simplex(raw);
        if (s.empty()) continue;
        for (int v : s) {
            if (v < 0 || v >= num_vertices)
                throw ValueError("simplex references a vertex outside [0, num_vertices)");
        }
        // All nonempty subsets; simplices here are tiny so a mask walk is fine.
        const int sz = static_cast<int>(s.size());
        for (unsigned mask = 1; mask < (1u << sz); ++mask) {
            Simplex face;
            for (int b = 0; b < sz; ++b)
                if (mask & (1u << b)) face.push_back(s[b]);
            const int k = static_cast<int>(face.size()) - 1;
            if (k >= static_cast<int>(closed.size())) closed.resize(k + 1);
            closed[k].insert(std::move(face));
        }
    }

    SimplicialComplex c(num_vertices);
    c.by_dim_.resize(closed.size());
    for (std::size_t k = 0; k < closed.size(); ++k)
        c.by_dim_[k].assign(closed[k].begin(), closed[k].end());
    return c;
}

std::size_t SimplicialComplex::count(int k) const {
    if (k < 0 || k >= static_cast<int>(by_dim_.size())) return 0;
    return by_dim_[k].size();
}

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const {
    static const std::vector<Simplex> kEmpty;
    if (k < 0 || k >= static_cast<int>(by_dim_.size())) return kEmpty;
    return by_dim_[k];
}

std::size_t SimplicialComplex::total_simplices() const {
    std::size_t n = 0;
    for (const auto& level : by_dim_) n += level.size();
    return n;
}

SimplicialComplex build_complex(const Tensor& t, const ComplexStrategy& s) {
    if (s.threshold < 0.0) throw StrategyError("threshold must be nonnegative");
    const int d = t.order();
    const auto& dims = t.dims();

    int num_vertices = 0;
    std::vector<int> mode_offset(d, 0);
    if (s.mode == StrategyMode::multipartite) {
        for (int m = 0; m < d; ++m) {
            mode_offset[m] = num_vertices;
            num_vertices += dims[m];
        }
    } else {
        if (!t.is_cubical())
            throw StrategyError("symmetric_clique requires equal dimensions in every mode");
        num_vertices = dims[0];
    }

    std::vector<Simplex> tops;
    std::vector<int> index(d, 0);
    for (std::size_t lin = 0; lin < t.numel(); ++lin) {
        if (std::abs(t.values()[lin]) <= s.threshold) continue;
        std::size_t rem = lin;
        for (int m = d - 1; m >= 0; --m) {
            index[m] = static_cast<int>(rem % static_cast<std::size_t>(dims[m]));
            rem /= static_cast<std::size_t>(dims[m]);
        }
        Simplex top(d);
        if (s.mode == StrategyMode::multipartite) {
            for (int m = 0; m < d; ++m) top[m] = mode_offset[m] + index[m];
        } else {
            top = index;
        }
        tops.push_back(std::move(top));
    }
    return SimplicialComplex::from_maximal(num_vertices, tops);
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

void BitMatrix::set(std::size_t i, std::size_t j, bool value) {
    const std::uint64_t mask = 1ULL << (j % 64);
    if (value)
        bits_[i * words_ + j / 64] |= mask;
    else
        bits_[i * words_ + j / 64] &= ~mask;
}

bool BitMatrix::get(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1ULL;
}

std::size_t BitMatrix::rank() const {
    std::vector<std::uint64_t> work = bits_;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
        const std::size_t w = col / 64;
        const std::uint64_t mask = 1ULL << (col % 64);
        std::size_t pivot = rows_;
        for (std::size_t i = rank; i < rows_; ++i) {
            if (work[i * words_ + w] & mask) {
                pivot = i;
                break;
            }
        }
        if (pivot == rows_) continue;
        if (pivot != rank) {
            for (std::size_t k = 0; k < words_; ++k)
                std::swap(work[pivot * words_ + k], work[rank * words_ + k]);
        }
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == rank) continue;
            if (work[i * words_ + w] & mask) {
                for (std::size_t k = 0; k < words_; ++k)
                    work[i * words_ + k] ^= work[rank * words_ + k];
            }
        }
        ++rank;
    }
    return rank;
}

BitMatrix BitMatrix::multiply(const BitMatrix& other) const {
    if (cols_ != other.rows_) throw DimsError("BitMatrix::multiply: shape mismatch");
    BitMatrix r(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            if (!get(i, k)) continue;
            for (std::size_t w = 0; w < other.words_; ++w)
                r.bits_[i * r.words_ + w] ^= other.bits_[k * other.words_ + w];
        }
    }
    return r;
}

bool BitMatrix::is_zero() const {
    return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
}

BitMatrix boundary_matrix(int k, const SimplicialComplex& c) {
    if (k < 1) throw ValueError("boundary_matrix requires k >= 1");
    const auto& faces = c.simplices(k - 1);
    const auto& cells = c.simplices(k);
    BitMatrix m(faces.size(), cells.size());

    Simplex face;
    for (std::size_t col = 0; col < cells.size(); ++col) {
        const Simplex& cell = cells[col];
        for (std::size_t drop = 0; drop < cell.size(); ++drop) {
            face.clear();
            for (std::size_t i = 0; i < cell.size(); ++i)
                if (i != drop) face.push_back(cell[i]);
            const auto it = std::lower_bound(faces.begin(), faces.end(), face);
            // Downward closure guarantees the face is present.
            m.set(static_cast<std::size_t>(it - faces.begin()), col);
        }
    }
    return m;
}

BettiSignature betti(const SimplicialComplex& c, int up_to) {
    if (up_to < 0) throw ValueError("betti: up_to must be nonnegative");
    const int dim = c.dimension();

    // rank of the boundary operator for k = 1 .. dim+1 (zero past the top).
    std::vector<std::size_t> boundary_rank(std::max(dim + 2, 2), 0);
    for (int k = 1; k <= dim; ++k) boundary_rank[k] = boundary_matrix(k, c).rank();

    BettiSignature b(up_to + 1, 0);
    for (int k = 0; k <= up_to && k <= dim; ++k) {
        const long long fk = static_cast<long long>(c.count(k));
        const long long rk = k == 0 ? 0 : static_cast<long long>(boundary_rank[k]);
        const long long rk1 = k + 1 <= dim ? static_cast<long long>(boundary_rank[k + 1]) : 0;
        b[k] = static_cast<int>(fk - rk - rk1);
    }
    return b;
}

long long euler_characteristic(const SimplicialComplex& c) {
    long long chi = 0;
    for (int k = 0; k <= c.dimension(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(c.count(k));
    return chi;
}

SimplicialComplex barycentric_subdivide(const SimplicialComplex& c) {
    // New vertex per old simplex, numbered by (dimension, lex) order.
    std::map<Simplex, int> id_of;
    std::vector<const Simplex*> simplex_of;
    for (int k = 0; k <= c.dimension(); ++k) {
        for (const Simplex& s : c.simplices(k)) {
            id_of.emplace(s, static_cast<int>(simplex_of.size()));
            simplex_of.push_back(&s);
        }
    }

    // Chains sigma_0 < sigma_1 < ... under strict face inclusion. Every
    // subset of a chain is a chain, so emitting maximal chains (those that
    // start at a vertex, step through every intermediate dimension, and end
    // at a maximal simplex) and closing downward yields exactly the chain
    // complex. Enumerate all chains directly instead; the complexes here are
    // small and it avoids a maximality pass.
    std::vector<Simplex> chains;
    std::vector<int> stack;

    auto is_proper_face = [](const Simplex& a, const Simplex& b) {
        return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
    };

    // Iterative DFS over extensions: grow each chain by any simplex that has
    // the current tip as a proper face.
    const int total = static_cast<int>(simplex_of.size());
    std::vector<std::vector<int>> super_of(total);
    for (int i = 0; i < total; ++i)
        for (int j = 0; j < total; ++j)
            if (is_proper_face(*simplex_of[i], *simplex_of[j])) super_of[i].push_back(j);

    std::vector<std::pair<int, int>> dfs;  // (node, depth)
    for (int start = 0; start < total; ++start) {
        dfs.emplace_back(start, 0);
        while (!dfs.empty()) {
            auto [node, depth] = dfs.back();
            dfs.pop_back();
            stack.resize(depth);
            stack.push_back(node);
            chains.push_back(stack);
            for (int nxt : super_of[node]) dfs.emplace_back(nxt, depth + 1);
        }
    }
    return SimplicialComplex::from_maximal(total, chains);
}

void write_scpx(std::ostream& os, const SimplicialComplex& c) {
    os << "scpx 1\n" << c.num_vertices() << "\n";
    // Emit only the maximal simplices; the reader closes downward.
    for (int k = 0; k <= c.dimension(); ++k) {
        const auto& above = c.simplices(k + 1);
        for (const Simplex& s : c.simplices(k)) {
            bool maximal = true;
            for (const Simplex& t : above) {
                if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                    maximal = false;
                    break;
                }
            }
            if (!maximal) continue;
            for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
            os << "\n";
        }
    }
}

SimplicialComplex read_scpx(std::istream& is) {
    std::string magic;
    int version = 0;
    if (!(is >> magic >> version) || magic != "scpx" || version != 1)
        throw FormatError("not a scpx v1 file");
    int num_vertices = 0;
    if (!(is >> num_vertices) || num_vertices < 0) throw FormatError("scpx: bad vertex count");
    std::string line;
    std::getline(is, line);  // rest of the count line

    std::vector<Simplex> maximal;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        Simplex s;
        int v;
        while (ls >> v) s.push_back(v);
        if (!ls.eof()) throw FormatError("scpx: malformed simplex line");
        if (!s.empty()) maximal.push_back(std::move(s));
    }
    return SimplicialComplex::from_maximal(num_vertices, maximal);
}

void write_scpx_file(const std::string& path, const SimplicialComplex& c) {
    std::ofstream os(path);
    if (!os) throw FormatError("cannot open for writing: " + path);
    write_scpx(os, c);
}

SimplicialComplex read_scpx_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw FormatError("cannot open: " + path);
    return read_scpx(is);
}

}  // namespace topotensor
