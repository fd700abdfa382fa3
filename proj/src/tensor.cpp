#include "topotensor/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "topotensor/rng.hpp"

namespace topotensor {

namespace {

std::size_t checked_numel(const std::vector<int>& dims) {
    if (dims.empty()) throw DimsError("tensor order must be at least 1");
    std::size_t n = 1;
    for (int d : dims) {
        if (d <= 0) throw DimsError("tensor dimensions must be positive");
        n *= static_cast<std::size_t>(d);
    }
    return n;
}

// Decodes a row-major linear offset into a multi-index.
void decode(std::size_t linear, const std::vector<int>& dims, std::vector<int>& index) {
    for (int m = static_cast<int>(dims.size()) - 1; m >= 0; --m) {
        index[m] = static_cast<int>(linear % static_cast<std::size_t>(dims[m]));
        linear /= static_cast<std::size_t>(dims[m]);
    }
}

// Sums out the last mode against v; reduces the order by one.
std::vector<double> contract_last_mode(const std::vector<double>& values,
                                       std::size_t leading, int n,
                                       const std::vector<double>& v) {
    std::vector<double> out(leading, 0.0);
    for (std::size_t j = 0; j < leading; ++j) {
        double s = 0.0;
        const std::size_t base = j * static_cast<std::size_t>(n);
        for (int k = 0; k < n; ++k) s += values[base + k] * v[k];
        out[j] = s;
    }
    return out;
}

}  // namespace

Tensor::Tensor(std::vector<int> dims, std::vector<double> values)
    : dims_(std::move(dims)), values_(std::move(values)) {
    const std::size_t n = checked_numel(dims_);
    if (values_.size() != n)
        throw DimsError("value count does not match the product of the dimensions");
    for (double x : values_)
        if (!std::isfinite(x)) throw ValueError("tensor entries must be finite");
}

Tensor::Tensor(std::vector<int> dims) : dims_(std::move(dims)) {
    values_.assign(checked_numel(dims_), 0.0);
}

std::size_t Tensor::offset(const std::vector<int>& index) const {
    if (index.size() != dims_.size()) throw DimsError("index order mismatch");
    std::size_t off = 0;
    for (std::size_t m = 0; m < dims_.size(); ++m) {
        if (index[m] < 0 || index[m] >= dims_[m]) throw DimsError("index out of range");
        off = off * static_cast<std::size_t>(dims_[m]) + static_cast<std::size_t>(index[m]);
    }
    return off;
}

bool Tensor::is_cubical() const {
    return std::all_of(dims_.begin(), dims_.end(), [&](int d) { return d == dims_[0]; });
}

int Tensor::cubical_extent() const {
    if (!is_cubical()) throw ShapeError("operation requires equal dimensions in every mode");
    return dims_[0];
}

double frobenius_norm(const Tensor& t) {
    double s = 0.0;
    for (double x : t.values()) s += x * x;
    return std::sqrt(s);
}

std::vector<double> contract_all_but_one(const Tensor& t, const std::vector<double>& v) {
    const int n = t.cubical_extent();
    if (t.order() < 2) throw ShapeError("contraction requires order >= 2");
    if (static_cast<int>(v.size()) != n) throw DimsError("vector length does not match");

    std::vector<double> cur = t.values();
    std::size_t leading = t.numel();
    for (int step = 0; step < t.order() - 1; ++step) {
        leading /= static_cast<std::size_t>(n);
        cur = contract_last_mode(cur, leading, n, v);
    }
    return cur;
}

Matrix contract_all_but_two(const Tensor& t, const std::vector<double>& v) {
    const int n = t.cubical_extent();
    if (t.order() < 2) throw ShapeError("contraction requires order >= 2");
    if (static_cast<int>(v.size()) != n) throw DimsError("vector length does not match");

    std::vector<double> cur = t.values();
    std::size_t leading = t.numel();
    for (int step = 0; step < t.order() - 2; ++step) {
        leading /= static_cast<std::size_t>(n);
        cur = contract_last_mode(cur, leading, n, v);
    }
    Matrix m(n, n);
    m.a = std::move(cur);
    return m;
}

Matrix unfold(const Tensor& t, int mode) {
    const int d = t.order();
    if (mode < 1 || mode > d) throw ModeError("unfold: mode out of range");
    const int m0 = mode - 1;
    const auto& dims = t.dims();
    const int nrows = dims[m0];
    const std::size_t ncols = t.numel() / static_cast<std::size_t>(nrows);

    Matrix r(nrows, static_cast<int>(ncols));
    std::vector<int> index(d, 0);
    for (std::size_t lin = 0; lin < t.numel(); ++lin) {
        decode(lin, dims, index);
        std::size_t col = 0;
        for (int m = 0; m < d; ++m) {
            if (m == m0) continue;
            col = col * static_cast<std::size_t>(dims[m]) + static_cast<std::size_t>(index[m]);
        }
        r.a[static_cast<std::size_t>(index[m0]) * ncols + col] = t.values()[lin];
    }
    return r;
}

Tensor fold(const Matrix& m, int mode, const std::vector<int>& dims) {
    const int d = static_cast<int>(dims.size());
    if (mode < 1 || mode > d) throw ModeError("fold: mode out of range");
    const int m0 = mode - 1;
    Tensor t(dims);
    if (m.rows != dims[m0] || static_cast<std::size_t>(m.rows) * m.cols != t.numel())
        throw DimsError("fold: matrix shape does not match dims");

    const std::size_t ncols = static_cast<std::size_t>(m.cols);
    std::vector<int> index(d, 0);
    for (std::size_t lin = 0; lin < t.numel(); ++lin) {
        decode(lin, dims, index);
        std::size_t col = 0;
        for (int mm = 0; mm < d; ++mm) {
            if (mm == m0) continue;
            col = col * static_cast<std::size_t>(dims[mm]) + static_cast<std::size_t>(index[mm]);
        }
        t.values()[lin] = m.a[static_cast<std::size_t>(index[m0]) * ncols + col];
    }
    return t;
}

Tensor mode_multiply(const Tensor& t, const Matrix& m, int mode) {
    if (mode < 1 || mode > t.order()) throw ModeError("mode_multiply: mode out of range");
    if (m.cols != t.dims()[mode - 1])
        throw DimsError("mode_multiply: matrix columns must match the mode extent");
    Matrix unf = unfold(t, mode);
    Matrix prod = matmul(m, unf);
    std::vector<int> new_dims = t.dims();
    new_dims[mode - 1] = m.rows;
    return fold(prod, mode, new_dims);
}

Tensor symmetrize(const Tensor& t) {
    t.cubical_extent();  // ShapeError for non-cubical input
    const int d = t.order();
    const auto& dims = t.dims();

    // Group entries by their sorted index tuple, then write one value per
    // group. Short-circuiting when all members agree keeps the map exactly
    // idempotent and exactly symmetric.
    std::map<std::vector<int>, std::vector<std::size_t>> groups;
    std::vector<int> index(d, 0);
    for (std::size_t lin = 0; lin < t.numel(); ++lin) {
        decode(lin, dims, index);
        std::vector<int> key = index;
        std::sort(key.begin(), key.end());
        groups[key].push_back(lin);
    }

    Tensor out(dims);
    for (const auto& [key, members] : groups) {
        const double first = t.values()[members.front()];
        bool all_equal = true;
        double sum = 0.0;
        for (std::size_t off : members) {
            sum += t.values()[off];
            if (t.values()[off] != first) all_equal = false;
        }
        const double value = all_equal ? first : sum / static_cast<double>(members.size());
        for (std::size_t off : members) out.values()[off] = value;
    }
    return out;
}

bool is_symmetric(const Tensor& t, double rel_tol) {
    if (!t.is_cubical()) return false;
    const int d = t.order();
    const auto& dims = t.dims();

    double max_abs = 0.0;
    for (double x : t.values()) max_abs = std::max(max_abs, std::abs(x));
    const double tol = rel_tol * std::max(1.0, max_abs);

    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> index(d, 0), pindex(d, 0);
    do {
        for (std::size_t lin = 0; lin < t.numel(); ++lin) {
            decode(lin, dims, index);
            for (int m = 0; m < d; ++m) pindex[m] = index[perm[m]];
            if (std::abs(t.values()[lin] - t.at(pindex)) > tol) return false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
}

namespace {

Tensor generate_random(const GenSpec& spec) {
    Xoshiro256StarStar rng(spec.seed);
    Tensor t(spec.dims);
    for (double& x : t.values()) x = rng.normal();
    return t;
}

Tensor generate_low_rank(const GenSpec& spec) {
    if (spec.rank < 1) throw SpecError("low_rank requires rank >= 1");
    Xoshiro256StarStar rng(spec.seed);
    const int d = static_cast<int>(spec.dims.size());
    Tensor t(spec.dims);
    std::vector<int> index(d, 0);
    for (int r = 0; r < spec.rank; ++r) {
        std::vector<std::vector<double>> vecs(d);
        for (int m = 0; m < d; ++m) {
            vecs[m].resize(spec.dims[m]);
            for (double& x : vecs[m]) x = rng.normal();
        }
        for (std::size_t lin = 0; lin < t.numel(); ++lin) {
            decode(lin, spec.dims, index);
            double p = 1.0;
            for (int m = 0; m < d; ++m) p *= vecs[m][index[m]];
            t.values()[lin] += p;
        }
    }
    return t;
}

Tensor generate_rank_deficient(const GenSpec& spec) {
    const int d = static_cast<int>(spec.dims.size());
    if (static_cast<int>(spec.core_dims.size()) != d)
        throw SpecError("rank_deficient requires core_dims of the same order");
    for (int m = 0; m < d; ++m) {
        if (spec.core_dims[m] < 1 || spec.core_dims[m] > spec.dims[m])
            throw SpecError("core_dims must be between 1 and dims in every mode");
    }
    Xoshiro256StarStar rng(spec.seed);
    Tensor core(spec.core_dims);
    for (double& x : core.values()) x = rng.normal();

    Tensor t = core;
    for (int m = 0; m < d; ++m) {
        Matrix g(spec.dims[m], spec.core_dims[m]);
        for (double& x : g.a) x = rng.normal();
        Matrix q = orthonormalize_columns(g);
        t = mode_multiply(t, q, m + 1);
    }
    return t;
}

Tensor generate_diagonal(const GenSpec& spec) {
    const int d = static_cast<int>(spec.dims.size());
    const int shortest = *std::min_element(spec.dims.begin(), spec.dims.end());
    if (static_cast<int>(spec.diag.size()) != shortest)
        throw SpecError("diagonal requires one value per diagonal entry");
    Tensor t(spec.dims);
    for (int i = 0; i < shortest; ++i) {
        std::vector<int> index(d, i);
        t.at(index) = spec.diag[i];
    }
    return t;
}

}  // namespace

Tensor generate(const GenSpec& spec) {
    if (spec.dims.empty()) throw SpecError("spec must name at least one dimension");
    for (int d : spec.dims)
        if (d <= 0) throw SpecError("spec dimensions must be positive");

    switch (spec.kind) {
        case GenKind::random:
            return generate_random(spec);
        case GenKind::low_rank:
            return generate_low_rank(spec);
        case GenKind::rank_deficient:
            return generate_rank_deficient(spec);
        case GenKind::diagonal:
            return generate_diagonal(spec);
        case GenKind::explicit_values:
            return Tensor(spec.dims, spec.values);
    }
    throw SpecError("unknown generator kind");
}

void write_dten(std::ostream& os, const Tensor& t) {
    os << "dten 1\n" << t.order() << "\n";
    for (int m = 0; m < t.order(); ++m) os << (m ? " " : "") << t.dims()[m];
    os << "\n";
    char buf[64];
    for (std::size_t i = 0; i < t.numel(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", t.values()[i]);
        os << buf << ((i + 1) % 6 == 0 || i + 1 == t.numel() ? "\n" : " ");
    }
}

Tensor read_dten(std::istream& is) {
    std::string magic;
    int version = 0;
    if (!(is >> magic >> version) || magic != "dten" || version != 1)
        throw FormatError("not a dten v1 file");
    int order = 0;
    if (!(is >> order) || order < 1) throw FormatError("dten: bad order");
    std::vector<int> dims(order);
    for (int& d : dims)
        if (!(is >> d) || d < 1) throw FormatError("dten: bad dimension");
    std::size_t n = 1;
    for (int d : dims) n *= static_cast<std::size_t>(d);
    std::vector<double> values(n);
    for (double& x : values)
        if (!(is >> x)) throw FormatError("dten: too few values");
    return Tensor(std::move(dims), std::move(values));
}

void write_dten_file(const std::string& path, const Tensor& t) {
    std::ofstream os(path);
    if (!os) throw FormatError("cannot open for writing: " + path);
    write_dten(os, t);
}

Tensor read_dten_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw FormatError("cannot open: " + path);
    return read_dten(is);
}

}  // namespace topotensor
