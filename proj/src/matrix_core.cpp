#include "dgf/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dgf {

SquareMatrix::SquareMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    n_ = rows.size();
    data_.reserve(n_ * n_);
    for (const auto& row : rows) {
        if (row.size() != n_)
            throw DimensionMismatch("SquareMatrix initializer is not square");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

SquareMatrix SquareMatrix::identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

SquareMatrix SquareMatrix::transposed() const {
    SquareMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

BoolMatrix positivity_pattern(const SquareMatrix& m) {
    BoolMatrix p(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) p.set(i, j, m(i, j) > 0.0);
    return p;
}

namespace {

// Iterative DFS marking nodes reachable from `start`; `forward` selects
// edge direction.
std::vector<std::uint8_t> reachable(const BoolMatrix& adj, std::size_t start, bool forward) {
    std::vector<std::uint8_t> seen(adj.n, 0);
    std::vector<std::size_t> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < adj.n; ++v) {
            const bool edge = forward ? adj.at(u, v) : adj.at(v, u);
            if (edge && !seen[v]) {
                seen[v] = 1;
                stack.push_back(v);
            }
        }
    }
    return seen;
}

}  // namespace

bool is_irreducible(const BoolMatrix& adjacency) {
    if (adjacency.n == 0) return false;
    if (adjacency.n == 1) return true;
    // Strongly connected iff node 0 reaches everyone and everyone reaches
    // node 0.
    const auto fwd = reachable(adjacency, 0, true);
    if (std::find(fwd.begin(), fwd.end(), 0) != fwd.end()) return false;
    const auto bwd = reachable(adjacency, 0, false);
    return std::find(bwd.begin(), bwd.end(), 0) == bwd.end();
}

SimplexVector SimplexVector::vertex(std::size_t n, std::size_t i) {
    std::vector<double> v(n, 0.0);
    v.at(i) = 1.0;
    return SimplexVector(std::move(v));
}

SimplexVector SimplexVector::uniform(std::size_t n) {
    return SimplexVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

SimplexVector SimplexVector::trusted(std::vector<double> values) {
    return SimplexVector(std::move(values));
}

double SimplexVector::min_entry() const { return *std::min_element(values_.begin(), values_.end()); }
double SimplexVector::max_entry() const { return *std::max_element(values_.begin(), values_.end()); }

double SimplexVector::sum() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s;
}

std::size_t SimplexVector::vertex_index() const {
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (values_[i] == 1.0) return i;
    return npos;
}

SimplexVector validate_simplex(std::span<const double> raw) {
    if (raw.size() < 2) throw DimensionMismatch("simplex vector needs n >= 2");
    double sum = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double v = raw[i];
        if (!std::isfinite(v))
            throw RangeError("simplex entry " + std::to_string(i) + " is not finite");
        if (v < -kValidationTol || v > 1.0 + kValidationTol)
            throw RangeError("simplex entry " + std::to_string(i) + " = " + std::to_string(v) +
                             " outside [0,1]");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kValidationTol)
        throw SumError("simplex entries sum to " + std::to_string(sum) + ", expected 1");
    return SimplexVector(std::vector<double>(raw.begin(), raw.end()));
}

InteractionMatrix validate_interaction(const SquareMatrix& raw) {
    const std::size_t n = raw.size();
    if (n < 2) throw DimensionMismatch("interaction matrix needs n >= 2");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = raw(i, j);
            if (!std::isfinite(v))
                throw NegativeEntryError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                         ") is not finite");
            if (v < 0.0)
                throw NegativeEntryError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                         ") = " + std::to_string(v) + " is negative");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (raw(i, i) != 0.0)
            throw DiagonalError("diagonal entry (" + std::to_string(i) + "," + std::to_string(i) +
                                ") = " + std::to_string(raw(i, i)) + ", must be exactly 0");
    }
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += raw(i, j);
        if (std::abs(s - 1.0) > kValidationTol)
            throw RowSumError("row " + std::to_string(i) + " sums to " + std::to_string(s) +
                              ", expected 1");
    }
    if (!is_irreducible(positivity_pattern(raw)))
        throw ReducibleError("interaction graph is not strongly connected");

    bool doubly = true;
    for (std::size_t j = 0; j < n && doubly; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += raw(i, j);
        doubly = std::abs(s - 1.0) <= kValidationTol;
    }
    return InteractionMatrix(raw, doubly);
}

InfluenceMatrix build_influence_unchecked(SquareMatrix m) { return InfluenceMatrix(std::move(m)); }

InfluenceMatrix InfluenceMatrix::from_rows(SquareMatrix m, double tol) {
    const std::size_t n = m.size();
    if (n < 2) throw DimensionMismatch("influence matrix needs n >= 2");
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double v = m(i, j);
            if (!std::isfinite(v) || v < 0.0)
                throw NegativeEntryError("influence entry (" + std::to_string(i) + "," +
                                         std::to_string(j) + ") invalid");
            s += v;
        }
        if (std::abs(s - 1.0) > tol)
            throw RowSumError("influence row " + std::to_string(i) + " sums to " + std::to_string(s));
    }
    return InfluenceMatrix(std::move(m));
}

OpinionVector::OpinionVector(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_)
        if (!std::isfinite(v)) throw RangeError("opinion entries must be finite");
}

double inf_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionMismatch("inf_distance: length mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace dgf
