#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "dgf/errors.hpp"

namespace dgf {

/// Absolute tolerance for row/column sums and simplex sums. Inputs are
/// typically human-entered decimals, so this is generous relative to
/// double rounding yet far below any genuine configuration error.
inline constexpr double kValidationTol = 1e-9;

/// Dense n-by-n matrix of doubles, row-major. Plain storage with no
/// stochasticity guarantees; validated wrappers are built from it.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}
    SquareMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static SquareMatrix identity(std::size_t n);

    std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
    std::span<const double> data() const { return data_; }

    SquareMatrix transposed() const;

    bool operator==(const SquareMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Boolean adjacency pattern, row-major; entry (i,j) true means a
/// directed edge i -> j.
struct BoolMatrix {
    std::size_t n = 0;
    std::vector<std::uint8_t> data;

    explicit BoolMatrix(std::size_t n = 0) : n(n), data(n * n, 0) {}
    bool at(std::size_t i, std::size_t j) const { return data[i * n + j] != 0; }
    void set(std::size_t i, std::size_t j, bool v) { data[i * n + j] = v ? 1 : 0; }
};

/// Pattern of strictly positive entries.
BoolMatrix positivity_pattern(const SquareMatrix& m);

/// True iff the directed graph is strongly connected, i.e. the matrix
/// carrying this pattern is irreducible. Exact on the boolean structure.
bool is_irreducible(const BoolMatrix& adjacency);

/// Self-confidence / perceived-power / social-power vector constrained
/// to the n-simplex: entries in [0,1] summing to 1 within kValidationTol.
class SimplexVector {
public:
    static SimplexVector vertex(std::size_t n, std::size_t i);
    static SimplexVector uniform(std::size_t n);

    /// Wraps values that are known to lie on the simplex (step outputs).
    /// No checks; trajectory engines re-assert the invariants per issue.
    static SimplexVector trusted(std::vector<double> values);

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }
    const std::vector<double>& as_vector() const { return values_; }

    double min_entry() const;
    double max_entry() const;
    double sum() const;
    /// Index of the unique entry equal to 1.0, or npos if not a vertex.
    std::size_t vertex_index() const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    bool operator==(const SimplexVector&) const = default;

private:
    explicit SimplexVector(std::vector<double> v) : values_(std::move(v)) {}
    friend SimplexVector validate_simplex(std::span<const double> raw);
    std::vector<double> values_;
};

/// Rejects rather than projects: any entry outside [0,1] beyond
/// kValidationTol raises RangeError, a sum away from 1 raises SumError.
SimplexVector validate_simplex(std::span<const double> raw);

/// Relative interaction matrix: row-stochastic, zero diagonal,
/// irreducible. Immutable once validated.
class InteractionMatrix {
public:
    std::size_t size() const { return entries_.size(); }
    double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
    const SquareMatrix& entries() const { return entries_; }
    bool doubly_stochastic() const { return doubly_stochastic_; }

    bool operator==(const InteractionMatrix&) const = default;

private:
    InteractionMatrix(SquareMatrix m, bool doubly) : entries_(std::move(m)), doubly_stochastic_(doubly) {}
    friend InteractionMatrix validate_interaction(const SquareMatrix& raw);
    SquareMatrix entries_;
    bool doubly_stochastic_;
};

/// Checks, in order: n >= 2 and finite entries, nonnegativity, zero
/// diagonal, row sums, strong connectivity. The input is never mutated
/// or renormalized; the doubly_stochastic flag records whether columns
/// also sum to 1 within tolerance.
InteractionMatrix validate_interaction(const SquareMatrix& raw);

/// Issue-specific opinion-update matrix W = diag(x) + (I - diag(x)) C.
/// Row-stochastic with arbitrary diagonal.
class InfluenceMatrix {
public:
    /// Validates row sums and finiteness only (diagonal may be anything).
    static InfluenceMatrix from_rows(SquareMatrix m, double tol = kValidationTol);

    std::size_t size() const { return entries_.size(); }
    double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
    const SquareMatrix& entries() const { return entries_; }

private:
    explicit InfluenceMatrix(SquareMatrix m) : entries_(std::move(m)) {}
    friend InfluenceMatrix build_influence_unchecked(SquareMatrix m);
    SquareMatrix entries_;
};

/// Internal: wraps rows whose structure is guaranteed by build_influence.
InfluenceMatrix build_influence_unchecked(SquareMatrix m);

/// Opinions are unconstrained reals; only finiteness is required.
class OpinionVector {
public:
    explicit OpinionVector(std::vector<double> values);
    OpinionVector(std::initializer_list<double> values) : OpinionVector(std::vector<double>(values)) {}

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }

    bool operator==(const OpinionVector&) const = default;

private:
    std::vector<double> values_;
};

/// Max-norm distance between two equal-length vectors.
double inf_distance(std::span<const double> a, std::span<const double> b);

}  // namespace dgf
