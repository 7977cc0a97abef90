#include <cmath>

#include "dgf/csv.hpp"
#include "dgf/harness.hpp"
#include "dgf/rng.hpp"

namespace dgf {

namespace {

constexpr long kMaxSinkhornSweeps = 100000;

void normalize_rows(SquareMatrix& m) {
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += m(i, j);
        for (std::size_t j = 0; j < n; ++j) m(i, j) /= s;
    }
}

void normalize_columns(SquareMatrix& m) {
    const std::size_t n = m.size();
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += m(i, j);
        for (std::size_t i = 0; i < n; ++i) m(i, j) /= s;
    }
}

double worst_column_error(const SquareMatrix& m) {
    const std::size_t n = m.size();
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += m(i, j);
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

// Alternating normalization; the zero diagonal is preserved by scaling.
// Ends on a row normalization so row sums are exact to rounding while
// column sums are within tol.
void sinkhorn_balance(SquareMatrix& m, double tol) {
    double col_err = 0.0;
    for (long sweep = 0; sweep < kMaxSinkhornSweeps; ++sweep) {
        normalize_rows(m);
        col_err = worst_column_error(m);
        if (col_err <= tol) return;
        normalize_columns(m);
    }
    throw SinkhornNoConvergence("Sinkhorn balancing stuck after " +
                                    std::to_string(kMaxSinkhornSweeps) +
                                    " sweeps (worst column-sum error " + format_double(col_err) +
                                    ", tol " + format_double(tol) + ")",
                                kMaxSinkhornSweeps, col_err);
}

}  // namespace

InteractionMatrix generate_matrix(const RandomMatrixSpec& spec) {
    const std::size_t min_n = spec.kind == MatrixKind::DoublyStochastic ? 3 : 2;
    if (spec.n < min_n)
        throw std::invalid_argument("generate_matrix: n must be >= " + std::to_string(min_n) +
                                    " for this kind");
    if (!(spec.sinkhorn_tol > 0.0))
        throw std::invalid_argument("generate_matrix: sinkhorn_tol must be positive");

    Xoshiro256pp rng(spec.seed);
    SquareMatrix m(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i)
        for (std::size_t j = 0; j < spec.n; ++j)
            if (i != j) m(i, j) = rng.uniform01();

    if (spec.kind == MatrixKind::RowStochastic)
        normalize_rows(m);
    else
        sinkhorn_balance(m, spec.sinkhorn_tol);
    return validate_interaction(m);
}

SimplexVector random_simplex_x0(std::size_t n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("random_simplex_x0: n must be >= 2");
    Xoshiro256pp rng(seed);
    return validate_simplex(random_simplex_point(rng, n));
}

}  // namespace dgf
