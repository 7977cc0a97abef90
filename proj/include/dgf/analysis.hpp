#pragma once

#include <string>
#include <vector>

#include "dgf/dynamics.hpp"
#include "dgf/matrix_core.hpp"

namespace dgf {

/// Slack for per-issue min/max monotonicity verdicts.
inline constexpr double kMonotoneSlack = 1e-12;

struct QuadraticRoots {
    double low;
    double high;
};

/// Both solutions of x - x^2 = a (n-1)/n^2: ((1 -+ sqrt(disc))/2).
/// low + high = 1. Throws DiscriminantError when 4a(n-1)/n^2 > 1.
QuadraticRoots quadratic_roots(double a, int n);

/// Value of n - (n-2k) sqrt(1 - 4a(n-1)/n^2) - 2: zero exactly when a
/// candidate equilibrium with k high roots and n-k low roots can sum to
/// 1. Strictly positive for n >= 3, k >= 1, a > 0, which rules out every
/// mixed-root candidate; k = 0 gives 0 only at a = 1 (the uniform
/// equilibrium).
double mixed_root_sum_check(int k, double a, int n);

enum class RootChoice { Low, High };

/// Classification of an equilibrium candidate.
struct EquilibriumKind {
    enum class Tag { Vertex, Uniform, QuadraticFamily, Interior };

    static EquilibriumKind vertex(std::size_t i) { return {Tag::Vertex, i, 0.0, {}}; }
    static EquilibriumKind uniform() { return {Tag::Uniform, 0, 0.0, {}}; }
    static EquilibriumKind quadratic_family(double a, std::vector<RootChoice> pattern) {
        return {Tag::QuadraticFamily, 0, a, std::move(pattern)};
    }
    /// Interior fixed point with no closed-form label (general stochastic
    /// C; observed, never asserted unique).
    static EquilibriumKind interior() { return {Tag::Interior, 0, 0.0, {}}; }

    Tag tag;
    std::size_t vertex_index;
    double a;
    std::vector<RootChoice> root_pattern;

    bool operator==(const EquilibriumKind&) const = default;
};

struct EquilibriumCandidate {
    SimplexVector x;
    EquilibriumKind kind;
    /// Max-norm of the one-step displacement under the Modified map.
    double residual;
};

/// Max-norm of modified_step(x, C) - x; zero means fixed point.
double verify_equilibrium(const SimplexVector& x, const InteractionMatrix& c);

/// The two-individual equilibrium family: for 0 < a <= 1 the candidate
/// ([x_high, x_low]) is a fixed point of the Modified map over the only
/// valid 2x2 interaction matrix [[0,1],[1,0]]. Throws DiscriminantError
/// for a > 1.
EquilibriumCandidate n2_equilibrium_family(double a);

/// Independent equilibrium oracle for n <= 4: enumerates the simplex grid
/// with resolution round(1/grid_step), refines every grid point by a
/// damped fixed-point iteration (x <- x/2 + step(x)/2, which stays on the
/// simplex and needs no derivatives), keeps refined points with residual
/// <= residual_tol, deduplicates within max-norm grid_step/2 keeping the
/// lowest-residual representative, and returns candidates sorted
/// lexicographically by coordinates.
std::vector<EquilibriumCandidate> brute_force_fixed_points(const InteractionMatrix& c,
                                                           double grid_step, double residual_tol);

struct ConvergenceReport {
    bool converged;
    SimplexVector limit;
    long issues_used;
    double final_residual;
    bool min_monotone;
    bool max_monotone;
    bool lyapunov_nonincreasing;
    /// n = 2 is outside the assumptions of the uniqueness and stability
    /// results; verdicts are still produced but flagged.
    bool n2_warning;
};

/// Fills every verdict field from the recorded per-issue diagnostics.
/// Monotonicity uses slack kMonotoneSlack; the Lyapunov value is
/// V(x) = max_i x_i - 1/n.
ConvergenceReport analyze_trajectory(const Trajectory& traj, const InteractionMatrix& c);

/// True when max(x(s+window)) < max(x(s)) - margin for every issue s
/// whose state is farther than exclude_tol from uniform (in max-norm)
/// and whose window fits in the trajectory.
bool max_window_strict_decrease(const Trajectory& traj, std::size_t window, double exclude_tol,
                                double margin = 1e-14);

/// Builds T = C' + diag(x) - C' diag(x) and tests its positivity pattern
/// for strong connectivity.
bool check_t_matrix_irreducible(const SimplexVector& x, const InteractionMatrix& c);

/// JSON object with fields exactly as in ConvergenceReport; reals carry
/// 17 significant digits.
std::string to_json(const ConvergenceReport& report);

/// JSON array of candidate objects sorted lexicographically by
/// coordinates.
std::string to_json(const std::vector<EquilibriumCandidate>& candidates);

}  // namespace dgf
