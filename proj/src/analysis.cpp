#include "dgf/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "dgf/csv.hpp"

namespace dgf {

namespace {

double discriminant_or_throw(double a, int n) {
    if (n < 2) throw std::invalid_argument("quadratic family requires n >= 2");
    if (!(a > 0.0)) throw std::invalid_argument("quadratic family requires a > 0");
    const double nn = static_cast<double>(n);
    const double disc = 1.0 - 4.0 * a * (nn - 1.0) / (nn * nn);
    if (disc < 0.0)
        throw DiscriminantError("discriminant 1 - 4a(n-1)/n^2 = " + format_double(disc) +
                                " is negative (a = " + format_double(a) + ", n = " +
                                std::to_string(n) + ")");
    return disc;
}

}  // namespace

QuadraticRoots quadratic_roots(double a, int n) {
    const double s = std::sqrt(discriminant_or_throw(a, n));
    return {(1.0 - s) / 2.0, (1.0 + s) / 2.0};
}

double mixed_root_sum_check(int k, double a, int n) {
    if (k < 0 || k > n) throw std::invalid_argument("mixed_root_sum_check requires 0 <= k <= n");
    const double s = std::sqrt(discriminant_or_throw(a, n));
    return static_cast<double>(n) - static_cast<double>(n - 2 * k) * s - 2.0;
}

double verify_equilibrium(const SimplexVector& x, const InteractionMatrix& c) {
    return inf_distance(modified_step(x, c).values(), x.values());
}

EquilibriumCandidate n2_equilibrium_family(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("n2_equilibrium_family requires a > 0");
    if (a > 1.0)
        throw DiscriminantError("n = 2 family needs a <= 1, got " + format_double(a));
    const QuadraticRoots roots = quadratic_roots(a, 2);
    SimplexVector x = SimplexVector::trusted({roots.high, roots.low});
    static const InteractionMatrix kSwap = validate_interaction(SquareMatrix{{0.0, 1.0}, {1.0, 0.0}});
    const double residual = verify_equilibrium(x, kSwap);
    return {std::move(x),
            EquilibriumKind::quadratic_family(a, {RootChoice::High, RootChoice::Low}), residual};
}

namespace {

constexpr long kMaxGridPoints = 2'000'000;
constexpr long kMaxRefineIters = 20'000;
constexpr double kRefineDamping = 0.5;
constexpr double kKindTol = 1e-6;

long composition_count(long m, long n) {
    // C(m + n - 1, n - 1), saturating at kMaxGridPoints + 1.
    long count = 1;
    for (long i = 1; i < n; ++i) {
        count = count * (m + i) / i;
        if (count > kMaxGridPoints) return kMaxGridPoints + 1;
    }
    return count;
}

void enumerate_compositions(long remaining, std::size_t index, std::vector<long>& parts,
                            const std::function<void(const std::vector<long>&)>& visit) {
    if (index + 1 == parts.size()) {
        parts[index] = remaining;
        visit(parts);
        return;
    }
    for (long k = 0; k <= remaining; ++k) {
        parts[index] = k;
        enumerate_compositions(remaining - k, index + 1, parts, visit);
    }
}

EquilibriumKind classify_candidate(const SimplexVector& x) {
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (inf_distance(x.values(), SimplexVector::vertex(n, i).values()) <= kKindTol)
            return EquilibriumKind::vertex(i);
    }
    if (inf_distance(x.values(), SimplexVector::uniform(n).values()) <= kKindTol)
        return EquilibriumKind::uniform();
    // Constant x_i(1 - x_i) across entries marks a quadratic-family point
    // (the n = 2 family is the practical case).
    const double nn = static_cast<double>(n);
    double prod_min = 1.0, prod_max = 0.0;
    for (double v : x.values()) {
        const double p = v * (1.0 - v);
        prod_min = std::min(prod_min, p);
        prod_max = std::max(prod_max, p);
    }
    if (prod_max - prod_min <= kKindTol) {
        const double a = 0.5 * (prod_min + prod_max) * nn * nn / (nn - 1.0);
        std::vector<RootChoice> pattern;
        pattern.reserve(n);
        for (double v : x.values())
            pattern.push_back(v >= 0.5 ? RootChoice::High : RootChoice::Low);
        return EquilibriumKind::quadratic_family(a, std::move(pattern));
    }
    return EquilibriumKind::interior();
}

bool lex_less(std::span<const double> a, std::span<const double> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::vector<EquilibriumCandidate> brute_force_fixed_points(const InteractionMatrix& c,
                                                           double grid_step, double residual_tol) {
    const std::size_t n = c.size();
    if (n > 4) throw GridTooLarge("brute force supports n <= 4, got n = " + std::to_string(n));
    if (!(grid_step > 0.0) || grid_step > 0.1)
        throw std::invalid_argument("grid_step must lie in (0, 0.1]");
    if (!(residual_tol > 0.0)) throw std::invalid_argument("residual_tol must be positive");

    const long m = std::lround(1.0 / grid_step);
    const long expected = composition_count(m, static_cast<long>(n));
    if (expected > kMaxGridPoints)
        throw GridTooLarge("simplex grid would hold " + std::to_string(expected) +
                           " points (cap " + std::to_string(kMaxGridPoints) + ")");

    std::vector<EquilibriumCandidate> refined;
    std::vector<long> parts(n, 0);
    enumerate_compositions(m, 0, parts, [&](const std::vector<long>& ks) {
        std::vector<double> point(n);
        for (std::size_t i = 0; i < n; ++i)
            point[i] = static_cast<double>(ks[i]) / static_cast<double>(m);
        SimplexVector x = SimplexVector::trusted(std::move(point));
        for (long it = 0; it < kMaxRefineIters; ++it) {
            const SimplexVector fx = modified_step(x, c);
            const double r = inf_distance(fx.values(), x.values());
            if (r <= residual_tol) {
                refined.push_back({x, classify_candidate(x), r});
                return;
            }
            std::vector<double> damped(n);
            for (std::size_t i = 0; i < n; ++i)
                damped[i] = (1.0 - kRefineDamping) * x[i] + kRefineDamping * fx[i];
            x = SimplexVector::trusted(std::move(damped));
        }
        // Stalled seeds are dropped; any true equilibrium is reached from
        // other grid points as well.
    });

    std::sort(refined.begin(), refined.end(), [](const auto& a, const auto& b) {
        return lex_less(a.x.values(), b.x.values());
    });
    std::vector<EquilibriumCandidate> unique;
    for (auto& cand : refined) {
        bool merged = false;
        for (auto& rep : unique) {
            if (inf_distance(rep.x.values(), cand.x.values()) <= grid_step / 2.0) {
                if (cand.residual < rep.residual) rep = cand;
                merged = true;
                break;
            }
        }
        if (!merged) unique.push_back(std::move(cand));
    }
    std::sort(unique.begin(), unique.end(), [](const auto& a, const auto& b) {
        return lex_less(a.x.values(), b.x.values());
    });
    return unique;
}

ConvergenceReport analyze_trajectory(const Trajectory& traj, const InteractionMatrix& c) {
    const std::size_t n = c.size();
    if (traj.state(0).size() != n)
        throw DimensionMismatch("analyze_trajectory: trajectory/C dimension mismatch");

    const auto& diags = traj.diagnostics();
    bool min_monotone = true;
    bool max_monotone = true;
    bool lyapunov = true;
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t s = 0; s + 1 < diags.size(); ++s) {
        if (diags[s + 1].min < diags[s].min - kMonotoneSlack) min_monotone = false;
        if (diags[s + 1].max > diags[s].max + kMonotoneSlack) max_monotone = false;
        const double v_now = diags[s].max - inv_n;
        const double v_next = diags[s + 1].max - inv_n;
        if (v_next > v_now + kMonotoneSlack) lyapunov = false;
    }
    return ConvergenceReport{traj.converged(),
                             traj.last_state(),
                             static_cast<long>(traj.issues_used()),
                             traj.final_residual(),
                             min_monotone,
                             max_monotone,
                             lyapunov,
                             n == 2};
}

bool max_window_strict_decrease(const Trajectory& traj, std::size_t window, double exclude_tol,
                                double margin) {
    const auto& states = traj.states();
    const auto& diags = traj.diagnostics();
    const SimplexVector uniform = SimplexVector::uniform(states[0].size());
    for (std::size_t s = 0; s + window < states.size(); ++s) {
        if (inf_distance(states[s].values(), uniform.values()) <= exclude_tol) continue;
        if (!(diags[s + window].max < diags[s].max - margin)) return false;
    }
    return true;
}

bool check_t_matrix_irreducible(const SimplexVector& x, const InteractionMatrix& c) {
    const std::size_t n = c.size();
    if (x.size() != n) throw DimensionMismatch("check_t_matrix_irreducible: dimension mismatch");
    SquareMatrix t(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            t(i, j) = c(j, i) * (1.0 - x[j]) + (i == j ? x[i] : 0.0);
    return is_irreducible(positivity_pattern(t));
}

namespace {

const char* bool_json(bool b) { return b ? "true" : "false"; }

std::string real_json(double v) {
    if (!std::isfinite(v)) return "null";
    return format_double(v);
}

void append_values_json(std::ostream& out, std::span<const double> v) {
    out << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ", ";
        out << real_json(v[i]);
    }
    out << ']';
}

}  // namespace

std::string to_json(const ConvergenceReport& report) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"converged\": " << bool_json(report.converged) << ",\n";
    out << "  \"limit\": ";
    append_values_json(out, report.limit.values());
    out << ",\n";
    out << "  \"issues_used\": " << report.issues_used << ",\n";
    out << "  \"final_residual\": " << real_json(report.final_residual) << ",\n";
    out << "  \"min_monotone\": " << bool_json(report.min_monotone) << ",\n";
    out << "  \"max_monotone\": " << bool_json(report.max_monotone) << ",\n";
    out << "  \"lyapunov_nonincreasing\": " << bool_json(report.lyapunov_nonincreasing) << ",\n";
    out << "  \"n2_warning\": " << bool_json(report.n2_warning) << "\n";
    out << "}\n";
    return out.str();
}

std::string to_json(const std::vector<EquilibriumCandidate>& candidates) {
    std::vector<const EquilibriumCandidate*> sorted;
    sorted.reserve(candidates.size());
    for (const auto& c : candidates) sorted.push_back(&c);
    std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
        return lex_less(a->x.values(), b->x.values());
    });

    std::ostringstream out;
    out << "[\n";
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const auto& c = *sorted[i];
        out << "  {\"x\": ";
        append_values_json(out, c.x.values());
        switch (c.kind.tag) {
            case EquilibriumKind::Tag::Vertex:
                out << ", \"kind\": \"vertex\", \"index\": " << c.kind.vertex_index;
                break;
            case EquilibriumKind::Tag::Uniform:
                out << ", \"kind\": \"uniform\"";
                break;
            case EquilibriumKind::Tag::QuadraticFamily: {
                out << ", \"kind\": \"quadratic_family\", \"a\": " << real_json(c.kind.a)
                    << ", \"root_pattern\": [";
                for (std::size_t j = 0; j < c.kind.root_pattern.size(); ++j) {
                    if (j) out << ", ";
                    out << (c.kind.root_pattern[j] == RootChoice::High ? "\"high\"" : "\"low\"");
                }
                out << ']';
                break;
            }
            case EquilibriumKind::Tag::Interior:
                out << ", \"kind\": \"interior\"";
                break;
        }
        out << ", \"residual\": " << real_json(c.residual) << '}';
        out << (i + 1 < sorted.size() ? ",\n" : "\n");
    }
    out << "]\n";
    return out.str();
}

}  // namespace dgf
