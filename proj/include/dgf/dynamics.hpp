#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dgf/matrix_core.hpp"

namespace dgf {

/// Entries below this are counted as zeros in trajectory diagnostics.
inline constexpr double kZeroEntryTol = 1e-15;

/// Per-issue sum drift beyond this aborts a simulation; conservation of
/// the entry sum is a correctness signal, so it is asserted, never
/// repaired by renormalization.
inline constexpr double kSumDriftTol = 1e-9;

/// Selects the per-issue self-confidence update. Modified is the T = 1
/// member of the finite-T family; Original is the eigenvector map.
class ModelKind {
public:
    enum class Tag { Original, FiniteT, Modified };

    static ModelKind original() { return ModelKind(Tag::Original, 0); }
    static ModelKind modified() { return ModelKind(Tag::Modified, 1); }
    static ModelKind finite_t(long t);

    Tag tag() const { return tag_; }
    /// Inner discussion steps per issue; meaningful for FiniteT/Modified.
    long t_steps() const { return t_; }
    std::string name() const;

    bool operator==(const ModelKind&) const = default;

private:
    ModelKind(Tag tag, long t) : tag_(tag), t_(t) {}
    Tag tag_;
    long t_;
};

struct IssueDiagnostics {
    double min;
    double max;
    double sum;
    int zeros;

    bool operator==(const IssueDiagnostics&) const = default;
};

IssueDiagnostics diagnostics_for(const SimplexVector& x);

/// Ordered self-confidence states across issues s = 0, 1, 2, ... plus
/// per-issue diagnostics. states[s+1] is the model map applied to
/// states[s]; diagnostics are recomputable from the states.
class Trajectory {
public:
    Trajectory(ModelKind model, std::vector<SimplexVector> states, double stop_tol);

    const ModelKind& model() const { return model_; }
    const std::vector<SimplexVector>& states() const { return states_; }
    const SimplexVector& state(std::size_t s) const { return states_.at(s); }
    const SimplexVector& last_state() const { return states_.back(); }
    const std::vector<IssueDiagnostics>& diagnostics() const { return diagnostics_; }

    /// Number of issue updates taken (states() has one more entry).
    std::size_t issues_used() const { return states_.size() - 1; }
    double stop_tol() const { return stop_tol_; }
    /// Max-norm difference of the last two states.
    double final_residual() const;
    bool converged() const { return final_residual() <= stop_tol_; }

private:
    ModelKind model_;
    std::vector<SimplexVector> states_;
    std::vector<IssueDiagnostics> diagnostics_;
    double stop_tol_;
};

/// W(x) = diag(x) + (I - diag(x)) C.
InfluenceMatrix build_influence(const SimplexVector& x, const InteractionMatrix& c);

/// One DeGroot opinion update y' = W y.
OpinionVector degroot_step(const InfluenceMatrix& w, const OpinionVector& y);

/// Unique positive left eigenvector of W for eigenvalue 1, normalized to
/// sum 1, via power iteration on W'. A vertex-generated W (some diagonal
/// entry exactly 1) short-circuits to that vertex, which is the
/// eigenvector itself. Throws NoConvergence past max_iter; the returned
/// u satisfies max-norm(u'W - u') <= tol.
SimplexVector dominant_left_eigenvector(const InfluenceMatrix& w, double tol = 1e-12,
                                        long max_iter = 100000);

/// Eigenvector reflected-appraisal map x(s+1) = u(x(s)). Vertex inputs
/// return themselves without iterating.
SimplexVector original_df_step(const SimplexVector& x, const InteractionMatrix& c);

/// One distributed perceived-power update p' = W'p.
SimplexVector perceived_power_step(const InfluenceMatrix& w, const SimplexVector& p);

/// T perceived-power updates starting from p = x, with W built once from
/// x and held fixed across the inner steps.
SimplexVector finite_t_step(const SimplexVector& x, const InteractionMatrix& c, long t);

/// One-step self-appraisal map x'_i = x_i^2 + sum_j (x_j - x_j^2) c_ji.
/// Defined as finite_t_step with T = 1, so the two are bit-identical.
SimplexVector modified_step(const SimplexVector& x, const InteractionMatrix& c);

/// One update of the selected model.
SimplexVector model_step(const ModelKind& model, const SimplexVector& x, const InteractionMatrix& c);

/// Iterates the model map until the max-norm difference of successive
/// states drops to stop_tol or max_issues updates have run. Deterministic
/// for identical inputs. Aborts with SumDriftError if conservation fails.
Trajectory simulate(const ModelKind& model, const InteractionMatrix& c, const SimplexVector& x0,
                    long max_issues, double stop_tol);

/// CSV export: header issue,x_1,...,x_n,min,max,sum,zeros; one row per
/// issue; 17 significant digits so a reload is bit-faithful.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const std::filesystem::path& path, ModelKind model, double stop_tol);

}  // namespace dgf
