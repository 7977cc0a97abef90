#include "dgf/dynamics.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "dgf/csv.hpp"

namespace dgf {

ModelKind ModelKind::finite_t(long t) {
    if (t < 1) throw std::invalid_argument("finite_t requires T >= 1");
    return ModelKind(Tag::FiniteT, t);
}

std::string ModelKind::name() const {
    switch (tag_) {
        case Tag::Original: return "original";
        case Tag::Modified: return "modified";
        case Tag::FiniteT: return "finite_t(" + std::to_string(t_) + ")";
    }
    return "?";
}

IssueDiagnostics diagnostics_for(const SimplexVector& x) {
    IssueDiagnostics d{x.min_entry(), x.max_entry(), x.sum(), 0};
    for (double v : x.values())
        if (v < kZeroEntryTol) ++d.zeros;
    return d;
}

Trajectory::Trajectory(ModelKind model, std::vector<SimplexVector> states, double stop_tol)
    : model_(model), states_(std::move(states)), stop_tol_(stop_tol) {
    if (states_.empty()) throw std::invalid_argument("trajectory needs at least one state");
    diagnostics_.reserve(states_.size());
    for (const auto& s : states_) diagnostics_.push_back(diagnostics_for(s));
}

double Trajectory::final_residual() const {
    if (states_.size() < 2) return std::numeric_limits<double>::infinity();
    return inf_distance(states_[states_.size() - 2].values(), states_.back().values());
}

InfluenceMatrix build_influence(const SimplexVector& x, const InteractionMatrix& c) {
    const std::size_t n = c.size();
    if (x.size() != n) throw DimensionMismatch("build_influence: x has length " +
                                               std::to_string(x.size()) + ", C is " +
                                               std::to_string(n) + "x" + std::to_string(n));
    SquareMatrix w(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double self = x[i];
        const double rest = 1.0 - self;
        for (std::size_t j = 0; j < n; ++j) w(i, j) = rest * c(i, j);
        w(i, i) = self;
    }
    return build_influence_unchecked(std::move(w));
}

OpinionVector degroot_step(const InfluenceMatrix& w, const OpinionVector& y) {
    const std::size_t n = w.size();
    if (y.size() != n) throw DimensionMismatch("degroot_step: dimension mismatch");
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += w(i, j) * y[j];
        out[i] = s;
    }
    return OpinionVector(std::move(out));
}

namespace {

// p' = W'p, fixed ascending summation order for run-to-run determinism.
std::vector<double> transpose_apply(const InfluenceMatrix& w, std::span<const double> p) {
    const std::size_t n = w.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += w(j, i) * p[j];
        out[i] = s;
    }
    return out;
}

std::size_t absorbing_state(const InfluenceMatrix& w) {
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w(i, i) == 1.0) return i;
    return SimplexVector::npos;
}

}  // namespace

SimplexVector dominant_left_eigenvector(const InfluenceMatrix& w, double tol, long max_iter) {
    const std::size_t n = w.size();
    // A diagonal entry of exactly 1 makes that state absorbing; the
    // eigenvector is the corresponding vertex and iteration would crawl.
    if (const std::size_t i = absorbing_state(w); i != SimplexVector::npos)
        return SimplexVector::vertex(n, i);

    std::vector<double> u(n, 1.0 / static_cast<double>(n));
    double residual = std::numeric_limits<double>::infinity();
    for (long iter = 0; iter < max_iter; ++iter) {
        std::vector<double> next = transpose_apply(w, u);
        residual = inf_distance(next, u);
        if (residual <= tol) return SimplexVector::trusted(std::move(u));
        double sum = 0.0;
        for (double v : next) sum += v;
        for (double& v : next) v /= sum;
        u = std::move(next);
    }
    throw NoConvergence("power iteration did not reach tol=" + format_double(tol) + " in " +
                            std::to_string(max_iter) + " iterations (last residual " +
                            format_double(residual) + ")",
                        residual, max_iter);
}

SimplexVector original_df_step(const SimplexVector& x, const InteractionMatrix& c) {
    if (x.size() != c.size()) throw DimensionMismatch("original_df_step: dimension mismatch");
    if (x.vertex_index() != SimplexVector::npos) return x;
    return dominant_left_eigenvector(build_influence(x, c));
}

SimplexVector perceived_power_step(const InfluenceMatrix& w, const SimplexVector& p) {
    if (p.size() != w.size()) throw DimensionMismatch("perceived_power_step: dimension mismatch");
    return SimplexVector::trusted(transpose_apply(w, p.values()));
}

SimplexVector finite_t_step(const SimplexVector& x, const InteractionMatrix& c, long t) {
    if (t < 1) throw std::invalid_argument("finite_t_step requires T >= 1");
    const InfluenceMatrix w = build_influence(x, c);
    SimplexVector p = x;
    for (long k = 0; k < t; ++k) p = perceived_power_step(w, p);
    return p;
}

SimplexVector modified_step(const SimplexVector& x, const InteractionMatrix& c) {
    return finite_t_step(x, c, 1);
}

SimplexVector model_step(const ModelKind& model, const SimplexVector& x, const InteractionMatrix& c) {
    switch (model.tag()) {
        case ModelKind::Tag::Original: return original_df_step(x, c);
        case ModelKind::Tag::Modified: return modified_step(x, c);
        case ModelKind::Tag::FiniteT: return finite_t_step(x, c, model.t_steps());
    }
    throw std::logic_error("unreachable model tag");
}

Trajectory simulate(const ModelKind& model, const InteractionMatrix& c, const SimplexVector& x0,
                    long max_issues, double stop_tol) {
    if (max_issues < 1) throw std::invalid_argument("simulate requires max_issues >= 1");
    if (x0.size() != c.size()) throw DimensionMismatch("simulate: x0/C dimension mismatch");

    std::vector<SimplexVector> states;
    states.reserve(static_cast<std::size_t>(std::min<long>(max_issues + 1, 4096)));
    states.push_back(x0);
    for (long s = 0; s < max_issues; ++s) {
        SimplexVector next = model_step(model, states.back(), c);
        double sum = 0.0;
        for (double v : next.values()) {
            if (v < -kValidationTol || v > 1.0 + kValidationTol)
                throw RangeError("issue " + std::to_string(s + 1) + ": entry " + format_double(v) +
                                 " left [0,1]");
            sum += v;
        }
        if (std::abs(sum - 1.0) > kSumDriftTol)
            throw SumDriftError("issue " + std::to_string(s + 1) + ": entry sum drifted to " +
                                format_double(sum));
        const double residual = inf_distance(next.values(), states.back().values());
        states.push_back(std::move(next));
        if (residual <= stop_tol) break;
    }
    return Trajectory(model, std::move(states), stop_tol);
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    std::ofstream out(path);
    if (!out) throw CsvError("cannot write '" + path.string() + "'");
    const std::size_t n = traj.state(0).size();
    out << "issue";
    for (std::size_t j = 1; j <= n; ++j) out << ",x_" << j;
    out << ",min,max,sum,zeros\n";
    for (std::size_t s = 0; s < traj.states().size(); ++s) {
        const auto& x = traj.state(s);
        const auto& d = traj.diagnostics()[s];
        out << s;
        for (double v : x.values()) out << ',' << format_double(v);
        out << ',' << format_double(d.min) << ',' << format_double(d.max) << ','
            << format_double(d.sum) << ',' << d.zeros << '\n';
    }
    if (!out) throw CsvError("write failed for '" + path.string() + "'");
}

Trajectory read_trajectory_csv(const std::filesystem::path& path, ModelKind model, double stop_tol) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw CsvError("'" + path.string() + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_csv_line(line);
    if (header.size() < 6 || header[0] != "issue")
        throw CsvError("'" + path.string() + "' is not a trajectory CSV");
    const std::size_t n = header.size() - 5;

    std::vector<SimplexVector> states;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw CsvError("'" + path.string() + "' row " + std::to_string(states.size()) +
                           " is ragged");
        std::vector<double> x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = parse_double(fields[1 + j]);
        states.push_back(validate_simplex(x));
    }
    if (states.empty()) throw CsvError("'" + path.string() + "' has no states");
    return Trajectory(model, std::move(states), stop_tol);
}

}  // namespace dgf
