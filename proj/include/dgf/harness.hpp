#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dgf/analysis.hpp"
#include "dgf/dynamics.hpp"
#include "dgf/matrix_core.hpp"

namespace dgf {

enum class MatrixKind { RowStochastic, DoublyStochastic };

struct RandomMatrixSpec {
    std::size_t n = 5;
    MatrixKind kind = MatrixKind::RowStochastic;
    std::uint64_t seed = 0;
    double sinkhorn_tol = 1e-12;
};

/// Seeded random interaction matrix. Off-diagonal entries are drawn
/// i.i.d. uniform(0,1) in row-major order from xoshiro256++, the diagonal
/// stays zero, then rows are normalized; the doubly stochastic kind
/// additionally runs Sinkhorn balancing (row/column sweeps, diagonal held
/// at zero) until both sums are within sinkhorn_tol, ending on a row
/// correction. Identical spec -> identical matrix, across platforms.
InteractionMatrix generate_matrix(const RandomMatrixSpec& spec);

/// Seeded uniform draw on the simplex (normalized exponentials).
SimplexVector random_simplex_x0(std::size_t n, std::uint64_t seed);

// ---- embedded experiment presets ----

/// Matrix preset keys: complete, ring (doubly stochastic), c1, c2
/// (row-stochastic only).
std::vector<std::string> matrix_preset_names();
const SquareMatrix& preset_matrix_raw(std::string_view key);
InteractionMatrix preset_matrix(std::string_view key);

/// Initial-condition preset keys: fig3 .. fig10.
std::vector<std::string> x0_preset_names();
const std::vector<double>& preset_x0_raw(std::string_view key);
/// Validated initial condition. A stored vector whose sum misses 1 by
/// more than kValidationTol is divided by its exact sum first.
SimplexVector preset_x0(std::string_view key);

/// Run presets binding a matrix to an initial condition:
/// complete-fig3, complete-fig4, ring-fig5, ring-fig6, c1-fig7, c1-fig8,
/// c2-fig9, c2-fig10.
std::vector<std::string> preset_names();

struct PresetRun {
    Trajectory trajectory;
    ConvergenceReport report;
    std::filesystem::path trajectory_csv;
    std::filesystem::path report_json;
};

/// Runs the Modified model (max_issues = 10000, stop_tol = 1e-10) and
/// writes <name>-trajectory.csv and <name>-report.json under out_dir.
/// Throws UnknownPreset for names outside preset_names().
PresetRun run_preset(std::string_view name, const std::filesystem::path& out_dir);

// ---- simulation configuration ----

struct MatrixSource {
    enum class Kind { File, Preset, Random };
    Kind kind = Kind::File;
    std::filesystem::path file;
    std::string preset;
    RandomMatrixSpec random;
};

struct X0Source {
    enum class Kind { File, Preset, Random };
    Kind kind = Kind::File;
    std::filesystem::path file;
    std::string preset;
    std::uint64_t seed = 0;
};

struct SimulationConfig {
    ModelKind model = ModelKind::modified();
    MatrixSource matrix;
    X0Source x0;
    long max_issues = 10000;
    double stop_tol = 1e-10;
    std::filesystem::path out_dir = ".";
};

/// Reads the JSON config ({"model", "matrix", "x0", "max_issues",
/// "stop_tol", "out_dir"}); absent fields keep their defaults. Exactly
/// one source key is allowed per matrix/x0 object.
SimulationConfig parse_config_json(const std::filesystem::path& path);

InteractionMatrix resolve_matrix(const MatrixSource& source);
SimplexVector resolve_x0(const X0Source& source, std::size_t n);

struct SimulationOutcome {
    Trajectory trajectory;
    ConvergenceReport report;
    std::filesystem::path trajectory_csv;
    std::filesystem::path report_json;
};

/// Resolves the sources, simulates, analyzes and writes trajectory.csv
/// plus report.json under out_dir.
SimulationOutcome run_simulation(const SimulationConfig& config);

}  // namespace dgf
