#include <fstream>

#include <json.hpp>

#include "dgf/csv.hpp"
#include "dgf/harness.hpp"

namespace dgf {

namespace {

using nlohmann::json;

ModelKind parse_model(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "modified") return ModelKind::modified();
        if (s == "original") return ModelKind::original();
        throw ConfigError("config: model must be \"modified\", \"original\" or {\"finite_t\": T}");
    }
    if (j.is_object() && j.contains("finite_t") && j.size() == 1) {
        const auto t = j.at("finite_t");
        if (!t.is_number_integer() || t.get<long>() < 1)
            throw ConfigError("config: finite_t must be an integer >= 1");
        return ModelKind::finite_t(t.get<long>());
    }
    throw ConfigError("config: model must be \"modified\", \"original\" or {\"finite_t\": T}");
}

MatrixKind parse_matrix_kind(const std::string& s) {
    if (s == "row_stochastic") return MatrixKind::RowStochastic;
    if (s == "doubly_stochastic") return MatrixKind::DoublyStochastic;
    throw ConfigError("config: matrix kind must be row_stochastic or doubly_stochastic");
}

RandomMatrixSpec parse_random_matrix(const json& j) {
    RandomMatrixSpec spec;
    if (!j.is_object() || !j.contains("n") || !j.contains("kind") || !j.contains("seed"))
        throw ConfigError("config: matrix.random needs n, kind and seed");
    spec.n = j.at("n").get<std::size_t>();
    spec.kind = parse_matrix_kind(j.at("kind").get<std::string>());
    spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("sinkhorn_tol")) spec.sinkhorn_tol = j.at("sinkhorn_tol").get<double>();
    return spec;
}

MatrixSource parse_matrix_source(const json& j) {
    if (!j.is_object() || j.size() != 1)
        throw ConfigError("config: matrix must hold exactly one of file/preset/random");
    MatrixSource source;
    if (j.contains("file")) {
        source.kind = MatrixSource::Kind::File;
        source.file = j.at("file").get<std::string>();
    } else if (j.contains("preset")) {
        source.kind = MatrixSource::Kind::Preset;
        source.preset = j.at("preset").get<std::string>();
    } else if (j.contains("random")) {
        source.kind = MatrixSource::Kind::Random;
        source.random = parse_random_matrix(j.at("random"));
    } else {
        throw ConfigError("config: matrix must hold exactly one of file/preset/random");
    }
    return source;
}

X0Source parse_x0_source(const json& j) {
    if (!j.is_object() || j.size() != 1)
        throw ConfigError("config: x0 must hold exactly one of file/preset/random");
    X0Source source;
    if (j.contains("file")) {
        source.kind = X0Source::Kind::File;
        source.file = j.at("file").get<std::string>();
    } else if (j.contains("preset")) {
        source.kind = X0Source::Kind::Preset;
        source.preset = j.at("preset").get<std::string>();
    } else if (j.contains("random")) {
        const auto& r = j.at("random");
        if (!r.is_object() || !r.contains("seed"))
            throw ConfigError("config: x0.random needs a seed");
        source.kind = X0Source::Kind::Random;
        source.seed = r.at("seed").get<std::uint64_t>();
    } else {
        throw ConfigError("config: x0 must hold exactly one of file/preset/random");
    }
    return source;
}

}  // namespace

SimulationConfig parse_config_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path.string() + "': " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");

    SimulationConfig config;
    if (j.contains("model")) config.model = parse_model(j.at("model"));
    if (j.contains("matrix")) config.matrix = parse_matrix_source(j.at("matrix"));
    if (j.contains("x0")) config.x0 = parse_x0_source(j.at("x0"));
    if (j.contains("max_issues")) {
        config.max_issues = j.at("max_issues").get<long>();
        if (config.max_issues < 1) throw ConfigError("config: max_issues must be >= 1");
    }
    if (j.contains("stop_tol")) {
        config.stop_tol = j.at("stop_tol").get<double>();
        if (!(config.stop_tol > 0.0)) throw ConfigError("config: stop_tol must be > 0");
    }
    if (j.contains("out_dir")) config.out_dir = j.at("out_dir").get<std::string>();
    return config;
}

InteractionMatrix resolve_matrix(const MatrixSource& source) {
    switch (source.kind) {
        case MatrixSource::Kind::File: return validate_interaction(read_matrix_csv(source.file));
        case MatrixSource::Kind::Preset: return preset_matrix(source.preset);
        case MatrixSource::Kind::Random: return generate_matrix(source.random);
    }
    throw std::logic_error("unreachable matrix source kind");
}

SimplexVector resolve_x0(const X0Source& source, std::size_t n) {
    switch (source.kind) {
        case X0Source::Kind::File: {
            SimplexVector x0 = validate_simplex(read_vector_csv(source.file));
            if (x0.size() != n)
                throw DimensionMismatch("x0 has length " + std::to_string(x0.size()) +
                                        ", matrix is " + std::to_string(n) + "x" + std::to_string(n));
            return x0;
        }
        case X0Source::Kind::Preset: {
            SimplexVector x0 = preset_x0(source.preset);
            if (x0.size() != n)
                throw DimensionMismatch("preset x0 length does not match the matrix");
            return x0;
        }
        case X0Source::Kind::Random: return random_simplex_x0(n, source.seed);
    }
    throw std::logic_error("unreachable x0 source kind");
}

SimulationOutcome run_simulation(const SimulationConfig& config) {
    const InteractionMatrix c = resolve_matrix(config.matrix);
    const SimplexVector x0 = resolve_x0(config.x0, c.size());

    Trajectory traj = simulate(config.model, c, x0, config.max_issues, config.stop_tol);
    ConvergenceReport report = analyze_trajectory(traj, c);

    std::filesystem::create_directories(config.out_dir);
    SimulationOutcome outcome{std::move(traj), std::move(report),
                              config.out_dir / "trajectory.csv", config.out_dir / "report.json"};
    write_trajectory_csv(outcome.trajectory_csv, outcome.trajectory);
    std::ofstream json_out(outcome.report_json);
    json_out << to_json(outcome.report);
    if (!json_out) throw CsvError("write failed for '" + outcome.report_json.string() + "'");
    return outcome;
}

}  // namespace dgf
