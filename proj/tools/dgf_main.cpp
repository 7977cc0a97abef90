#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dgf/csv.hpp"
#include "dgf/harness.hpp"

namespace {

using namespace dgf;

/// Command-line misuse discovered after CLI11 parsing (missing or
/// conflicting sources); mapped to exit 64 like any usage error.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SourceFlags {
    std::string matrix_file;
    std::string matrix_preset;
    std::size_t random_n = 0;
    std::string matrix_kind = "row_stochastic";
    double sinkhorn_tol = 1e-12;

    std::string x0_file;
    std::string x0_preset;
    bool x0_random = false;

    std::uint64_t seed = 0;
    bool seed_given = false;
};

void add_matrix_flags(CLI::App* cmd, SourceFlags& flags) {
    auto* file = cmd->add_option("--matrix", flags.matrix_file, "Interaction matrix CSV file");
    auto* preset = cmd->add_option("--matrix-preset", flags.matrix_preset,
                                   "Bundled matrix: complete, ring, c1, c2")
                       ->check(CLI::IsMember(matrix_preset_names()));
    auto* random =
        cmd->add_option("--random-matrix", flags.random_n, "Generate a random n-by-n matrix");
    file->excludes(preset)->excludes(random);
    preset->excludes(random);
    cmd->add_option("--matrix-kind", flags.matrix_kind,
                    "Random matrix kind: row_stochastic or doubly_stochastic")
        ->check(CLI::IsMember({"row_stochastic", "doubly_stochastic"}));
    cmd->add_option("--sinkhorn-tol", flags.sinkhorn_tol,
                    "Balancing tolerance for doubly stochastic generation");
}

void add_x0_flags(CLI::App* cmd, SourceFlags& flags) {
    auto* file = cmd->add_option("--x0", flags.x0_file, "Initial condition CSV file (one row)");
    auto* preset = cmd->add_option("--x0-preset", flags.x0_preset,
                                   "Bundled initial condition: fig3 .. fig10")
                       ->check(CLI::IsMember(x0_preset_names()));
    auto* random = cmd->add_flag("--x0-random", flags.x0_random,
                                 "Draw x0 uniformly on the simplex (uses --seed)");
    file->excludes(preset)->excludes(random);
    preset->excludes(random);
}

void add_seed_flag(CLI::App* cmd, SourceFlags& flags) {
    cmd->add_option("--seed", flags.seed, "Seed for random matrix / x0 generation")
        ->each([&flags](const std::string&) { flags.seed_given = true; });
}

/// Folds command-line source flags over a config-file baseline.
void apply_source_flags(const SourceFlags& flags, SimulationConfig& config, bool x0_required) {
    const bool matrix_from_flags =
        !flags.matrix_file.empty() || !flags.matrix_preset.empty() || flags.random_n > 0;
    if (matrix_from_flags) {
        if (!flags.matrix_file.empty()) {
            config.matrix = {MatrixSource::Kind::File, flags.matrix_file, "", {}};
        } else if (!flags.matrix_preset.empty()) {
            config.matrix = {MatrixSource::Kind::Preset, "", flags.matrix_preset, {}};
        } else {
            RandomMatrixSpec spec;
            spec.n = flags.random_n;
            spec.kind = flags.matrix_kind == "doubly_stochastic" ? MatrixKind::DoublyStochastic
                                                                 : MatrixKind::RowStochastic;
            spec.seed = flags.seed;
            spec.sinkhorn_tol = flags.sinkhorn_tol;
            config.matrix = {MatrixSource::Kind::Random, "", "", spec};
        }
    } else if (config.matrix.kind == MatrixSource::Kind::File && config.matrix.file.empty()) {
        throw UsageError("no matrix source: pass --matrix, --matrix-preset or --random-matrix "
                         "(or a config file)");
    }

    const bool x0_from_flags =
        !flags.x0_file.empty() || !flags.x0_preset.empty() || flags.x0_random;
    if (x0_from_flags) {
        if (!flags.x0_file.empty()) {
            config.x0 = {X0Source::Kind::File, flags.x0_file, "", 0};
        } else if (!flags.x0_preset.empty()) {
            config.x0 = {X0Source::Kind::Preset, "", flags.x0_preset, 0};
        } else {
            config.x0 = {X0Source::Kind::Random, "", "", flags.seed};
        }
    } else if (x0_required && config.x0.kind == X0Source::Kind::File && config.x0.file.empty()) {
        throw UsageError("no x0 source: pass --x0, --x0-preset or --x0-random (or a config file)");
    }

    if (flags.seed_given) {
        if (config.matrix.kind == MatrixSource::Kind::Random) config.matrix.random.seed = flags.seed;
        if (config.x0.kind == X0Source::Kind::Random) config.x0.seed = flags.seed;
    }
}

ModelKind model_from_name(const std::string& name, long t_steps) {
    if (name == "original") return ModelKind::original();
    if (name == "modified") return ModelKind::modified();
    if (name == "finite-t") {
        if (t_steps < 1) throw UsageError("--model finite-t requires --t-steps T with T >= 1");
        return ModelKind::finite_t(t_steps);
    }
    throw UsageError("unknown model '" + name + "'");
}

void print_outcome(const ConvergenceReport& report, const std::filesystem::path& traj_csv,
                   const std::filesystem::path& report_json) {
    std::cout << (report.converged ? "converged" : "did not converge") << " after "
              << report.issues_used << " issues (final residual "
              << format_double(report.final_residual) << ")\n"
              << "wrote " << traj_csv.string() << " and " << report_json.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator and analyzer for DeGroot-Friedkin self-confidence dynamics"};
    app.require_subcommand(1);
    int exit_code = 0;

    // ---- simulate ----
    auto* simulate_cmd = app.add_subcommand("simulate", "Run one model from a matrix and an x0");
    SourceFlags sim_flags;
    std::string sim_config_path;
    std::string sim_model = "modified";
    long sim_t_steps = 0;
    long sim_max_issues = -1;
    double sim_stop_tol = -1.0;
    std::string sim_out_dir;
    simulate_cmd->add_option("--config", sim_config_path, "JSON config file; flags override it");
    add_matrix_flags(simulate_cmd, sim_flags);
    add_x0_flags(simulate_cmd, sim_flags);
    add_seed_flag(simulate_cmd, sim_flags);
    simulate_cmd->add_option("--model", sim_model, "original, modified or finite-t")
        ->check(CLI::IsMember({"original", "modified", "finite-t"}));
    simulate_cmd->add_option("--t-steps", sim_t_steps, "Inner steps per issue for finite-t");
    simulate_cmd->add_option("--max-issues", sim_max_issues, "Issue budget (default 10000)");
    simulate_cmd->add_option("--stop-tol", sim_stop_tol, "Stop tolerance (default 1e-10)");
    simulate_cmd->add_option("--out-dir", sim_out_dir, "Output directory (default .)");
    simulate_cmd->callback([&] {
        SimulationConfig config;
        if (!sim_config_path.empty()) config = parse_config_json(sim_config_path);
        apply_source_flags(sim_flags, config, true);
        if (simulate_cmd->count("--model") || sim_t_steps > 0)
            config.model = model_from_name(sim_model, sim_t_steps);
        if (sim_max_issues >= 0) config.max_issues = sim_max_issues;
        if (sim_stop_tol >= 0.0) config.stop_tol = sim_stop_tol;
        if (!sim_out_dir.empty()) config.out_dir = sim_out_dir;
        const SimulationOutcome outcome = run_simulation(config);
        print_outcome(outcome.report, outcome.trajectory_csv, outcome.report_json);
        if (!outcome.report.converged) {
            std::cerr << "non-convergence: residual " << format_double(outcome.report.final_residual)
                      << " after " << outcome.report.issues_used << " issues\n";
            exit_code = 3;
        }
    });

    // ---- preset ----
    auto* preset_cmd = app.add_subcommand("preset", "Run a bundled experiment");
    std::string preset_name;
    std::string preset_out_dir = ".";
    preset_cmd->add_option("name", preset_name, "Preset name")
        ->required()
        ->check(CLI::IsMember(preset_names()));
    preset_cmd->add_option("--out-dir", preset_out_dir, "Output directory (default .)");
    preset_cmd->callback([&] {
        const PresetRun run = run_preset(preset_name, preset_out_dir);
        print_outcome(run.report, run.trajectory_csv, run.report_json);
        if (!run.report.converged) exit_code = 3;
    });

    // ---- generate ----
    auto* generate_cmd = app.add_subcommand("generate", "Write a seeded random interaction matrix");
    RandomMatrixSpec gen_spec;
    std::string gen_kind = "row_stochastic";
    std::string gen_out;
    generate_cmd->add_option("--n", gen_spec.n, "Matrix size")->required();
    generate_cmd->add_option("--kind", gen_kind, "row_stochastic or doubly_stochastic")
        ->check(CLI::IsMember({"row_stochastic", "doubly_stochastic"}));
    generate_cmd->add_option("--seed", gen_spec.seed, "Generator seed");
    generate_cmd->add_option("--sinkhorn-tol", gen_spec.sinkhorn_tol, "Balancing tolerance");
    generate_cmd->add_option("--out", gen_out, "Output CSV path")->required();
    generate_cmd->callback([&] {
        gen_spec.kind = gen_kind == "doubly_stochastic" ? MatrixKind::DoublyStochastic
                                                        : MatrixKind::RowStochastic;
        const InteractionMatrix m = generate_matrix(gen_spec);
        write_matrix_csv(gen_out, m.entries());
        std::cout << "wrote " << gen_out << " (doubly_stochastic="
                  << (m.doubly_stochastic() ? "true" : "false") << ")\n";
    });

    // ---- analyze ----
    auto* analyze_cmd = app.add_subcommand("analyze", "Re-analyze an exported trajectory");
    std::string ana_trajectory;
    SourceFlags ana_flags;
    std::string ana_model = "modified";
    long ana_t_steps = 0;
    double ana_stop_tol = 1e-10;
    std::string ana_out_dir = ".";
    bool ana_fixed_points = false;
    double ana_grid_step = 0.02;
    double ana_residual_tol = 1e-10;
    analyze_cmd->add_option("--trajectory", ana_trajectory, "Trajectory CSV")->required();
    add_matrix_flags(analyze_cmd, ana_flags);
    analyze_cmd->add_option("--model", ana_model, "Model label for the trajectory")
        ->check(CLI::IsMember({"original", "modified", "finite-t"}));
    analyze_cmd->add_option("--t-steps", ana_t_steps, "Inner steps for finite-t");
    analyze_cmd->add_option("--stop-tol", ana_stop_tol,
                            "Convergence tolerance used for the verdict (default 1e-10)");
    analyze_cmd->add_option("--out-dir", ana_out_dir, "Output directory (default .)");
    analyze_cmd->add_flag("--fixed-points", ana_fixed_points,
                          "Also run the brute-force equilibrium search (n <= 4)");
    analyze_cmd->add_option("--grid-step", ana_grid_step, "Brute-force grid resolution");
    analyze_cmd->add_option("--residual-tol", ana_residual_tol, "Brute-force residual cutoff");
    analyze_cmd->callback([&] {
        SimulationConfig config;  // only the matrix source is used here
        apply_source_flags(ana_flags, config, false);
        const InteractionMatrix c = resolve_matrix(config.matrix);
        const ModelKind model = model_from_name(ana_model, ana_t_steps > 0 ? ana_t_steps : 1);
        const Trajectory traj = read_trajectory_csv(ana_trajectory, model, ana_stop_tol);
        const ConvergenceReport report = analyze_trajectory(traj, c);
        std::filesystem::create_directories(ana_out_dir);
        const auto report_path = std::filesystem::path(ana_out_dir) / "report.json";
        std::ofstream out(report_path);
        out << to_json(report);
        std::cout << "wrote " << report_path.string() << "\n";
        if (ana_fixed_points) {
            const auto candidates = brute_force_fixed_points(c, ana_grid_step, ana_residual_tol);
            const auto cand_path = std::filesystem::path(ana_out_dir) / "candidates.json";
            std::ofstream cand_out(cand_path);
            cand_out << to_json(candidates);
            std::cout << "wrote " << cand_path.string() << " (" << candidates.size()
                      << " candidates)\n";
        }
    });

    // ---- compare ----
    auto* compare_cmd =
        app.add_subcommand("compare", "Run Original and FiniteT(T) side by side");
    SourceFlags cmp_flags;
    long cmp_t_steps = 1;
    long cmp_max_issues = 10000;
    double cmp_stop_tol = 1e-10;
    std::string cmp_out_dir = ".";
    add_matrix_flags(compare_cmd, cmp_flags);
    add_x0_flags(compare_cmd, cmp_flags);
    add_seed_flag(compare_cmd, cmp_flags);
    compare_cmd->add_option("--t-steps", cmp_t_steps, "Inner steps per issue for the finite-T run")
        ->required();
    compare_cmd->add_option("--max-issues", cmp_max_issues, "Issue budget (default 10000)");
    compare_cmd->add_option("--stop-tol", cmp_stop_tol, "Stop tolerance (default 1e-10)");
    compare_cmd->add_option("--out-dir", cmp_out_dir, "Output directory (default .)");
    compare_cmd->callback([&] {
        if (cmp_t_steps < 1) throw UsageError("--t-steps must be >= 1");
        SimulationConfig config;
        apply_source_flags(cmp_flags, config, true);
        const InteractionMatrix c = resolve_matrix(config.matrix);
        const SimplexVector x0 = resolve_x0(config.x0, c.size());

        const Trajectory original =
            simulate(ModelKind::original(), c, x0, cmp_max_issues, cmp_stop_tol);
        const Trajectory finite =
            simulate(ModelKind::finite_t(cmp_t_steps), c, x0, cmp_max_issues, cmp_stop_tol);

        std::filesystem::create_directories(cmp_out_dir);
        const auto csv_path = std::filesystem::path(cmp_out_dir) / "compare.csv";
        std::ofstream out(csv_path);
        out << "issue,distance\n";
        const std::size_t issues = std::min(original.states().size(), finite.states().size());
        double max_distance = 0.0;
        for (std::size_t s = 0; s < issues; ++s) {
            const double d = inf_distance(original.state(s).values(), finite.state(s).values());
            max_distance = std::max(max_distance, d);
            out << s << ',' << format_double(d) << '\n';
        }
        std::cout << "max_inf_distance=" << format_double(max_distance) << "\n"
                  << "wrote " << csv_path.string() << "\n";
        if (!original.converged() || !finite.converged()) {
            std::cerr << "non-convergence within " << cmp_max_issues << " issues\n";
            exit_code = 3;
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 64;
    } catch (const UnknownPreset& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 64;
    } catch (const NoConvergence& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return 3;
    } catch (const SinkhornNoConvergence& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
