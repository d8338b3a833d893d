#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kaczmarz/commands.hpp"

using namespace kaczmarz;

int main(int argc, char** argv)
{
    CLI::App app{"Classical, dual and augmented Kaczmarz iterations"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> algorithm;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::string example;
    std::vector<double> deltas;
    std::optional<int> trials;
    unsigned workers = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Override the config seed");
        cmd->add_option("--out", out, "Output directory (default $KACZMARZ_OUT_DIR or .)");
    };

    CLI::App* run = app.add_subcommand("run", "Run an iteration and write trace.csv, verdict.json");
    run->add_option("--config", config_path, "Problem config (JSON)")->required();
    run->add_option("--algorithm", algorithm, "classic | dual | augmented")
        ->check(CLI::IsMember({"classic", "dual", "augmented"}));
    add_common(run);

    CLI::App* diagnose = app.add_subcommand("diagnose", "Write diagnose.json and grammian.csv");
    diagnose->add_option("--config", config_path, "Problem config (JSON)")->required();
    add_common(diagnose);

    CLI::App* reproduce = app.add_subcommand("reproduce", "Check a built-in example");
    reproduce->add_option("example", example, "obs14 | obs15 | obs16 | obs17finite")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "Perturbation sweep around an orthonormal basis");
    sweep->add_option("--config", config_path, "Base config with an orthonormal e")->required();
    sweep->add_option("--deltas", deltas, "Perturbation magnitudes")->delimiter(',');
    sweep->add_option("--trials", trials, "Trials per magnitude");
    sweep->add_option("--workers", workers, "Worker threads (0 = all cores)");
    add_common(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? exit_ok : exit_invalid;
    }

    try {
        if (reproduce->parsed()) return cmd_reproduce(example, std::cout);

        ProblemConfig config = load_config(config_path);
        if (seed) config.seed = *seed;
        const auto out_dir = resolve_out_dir(out);

        if (run->parsed()) {
            if (algorithm) config.algorithm = *algorithm;
            return cmd_run(config, default_algorithm(config), out_dir, std::cout).exit_code;
        }
        if (diagnose->parsed()) return cmd_diagnose(config, out_dir, std::cout);
        if (!deltas.empty()) config.sweep.deltas = deltas;
        if (trials) config.sweep.trials = *trials;
        return cmd_sweep(config, out_dir, std::cout, workers);
    } catch (const Error& err) {
        std::cerr << "error (" << to_string(err.kind()) << "): " << err.what() << '\n';
        return exit_code_for(err.kind());
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return exit_numeric;
    }
}
