#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "icnopt/experiment.hpp"

namespace {

constexpr std::uint64_t kNoSeedOverride = ~std::uint64_t{0};

int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::size_t jobs_override, std::uint64_t seed_override) {
    try {
        auto cfg = icnopt::load_experiment_config(config_path);
        if (jobs_override != 0) cfg.jobs = jobs_override;
        if (seed_override != kNoSeedOverride) cfg.master_seed = seed_override;
        return icnopt::run_experiment(cfg, out_dir, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_single_run(const std::string& config_path, const std::string& problem,
                   std::size_t dim, const std::string& algorithm, std::size_t repeat,
                   const std::string& out_dir, std::uint64_t seed_override) {
    try {
        auto cfg = icnopt::load_experiment_config(config_path);
        if (seed_override != kNoSeedOverride) cfg.master_seed = seed_override;
        const icnopt::RunKey key{problem, dim, algorithm, repeat};
        const auto result = icnopt::execute_single_run(cfg, key);
        const auto row = icnopt::run_csv_row(key, cfg.master_seed, result);
        std::cout << icnopt::run_csv_header() << row;
        if (!out_dir.empty()) {
            namespace fs = std::filesystem;
            fs::create_directories(out_dir);
            const auto runs_path = fs::path(out_dir) / "runs.csv";
            if (!fs::exists(runs_path)) {
                std::ofstream header(runs_path, std::ios::binary);
                header << icnopt::run_csv_header();
            }
            std::ofstream out(runs_path, std::ios::app | std::ios::binary);
            out << row;
            std::string alg = algorithm;
            for (auto& ch : alg)
                if (ch == '+') ch = '_';
            std::ofstream json(fs::path(out_dir) /
                               ("run_" + problem + "_d" + std::to_string(dim) + "_" + alg +
                                "_r" + std::to_string(repeat) + ".json"));
            json << icnopt::run_result_to_json(result);
        }
        return result.failed ? 2 : 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Offline surrogate-assisted evolutionary optimization with a "
                 "convolutional surrogate, RBFN baselines, and a signed-rank "
                 "comparison harness"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "results";
    std::size_t jobs = 0;
    std::uint64_t seed_override = kNoSeedOverride;

    auto* run = app.add_subcommand("run", "Run every problem x algorithm x repeat cell "
                                          "from a config file (resumable)");
    run->add_option("--config", config_path, "JSON experiment config")->required();
    run->add_option("--out", out_dir, "output directory (default: results)");
    run->add_option("--jobs", jobs, "concurrent runs (overrides config)");
    run->add_option("--seed", seed_override, "master seed (overrides config)");

    std::string sr_problem, sr_algorithm;
    std::size_t sr_dim = 10, sr_repeat = 0;
    auto* single = app.add_subcommand(
        "single-run", "Reproduce one grid cell bit-exactly and print its runs.csv row");
    single->add_option("--config", config_path, "JSON experiment config")->required();
    single->add_option("--problem", sr_problem, "problem name")->required();
    single->add_option("--dim", sr_dim, "problem dimension")->required();
    single->add_option("--algorithm", sr_algorithm, "surrogate kind")->required();
    single->add_option("--repeat", sr_repeat, "repeat index")->required();
    single->add_option("--out", out_dir, "optionally append the row/JSON here")
        ->default_val("");
    single->add_option("--seed", seed_override, "master seed (overrides config)");

    std::string report_dir;
    std::string reference = "icn";
    auto* report = app.add_subcommand(
        "report", "Regenerate summary and timing reports from an output directory");
    report->add_option("dir", report_dir, "results directory")->required();
    report->add_option("--reference", reference, "reference algorithm (default icn)");

    std::size_t kd_dim = 10, kd_seeds = 1, kd_points = 0, kd_iterations = 0;
    std::uint64_t kd_seed = 0;
    bool kd_unmasked = false;
    auto* demo = app.add_subcommand(
        "knowledge-demo", "Train the surrogate with no / weak / strong analytic "
                          "guidance on valley-function data and write RMSE curves");
    demo->add_option("--dim", kd_dim, "dimension (default 10)");
    demo->add_option("--seeds", kd_seeds, "number of independent seeds (default 1)");
    demo->add_option("--points", kd_points, "offline points (default 11*dim)");
    demo->add_option("--iterations", kd_iterations, "training iterations (default 200)");
    demo->add_option("--seed", kd_seed, "master seed");
    demo->add_option("--out", out_dir, "output directory (default: results)");
    demo->add_flag("--unmasked", kd_unmasked,
                   "score every pixel, including zero padding");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(config_path, out_dir, jobs, seed_override);
    if (single->parsed())
        return cmd_single_run(config_path, sr_problem, sr_dim, sr_algorithm, sr_repeat,
                              out_dir, seed_override);
    if (report->parsed()) {
        try {
            return icnopt::write_report(report_dir, reference, std::cout);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    if (demo->parsed()) {
        icnopt::KnowledgeDemoOptions options;
        options.dim = kd_dim;
        options.seeds = kd_seeds;
        options.points = kd_points;
        options.master_seed = kd_seed;
        options.unmasked = kd_unmasked;
        if (kd_iterations != 0) options.icn.iterations = kd_iterations;
        try {
            return icnopt::knowledge_demo(options, out_dir, std::cout);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    return 0;
}
