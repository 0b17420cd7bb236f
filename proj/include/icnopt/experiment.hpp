#ifndef ICNOPT_EXPERIMENT_HPP
#define ICNOPT_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "icnopt/pipeline.hpp"
#include "icnopt/stats.hpp"

namespace icnopt {

struct ProblemRef {
    std::string name;
    std::size_t dim = 0;
};

/// Full experiment description as read from a config file. Unknown keys are
/// rejected on parse. Symbol mapping to the usual complexity notation:
/// N_INI = n_offline, M = 1 (or ensemble_size), K = icn.channels,
/// L = icn.kernel_side, C = ceil(sqrt(N_INI)), G = ea.generations,
/// Q = ea.pop_size.
struct ExperimentConfig {
    std::vector<ProblemRef> problems;
    std::vector<std::string> algorithms;
    std::size_t repeats = 20;
    std::uint64_t master_seed = 0;
    std::size_t jobs = 1;
    std::string reference = "icn";
    RosenbrockVariant rosenbrock = RosenbrockVariant::Canonical;

    /// Search-tuned surrogate defaults. Raw (unstandardized) targets keep the
    /// bias-free network's exact zero at the all-zero input, which is what
    /// pulls the evolutionary search into the low-fitness corner; one-pixel
    /// images score each individual independently of its batch neighbors.
    /// Both can be overridden per config file.
    static IcnConfig search_icn_defaults() {
        IcnConfig cfg;
        cfg.image_side = 1;
        cfg.target_standardize = false;
        return cfg;
    }

    IcnConfig icn = search_icn_defaults();
    EaConfig ea;
    std::size_t ensemble_size = 50;
    std::size_t n_offline = 0;

    std::string knowledge_builtin; // "", "weak-rosenbrock", "strong-rosenbrock",
                                   // "strong-rosenbrock-literal"
    std::vector<KnowledgeTerm> knowledge_terms; // explicit per-layer weights

    void validate() const;
};

ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

/// Canonical re-serialization (stable key order, full precision).
std::string experiment_config_to_json(const ExperimentConfig& config);

/// Identifies one run; doubles as the resume key and the seed derivation tag.
struct RunKey {
    std::string problem;
    std::size_t dim = 0;
    std::string algorithm;
    std::size_t repeat = 0;

    std::string str() const;
};

std::uint64_t run_seed_for(std::uint64_t master_seed, const RunKey& key);
std::uint64_t data_seed_for(std::uint64_t master_seed, const RunKey& key);

/// Executes exactly one grid cell, with the same seeds cmd_run would use.
RunResult execute_single_run(const ExperimentConfig& config, const RunKey& key);

/// Fixed runs.csv row for a completed run; fields are deterministic for a
/// given (config, key) so reruns are byte-identical. The master seed plus
/// the key fields are enough to reproduce the row via single-run.
std::string run_csv_header();
std::string run_csv_row(const RunKey& key, std::uint64_t master_seed,
                        const RunResult& result);

struct ParsedRow {
    RunKey key;
    double true_fitness = 0.0;
    bool ok = false;
};
/// Returns parsed rows; malformed lines are reported into issues and skipped.
std::vector<ParsedRow> parse_runs_csv(const std::string& text,
                                      std::vector<std::string>& issues);

/// cmd_run: config -> runs.csv + per-run JSON + summary; completed keys are
/// skipped on rerun. Returns a process exit code.
int run_experiment(const ExperimentConfig& config, const std::string& out_dir,
                   std::ostream& log);

/// cmd_report: rebuild summary + timing report from an output directory.
int write_report(const std::string& out_dir, const std::string& reference,
                 std::ostream& log);

struct KnowledgeDemoOptions {
    std::size_t dim = 10;
    std::size_t seeds = 1;
    std::size_t points = 0; // 0 = 11 * dim
    std::uint64_t master_seed = 0;
    bool unmasked = false; // score every pixel, including zero padding
    IcnConfig icn;
    RosenbrockVariant rosenbrock = RosenbrockVariant::Canonical;
};

/// cmd_knowledge_demo: trains the none/weak/strong variants on offline
/// valley-function data and writes per-iteration train/test RMSE curves.
int knowledge_demo(const KnowledgeDemoOptions& options, const std::string& out_dir,
                   std::ostream& log);

} // namespace icnopt

#endif
