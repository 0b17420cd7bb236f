#ifndef ICNOPT_PIPELINE_HPP
#define ICNOPT_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icnopt/benchmarks.hpp"
#include "icnopt/evolution.hpp"
#include "icnopt/icn.hpp"
#include "icnopt/knowledge.hpp"
#include "icnopt/rbfn.hpp"

namespace icnopt {

enum class SurrogateKind { Icn, IcnKnowledge, Rbfn, RbfnEnsemble };

std::string surrogate_kind_name(SurrogateKind kind);
SurrogateKind surrogate_kind_from_name(const std::string& name);

/// Everything one offline run needs beyond the problem itself.
struct PipelineConfig {
    IcnConfig icn;
    EaConfig ea;
    std::vector<KnowledgeTerm> knowledge; // required for IcnKnowledge
    std::size_t ensemble_size = 50;
    std::size_t n_offline = 0; // 0 = 11 * d
};

/// Outcome of one run. True fitness is evaluated exactly once, on the final
/// best-by-surrogate individual; everything else sees only the offline data.
struct RunResult {
    std::string problem;
    std::size_t dim = 0;
    SurrogateKind kind = SurrogateKind::Icn;
    std::uint64_t seed = 0;      // run seed all streams derive from
    std::uint64_t data_seed = 0; // LHS stream (shared across algorithms)
    std::size_t n_offline = 0;

    std::vector<double> best_genome;
    double surrogate_fitness = 0.0;
    double true_fitness = 0.0;
    std::size_t true_evals = 0; // instrumented objective-call counter

    double sample_seconds = 0.0;
    double build_seconds = 0.0;
    double evolve_seconds = 0.0;

    std::vector<double> loss_curve; // empty for RBFN surrogates

    bool failed = false;
    std::string failure_phase;
    std::string failure_message;
};

/// Sample -> train surrogate -> evolve on the surrogate -> one true
/// evaluation of the final best. data_seed may be pinned so different
/// algorithms share the same offline dataset; by default it derives from
/// the run seed.
RunResult run_offline(const ProblemSpec& problem, SurrogateKind kind,
                      const PipelineConfig& config, std::uint64_t seed,
                      std::optional<std::uint64_t> data_seed = std::nullopt);

std::string run_result_to_json(const RunResult& result);
RunResult run_result_from_json(const std::string& text);

} // namespace icnopt

#endif
