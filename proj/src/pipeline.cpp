#include "icnopt/pipeline.hpp"

#include <chrono>
#include <memory>
#include <stdexcept>

#include "icnopt/rng.hpp"
#include "icnopt/sampling.hpp"

#include <json.hpp>

namespace icnopt {

std::string surrogate_kind_name(SurrogateKind kind) {
    switch (kind) {
        case SurrogateKind::Icn: return "icn";
        case SurrogateKind::IcnKnowledge: return "icn+knowledge";
        case SurrogateKind::Rbfn: return "rbfn";
        case SurrogateKind::RbfnEnsemble: return "rbfn-ensemble";
    }
    throw std::invalid_argument("unknown surrogate kind");
}

SurrogateKind surrogate_kind_from_name(const std::string& name) {
    if (name == "icn") return SurrogateKind::Icn;
    if (name == "icn+knowledge") return SurrogateKind::IcnKnowledge;
    if (name == "rbfn") return SurrogateKind::Rbfn;
    if (name == "rbfn-ensemble") return SurrogateKind::RbfnEnsemble;
    throw std::invalid_argument("unknown surrogate kind: " + name);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Counts every true objective call so offline purity can be asserted.
struct CountingObjective {
    const ProblemSpec& problem;
    std::size_t calls = 0;

    double operator()(std::span<const double> x) {
        ++calls;
        return evaluate(problem, x);
    }
};

} // namespace

RunResult run_offline(const ProblemSpec& problem, SurrogateKind kind,
                      const PipelineConfig& config, std::uint64_t seed,
                      std::optional<std::uint64_t> data_seed) {
    const std::size_t d = problem.dim;

    RunResult result;
    result.problem = problem.name;
    result.dim = d;
    result.kind = kind;
    result.seed = seed;
    result.data_seed = data_seed.value_or(sub_seed(seed, "data"));
    result.n_offline = config.n_offline != 0 ? config.n_offline : 11 * d;

    CountingObjective objective{problem};

    try {
        // offline data: the only place the true objective is allowed, except
        // the single final report evaluation
        auto t0 = Clock::now();
        const auto samples = lhs(result.n_offline, d, result.data_seed);
        Dataset data;
        data.points = samples.points;
        data.targets.resize(result.n_offline);
        for (std::size_t i = 0; i < result.n_offline; ++i)
            data.targets[i] = objective(std::span<const double>(data.points.row(i), d));
        result.sample_seconds = seconds_since(t0);

        // surrogate build
        t0 = Clock::now();
        BatchSurrogate surrogate;
        result.failure_phase = "train";
        switch (kind) {
            case SurrogateKind::Icn:
            case SurrogateKind::IcnKnowledge: {
                IcnConfig icn_cfg = config.icn;
                icn_cfg.seed = sub_seed(seed, "train");
                if (kind == SurrogateKind::IcnKnowledge && config.knowledge.empty())
                    throw std::invalid_argument(
                        "run_offline: icn+knowledge requires knowledge terms");
                auto trained = kind == SurrogateKind::Icn
                                   ? train_icn(data, icn_cfg)
                                   : train_augmented(data, icn_cfg, config.knowledge);
                result.loss_curve = trained.loss_curve;
                auto model = std::make_shared<IcnModel>(std::move(trained.model));
                surrogate = [model](const Matrix& pop) { return predict(*model, pop); };
                break;
            }
            case SurrogateKind::Rbfn: {
                auto model = std::make_shared<RbfnModel>(
                    train_rbfn(data, sub_seed(seed, "train")));
                surrogate = [model](const Matrix& pop) { return predict_rbfn(*model, pop); };
                break;
            }
            case SurrogateKind::RbfnEnsemble: {
                auto model = std::make_shared<EnsembleModel>(train_ensemble(
                    data, config.ensemble_size, sub_seed(seed, "train")));
                surrogate = [model](const Matrix& pop) {
                    return predict_ensemble(*model, pop);
                };
                break;
            }
        }
        result.build_seconds = seconds_since(t0);

        // evolution, driven purely by the surrogate, seeded from the
        // offline sample set
        t0 = Clock::now();
        result.failure_phase = "evolve";
        EaConfig ea_cfg = config.ea;
        ea_cfg.seed = sub_seed(seed, "evolve");
        const auto evolved = evolve(surrogate, ea_cfg, data.points);
        result.evolve_seconds = seconds_since(t0);

        result.best_genome = evolved.best_genome;
        result.surrogate_fitness = evolved.best_fitness;

        result.failure_phase = "report";
        result.true_fitness = objective(
            std::span<const double>(result.best_genome.data(), result.best_genome.size()));
        result.true_evals = objective.calls;
        result.failure_phase.clear();
    } catch (const std::exception& e) {
        result.failed = true;
        result.failure_message = e.what();
        result.true_evals = objective.calls;
        return result;
    }

    if (result.true_evals != result.n_offline + 1)
        throw std::logic_error("run_offline: offline purity violated");
    return result;
}

std::string run_result_to_json(const RunResult& r) {
    nlohmann::json j;
    j["problem"] = r.problem;
    j["dim"] = r.dim;
    j["algorithm"] = surrogate_kind_name(r.kind);
    j["seed"] = r.seed;
    j["data_seed"] = r.data_seed;
    j["n_offline"] = r.n_offline;
    j["best_genome"] = r.best_genome;
    j["surrogate_fitness"] = r.surrogate_fitness;
    j["true_fitness"] = r.true_fitness;
    j["true_evals"] = r.true_evals;
    j["timing"] = {{"sample_seconds", r.sample_seconds},
                   {"build_seconds", r.build_seconds},
                   {"evolve_seconds", r.evolve_seconds}};
    j["loss_curve"] = r.loss_curve;
    j["failed"] = r.failed;
    j["failure_phase"] = r.failure_phase;
    j["failure_message"] = r.failure_message;
    return j.dump(2);
}

RunResult run_result_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    RunResult r;
    r.problem = j.at("problem").get<std::string>();
    r.dim = j.at("dim").get<std::size_t>();
    r.kind = surrogate_kind_from_name(j.at("algorithm").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.data_seed = j.at("data_seed").get<std::uint64_t>();
    r.n_offline = j.at("n_offline").get<std::size_t>();
    r.best_genome = j.at("best_genome").get<std::vector<double>>();
    r.surrogate_fitness = j.at("surrogate_fitness").get<double>();
    r.true_fitness = j.at("true_fitness").get<double>();
    r.true_evals = j.at("true_evals").get<std::size_t>();
    r.sample_seconds = j.at("timing").at("sample_seconds").get<double>();
    r.build_seconds = j.at("timing").at("build_seconds").get<double>();
    r.evolve_seconds = j.at("timing").at("evolve_seconds").get<double>();
    r.loss_curve = j.at("loss_curve").get<std::vector<double>>();
    r.failed = j.at("failed").get<bool>();
    r.failure_phase = j.at("failure_phase").get<std::string>();
    r.failure_message = j.at("failure_message").get<std::string>();
    return r;
}

} // namespace icnopt
