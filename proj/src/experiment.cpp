#include "icnopt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "icnopt/rng.hpp"
#include "icnopt/sampling.hpp"

#include <json.hpp>

namespace fs = std::filesystem;

namespace icnopt {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void check_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                const std::string& where) {
    if (!j.is_object())
        throw std::invalid_argument("config: " + where + " must be an object");
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key))
            throw std::invalid_argument("config: unknown key \"" + key + "\" in " + where);
    }
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

RosenbrockVariant rosenbrock_from_string(const std::string& s) {
    if (s == "canonical") return RosenbrockVariant::Canonical;
    if (s == "unsquared") return RosenbrockVariant::Unsquared;
    throw std::invalid_argument("config: rosenbrock_variant must be \"canonical\" or \"unsquared\"");
}

std::string rosenbrock_to_string(RosenbrockVariant v) {
    return v == RosenbrockVariant::Canonical ? "canonical" : "unsquared";
}

IcnConfig parse_icn(const nlohmann::json& j) {
    check_keys(j, {"n_layers", "channels", "kernel_side", "image_side", "learn_rate",
                   "iterations", "grad_clip", "mask_padding", "target_standardize"},
               "icn");
    IcnConfig cfg = ExperimentConfig::search_icn_defaults();
    if (j.contains("n_layers")) cfg.n_layers = j.at("n_layers").get<std::size_t>();
    if (j.contains("channels")) cfg.channels = j.at("channels").get<std::size_t>();
    if (j.contains("kernel_side")) cfg.kernel_side = j.at("kernel_side").get<std::size_t>();
    if (j.contains("image_side")) cfg.image_side = j.at("image_side").get<std::size_t>();
    if (j.contains("learn_rate")) cfg.learn_rate = j.at("learn_rate").get<double>();
    if (j.contains("iterations")) cfg.iterations = j.at("iterations").get<std::size_t>();
    if (j.contains("grad_clip")) cfg.grad_clip = j.at("grad_clip").get<double>();
    if (j.contains("mask_padding")) cfg.mask_padding = j.at("mask_padding").get<bool>();
    if (j.contains("target_standardize"))
        cfg.target_standardize = j.at("target_standardize").get<bool>();
    return cfg;
}

EaConfig parse_ea(const nlohmann::json& j) {
    check_keys(j, {"pop_size", "generations", "p_crossover", "p_mutation", "eta_c", "eta_m"},
               "ea");
    EaConfig cfg;
    if (j.contains("pop_size")) cfg.pop_size = j.at("pop_size").get<std::size_t>();
    if (j.contains("generations")) cfg.generations = j.at("generations").get<std::size_t>();
    if (j.contains("p_crossover")) cfg.p_crossover = j.at("p_crossover").get<double>();
    if (j.contains("p_mutation")) cfg.p_mutation = j.at("p_mutation").get<double>();
    if (j.contains("eta_c")) cfg.eta_c = j.at("eta_c").get<double>();
    if (j.contains("eta_m")) cfg.eta_m = j.at("eta_m").get<double>();
    return cfg;
}

} // namespace

void ExperimentConfig::validate() const {
    if (problems.empty())
        throw std::invalid_argument("config: problems must not be empty");
    for (const auto& p : problems)
        ProblemSpec::make(p.name, p.dim, rosenbrock); // throws on bad name/dim
    if (algorithms.empty())
        throw std::invalid_argument("config: algorithms must not be empty");
    for (const auto& a : algorithms) surrogate_kind_from_name(a);
    if (repeats == 0)
        throw std::invalid_argument("config: repeats must be >= 1");
    if (jobs == 0)
        throw std::invalid_argument("config: jobs must be >= 1");
    const bool wants_knowledge =
        std::find(algorithms.begin(), algorithms.end(), "icn+knowledge") != algorithms.end();
    if (wants_knowledge && knowledge_builtin.empty() && knowledge_terms.empty())
        throw std::invalid_argument(
            "config: algorithm icn+knowledge requires a knowledge section");
    if (!knowledge_builtin.empty() && knowledge_builtin != "weak-rosenbrock" &&
        knowledge_builtin != "strong-rosenbrock" &&
        knowledge_builtin != "strong-rosenbrock-literal")
        throw std::invalid_argument("config: unknown knowledge builtin \"" +
                                    knowledge_builtin + "\"");
}

ExperimentConfig parse_experiment_config(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte);
        throw std::invalid_argument("config:" + std::to_string(line) + ":" +
                                    std::to_string(col) + ": " + e.what());
    }

    check_keys(j,
               {"problems", "algorithms", "repeats", "master_seed", "jobs", "reference",
                "rosenbrock_variant", "icn", "ea", "ensemble_size", "n_offline",
                "knowledge"},
               "top level");

    ExperimentConfig cfg;
    if (!j.contains("problems") || !j.at("problems").is_array())
        throw std::invalid_argument("config: \"problems\" array is required");
    for (const auto& p : j.at("problems")) {
        check_keys(p, {"name", "dim"}, "problems[]");
        cfg.problems.push_back(
            {p.at("name").get<std::string>(), p.at("dim").get<std::size_t>()});
    }
    if (!j.contains("algorithms") || !j.at("algorithms").is_array())
        throw std::invalid_argument("config: \"algorithms\" array is required");
    for (const auto& a : j.at("algorithms")) cfg.algorithms.push_back(a.get<std::string>());

    if (j.contains("repeats")) cfg.repeats = j.at("repeats").get<std::size_t>();
    if (j.contains("master_seed")) cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<std::size_t>();
    if (j.contains("reference")) cfg.reference = j.at("reference").get<std::string>();
    if (j.contains("rosenbrock_variant"))
        cfg.rosenbrock = rosenbrock_from_string(j.at("rosenbrock_variant").get<std::string>());
    if (j.contains("icn")) cfg.icn = parse_icn(j.at("icn"));
    if (j.contains("ea")) cfg.ea = parse_ea(j.at("ea"));
    if (j.contains("ensemble_size")) cfg.ensemble_size = j.at("ensemble_size").get<std::size_t>();
    if (j.contains("n_offline")) cfg.n_offline = j.at("n_offline").get<std::size_t>();

    if (j.contains("knowledge")) {
        const auto& k = j.at("knowledge");
        check_keys(k, {"builtin", "terms"}, "knowledge");
        if (k.contains("builtin")) cfg.knowledge_builtin = k.at("builtin").get<std::string>();
        if (k.contains("terms")) {
            for (const auto& term : k.at("terms")) {
                KnowledgeTerm t;
                for (const auto& layer : term)
                    t.layers.push_back({layer.get<std::vector<double>>()});
                cfg.knowledge_terms.push_back(std::move(t));
            }
        }
    }

    cfg.validate();
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    return parse_experiment_config(read_file(path));
}

std::string experiment_config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    auto& problems = j["problems"] = nlohmann::json::array();
    for (const auto& p : cfg.problems)
        problems.push_back({{"name", p.name}, {"dim", p.dim}});
    j["algorithms"] = cfg.algorithms;
    j["repeats"] = cfg.repeats;
    j["master_seed"] = cfg.master_seed;
    j["jobs"] = cfg.jobs;
    j["reference"] = cfg.reference;
    j["rosenbrock_variant"] = rosenbrock_to_string(cfg.rosenbrock);
    j["icn"] = {{"n_layers", cfg.icn.n_layers},
                {"channels", cfg.icn.channels},
                {"kernel_side", cfg.icn.kernel_side},
                {"image_side", cfg.icn.image_side},
                {"learn_rate", cfg.icn.learn_rate},
                {"iterations", cfg.icn.iterations},
                {"grad_clip", cfg.icn.grad_clip},
                {"mask_padding", cfg.icn.mask_padding},
                {"target_standardize", cfg.icn.target_standardize}};
    j["ea"] = {{"pop_size", cfg.ea.pop_size},
               {"generations", cfg.ea.generations},
               {"p_crossover", cfg.ea.p_crossover},
               {"p_mutation", cfg.ea.p_mutation},
               {"eta_c", cfg.ea.eta_c},
               {"eta_m", cfg.ea.eta_m}};
    j["ensemble_size"] = cfg.ensemble_size;
    j["n_offline"] = cfg.n_offline;
    nlohmann::json k;
    k["builtin"] = cfg.knowledge_builtin;
    auto& terms = k["terms"] = nlohmann::json::array();
    for (const auto& t : cfg.knowledge_terms) {
        nlohmann::json layers = nlohmann::json::array();
        for (const auto& layer : t.layers) layers.push_back(layer.center_weights);
        terms.push_back(std::move(layers));
    }
    j["knowledge"] = std::move(k);
    return j.dump(2);
}

std::string RunKey::str() const {
    return problem + "/" + std::to_string(dim) + "/" + algorithm + "/" +
           std::to_string(repeat);
}

std::uint64_t run_seed_for(std::uint64_t master_seed, const RunKey& key) {
    return sub_seed(master_seed, key.str());
}

// data seed skips the algorithm so every surrogate sees the same offline
// dataset for a given repeat; the signed-rank comparison pairs on it
std::uint64_t data_seed_for(std::uint64_t master_seed, const RunKey& key) {
    return sub_seed(master_seed, key.problem + "/" + std::to_string(key.dim) + "/" +
                                     std::to_string(key.repeat) + "/data");
}

namespace {

std::vector<KnowledgeTerm> resolve_knowledge(const ExperimentConfig& cfg, std::size_t dim) {
    if (!cfg.knowledge_terms.empty()) return cfg.knowledge_terms;
    if (cfg.knowledge_builtin == "weak-rosenbrock") return weak_rosenbrock_term(dim);
    if (cfg.knowledge_builtin == "strong-rosenbrock") return strong_rosenbrock_term(dim);
    if (cfg.knowledge_builtin == "strong-rosenbrock-literal")
        return strong_rosenbrock_term(dim, StrongTermVariant::Literal);
    return {};
}

} // namespace

RunResult execute_single_run(const ExperimentConfig& cfg, const RunKey& key) {
    const auto problem = ProblemSpec::make(key.problem, key.dim, cfg.rosenbrock);
    PipelineConfig pc;
    pc.icn = cfg.icn;
    pc.ea = cfg.ea;
    pc.ensemble_size = cfg.ensemble_size;
    pc.n_offline = cfg.n_offline;
    const auto kind = surrogate_kind_from_name(key.algorithm);
    if (kind == SurrogateKind::IcnKnowledge)
        pc.knowledge = resolve_knowledge(cfg, key.dim);
    return run_offline(problem, kind, pc, run_seed_for(cfg.master_seed, key),
                       data_seed_for(cfg.master_seed, key));
}

std::string run_csv_header() {
    return "# icnopt runs v1: problem,dim,algorithm,repeat,master_seed,run_seed,"
           "data_seed,n_offline,true_evals,surrogate_fitness,true_fitness,ok,message\n";
}

std::string run_csv_row(const RunKey& key, std::uint64_t master_seed,
                        const RunResult& r) {
    std::string message = r.failed ? r.failure_phase + ": " + r.failure_message : "";
    for (auto& ch : message)
        if (ch == ',' || ch == '\n') ch = ';';
    std::ostringstream out;
    out << key.problem << ',' << key.dim << ',' << key.algorithm << ',' << key.repeat
        << ',' << master_seed << ',' << r.seed << ',' << r.data_seed << ','
        << r.n_offline << ',' << r.true_evals << ',' << fmt17(r.surrogate_fitness)
        << ',' << fmt17(r.true_fitness) << ',' << (r.failed ? 0 : 1) << ',' << message
        << '\n';
    return out.str();
}

std::vector<ParsedRow> parse_runs_csv(const std::string& text,
                                      std::vector<std::string>& issues) {
    std::vector<ParsedRow> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const auto pos = line.find(',', start);
            if (pos == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, pos - start));
            start = pos + 1;
        }
        if (fields.size() != 13) {
            issues.push_back("runs.csv line " + std::to_string(lineno) +
                             ": expected 13 fields, got " + std::to_string(fields.size()));
            continue;
        }
        try {
            ParsedRow row;
            row.key.problem = fields[0];
            row.key.dim = std::stoul(fields[1]);
            row.key.algorithm = fields[2];
            row.key.repeat = std::stoul(fields[3]);
            row.true_fitness = std::stod(fields[10]);
            row.ok = fields[11] == "1";
            rows.push_back(std::move(row));
        } catch (const std::exception& e) {
            issues.push_back("runs.csv line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return rows;
}

namespace {

std::string json_filename(const RunKey& key) {
    std::string alg = key.algorithm;
    for (auto& ch : alg)
        if (ch == '+') ch = '_';
    return "run_" + key.problem + "_d" + std::to_string(key.dim) + "_" + alg + "_r" +
           std::to_string(key.repeat) + ".json";
}

void write_summary_files(const fs::path& dir, const SummaryTable& table,
                         std::ostream& log) {
    write_file(dir / "summary.csv", summary_to_csv(table));
    const auto text = summary_to_text(table);
    write_file(dir / "summary.txt", text);
    log << text;
}

struct TimingCell {
    std::size_t runs = 0;
    double sample = 0.0, build = 0.0, evolve = 0.0;
};

void write_timing_report(const fs::path& dir, std::ostream& log) {
    std::map<std::tuple<std::string, std::size_t, std::string>, TimingCell> cells;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (name.rfind("run_", 0) != 0 || entry.path().extension() != ".json") continue;
        try {
            const auto r = run_result_from_json(read_file(entry.path()));
            if (r.failed) continue;
            auto& cell = cells[{r.problem, r.dim, surrogate_kind_name(r.kind)}];
            cell.runs += 1;
            cell.sample += r.sample_seconds;
            cell.build += r.build_seconds;
            cell.evolve += r.evolve_seconds;
        } catch (const std::exception& e) {
            log << "timing: skipping " << name << ": " << e.what() << "\n";
        }
    }
    std::ostringstream out;
    out << "# icnopt timing v1\n";
    out << "problem,dim,algorithm,runs,mean_sample_seconds,mean_build_seconds,"
           "mean_evolve_seconds\n";
    for (const auto& [key, cell] : cells) {
        const auto& [problem, dim, alg] = key;
        const double n = static_cast<double>(cell.runs);
        out << problem << ',' << dim << ',' << alg << ',' << cell.runs << ','
            << fmt17(cell.sample / n) << ',' << fmt17(cell.build / n) << ','
            << fmt17(cell.evolve / n) << '\n';
    }
    write_file(dir / "timing.csv", out.str());
}

int summarize_directory(const fs::path& dir, const std::string& reference,
                        std::ostream& log) {
    const auto runs_path = dir / "runs.csv";
    if (!fs::exists(runs_path)) {
        log << "error: no runs found in " << dir.string() << " (missing runs.csv)\n";
        return 1;
    }
    std::vector<std::string> issues;
    const auto rows = parse_runs_csv(read_file(runs_path), issues);
    for (const auto& issue : issues) log << "warning: " << issue << "\n";
    if (rows.empty()) {
        log << "error: no runs found in " << dir.string() << "\n";
        return 1;
    }

    std::vector<RunRecord> records;
    std::size_t failed = 0;
    for (const auto& row : rows) {
        if (!row.ok) {
            ++failed;
            continue;
        }
        records.push_back({row.key.problem, row.key.dim, row.key.algorithm,
                           row.key.repeat, row.true_fitness});
    }
    if (failed > 0) log << failed << " failed run(s) excluded from the summary\n";

    const auto table = summarize(records, reference);
    write_summary_files(dir, table, log);
    write_timing_report(dir, log);
    return 0;
}

} // namespace

int run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                   std::ostream& log) {
    cfg.validate();
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    write_file(dir / "config_used.json", experiment_config_to_json(cfg));

    const auto runs_path = dir / "runs.csv";
    std::set<std::string> done;
    if (fs::exists(runs_path)) {
        std::vector<std::string> issues;
        for (const auto& row : parse_runs_csv(read_file(runs_path), issues))
            done.insert(row.key.str());
        for (const auto& issue : issues) log << "warning: " << issue << "\n";
    } else {
        write_file(runs_path, run_csv_header());
    }

    std::vector<RunKey> tasks;
    for (const auto& p : cfg.problems)
        for (const auto& alg : cfg.algorithms)
            for (std::size_t rep = 0; rep < cfg.repeats; ++rep) {
                RunKey key{p.name, p.dim, alg, rep};
                if (!done.count(key.str())) tasks.push_back(std::move(key));
            }

    log << "grid: " << cfg.problems.size() << " problem(s) x " << cfg.algorithms.size()
        << " algorithm(s) x " << cfg.repeats << " repeat(s); " << done.size()
        << " already done, " << tasks.size() << " to run\n";

    std::mutex io_mutex;
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> failures{0};

    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            const RunKey& key = tasks[i];
            RunResult result;
            try {
                result = execute_single_run(cfg, key);
            } catch (const std::exception& e) {
                result.problem = key.problem;
                result.dim = key.dim;
                result.failed = true;
                result.failure_phase = "setup";
                result.failure_message = e.what();
            }
            if (result.failed) failures.fetch_add(1);

            std::lock_guard<std::mutex> lock(io_mutex);
            std::ofstream row_out(runs_path, std::ios::app | std::ios::binary);
            row_out << run_csv_row(key, cfg.master_seed, result);
            row_out.flush();
            write_file(dir / json_filename(key), run_result_to_json(result));
            log << (result.failed ? "FAIL " : "done ") << key.str() << "  true="
                << fmt17(result.true_fitness) << "\n";
        }
    };

    const std::size_t n_workers = std::min(cfg.jobs, std::max<std::size_t>(tasks.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    if (failures.load() > 0)
        log << failures.load() << " run(s) failed; see runs.csv\n";
    return summarize_directory(dir, cfg.reference, log);
}

int write_report(const std::string& out_dir, const std::string& reference,
                 std::ostream& log) {
    return summarize_directory(fs::path(out_dir), reference, log);
}

int knowledge_demo(const KnowledgeDemoOptions& options, const std::string& out_dir,
                   std::ostream& log) {
    if (options.dim < 2) {
        log << "error: knowledge demo needs dim >= 2\n";
        return 1;
    }
    const std::size_t points = options.points != 0 ? options.points : 11 * options.dim;
    const std::size_t n_test = std::max<std::size_t>(1, points / 11);
    if (points < n_test + 2) {
        log << "error: not enough points for a train/test split\n";
        return 1;
    }
    const std::size_t n_train = points - n_test;

    const fs::path dir(out_dir);
    fs::create_directories(dir);

    const auto problem = ProblemSpec::make("Rosenbrock", options.dim, options.rosenbrock);

    // raw-unit targets throughout: the guidance coefficients live in target
    // units, and the curves stay comparable to raw-error reports
    IcnConfig icn = options.icn;
    icn.target_standardize = false;
    if (options.unmasked) icn.mask_padding = false;

    struct Variant {
        std::string name;
        std::vector<KnowledgeTerm> terms;
    };
    const std::vector<Variant> variants = {
        {"none", {}},
        {"weak", weak_rosenbrock_term(options.dim)},
        {"strong", strong_rosenbrock_term(options.dim)},
    };

    std::map<std::string, std::vector<double>> final_train; // variant -> per-seed
    std::ostringstream summary;
    summary << "seed_index,seed,variant,final_train_rmse,final_test_rmse\n";

    for (std::size_t s = 0; s < options.seeds; ++s) {
        const std::uint64_t data_seed =
            sub_seed(options.master_seed, "knowledge-demo/data/" + std::to_string(s));
        const auto samples = lhs(points, options.dim, data_seed);

        Dataset train, test;
        train.points = Matrix(n_train, options.dim);
        train.targets.resize(n_train);
        test.points = Matrix(n_test, options.dim);
        test.targets.resize(n_test);
        for (std::size_t i = 0; i < n_train; ++i) {
            for (std::size_t j = 0; j < options.dim; ++j)
                train.points(i, j) = samples.points(i, j);
            train.targets[i] = evaluate(
                problem, std::span<const double>(train.points.row(i), options.dim));
        }
        for (std::size_t i = 0; i < n_test; ++i) {
            for (std::size_t j = 0; j < options.dim; ++j)
                test.points(i, j) = samples.points(n_train + i, j);
            test.targets[i] = evaluate(
                problem, std::span<const double>(test.points.row(i), options.dim));
        }

        for (const auto& variant : variants) {
            IcnConfig cfg = icn;
            cfg.seed = sub_seed(options.master_seed,
                                "knowledge-demo/train/" + std::to_string(s));

            std::vector<double> test_curve;
            test_curve.reserve(cfg.iterations);
            const auto observer = [&](std::size_t, const IcnModel& model) {
                test_curve.push_back(eval_rmse(model, test));
            };

            IcnTrainResult trained;
            try {
                trained = train_augmented(train, cfg, variant.terms, observer);
            } catch (const std::exception& e) {
                log << "error: training " << variant.name << " (seed index " << s
                    << ") failed: " << e.what() << "\n";
                return 1;
            }

            std::ostringstream csv;
            csv << "iteration,train_rmse,test_rmse\n";
            for (std::size_t it = 0; it < trained.loss_curve.size(); ++it)
                csv << it << ',' << fmt17(trained.loss_curve[it]) << ','
                    << fmt17(test_curve[it]) << '\n';
            const std::string filename =
                s == 0 ? "loss_" + variant.name + ".csv"
                       : "loss_" + variant.name + "_s" + std::to_string(s) + ".csv";
            write_file(dir / filename, csv.str());

            final_train[variant.name].push_back(trained.loss_curve.back());
            summary << s << ',' << cfg.seed << ',' << variant.name << ','
                    << fmt17(trained.loss_curve.back()) << ','
                    << fmt17(test_curve.back()) << '\n';
            log << "seed " << s << " " << variant.name
                << ": final train RMSE = " << fmt17(trained.loss_curve.back())
                << ", final test RMSE = " << fmt17(test_curve.back()) << "\n";
        }
    }
    write_file(dir / "knowledge_summary.csv", summary.str());

    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const std::size_t n = v.size();
        return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    };
    log << "median final train RMSE: none=" << fmt17(median(final_train["none"]))
        << " weak=" << fmt17(median(final_train["weak"]))
        << " strong=" << fmt17(median(final_train["strong"])) << "\n";
    return 0;
}

} // namespace icnopt
