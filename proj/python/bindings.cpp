#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "icnopt/benchmarks.hpp"
#include "icnopt/evolution.hpp"
#include "icnopt/icn.hpp"
#include "icnopt/knowledge.hpp"
#include "icnopt/pipeline.hpp"
#include "icnopt/rbfn.hpp"
#include "icnopt/sampling.hpp"
#include "icnopt/stats.hpp"

namespace py = pybind11;
using namespace icnopt;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const DoubleArray& arr) {
    if (arr.ndim() != 2) throw std::invalid_argument("expected a 2-d array");
    Matrix m(static_cast<std::size_t>(arr.shape(0)), static_cast<std::size_t>(arr.shape(1)));
    const auto view = arr.unchecked<2>();
    for (py::ssize_t i = 0; i < arr.shape(0); ++i)
        for (py::ssize_t j = 0; j < arr.shape(1); ++j)
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = view(i, j);
    return m;
}

py::array_t<double> to_numpy(const Matrix& m) {
    py::array_t<double> out({m.rows, m.cols});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = m(i, j);
    return out;
}

std::vector<double> to_vector(const DoubleArray& arr) {
    if (arr.ndim() != 1) throw std::invalid_argument("expected a 1-d array");
    const auto view = arr.unchecked<1>();
    std::vector<double> v(static_cast<std::size_t>(arr.shape(0)));
    for (py::ssize_t i = 0; i < arr.shape(0); ++i) v[static_cast<std::size_t>(i)] = view(i);
    return v;
}

Dataset to_dataset(const DoubleArray& x, const DoubleArray& y) {
    Dataset data;
    data.points = to_matrix(x);
    data.targets = to_vector(y);
    data.validate();
    return data;
}

std::vector<KnowledgeTerm> terms_from_lists(
    const std::vector<std::vector<std::vector<double>>>& raw) {
    std::vector<KnowledgeTerm> terms;
    for (const auto& layers : raw) {
        KnowledgeTerm t;
        for (const auto& layer : layers) t.layers.push_back({layer});
        terms.push_back(std::move(t));
    }
    return terms;
}

std::vector<std::vector<std::vector<double>>> terms_to_lists(
    const std::vector<KnowledgeTerm>& terms) {
    std::vector<std::vector<std::vector<double>>> out;
    for (const auto& t : terms) {
        std::vector<std::vector<double>> layers;
        for (const auto& layer : t.layers) layers.push_back(layer.center_weights);
        out.push_back(std::move(layers));
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_icnopt, m) {
    m.doc() = "Offline surrogate-assisted evolutionary optimization: convolutional "
              "surrogate, RBFN baselines, benchmarks, and the signed-rank harness";

    m.def("lhs",
          [](std::size_t n, std::size_t d, std::uint64_t seed) {
              return to_numpy(lhs(n, d, seed).points);
          },
          py::arg("n"), py::arg("d"), py::arg("seed") = 0,
          "Latin hypercube sample of n points in [0,1)^d");

    m.def("problem_names", [] { return ProblemSpec::known_names(); });

    m.def("evaluate",
          [](const std::string& name, DoubleArray x, const std::string& rosenbrock_variant) {
              const auto variant = rosenbrock_variant == "unsquared"
                                       ? RosenbrockVariant::Unsquared
                                       : RosenbrockVariant::Canonical;
              if (x.ndim() == 1) {
                  const auto v = to_vector(x);
                  const auto p = ProblemSpec::make(name, v.size(), variant);
                  return py::cast(evaluate(p, v));
              }
              const auto pts = to_matrix(x);
              const auto p = ProblemSpec::make(name, pts.cols, variant);
              std::vector<double> out(pts.rows);
              for (std::size_t i = 0; i < pts.rows; ++i)
                  out[i] = evaluate(p, std::span<const double>(pts.row(i), pts.cols));
              return py::cast(out);
          },
          py::arg("name"), py::arg("x"), py::arg("rosenbrock_variant") = "canonical",
          "True fitness of a point or a batch of points on [0,1]^d");

    py::class_<IcnConfig>(m, "IcnConfig")
        .def(py::init([](std::size_t n_layers, std::size_t channels, std::size_t kernel_side,
                         std::size_t image_side, double learn_rate, std::size_t iterations,
                         double grad_clip, bool mask_padding, bool target_standardize,
                         std::uint64_t seed) {
                 IcnConfig cfg;
                 cfg.n_layers = n_layers;
                 cfg.channels = channels;
                 cfg.kernel_side = kernel_side;
                 cfg.image_side = image_side;
                 cfg.learn_rate = learn_rate;
                 cfg.iterations = iterations;
                 cfg.grad_clip = grad_clip;
                 cfg.mask_padding = mask_padding;
                 cfg.target_standardize = target_standardize;
                 cfg.seed = seed;
                 return cfg;
             }),
             py::arg("n_layers") = 3, py::arg("channels") = 0, py::arg("kernel_side") = 3,
             py::arg("image_side") = 10, py::arg("learn_rate") = 1e-3,
             py::arg("iterations") = 200, py::arg("grad_clip") = 10.0,
             py::arg("mask_padding") = true, py::arg("target_standardize") = true,
             py::arg("seed") = 0)
        .def_readwrite("n_layers", &IcnConfig::n_layers)
        .def_readwrite("channels", &IcnConfig::channels)
        .def_readwrite("kernel_side", &IcnConfig::kernel_side)
        .def_readwrite("image_side", &IcnConfig::image_side)
        .def_readwrite("learn_rate", &IcnConfig::learn_rate)
        .def_readwrite("iterations", &IcnConfig::iterations)
        .def_readwrite("grad_clip", &IcnConfig::grad_clip)
        .def_readwrite("mask_padding", &IcnConfig::mask_padding)
        .def_readwrite("target_standardize", &IcnConfig::target_standardize)
        .def_readwrite("seed", &IcnConfig::seed);

    py::class_<IcnModel>(m, "IcnModel")
        .def("predict",
             [](const IcnModel& model, DoubleArray x) { return predict(model, to_matrix(x)); })
        .def("term_coefficients",
             [](const IcnModel& model) {
                 std::vector<double> out;
                 for (const auto& t : model.terms) out.push_back(t.coeff);
                 return out;
             })
        .def("to_json", [](const IcnModel& model) { return icn_to_json(model); })
        .def_static("from_json", [](const std::string& text) { return icn_from_json(text); });

    m.def("train_icn",
          [](DoubleArray x, DoubleArray y, const IcnConfig& cfg,
             const std::vector<std::vector<std::vector<double>>>& knowledge) {
              const auto data = to_dataset(x, y);
              const auto result = knowledge.empty()
                                      ? train_icn(data, cfg)
                                      : train_augmented(data, cfg, terms_from_lists(knowledge));
              return py::make_tuple(result.model, result.loss_curve);
          },
          py::arg("x"), py::arg("y"), py::arg("config") = IcnConfig{},
          py::arg("knowledge") = std::vector<std::vector<std::vector<double>>>{},
          "Returns (model, per-iteration train RMSE). Knowledge terms are lists "
          "of per-layer center-weight vectors with one learnable coefficient each");

    m.def("weak_rosenbrock_terms",
          [](std::size_t d) { return terms_to_lists(weak_rosenbrock_term(d)); }, py::arg("d"));
    m.def("strong_rosenbrock_terms",
          [](std::size_t d, bool literal) {
              return terms_to_lists(strong_rosenbrock_term(
                  d, literal ? StrongTermVariant::Literal : StrongTermVariant::Squared));
          },
          py::arg("d"), py::arg("literal") = false);

    py::class_<RbfnModel>(m, "RbfnModel")
        .def("predict",
             [](const RbfnModel& model, DoubleArray x) {
                 return predict_rbfn(model, to_matrix(x));
             })
        .def_property_readonly("spread", [](const RbfnModel& model) { return model.spread; })
        .def_property_readonly("n_centers",
                               [](const RbfnModel& model) { return model.centers.rows; })
        .def("to_json", [](const RbfnModel& model) { return rbfn_to_json(model); })
        .def_static("from_json", [](const std::string& text) { return rbfn_from_json(text); });

    m.def("train_rbfn",
          [](DoubleArray x, DoubleArray y, std::uint64_t seed) {
              return train_rbfn(to_dataset(x, y), seed);
          },
          py::arg("x"), py::arg("y"), py::arg("seed") = 0);

    py::class_<EnsembleModel>(m, "EnsembleModel")
        .def("predict",
             [](const EnsembleModel& model, DoubleArray x) {
                 return predict_ensemble(model, to_matrix(x));
             })
        .def_property_readonly("size",
                               [](const EnsembleModel& model) { return model.members.size(); });

    m.def("train_rbfn_ensemble",
          [](DoubleArray x, DoubleArray y, std::size_t members, std::uint64_t seed) {
              return train_ensemble(to_dataset(x, y), members, seed);
          },
          py::arg("x"), py::arg("y"), py::arg("members") = 50, py::arg("seed") = 0);

    m.def("wilcoxon_signed_rank",
          [](DoubleArray a, DoubleArray b) {
              const auto res = wilcoxon_signed_rank(to_vector(a), to_vector(b));
              py::dict out;
              out["w_plus"] = res.w_plus;
              out["w_minus"] = res.w_minus;
              out["statistic"] = res.statistic;
              out["p_value"] = res.p_value;
              out["n"] = res.n;
              out["exact"] = res.exact;
              out["degenerate"] = res.degenerate;
              return out;
          },
          py::arg("a"), py::arg("b"), "Two-sided paired signed-rank test; exact for n <= 12");

    m.def("run_offline",
          [](const std::string& problem, std::size_t dim, const std::string& algorithm,
             std::uint64_t seed, const IcnConfig& icn, std::size_t pop_size,
             std::size_t generations, std::size_t ensemble_size, std::size_t n_offline,
             const std::vector<std::vector<std::vector<double>>>& knowledge,
             std::optional<std::uint64_t> data_seed) {
              PipelineConfig pc;
              pc.icn = icn;
              pc.ea.pop_size = pop_size;
              pc.ea.generations = generations;
              pc.ensemble_size = ensemble_size;
              pc.n_offline = n_offline;
              pc.knowledge = terms_from_lists(knowledge);
              const auto spec = ProblemSpec::make(problem, dim);
              const auto result =
                  run_offline(spec, surrogate_kind_from_name(algorithm), pc, seed, data_seed);
              py::dict out;
              out["problem"] = result.problem;
              out["dim"] = result.dim;
              out["algorithm"] = surrogate_kind_name(result.kind);
              out["seed"] = result.seed;
              out["data_seed"] = result.data_seed;
              out["n_offline"] = result.n_offline;
              out["best_genome"] = result.best_genome;
              out["surrogate_fitness"] = result.surrogate_fitness;
              out["true_fitness"] = result.true_fitness;
              out["true_evals"] = result.true_evals;
              out["build_seconds"] = result.build_seconds;
              out["evolve_seconds"] = result.evolve_seconds;
              out["loss_curve"] = result.loss_curve;
              out["failed"] = result.failed;
              out["failure_message"] = result.failure_message;
              return out;
          },
          py::arg("problem"), py::arg("dim"), py::arg("algorithm"), py::arg("seed") = 0,
          py::arg("icn") = IcnConfig{}, py::arg("pop_size") = 0, py::arg("generations") = 200,
          py::arg("ensemble_size") = 50, py::arg("n_offline") = 0,
          py::arg("knowledge") = std::vector<std::vector<std::vector<double>>>{},
          py::arg("data_seed") = std::nullopt,
          "One full offline run: sample, train the chosen surrogate, evolve on it, "
          "then evaluate the final best once with the true objective");
}
