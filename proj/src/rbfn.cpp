#include "icnopt/rbfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "icnopt/linalg.hpp"
#include "icnopt/rng.hpp"

#include <json.hpp>

namespace icnopt {

namespace {

double sq_dist(const double* a, const double* b, std::size_t d) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        const double diff = a[j] - b[j];
        s += diff * diff;
    }
    return s;
}

} // namespace

Matrix kmeans(const Matrix& points, std::size_t k, std::uint64_t seed,
              std::size_t max_iters) {
    const std::size_t n = points.rows, d = points.cols;
    if (k == 0 || k > n)
        throw std::invalid_argument("kmeans: need 1 <= k <= number of points");

    auto rng = make_engine(seed);

    // initial centers: k points drawn without replacement
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);

    Matrix centers(k, d);
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t j = 0; j < d; ++j) centers(c, j) = points(order[c], j);

    std::vector<std::size_t> assign(n, 0), prev(n, k);
    std::vector<std::size_t> counts(k, 0);

    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_c = 0;
            for (std::size_t c = 0; c < k; ++c) {
                const double dist = sq_dist(points.row(i), centers.row(c), d);
                if (dist < best) {
                    best = dist;
                    best_c = c;
                }
            }
            assign[i] = best_c;
        }
        if (assign == prev) break;
        prev = assign;

        Matrix sums(k, d);
        std::fill(counts.begin(), counts.end(), std::size_t{0});
        for (std::size_t i = 0; i < n; ++i) {
            counts[assign[i]]++;
            for (std::size_t j = 0; j < d; ++j) sums(assign[i], j) += points(i, j);
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                for (std::size_t j = 0; j < d; ++j)
                    centers(c, j) = sums(c, j) / static_cast<double>(counts[c]);
            } else {
                // reseed an empty cluster at the point farthest from its center
                double worst = -1.0;
                std::size_t worst_i = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double dist = sq_dist(points.row(i), centers.row(assign[i]), d);
                    if (dist > worst) {
                        worst = dist;
                        worst_i = i;
                    }
                }
                for (std::size_t j = 0; j < d; ++j) centers(c, j) = points(worst_i, j);
            }
        }
    }
    return centers;
}

static double mean_center_distance(const Matrix& centers) {
    const std::size_t k = centers.rows;
    if (k < 2) return 0.5; // single center: fall back to a unit-box scale
    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) {
            total += std::sqrt(sq_dist(centers.row(a), centers.row(b), centers.cols));
            ++pairs;
        }
    return total / static_cast<double>(pairs);
}

RbfnModel train_rbfn(const Dataset& data, std::uint64_t seed) {
    data.validate();
    const std::size_t n = data.size(), d = data.dim();
    if (n < 2)
        throw std::invalid_argument("train_rbfn: need at least 2 samples");

    bool degenerate = true;
    for (std::size_t i = 1; i < n && degenerate; ++i)
        degenerate = sq_dist(data.points.row(0), data.points.row(i), d) == 0.0;
    if (degenerate)
        throw std::invalid_argument("train_rbfn: all training points identical");

    const auto c = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(n))));

    RbfnModel model;
    model.centers = kmeans(data.points, c, seed);
    model.spread = 2.0 * mean_center_distance(model.centers);
    if (model.spread <= 0.0) model.spread = 1e-8;

    // Gaussian design matrix with a trailing bias column
    Matrix phi(n, c + 1);
    const double denom = 2.0 * model.spread * model.spread;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < c; ++j)
            phi(i, j) = std::exp(-sq_dist(data.points.row(i), model.centers.row(j), d) / denom);
        phi(i, c) = 1.0;
    }

    auto solution = ridge_least_squares(phi, data.targets, 1e-8);
    model.bias = solution.back();
    solution.pop_back();
    model.weights = std::move(solution);
    return model;
}

double predict_rbfn(const RbfnModel& model, std::span<const double> x) {
    if (x.size() != model.dim())
        throw std::invalid_argument("predict_rbfn: point dimension mismatch");
    const double denom = 2.0 * model.spread * model.spread;
    double y = model.bias;
    for (std::size_t c = 0; c < model.centers.rows; ++c)
        y += model.weights[c] *
             std::exp(-sq_dist(x.data(), model.centers.row(c), model.dim()) / denom);
    return y;
}

std::vector<double> predict_rbfn(const RbfnModel& model, const Matrix& points) {
    std::vector<double> out(points.rows);
    for (std::size_t i = 0; i < points.rows; ++i)
        out[i] = predict_rbfn(model, std::span<const double>(points.row(i), points.cols));
    return out;
}

EnsembleModel train_ensemble(const Dataset& data, std::size_t members,
                             std::uint64_t seed) {
    if (members == 0)
        throw std::invalid_argument("train_ensemble: need at least one member");
    data.validate();
    const std::size_t n = data.size(), d = data.dim();

    EnsembleModel ensemble;
    ensemble.members.reserve(members);
    auto rng = make_engine(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);

    for (std::size_t m = 0; m < members; ++m) {
        Dataset boot;
        boot.points = Matrix(n, d);
        boot.targets.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t src = pick(rng);
            for (std::size_t j = 0; j < d; ++j) boot.points(i, j) = data.points(src, j);
            boot.targets[i] = data.targets[src];
        }
        ensemble.members.push_back(train_rbfn(boot, sub_seed(seed, "member/" + std::to_string(m))));
    }
    return ensemble;
}

double predict_ensemble(const EnsembleModel& model, std::span<const double> x) {
    if (model.members.empty())
        throw std::invalid_argument("predict_ensemble: empty ensemble");
    double s = 0.0;
    for (const auto& member : model.members) s += predict_rbfn(member, x);
    return s / static_cast<double>(model.members.size());
}

std::vector<double> predict_ensemble(const EnsembleModel& model, const Matrix& points) {
    std::vector<double> out(points.rows);
    for (std::size_t i = 0; i < points.rows; ++i)
        out[i] = predict_ensemble(model, std::span<const double>(points.row(i), points.cols));
    return out;
}

std::string rbfn_to_json(const RbfnModel& model) {
    nlohmann::json j;
    j["kind"] = "rbfn";
    j["dim"] = model.centers.cols;
    j["centers"] = model.centers.data; // row-major, centers x dim
    j["n_centers"] = model.centers.rows;
    j["spread"] = model.spread;
    j["weights"] = model.weights;
    j["bias"] = model.bias;
    j["layout"] = "centers row-major (center, coordinate)";
    return j.dump(2);
}

RbfnModel rbfn_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (j.at("kind").get<std::string>() != "rbfn")
        throw std::invalid_argument("rbfn_from_json: not an rbfn document");
    RbfnModel model;
    const auto rows = j.at("n_centers").get<std::size_t>();
    const auto cols = j.at("dim").get<std::size_t>();
    model.centers = Matrix(rows, cols);
    model.centers.data = j.at("centers").get<std::vector<double>>();
    if (model.centers.data.size() != rows * cols)
        throw std::invalid_argument("rbfn_from_json: centers size mismatch");
    model.spread = j.at("spread").get<double>();
    model.weights = j.at("weights").get<std::vector<double>>();
    model.bias = j.at("bias").get<double>();
    return model;
}

std::string ensemble_to_json(const EnsembleModel& model) {
    nlohmann::json j;
    j["kind"] = "rbfn-ensemble";
    j["aggregation"] = "mean";
    auto& members = j["members"] = nlohmann::json::array();
    for (const auto& member : model.members)
        members.push_back(nlohmann::json::parse(rbfn_to_json(member)));
    return j.dump(2);
}

EnsembleModel ensemble_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (j.at("kind").get<std::string>() != "rbfn-ensemble")
        throw std::invalid_argument("ensemble_from_json: not an ensemble document");
    EnsembleModel model;
    for (const auto& member : j.at("members"))
        model.members.push_back(rbfn_from_json(member.dump()));
    if (model.members.empty())
        throw std::invalid_argument("ensemble_from_json: no members");
    return model;
}

} // namespace icnopt
