#ifndef ICNOPT_RBFN_HPP
#define ICNOPT_RBFN_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "icnopt/matrix.hpp"

namespace icnopt {

/// Gaussian RBF network: C = ceil(sqrt(N)) centers from k-means, one shared
/// spread equal to twice the mean pairwise center distance, linear output
/// weights plus bias from a regularized least-squares solve.
struct RbfnModel {
    Matrix centers;
    double spread = 1.0;
    std::vector<double> weights;
    double bias = 0.0;

    std::size_t dim() const { return centers.cols; }
};

/// Mean-aggregated bag of RBFNs trained on bootstrap resamples.
struct EnsembleModel {
    std::vector<RbfnModel> members;
};

Matrix kmeans(const Matrix& points, std::size_t k, std::uint64_t seed,
              std::size_t max_iters = 100);

RbfnModel train_rbfn(const Dataset& data, std::uint64_t seed);

double predict_rbfn(const RbfnModel& model, std::span<const double> x);
std::vector<double> predict_rbfn(const RbfnModel& model, const Matrix& points);

EnsembleModel train_ensemble(const Dataset& data, std::size_t members,
                             std::uint64_t seed);

double predict_ensemble(const EnsembleModel& model, std::span<const double> x);
std::vector<double> predict_ensemble(const EnsembleModel& model, const Matrix& points);

std::string rbfn_to_json(const RbfnModel& model);
RbfnModel rbfn_from_json(const std::string& text);

std::string ensemble_to_json(const EnsembleModel& model);
EnsembleModel ensemble_from_json(const std::string& text);

} // namespace icnopt

#endif
