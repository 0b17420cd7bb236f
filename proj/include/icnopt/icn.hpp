#ifndef ICNOPT_ICN_HPP
#define ICNOPT_ICN_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "icnopt/grid.hpp"
#include "icnopt/matrix.hpp"

namespace icnopt {

/// Hyperparameters of the convolutional surrogate. channels == 0 means
/// "8 times the input dimension", resolved when training starts.
struct IcnConfig {
    std::size_t n_layers = 3;
    std::size_t channels = 0;
    std::size_t kernel_side = 3;
    std::size_t image_side = 10;
    double learn_rate = 1e-3;
    std::size_t iterations = 200;
    double grad_clip = 10.0;
    bool mask_padding = true;
    bool target_standardize = true;
    std::uint64_t seed = 0;

    IcnConfig resolved(std::size_t dim) const;
    void validate() const;
};

/// Learnable quantities: one kernel per (channel, layer) plus the channel
/// coefficients applied by the final 1x1 reduction.
struct IcnParams {
    std::vector<std::vector<Kernel3>> kernels; // [channel][layer]
    std::vector<double> coeffs;

    std::size_t n_channels() const { return kernels.size(); }
    std::size_t n_layers() const { return kernels.empty() ? 0 : kernels.front().size(); }
};

/// A fixed analytic feature: frozen per-layer kernels whose per-pixel
/// product is scaled by the single learnable coefficient.
struct CompiledTerm {
    std::vector<Kernel3> layer_kernels;
    double coeff = 1.0;
};

/// Samples packed row-major into d-channel S x S images, padded with zeros.
/// Pixel i of the flattened batch holds sample order[i]; mask marks which
/// pixels carry real samples.
struct ImageBatch {
    std::vector<Grid3> images;
    std::vector<std::uint8_t> mask;    // flat: image * S^2 + pixel
    std::vector<std::size_t> order;    // flat pixel -> original sample index
    std::size_t n_samples = 0;
    std::size_t image_side = 0;
    std::size_t dim = 0;

    std::size_t total_pixels() const { return images.size() * image_side * image_side; }
};

/// Affine target normalization; std_dev falls back to 1 for constant targets.
struct TargetScaler {
    double mean = 0.0;
    double std_dev = 1.0;

    double to_model(double y) const { return (y - mean) / std_dev; }
    double to_target(double z) const { return z * std_dev + mean; }
};

struct IcnModel {
    IcnConfig config; // resolved
    IcnParams params;
    TargetScaler scaler;
    std::vector<CompiledTerm> terms;
};

struct IcnGradients {
    std::vector<std::vector<Kernel3>> kernels;
    std::vector<double> coeffs;
    std::vector<double> term_coeffs;
};

struct IcnTrainResult {
    IcnModel model;
    std::vector<double> loss_curve; // masked train RMSE in original units,
                                    // entry k taken at the start of step k
};

/// Thrown when training produces a non-finite loss.
struct TrainingDiverged : std::runtime_error {
    std::size_t iteration;
    explicit TrainingDiverged(std::size_t iter);
};

ImageBatch pack_samples(const Matrix& samples, const IcnConfig& cfg);

/// Per-pixel output of the whole network (base channels plus terms),
/// flattened over images.
std::vector<double> forward(const IcnParams& params, const ImageBatch& batch,
                            const std::vector<CompiledTerm>& terms = {});

double loss_masked_mse(const std::vector<double>& pred,
                       const std::vector<double>& targets,
                       const std::vector<std::uint8_t>& mask,
                       bool mask_padding = true);

IcnGradients gradients(const IcnParams& params, const ImageBatch& batch,
                       const std::vector<double>& targets,
                       const std::vector<std::uint8_t>& mask,
                       bool mask_padding = true,
                       const std::vector<CompiledTerm>& terms = {});

/// Called once per iteration with the in-progress model (parameters as of
/// the start of that step), e.g. to track held-out error.
using IterationObserver = std::function<void(std::size_t iteration, const IcnModel&)>;

IcnTrainResult train_icn(const Dataset& data, const IcnConfig& cfg,
                         const std::vector<CompiledTerm>& terms = {},
                         const IterationObserver& observer = {});

std::vector<double> predict(const IcnModel& model, const Matrix& points);

/// Masked RMSE of the model on a labelled point set, in original target
/// units; uses the model's own packing and padding policy.
double eval_rmse(const IcnModel& model, const Dataset& data);

std::string icn_to_json(const IcnModel& model);
IcnModel icn_from_json(const std::string& text);

} // namespace icnopt

#endif
