#include "icnopt/icn.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "icnopt/rng.hpp"

#include <json.hpp>

namespace icnopt {

TrainingDiverged::TrainingDiverged(std::size_t iter)
    : std::runtime_error("icn training diverged at iteration " + std::to_string(iter)),
      iteration(iter) {}

IcnConfig IcnConfig::resolved(std::size_t dim) const {
    IcnConfig out = *this;
    if (out.channels == 0) out.channels = 8 * dim;
    out.validate();
    return out;
}

void IcnConfig::validate() const {
    if (n_layers == 0) throw std::invalid_argument("icn config: n_layers must be >= 1");
    if (kernel_side % 2 == 0 || kernel_side == 0)
        throw std::invalid_argument("icn config: kernel_side must be odd");
    if (image_side == 0) throw std::invalid_argument("icn config: image_side must be >= 1");
    if (learn_rate <= 0.0) throw std::invalid_argument("icn config: learn_rate must be > 0");
    if (iterations == 0) throw std::invalid_argument("icn config: iterations must be >= 1");
    if (grad_clip <= 0.0) throw std::invalid_argument("icn config: grad_clip must be > 0");
}

ImageBatch pack_samples(const Matrix& samples, const IcnConfig& cfg) {
    if (samples.rows == 0 || samples.cols == 0)
        throw std::invalid_argument("pack_samples: empty sample matrix");
    const std::size_t n = samples.rows, d = samples.cols, s = cfg.image_side;
    const std::size_t per_image = s * s;
    const std::size_t n_images = (n + per_image - 1) / per_image;

    ImageBatch batch;
    batch.n_samples = n;
    batch.image_side = s;
    batch.dim = d;
    batch.images.assign(n_images, Grid3(d, s, s));
    batch.mask.assign(n_images * per_image, 0);
    batch.order.assign(n_images * per_image, 0);

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t img = i / per_image;
        const std::size_t pix = i % per_image;
        const std::size_t r = pix / s, c = pix % s;
        for (std::size_t ch = 0; ch < d; ++ch)
            batch.images[img].at(ch, r, c) = samples(i, ch);
        batch.mask[i] = 1;
        batch.order[i] = i;
    }
    return batch;
}

namespace {

// Per-image feature maps: A[c][l] = conv(X, K^(c,l)), P[c] = prod_l A[c][l],
// and the same for each knowledge term.
struct ForwardMaps {
    std::vector<std::vector<Grid3>> layer_maps;  // [channel][layer]
    std::vector<Grid3> products;                 // [channel]
    std::vector<std::vector<Grid3>> term_layers; // [term][layer]
    std::vector<Grid3> term_products;            // [term]
};

void check_depth(const IcnParams& params, const ImageBatch& batch) {
    for (const auto& per_channel : params.kernels)
        for (const auto& k : per_channel)
            if (k.depth != batch.dim)
                throw std::invalid_argument("icn forward: kernel depth does not match batch channels");
}

void compute_maps(const IcnParams& params, const std::vector<CompiledTerm>& terms,
                  const Grid3& image, ForwardMaps& maps) {
    const std::size_t nc = params.n_channels(), nl = params.n_layers();
    const std::size_t h = image.height, w = image.width;

    if (maps.layer_maps.size() != nc) {
        maps.layer_maps.assign(nc, std::vector<Grid3>(nl, Grid3(1, h, w)));
        maps.products.assign(nc, Grid3(1, h, w));
        maps.term_layers.clear();
        maps.term_products.clear();
        for (const auto& term : terms) {
            maps.term_layers.emplace_back(term.layer_kernels.size(), Grid3(1, h, w));
            maps.term_products.emplace_back(1, h, w);
        }
    }

    for (std::size_t c = 0; c < nc; ++c) {
        for (std::size_t l = 0; l < nl; ++l)
            conv2d_same_into(image, params.kernels[c][l], maps.layer_maps[c][l]);
        maps.products[c] = maps.layer_maps[c][0];
        for (std::size_t l = 1; l < nl; ++l)
            hadamard_inplace(maps.products[c], maps.layer_maps[c][l]);
    }
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const auto& kernels = terms[t].layer_kernels;
        for (std::size_t l = 0; l < kernels.size(); ++l)
            conv2d_same_into(image, kernels[l], maps.term_layers[t][l]);
        maps.term_products[t] = maps.term_layers[t][0];
        for (std::size_t l = 1; l < kernels.size(); ++l)
            hadamard_inplace(maps.term_products[t], maps.term_layers[t][l]);
    }
}

void predictions_from_maps(const IcnParams& params, const std::vector<CompiledTerm>& terms,
                           const ForwardMaps& maps, double* out, std::size_t pixels) {
    for (std::size_t p = 0; p < pixels; ++p) {
        double acc = 0.0;
        for (std::size_t c = 0; c < params.coeffs.size(); ++c)
            acc += params.coeffs[c] * maps.products[c].data[p];
        for (std::size_t t = 0; t < terms.size(); ++t)
            acc += terms[t].coeff * maps.term_products[t].data[p];
        out[p] = acc;
    }
}

// Leave-one-out products across layers via prefix/suffix passes.
void leave_one_out(const std::vector<Grid3>& layers, std::vector<Grid3>& loo) {
    const std::size_t nl = layers.size();
    const std::size_t px = layers.front().data.size();
    if (loo.size() != nl) loo.assign(nl, Grid3(1, layers.front().height, layers.front().width));

    if (nl == 1) {
        for (double& v : loo[0].data) v = 1.0;
        return;
    }
    // prefix products stored forward, then one backward sweep multiplies in
    // the suffix.
    for (std::size_t p = 0; p < px; ++p) loo[0].data[p] = 1.0;
    for (std::size_t l = 1; l < nl; ++l)
        for (std::size_t p = 0; p < px; ++p)
            loo[l].data[p] = loo[l - 1].data[p] * layers[l - 1].data[p];
    std::vector<double> suffix(px, 1.0);
    for (std::size_t l = nl; l-- > 0;) {
        for (std::size_t p = 0; p < px; ++p) loo[l].data[p] *= suffix[p];
        if (l > 0)
            for (std::size_t p = 0; p < px; ++p) suffix[p] *= layers[l].data[p];
    }
}

std::size_t counted_pixels(const ImageBatch& batch, bool mask_padding) {
    if (!mask_padding) return batch.total_pixels();
    std::size_t count = 0;
    for (auto m : batch.mask) count += m;
    return count;
}

} // namespace

std::vector<double> forward(const IcnParams& params, const ImageBatch& batch,
                            const std::vector<CompiledTerm>& terms) {
    check_depth(params, batch);
    const std::size_t per_image = batch.image_side * batch.image_side;
    std::vector<double> out(batch.total_pixels(), 0.0);
    ForwardMaps maps;
    for (std::size_t img = 0; img < batch.images.size(); ++img) {
        compute_maps(params, terms, batch.images[img], maps);
        predictions_from_maps(params, terms, maps, out.data() + img * per_image, per_image);
    }
    return out;
}

double loss_masked_mse(const std::vector<double>& pred,
                       const std::vector<double>& targets,
                       const std::vector<std::uint8_t>& mask,
                       bool mask_padding) {
    if (pred.size() != targets.size() || pred.size() != mask.size())
        throw std::invalid_argument("loss_masked_mse: shape mismatch");
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t p = 0; p < pred.size(); ++p) {
        if (mask_padding && !mask[p]) continue;
        const double r = pred[p] - targets[p];
        acc += r * r;
        ++count;
    }
    if (count == 0)
        throw std::invalid_argument("loss_masked_mse: no pixels selected");
    return acc / static_cast<double>(count);
}

namespace {

// Term kernels are frozen, so each term's per-pixel product is a fixed
// feature; computed once per training run.
struct TermFeatures {
    std::vector<std::vector<double>> values; // [term][flat pixel]
    std::vector<double> curvature;           // 2 * mean T^2 over counted pixels
};

TermFeatures compute_term_features(const std::vector<CompiledTerm>& terms,
                                   const ImageBatch& batch, bool mask_padding) {
    const std::size_t per_image = batch.image_side * batch.image_side;
    const std::size_t m = counted_pixels(batch, mask_padding);

    TermFeatures feats;
    feats.values.assign(terms.size(), std::vector<double>(batch.total_pixels(), 0.0));
    feats.curvature.assign(terms.size(), 0.0);

    Grid3 conv(1, batch.image_side, batch.image_side);
    for (std::size_t t = 0; t < terms.size(); ++t) {
        for (std::size_t img = 0; img < batch.images.size(); ++img) {
            Grid3 product(1, batch.image_side, batch.image_side, 1.0);
            for (const auto& kernel : terms[t].layer_kernels) {
                conv2d_same_into(batch.images[img], kernel, conv);
                hadamard_inplace(product, conv);
            }
            for (std::size_t p = 0; p < per_image; ++p)
                feats.values[t][img * per_image + p] = product.data[p];
        }
        double sq = 0.0;
        for (std::size_t flat = 0; flat < batch.total_pixels(); ++flat) {
            if (mask_padding && !batch.mask[flat]) continue;
            sq += feats.values[t][flat] * feats.values[t][flat];
        }
        feats.curvature[t] = 2.0 * sq / static_cast<double>(m);
    }
    return feats;
}

// One combined pass: per-pixel loss plus gradients for every learnable
// scalar, reusing the forward maps the backward sweep needs anyway.
double forward_backward(const IcnParams& params, const ImageBatch& batch,
                        const std::vector<double>& targets,
                        const std::vector<std::uint8_t>& mask,
                        bool mask_padding,
                        const TermFeatures& feats,
                        const std::vector<double>& term_coeffs,
                        IcnGradients& grads) {
    check_depth(params, batch);
    const std::size_t nc = params.n_channels(), nl = params.n_layers();
    const std::size_t per_image = batch.image_side * batch.image_side;
    if (targets.size() != batch.total_pixels() || mask.size() != batch.total_pixels())
        throw std::invalid_argument("gradients: target/mask shape mismatch");

    const std::size_t m = counted_pixels(batch, mask_padding);
    if (m == 0) throw std::invalid_argument("gradients: no pixels selected");

    grads.kernels.assign(nc, std::vector<Kernel3>());
    for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t l = 0; l < nl; ++l)
            grads.kernels[c].push_back(Kernel3(params.kernels[c][l].depth,
                                               params.kernels[c][l].kh,
                                               params.kernels[c][l].kw));
    grads.coeffs.assign(nc, 0.0);
    grads.term_coeffs.assign(term_coeffs.size(), 0.0);

    ForwardMaps maps;
    std::vector<Grid3> loo;
    std::vector<double> pred(per_image);
    Grid3 upstream(1, batch.image_side, batch.image_side);
    double sq_err = 0.0;

    for (std::size_t img = 0; img < batch.images.size(); ++img) {
        const Grid3& image = batch.images[img];
        compute_maps(params, {}, image, maps);
        predictions_from_maps(params, {}, maps, pred.data(), per_image);
        for (std::size_t t = 0; t < term_coeffs.size(); ++t)
            for (std::size_t p = 0; p < per_image; ++p)
                pred[p] += term_coeffs[t] * feats.values[t][img * per_image + p];

        // dL/dpred, zero on excluded pixels
        std::vector<double> g(per_image, 0.0);
        for (std::size_t p = 0; p < per_image; ++p) {
            const std::size_t flat = img * per_image + p;
            if (mask_padding && !mask[flat]) continue;
            const double r = pred[p] - targets[flat];
            sq_err += r * r;
            g[p] = 2.0 * r / static_cast<double>(m);
        }

        for (std::size_t c = 0; c < nc; ++c) {
            double gc = 0.0;
            for (std::size_t p = 0; p < per_image; ++p)
                gc += g[p] * maps.products[c].data[p];
            grads.coeffs[c] += gc;

            leave_one_out(maps.layer_maps[c], loo);
            for (std::size_t l = 0; l < nl; ++l) {
                for (std::size_t p = 0; p < per_image; ++p)
                    upstream.data[p] = g[p] * params.coeffs[c] * loo[l].data[p];
                conv2d_weight_grad(image, upstream, grads.kernels[c][l]);
            }
        }
        for (std::size_t t = 0; t < term_coeffs.size(); ++t) {
            double gt = 0.0;
            for (std::size_t p = 0; p < per_image; ++p)
                gt += g[p] * feats.values[t][img * per_image + p];
            grads.term_coeffs[t] += gt;
        }
    }
    return sq_err / static_cast<double>(m);
}

} // namespace

IcnGradients gradients(const IcnParams& params, const ImageBatch& batch,
                       const std::vector<double>& targets,
                       const std::vector<std::uint8_t>& mask,
                       bool mask_padding,
                       const std::vector<CompiledTerm>& terms) {
    const auto feats = compute_term_features(terms, batch, mask_padding);
    std::vector<double> coeffs(terms.size());
    for (std::size_t t = 0; t < terms.size(); ++t) coeffs[t] = terms[t].coeff;
    IcnGradients grads;
    forward_backward(params, batch, targets, mask, mask_padding, feats, coeffs, grads);
    return grads;
}

namespace {

// Flat view over the base network's learnable scalars (kernels + channel
// coefficients) for the optimizer and clipping.
template <typename ParamsT, typename Fn>
void for_each_base_param(ParamsT& params, Fn&& fn) {
    for (auto& per_channel : params.kernels)
        for (auto& k : per_channel)
            for (auto& w : k.weights) fn(w);
    for (auto& c : params.coeffs) fn(c);
}

struct AdamState {
    std::vector<double> m, v;
    double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    std::size_t t = 0;
};

} // namespace

IcnTrainResult train_icn(const Dataset& data, const IcnConfig& raw_cfg,
                         const std::vector<CompiledTerm>& terms,
                         const IterationObserver& observer) {
    data.validate();
    for (double v : data.points.data)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("train_icn: points must lie in [0,1]^d");

    const std::size_t d = data.dim();
    const IcnConfig cfg = raw_cfg.resolved(d);
    for (const auto& term : terms) {
        if (term.layer_kernels.empty())
            throw std::invalid_argument("train_icn: knowledge term without layers");
        for (const auto& k : term.layer_kernels)
            if (k.depth != d)
                throw std::invalid_argument("train_icn: knowledge kernel depth mismatch");
    }

    IcnModel model;
    model.config = cfg;
    model.terms = terms;

    // target scaling; the deviation is needed either way since the clip cap
    // is interpreted in standardized-target units
    double target_mean = 0.0;
    for (double y : data.targets) target_mean += y;
    target_mean /= static_cast<double>(data.targets.size());
    double target_var = 0.0;
    for (double y : data.targets) target_var += (y - target_mean) * (y - target_mean);
    target_var /= static_cast<double>(data.targets.size());
    const double target_sd = target_var > 1e-24 ? std::sqrt(target_var) : 1.0;
    if (cfg.target_standardize) {
        model.scaler.mean = target_mean;
        model.scaler.std_dev = target_sd;
    }
    const double clip_cap = cfg.grad_clip * (cfg.target_standardize ? 1.0 : target_sd);

    ImageBatch batch = pack_samples(data.points, cfg);
    std::vector<double> targets(batch.total_pixels(), 0.0);
    for (std::size_t i = 0; i < data.size(); ++i)
        targets[i] = model.scaler.to_model(data.targets[i]);

    // init: kernels U(+-1/sqrt(d L^2)), coefficients U(+-1/sqrt(N_c))
    auto rng = make_engine(cfg.seed);
    const double k_bound = 1.0 / std::sqrt(static_cast<double>(d * cfg.kernel_side * cfg.kernel_side));
    const double f_bound = 1.0 / std::sqrt(static_cast<double>(cfg.channels));
    std::uniform_real_distribution<double> k_init(-k_bound, k_bound);
    std::uniform_real_distribution<double> f_init(-f_bound, f_bound);

    model.params.kernels.assign(cfg.channels, std::vector<Kernel3>());
    for (std::size_t c = 0; c < cfg.channels; ++c)
        for (std::size_t l = 0; l < cfg.n_layers; ++l) {
            Kernel3 k(d, cfg.kernel_side, cfg.kernel_side);
            for (auto& w : k.weights) w = k_init(rng);
            model.params.kernels[c].push_back(std::move(k));
        }
    model.params.coeffs.resize(cfg.channels);
    for (auto& f : model.params.coeffs) f = f_init(rng);

    std::vector<double> term_coeffs(terms.size());
    for (std::size_t t = 0; t < terms.size(); ++t) term_coeffs[t] = terms[t].coeff;
    const auto feats = compute_term_features(terms, batch, cfg.mask_padding);

    std::size_t n_base = 0;
    for_each_base_param(model.params, [&](double&) { ++n_base; });

    AdamState adam;
    adam.m.assign(n_base, 0.0);
    adam.v.assign(n_base, 0.0);

    IcnTrainResult result;
    result.loss_curve.reserve(cfg.iterations);

    // base network trains with Adam; the linear term coefficients take
    // diagonally preconditioned gradient steps (their exact curvature is
    // 2 mean T^2), damped by the term count for joint stability
    const double term_step = terms.empty() ? 0.0 : 0.5 / static_cast<double>(terms.size());

    std::vector<double> flat_grad(n_base);
    for (std::size_t iter = 0; iter < cfg.iterations; ++iter) {
        for (std::size_t t = 0; t < terms.size(); ++t)
            model.terms[t].coeff = term_coeffs[t];

        IcnGradients grads;
        const double mse = forward_backward(model.params, batch, targets, batch.mask,
                                            cfg.mask_padding, feats, term_coeffs, grads);
        if (!std::isfinite(mse)) throw TrainingDiverged(iter);
        result.loss_curve.push_back(std::sqrt(mse) * model.scaler.std_dev);
        if (observer) observer(iter, model);

        std::size_t idx = 0;
        for_each_base_param(grads, [&](double& g) { flat_grad[idx++] = g; });

        double norm_sq = 0.0;
        for (double g : flat_grad) norm_sq += g * g;
        for (double g : grads.term_coeffs) norm_sq += g * g;
        const double norm = std::sqrt(norm_sq);
        if (!std::isfinite(norm)) throw TrainingDiverged(iter);
        const double scale = norm > clip_cap ? clip_cap / norm : 1.0;

        adam.t += 1;
        const double bc1 = 1.0 - std::pow(adam.beta1, static_cast<double>(adam.t));
        const double bc2 = 1.0 - std::pow(adam.beta2, static_cast<double>(adam.t));
        idx = 0;
        for_each_base_param(model.params, [&](double& w) {
            const double g = flat_grad[idx] * scale;
            adam.m[idx] = adam.beta1 * adam.m[idx] + (1.0 - adam.beta1) * g;
            adam.v[idx] = adam.beta2 * adam.v[idx] + (1.0 - adam.beta2) * g * g;
            const double mhat = adam.m[idx] / bc1;
            const double vhat = adam.v[idx] / bc2;
            w -= cfg.learn_rate * mhat / (std::sqrt(vhat) + adam.eps);
            ++idx;
        });
        for (std::size_t t = 0; t < terms.size(); ++t)
            term_coeffs[t] -= term_step * (grads.term_coeffs[t] * scale) /
                              std::max(feats.curvature[t], 1e-12);
    }
    for (std::size_t t = 0; t < terms.size(); ++t)
        model.terms[t].coeff = term_coeffs[t];

    result.model = std::move(model);
    return result;
}

std::vector<double> predict(const IcnModel& model, const Matrix& points) {
    if (points.cols == 0 || points.rows == 0)
        throw std::invalid_argument("predict: empty point matrix");
    ImageBatch batch = pack_samples(points, model.config);
    if (!model.params.kernels.empty() &&
        model.params.kernels.front().front().depth != batch.dim)
        throw std::invalid_argument("predict: point dimension does not match model");

    const auto raw = forward(model.params, batch, model.terms);
    std::vector<double> out(points.rows, 0.0);
    for (std::size_t p = 0; p < batch.total_pixels(); ++p)
        if (batch.mask[p]) out[batch.order[p]] = model.scaler.to_target(raw[p]);
    return out;
}

double eval_rmse(const IcnModel& model, const Dataset& data) {
    data.validate();
    ImageBatch batch = pack_samples(data.points, model.config);
    std::vector<double> targets(batch.total_pixels(), 0.0);
    for (std::size_t i = 0; i < data.size(); ++i)
        targets[i] = model.scaler.to_model(data.targets[i]);
    const auto pred = forward(model.params, batch, model.terms);
    const double mse = loss_masked_mse(pred, targets, batch.mask, model.config.mask_padding);
    return std::sqrt(mse) * model.scaler.std_dev;
}

namespace {

nlohmann::json kernel_to_json(const Kernel3& k) {
    return nlohmann::json{{"depth", k.depth}, {"kh", k.kh}, {"kw", k.kw}, {"weights", k.weights}};
}

Kernel3 kernel_from_json(const nlohmann::json& j) {
    Kernel3 k(j.at("depth").get<std::size_t>(), j.at("kh").get<std::size_t>(),
              j.at("kw").get<std::size_t>());
    k.weights = j.at("weights").get<std::vector<double>>();
    if (k.weights.size() != k.size())
        throw std::invalid_argument("kernel_from_json: weight count mismatch");
    return k;
}

} // namespace

std::string icn_to_json(const IcnModel& model) {
    nlohmann::json j;
    j["kind"] = "icn";
    j["layout"] = "kernels[channel][layer], weights (channel-major, row, col)";
    j["config"] = {{"n_layers", model.config.n_layers},
                   {"channels", model.config.channels},
                   {"kernel_side", model.config.kernel_side},
                   {"image_side", model.config.image_side},
                   {"learn_rate", model.config.learn_rate},
                   {"iterations", model.config.iterations},
                   {"grad_clip", model.config.grad_clip},
                   {"mask_padding", model.config.mask_padding},
                   {"target_standardize", model.config.target_standardize},
                   {"seed", model.config.seed}};
    j["scaler"] = {{"mean", model.scaler.mean}, {"std", model.scaler.std_dev}};
    j["coeffs"] = model.params.coeffs;
    auto& kernels = j["kernels"] = nlohmann::json::array();
    for (const auto& per_channel : model.params.kernels) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& k : per_channel) row.push_back(kernel_to_json(k));
        kernels.push_back(std::move(row));
    }
    auto& terms = j["terms"] = nlohmann::json::array();
    for (const auto& term : model.terms) {
        nlohmann::json t;
        t["coeff"] = term.coeff;
        t["layers"] = nlohmann::json::array();
        for (const auto& k : term.layer_kernels) t["layers"].push_back(kernel_to_json(k));
        terms.push_back(std::move(t));
    }
    return j.dump(2);
}

IcnModel icn_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (j.at("kind").get<std::string>() != "icn")
        throw std::invalid_argument("icn_from_json: not an icn document");

    IcnModel model;
    const auto& c = j.at("config");
    model.config.n_layers = c.at("n_layers").get<std::size_t>();
    model.config.channels = c.at("channels").get<std::size_t>();
    model.config.kernel_side = c.at("kernel_side").get<std::size_t>();
    model.config.image_side = c.at("image_side").get<std::size_t>();
    model.config.learn_rate = c.at("learn_rate").get<double>();
    model.config.iterations = c.at("iterations").get<std::size_t>();
    model.config.grad_clip = c.at("grad_clip").get<double>();
    model.config.mask_padding = c.at("mask_padding").get<bool>();
    model.config.target_standardize = c.at("target_standardize").get<bool>();
    model.config.seed = c.at("seed").get<std::uint64_t>();

    model.scaler.mean = j.at("scaler").at("mean").get<double>();
    model.scaler.std_dev = j.at("scaler").at("std").get<double>();
    model.params.coeffs = j.at("coeffs").get<std::vector<double>>();
    for (const auto& row : j.at("kernels")) {
        std::vector<Kernel3> per_channel;
        for (const auto& k : row) per_channel.push_back(kernel_from_json(k));
        model.params.kernels.push_back(std::move(per_channel));
    }
    for (const auto& t : j.at("terms")) {
        CompiledTerm term;
        term.coeff = t.at("coeff").get<double>();
        for (const auto& k : t.at("layers")) term.layer_kernels.push_back(kernel_from_json(k));
        model.terms.push_back(std::move(term));
    }
    return model;
}

} // namespace icnopt
