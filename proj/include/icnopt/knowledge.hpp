#ifndef ICNOPT_KNOWLEDGE_HPP
#define ICNOPT_KNOWLEDGE_HPP

#include <vector>

#include "icnopt/icn.hpp"

namespace icnopt {

/// One linear form over the input channels: the compiled kernel carries
/// these weights at its center tap and zeros everywhere else, so a single
/// convolution reproduces w . x per pixel.
struct LinearFormSpec {
    std::vector<double> center_weights;
};

/// An analytic monomial: the product of its layers' linear forms, scaled by
/// one learnable coefficient. Kernels compiled from it stay frozen during
/// training; only the coefficient receives gradients.
struct KnowledgeTerm {
    std::vector<LinearFormSpec> layers;
    double coeff = 1.0;
};

/// Strong guidance for the valley-shaped benchmark comes in two readings:
/// the product construction sum (x_{i+1} - x_i)^2 (default) and the plain
/// unsquared sum (x_{i+1} - x_i).
enum class StrongTermVariant { Squared, Literal };

std::vector<Kernel3> compile_term(const KnowledgeTerm& term, std::size_t dim,
                                  std::size_t kernel_side);

CompiledTerm compile(const KnowledgeTerm& term, std::size_t dim,
                     std::size_t kernel_side);
std::vector<CompiledTerm> compile_all(const std::vector<KnowledgeTerm>& terms,
                                      std::size_t dim, std::size_t kernel_side);

/// sum_{i=1..d-1} x_{i+1}^2 as one two-layer term per i.
std::vector<KnowledgeTerm> weak_rosenbrock_term(std::size_t dim);

/// Default: sum_{i=1..d-1} (x_{i+1} - x_i)^2, each i a product of two
/// identical (-1 at i, +1 at i+1) forms. The Literal variant is the
/// one-layer sum (x_{i+1} - x_i).
std::vector<KnowledgeTerm> strong_rosenbrock_term(
    std::size_t dim, StrongTermVariant variant = StrongTermVariant::Squared);

/// Joint training of base network and term coefficients; term kernels are
/// compiled once and never updated. With no terms this is exactly the plain
/// trainer.
IcnTrainResult train_augmented(const Dataset& data, const IcnConfig& cfg,
                               const std::vector<KnowledgeTerm>& terms,
                               const IterationObserver& observer = {});

} // namespace icnopt

#endif
