#include "icnopt/knowledge.hpp"

#include <cmath>
#include <stdexcept>

namespace icnopt {

std::vector<Kernel3> compile_term(const KnowledgeTerm& term, std::size_t dim,
                                  std::size_t kernel_side) {
    if (term.layers.empty())
        throw std::invalid_argument("compile_term: term has no layers");
    std::vector<Kernel3> kernels;
    kernels.reserve(term.layers.size());
    const std::size_t center = kernel_side / 2;
    for (const auto& form : term.layers) {
        if (form.center_weights.size() != dim)
            throw std::invalid_argument("compile_term: form length does not match dim");
        bool any = false;
        for (double w : form.center_weights) any = any || w != 0.0;
        if (!any)
            throw std::invalid_argument("compile_term: all-zero linear form");
        Kernel3 k(dim, kernel_side, kernel_side);
        for (std::size_t ch = 0; ch < dim; ++ch)
            k.at(ch, center, center) = form.center_weights[ch];
        kernels.push_back(std::move(k));
    }
    return kernels;
}

CompiledTerm compile(const KnowledgeTerm& term, std::size_t dim,
                     std::size_t kernel_side) {
    return CompiledTerm{compile_term(term, dim, kernel_side), term.coeff};
}

std::vector<CompiledTerm> compile_all(const std::vector<KnowledgeTerm>& terms,
                                      std::size_t dim, std::size_t kernel_side) {
    std::vector<CompiledTerm> out;
    out.reserve(terms.size());
    for (const auto& t : terms) out.push_back(compile(t, dim, kernel_side));
    return out;
}

std::vector<KnowledgeTerm> weak_rosenbrock_term(std::size_t dim) {
    if (dim < 2)
        throw std::invalid_argument("weak_rosenbrock_term: need dim >= 2");
    std::vector<KnowledgeTerm> terms;
    for (std::size_t i = 0; i + 1 < dim; ++i) {
        LinearFormSpec form;
        form.center_weights.assign(dim, 0.0);
        form.center_weights[i + 1] = 1.0;
        terms.push_back(KnowledgeTerm{{form, form}, 1.0});
    }
    return terms;
}

std::vector<KnowledgeTerm> strong_rosenbrock_term(std::size_t dim,
                                                  StrongTermVariant variant) {
    if (dim < 2)
        throw std::invalid_argument("strong_rosenbrock_term: need dim >= 2");
    std::vector<KnowledgeTerm> terms;
    for (std::size_t i = 0; i + 1 < dim; ++i) {
        LinearFormSpec form;
        form.center_weights.assign(dim, 0.0);
        form.center_weights[i] = -1.0;
        form.center_weights[i + 1] = 1.0;
        if (variant == StrongTermVariant::Squared)
            terms.push_back(KnowledgeTerm{{form, form}, 1.0});
        else
            terms.push_back(KnowledgeTerm{{form}, 1.0});
    }
    return terms;
}

IcnTrainResult train_augmented(const Dataset& data, const IcnConfig& cfg,
                               const std::vector<KnowledgeTerm>& terms,
                               const IterationObserver& observer) {
    return train_icn(data, cfg, compile_all(terms, data.dim(), cfg.kernel_side), observer);
}

} // namespace icnopt
