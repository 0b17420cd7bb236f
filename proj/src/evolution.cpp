#include "icnopt/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "icnopt/rng.hpp"

namespace icnopt {

EaConfig EaConfig::resolved(std::size_t dim) const {
    EaConfig out = *this;
    if (out.pop_size == 0) {
        out.pop_size = 11 * dim;
        if (out.pop_size % 2 == 1) out.pop_size += 1;
    }
    if (out.p_mutation == 0.0) out.p_mutation = 1.0 / static_cast<double>(dim);
    out.validate();
    return out;
}

void EaConfig::validate() const {
    if (pop_size < 2 || pop_size % 2 != 0)
        throw std::invalid_argument("ea config: pop_size must be even and >= 2");
    if (generations == 0)
        throw std::invalid_argument("ea config: generations must be >= 1");
    if (p_crossover < 0.0 || p_crossover > 1.0 || p_mutation < 0.0 || p_mutation > 1.0)
        throw std::invalid_argument("ea config: probabilities must be in [0,1]");
    if (eta_c <= 0.0 || eta_m <= 0.0)
        throw std::invalid_argument("ea config: distribution indices must be > 0");
}

static double clip01(double v) { return std::min(1.0, std::max(0.0, v)); }

std::pair<std::vector<double>, std::vector<double>>
sbx(const std::vector<double>& p1, const std::vector<double>& p2, double eta_c,
    std::mt19937_64& rng) {
    if (p1.size() != p2.size())
        throw std::invalid_argument("sbx: parent length mismatch");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> c1(p1.size()), c2(p1.size());
    for (std::size_t j = 0; j < p1.size(); ++j) {
        const double u = unit(rng);
        const double beta = u <= 0.5
                                ? std::pow(2.0 * u, 1.0 / (eta_c + 1.0))
                                : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta_c + 1.0));
        // 0.5[(1 +- beta) p1 + (1 -+ beta) p2], written so identical parents
        // reproduce exactly
        const double mid = 0.5 * (p1[j] + p2[j]);
        const double half_span = 0.5 * beta * (p1[j] - p2[j]);
        c1[j] = clip01(mid + half_span);
        c2[j] = clip01(mid - half_span);
    }
    return {std::move(c1), std::move(c2)};
}

std::vector<double> poly_mutate(const std::vector<double>& genome, double p_m,
                                double eta_m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> out = genome;
    const double mut_pow = 1.0 / (eta_m + 1.0);
    for (double& y : out) {
        if (unit(rng) > p_m) continue;
        // bounds are fixed to [0,1], so delta1 = y and delta2 = 1 - y
        const double u = unit(rng);
        double deltaq;
        if (u <= 0.5) {
            const double xy = 1.0 - y;
            const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta_m + 1.0);
            deltaq = std::pow(val, mut_pow) - 1.0;
        } else {
            const double xy = y;
            const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta_m + 1.0);
            deltaq = 1.0 - std::pow(val, mut_pow);
        }
        y = clip01(y + deltaq);
    }
    return out;
}

namespace {

struct Ranked {
    double fitness;
    std::size_t index;
};

// lower fitness wins; ties broken by index so survival is deterministic and
// depends only on the fitness ordering
bool better(const Ranked& a, const Ranked& b) {
    if (a.fitness != b.fitness) return a.fitness < b.fitness;
    return a.index < b.index;
}

std::vector<double> evaluate_batch(const BatchSurrogate& surrogate, const Matrix& pop) {
    auto fitness = surrogate(pop);
    if (fitness.size() != pop.rows)
        throw std::runtime_error("evolve: surrogate returned wrong batch size");
    for (double f : fitness)
        if (!std::isfinite(f))
            throw std::runtime_error("evolve: surrogate returned a non-finite fitness");
    return fitness;
}

} // namespace

EvolveResult evolve(const BatchSurrogate& surrogate, const EaConfig& raw_cfg,
                    const Matrix& init) {
    if (init.rows == 0 || init.cols == 0)
        throw std::invalid_argument("evolve: empty initial population");
    const std::size_t d = init.cols;
    const EaConfig cfg = raw_cfg.resolved(d);
    auto rng = make_engine(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // initial population: init rows, cycled if too few, truncated if too many
    Matrix pop(cfg.pop_size, d);
    for (std::size_t i = 0; i < cfg.pop_size; ++i)
        for (std::size_t j = 0; j < d; ++j)
            pop(i, j) = clip01(init(i % init.rows, j));

    std::vector<double> fitness = evaluate_batch(surrogate, pop);

    EvolveResult result;
    auto record_best = [&]() {
        std::size_t best = 0;
        for (std::size_t i = 1; i < cfg.pop_size; ++i)
            if (fitness[i] < fitness[best]) best = i;
        result.best_history.push_back(fitness[best]);
        result.best_genomes.push_back(pop.row_vec(best));
    };
    record_best();

    std::uniform_int_distribution<std::size_t> pick(0, cfg.pop_size - 1);
    auto tournament = [&]() {
        const std::size_t a = pick(rng), b = pick(rng);
        if (fitness[a] != fitness[b]) return fitness[a] < fitness[b] ? a : b;
        return std::min(a, b);
    };

    for (std::size_t gen = 0; gen < cfg.generations; ++gen) {
        Matrix offspring(cfg.pop_size, d);
        for (std::size_t pair = 0; pair < cfg.pop_size / 2; ++pair) {
            const auto parent1 = pop.row_vec(tournament());
            const auto parent2 = pop.row_vec(tournament());

            std::vector<double> c1, c2;
            if (unit(rng) <= cfg.p_crossover) {
                std::tie(c1, c2) = sbx(parent1, parent2, cfg.eta_c, rng);
            } else {
                c1 = parent1;
                c2 = parent2;
            }
            c1 = poly_mutate(c1, cfg.p_mutation, cfg.eta_m, rng);
            c2 = poly_mutate(c2, cfg.p_mutation, cfg.eta_m, rng);
            for (std::size_t j = 0; j < d; ++j) {
                offspring(2 * pair, j) = c1[j];
                offspring(2 * pair + 1, j) = c2[j];
            }
        }

        const std::vector<double> off_fitness = evaluate_batch(surrogate, offspring);

        // (mu+lambda) truncation over parents and offspring
        std::vector<Ranked> ranked;
        ranked.reserve(2 * cfg.pop_size);
        for (std::size_t i = 0; i < cfg.pop_size; ++i)
            ranked.push_back({fitness[i], i});
        for (std::size_t i = 0; i < cfg.pop_size; ++i)
            ranked.push_back({off_fitness[i], cfg.pop_size + i});
        std::sort(ranked.begin(), ranked.end(), better);

        Matrix next(cfg.pop_size, d);
        std::vector<double> next_fitness(cfg.pop_size);
        for (std::size_t i = 0; i < cfg.pop_size; ++i) {
            const auto& pickd = ranked[i];
            const Matrix& src = pickd.index < cfg.pop_size ? pop : offspring;
            const std::size_t row = pickd.index < cfg.pop_size
                                        ? pickd.index
                                        : pickd.index - cfg.pop_size;
            for (std::size_t j = 0; j < d; ++j) next(i, j) = src(row, j);
            next_fitness[i] = pickd.fitness;
        }
        pop = std::move(next);
        fitness = std::move(next_fitness);
        record_best();
    }

    result.best_genome = result.best_genomes.back();
    result.best_fitness = result.best_history.back();
    return result;
}

} // namespace icnopt
