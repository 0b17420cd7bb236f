#ifndef ICNOPT_EVOLUTION_HPP
#define ICNOPT_EVOLUTION_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "icnopt/matrix.hpp"

namespace icnopt {

/// Real-coded EA settings. Zeros for pop_size / p_mutation mean the
/// dimension-derived defaults 11d (rounded up to even) and 1/d.
struct EaConfig {
    std::size_t pop_size = 0;
    std::size_t generations = 200;
    double p_crossover = 1.0;
    double p_mutation = 0.0;
    double eta_c = 15.0;
    double eta_m = 15.0;
    std::uint64_t seed = 0;

    EaConfig resolved(std::size_t dim) const;
    void validate() const;
};

/// Evaluates a whole population at once; rows are individuals in canonical
/// (index) order.
using BatchSurrogate = std::function<std::vector<double>(const Matrix&)>;

struct EvolveResult {
    std::vector<double> best_genome;
    double best_fitness = 0.0;
    std::vector<double> best_history;          // generation-best fitness
    std::vector<std::vector<double>> best_genomes; // generation-best genome
};

/// SBX on a gene pair; children are clipped to [0,1] afterward.
std::pair<std::vector<double>, std::vector<double>>
sbx(const std::vector<double>& p1, const std::vector<double>& p2, double eta_c,
    std::mt19937_64& rng);

/// Bounded polynomial mutation on [0,1], applied per gene with probability p_m.
std::vector<double> poly_mutate(const std::vector<double>& genome, double p_m,
                                double eta_m, std::mt19937_64& rng);

/// Binary-tournament mating, SBX + polynomial mutation, (mu+lambda)
/// truncation survival. init rows seed the population (cycled/truncated to
/// pop_size); fitness is surrogate-only and lower is better.
EvolveResult evolve(const BatchSurrogate& surrogate, const EaConfig& cfg,
                    const Matrix& init);

} // namespace icnopt

#endif
