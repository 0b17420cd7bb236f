#include "icnopt/sampling.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "icnopt/rng.hpp"

namespace icnopt {

SampleSet lhs(std::size_t n, std::size_t d, std::uint64_t seed) {
    if (n == 0 || d == 0)
        throw std::invalid_argument("lhs: n and d must be positive");

    auto rng = make_engine(seed);
    std::uniform_real_distribution<double> jitter(0.0, 1.0);

    SampleSet set;
    set.seed = seed;
    set.points = Matrix(n, d);

    std::vector<std::size_t> strata(n);
    for (std::size_t j = 0; j < d; ++j) {
        std::iota(strata.begin(), strata.end(), std::size_t{0});
        std::shuffle(strata.begin(), strata.end(), rng);
        for (std::size_t i = 0; i < n; ++i) {
            // uniform jitter inside the assigned stratum, never touching 1.0
            double u = jitter(rng);
            if (u >= 1.0) u = std::nextafter(1.0, 0.0);
            set.points(i, j) = (static_cast<double>(strata[i]) + u) / static_cast<double>(n);
        }
    }
    return set;
}

} // namespace icnopt
