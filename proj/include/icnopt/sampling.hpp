#ifndef ICNOPT_SAMPLING_HPP
#define ICNOPT_SAMPLING_HPP

#include <cstdint>

#include "icnopt/matrix.hpp"

namespace icnopt {

/// Latin hypercube design on [0,1)^d: per dimension, exactly one point in
/// each of the n strata [k/n, (k+1)/n).
struct SampleSet {
    Matrix points;
    std::uint64_t seed = 0;
};

SampleSet lhs(std::size_t n, std::size_t d, std::uint64_t seed);

} // namespace icnopt

#endif
