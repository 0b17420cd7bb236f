#ifndef ICNOPT_LINALG_HPP
#define ICNOPT_LINALG_HPP

#include <vector>

#include "icnopt/matrix.hpp"

namespace icnopt {

/// Minimizes ||A w - b||^2 + ridge * ||w'||^2 via Householder QR of the
/// stacked system [A; sqrt(ridge) I]. By default the last coefficient (a
/// bias column, by convention) is excluded from the penalty. With ridge = 0
/// the system must not be underdetermined.
std::vector<double> ridge_least_squares(const Matrix& a,
                                        const std::vector<double>& b,
                                        double ridge, bool penalize_last = false);

} // namespace icnopt

#endif
