#ifndef ICNOPT_BENCHMARKS_HPP
#define ICNOPT_BENCHMARKS_HPP

#include <span>
#include <string>
#include <vector>

namespace icnopt {

/// Rosenbrock comes in two readings: the canonical valley form
/// 100(x_{i+1}-x_i^2)^2 + (1-x_i)^2 (default) and a variant whose second
/// term is left unsquared, 100(x_{i+1}-x_i^2) + (1-x_i)^2.
enum class RosenbrockVariant { Canonical, Unsquared };

/// One of the five test problems, evaluated on the normalized box [0,1]^d.
/// Lower is better; every default form is nonnegative with minimum 0.
struct ProblemSpec {
    std::string name;
    std::size_t dim = 0;
    RosenbrockVariant rosenbrock = RosenbrockVariant::Canonical;

    static const std::vector<std::string>& known_names();
    static ProblemSpec make(const std::string& name, std::size_t dim,
                            RosenbrockVariant variant = RosenbrockVariant::Canonical);
};

double evaluate(const ProblemSpec& problem, std::span<const double> x);

/// Location of the known optimum on [0,1]^d (all zeros except Rosenbrock,
/// whose minimum sits at the all-ones corner).
std::vector<double> optimum_point(const ProblemSpec& problem);

} // namespace icnopt

#endif
