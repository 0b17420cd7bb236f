#include "icnopt/benchmarks.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace icnopt {

const std::vector<std::string>& ProblemSpec::known_names() {
    static const std::vector<std::string> names = {
        "Ellipsoid", "Rosenbrock", "Ackley", "Griewank", "Rastrigin"};
    return names;
}

ProblemSpec ProblemSpec::make(const std::string& name, std::size_t dim,
                              RosenbrockVariant variant) {
    if (dim == 0) throw std::invalid_argument("problem dimension must be positive");
    for (const auto& known : known_names()) {
        if (known == name) return ProblemSpec{name, dim, variant};
    }
    throw std::invalid_argument("unknown problem: " + name);
}

static void check_point(const ProblemSpec& p, std::span<const double> x) {
    if (x.size() != p.dim)
        throw std::invalid_argument("evaluate: point length does not match problem dim");
    for (double v : x) {
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("evaluate: component outside [0,1]");
    }
}

static double ellipsoid(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += static_cast<double>(i + 1) * x[i] * x[i];
    return s;
}

static double rosenbrock(std::span<const double> x, RosenbrockVariant variant) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double valley = x[i + 1] - x[i] * x[i];
        const double off = 1.0 - x[i];
        if (variant == RosenbrockVariant::Canonical)
            s += 100.0 * valley * valley + off * off;
        else
            s += 100.0 * valley + off * off;
    }
    return s;
}

static double ackley(std::span<const double> x) {
    constexpr double a = 20.0, b = 0.2;
    const double c = 2.0 * std::numbers::pi;
    const double n = static_cast<double>(x.size());
    double sq = 0.0, cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(c * v);
    }
    return -a * std::exp(-b * std::sqrt(sq / n)) - std::exp(cs / n) + a + std::numbers::e;
}

static double griewank(std::span<const double> x) {
    double sum = 0.0, prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i] * x[i] / 4000.0;
        prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return 1.0 + sum - prod;
}

static double rastrigin(std::span<const double> x) {
    const double two_pi = 2.0 * std::numbers::pi;
    double s = 10.0 * static_cast<double>(x.size());
    for (double v : x) s += v * v - 10.0 * std::cos(two_pi * v);
    return s;
}

double evaluate(const ProblemSpec& problem, std::span<const double> x) {
    check_point(problem, x);
    if (problem.name == "Ellipsoid") return ellipsoid(x);
    if (problem.name == "Rosenbrock") return rosenbrock(x, problem.rosenbrock);
    if (problem.name == "Ackley") return ackley(x);
    if (problem.name == "Griewank") return griewank(x);
    if (problem.name == "Rastrigin") return rastrigin(x);
    throw std::invalid_argument("unknown problem: " + problem.name);
}

std::vector<double> optimum_point(const ProblemSpec& problem) {
    const double v = problem.name == "Rosenbrock" ? 1.0 : 0.0;
    return std::vector<double>(problem.dim, v);
}

} // namespace icnopt
