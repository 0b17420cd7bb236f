#ifndef ICNOPT_MATRIX_HPP
#define ICNOPT_MATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace icnopt {

/// Dense row-major matrix of doubles. Used for sample sets (rows = points,
/// cols = decision variables) and anywhere a flat 2-d block is enough.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    const double* row(std::size_t i) const { return data.data() + i * cols; }
    double* row(std::size_t i) { return data.data() + i * cols; }

    std::vector<double> row_vec(std::size_t i) const {
        return std::vector<double>(row(i), row(i) + cols);
    }
};

/// Offline training data: points in [0,1]^d plus their true fitness values.
struct Dataset {
    Matrix points;
    std::vector<double> targets;

    std::size_t size() const { return points.rows; }
    std::size_t dim() const { return points.cols; }

    void validate() const {
        if (points.rows == 0 || points.cols == 0)
            throw std::invalid_argument("dataset is empty");
        if (targets.size() != points.rows)
            throw std::invalid_argument("dataset targets/points size mismatch");
    }
};

} // namespace icnopt

#endif
