#include "icnopt/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace icnopt {

std::vector<double> ridge_least_squares(const Matrix& a,
                                        const std::vector<double>& b,
                                        double ridge, bool penalize_last) {
    const std::size_t n = a.rows, p = a.cols;
    if (b.size() != n)
        throw std::invalid_argument("ridge_least_squares: rhs length mismatch");
    if (ridge < 0.0)
        throw std::invalid_argument("ridge_least_squares: negative ridge");
    if (ridge == 0.0 && n < p)
        throw std::invalid_argument("ridge_least_squares: underdetermined system");

    // Stack sqrt(ridge)*I under A so the QR solves the regularized problem;
    // the last column (a bias/intercept, by convention) is left unpenalized.
    const std::size_t n_ridge = ridge > 0.0 ? (penalize_last ? p : p - 1) : 0;
    const std::size_t m = n + n_ridge;
    Matrix r(m, p);
    std::vector<double> rhs(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) r(i, j) = a(i, j);
        rhs[i] = b[i];
    }
    const double s = std::sqrt(ridge);
    for (std::size_t j = 0; j < n_ridge; ++j) r(n + j, j) = s;

    // Householder QR; reflectors are applied to the rhs as they are formed,
    // so Q never needs to be materialized.
    std::vector<double> rdiag(p, 0.0);
    for (std::size_t k = 0; k < p; ++k) {
        double nrm = 0.0;
        for (std::size_t i = k; i < m; ++i) nrm = std::hypot(nrm, r(i, k));
        if (nrm != 0.0) {
            if (r(k, k) < 0.0) nrm = -nrm;
            for (std::size_t i = k; i < m; ++i) r(i, k) /= nrm;
            r(k, k) += 1.0;

            for (std::size_t j = k + 1; j < p; ++j) {
                double acc = 0.0;
                for (std::size_t i = k; i < m; ++i) acc += r(i, k) * r(i, j);
                acc = -acc / r(k, k);
                for (std::size_t i = k; i < m; ++i) r(i, j) += acc * r(i, k);
            }
            double acc = 0.0;
            for (std::size_t i = k; i < m; ++i) acc += r(i, k) * rhs[i];
            acc = -acc / r(k, k);
            for (std::size_t i = k; i < m; ++i) rhs[i] += acc * r(i, k);
        }
        rdiag[k] = -nrm;
    }

    std::vector<double> w(p, 0.0);
    for (std::size_t kk = p; kk-- > 0;) {
        double acc = rhs[kk];
        for (std::size_t j = kk + 1; j < p; ++j) acc -= r(kk, j) * w[j];
        w[kk] = std::abs(rdiag[kk]) > 1e-300 ? acc / rdiag[kk] : 0.0;
    }
    return w;
}

} // namespace icnopt
