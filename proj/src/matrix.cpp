#include "ptrisk/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace ptrisk {

Matrix cholesky_lower(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("cholesky_lower: matrix must be square");
    }
    const std::size_t n = a.rows();
    Matrix l(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s <= 0.0) {
                    throw std::invalid_argument("cholesky_lower: matrix is not positive definite");
                }
                l(i, j) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

}  // namespace ptrisk
