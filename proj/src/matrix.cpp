#include "wormhole/matrix.hpp"

#include <cmath>
#include <limits>

namespace wormhole {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double Matrix::asymmetry() const noexcept {
    if (rows_ != cols_) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = i + 1; j < cols_; ++j) {
            worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
        }
    }
    return worst;
}

double Matrix::norm() const noexcept {
    double s = 0.0;
    for (double x : data_) s += x * x;
    return std::sqrt(s);
}

Matrix Matrix::principal_submatrix(std::span<const std::size_t> keep) const {
    Matrix out(keep.size(), keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a) {
        for (std::size_t b = 0; b < keep.size(); ++b) out(a, b) = (*this)(keep[a], keep[b]);
    }
    return out;
}

}  // namespace wormhole
