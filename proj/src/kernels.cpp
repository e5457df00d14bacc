#include "wormhole/kernels.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace wormhole::kernels {

namespace {

// Rows below this run serially; thread start-up dominates tiny systems.
constexpr std::size_t kParallelRows = 256;

}  // namespace

void matvec_serial(const Matrix& a, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto r = a.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < r.size(); ++j) acc += r[j] * x[j];
        y[i] = acc;
    }
}

void matvec(const Matrix& a, std::span<const double> x, std::span<double> y) {
    const auto rows = static_cast<std::int64_t>(a.rows());
    const std::size_t cols = a.cols();
    const double* data = a.data().data();
#pragma omp parallel for schedule(static) if (a.rows() >= kParallelRows)
    for (std::int64_t i = 0; i < rows; ++i) {
        const double* r = data + static_cast<std::size_t>(i) * cols;
        double acc = 0.0;
#pragma omp simd reduction(+ : acc)
        for (std::size_t j = 0; j < cols; ++j) acc += r[j] * x[j];
        y[static_cast<std::size_t>(i)] = acc;
    }
}

void matvec_serial(const Matrix& a, std::span<const Complex> x, std::span<Complex> y) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto r = a.row(i);
        Complex acc{};
        for (std::size_t j = 0; j < r.size(); ++j) acc += r[j] * x[j];
        y[i] = acc;
    }
}

void matvec(const Matrix& a, std::span<const Complex> x, std::span<Complex> y) {
    const auto rows = static_cast<std::int64_t>(a.rows());
    const std::size_t cols = a.cols();
    const double* data = a.data().data();
#pragma omp parallel for schedule(static) if (a.rows() >= kParallelRows)
    for (std::int64_t i = 0; i < rows; ++i) {
        const double* r = data + static_cast<std::size_t>(i) * cols;
        double re = 0.0;
        double im = 0.0;
#pragma omp simd reduction(+ : re, im)
        for (std::size_t j = 0; j < cols; ++j) {
            re += r[j] * x[j].real();
            im += r[j] * x[j].imag();
        }
        y[static_cast<std::size_t>(i)] = {re, im};
    }
}

double l1_norm_serial(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
}

double l1_norm(std::span<const double> x) {
    // Fixed summation order keeps results independent of the thread count.
    return l1_norm_serial(x);
}

double l2_norm(std::span<const Complex> x) {
    double s = 0.0;
    for (const Complex& v : x) s += std::norm(v);
    return std::sqrt(s);
}

Matrix multiply_serial(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), b.cols());
    const auto rows = static_cast<std::int64_t>(a.rows());
#pragma omp parallel for schedule(static) if (a.rows() >= kParallelRows / 4)
    for (std::int64_t ii = 0; ii < rows; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

}  // namespace wormhole::kernels
