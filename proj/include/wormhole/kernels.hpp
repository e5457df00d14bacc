#pragma once

#include <complex>
#include <span>

#include "wormhole/matrix.hpp"

// Dense inner loops shared by the walk and the Schroedinger integrator. Each
// kernel has an OpenMP version and a serial reference; tests check that the
// two agree and bench/ times them against each other.
namespace wormhole::kernels {

using Complex = std::complex<double>;

// y = A x
void matvec(const Matrix& a, std::span<const double> x, std::span<double> y);
void matvec_serial(const Matrix& a, std::span<const double> x, std::span<double> y);

// y = A x for real A and complex x
void matvec(const Matrix& a, std::span<const Complex> x, std::span<Complex> y);
void matvec_serial(const Matrix& a, std::span<const Complex> x, std::span<Complex> y);

double l1_norm(std::span<const double> x);
double l1_norm_serial(std::span<const double> x);

double l2_norm(std::span<const Complex> x);

/// Dense matrix product; used by the eigensolver tests and the benchmark.
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix multiply_serial(const Matrix& a, const Matrix& b);

}  // namespace wormhole::kernels
