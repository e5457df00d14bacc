#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wormhole/matrix.hpp"

// Dense symmetric eigensolvers. The full self-adjoint decomposition is the
// reference path; shifted inverse iteration is the fast path when only the
// lowest pair is needed.
namespace wormhole::spectral {

struct EigenResult {
    std::vector<double> eigenvalues;                // ascending
    std::vector<std::vector<double>> eigenvectors;  // unit l2, matching eigenvalues
    std::vector<double> residuals;                  // ||H v - lambda v||_2
};

enum class Method { Auto, Dense, InverseIteration };

inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kResidualTol = 1e-8;  // relative to ||H||_F

/// All eigenpairs, ascending, with residuals checked.
EigenResult full_eigen(const Matrix& h);

/// The `count` algebraically smallest eigenpairs. Eigenvector signs are
/// fixed so the largest-magnitude entry is positive.
EigenResult smallest_eigpairs(const Matrix& h, std::size_t count, double tol = 1e-12,
                              Method method = Method::Auto);

/// lambda_2 - lambda_1 of the full spectrum.
double spectral_gap(const Matrix& h);

/// 1e-9 * max(1, lambda_max).
double default_degeneracy_tol(double lambda_max) noexcept;

/// l1-normalized projection of `start` onto the eigenspace of all eigenvalues
/// within `degeneracy_tol` of lambda_1. A negative tolerance selects the
/// default. Throws no-overlap when the projection vanishes.
std::vector<double> minimal_space_projection(const Matrix& h, std::span<const double> start,
                                             double degeneracy_tol = -1.0);

/// Same projection, computed independently on each irreducible block of h
/// (connected components of its off-diagonal sparsity pattern). Exact for the
/// block-diagonal grounded Laplacians and far cheaper on large graphs.
std::vector<double> minimal_space_projection_blockwise(const Matrix& h,
                                                       std::span<const double> start,
                                                       double degeneracy_tol = -1.0);

/// One diagonal block of a block-diagonal symmetric matrix.
struct Block {
    std::vector<std::size_t> index;  // rows of the full matrix, ascending
    Matrix matrix;
};

/// Projection for a matrix given directly as its diagonal blocks.
std::vector<double> minimal_space_projection_blocks(std::span<const Block> blocks,
                                                    std::span<const double> start,
                                                    double degeneracy_tol = -1.0);

/// Index sets of the irreducible blocks of h, each ascending.
std::vector<std::vector<std::size_t>> irreducible_blocks(const Matrix& h);

/// Eigenvalues within degeneracy_tol of lambda_1.
std::size_t minimal_multiplicity(const EigenResult& full, double degeneracy_tol = -1.0);

/// Distance from lambda_1 to the first eigenvalue outside the minimal
/// eigenspace; 0 when the whole spectrum is degenerate.
double minimal_space_gap(const EigenResult& full, double degeneracy_tol = -1.0);

}  // namespace wormhole::spectral
