#include "wormhole/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "wormhole/error.hpp"
#include "wormhole/kernels.hpp"

namespace wormhole::spectral {

namespace {

constexpr int kMaxInverseIterations = 1000;

void require_symmetric(const Matrix& h) {
    if (h.rows() != h.cols() || h.rows() == 0) {
        throw Error(ErrorCode::InvalidMatrix, "matrix must be square and non-empty");
    }
    const double asym = h.asymmetry();
    if (asym > kSymmetryTol * std::max(1.0, h.norm())) {
        throw Error(ErrorCode::InvalidMatrix,
                    "matrix is not symmetric (asymmetry " + std::to_string(asym) + ")");
    }
}

void fix_sign(std::vector<double>& v) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
    }
    if (v[arg] < 0.0) {
        for (double& x : v) x = -x;
    }
}

double residual(const Matrix& h, std::span<const double> v, double lambda) {
    std::vector<double> hv(v.size());
    kernels::matvec_serial(h, v, hv);
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double r = hv[i] - lambda * v[i];
        s += r * r;
    }
    return std::sqrt(s);
}

void check_residuals(const Matrix& h, const EigenResult& r) {
    const double bound = kResidualTol * std::max(1.0, h.norm());
    for (double res : r.residuals) {
        if (!(res <= bound)) {
            throw Error(ErrorCode::EigensolverFailure,
                        "eigenpair residual " + std::to_string(res) + " exceeds bound");
        }
    }
}

using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const DenseMatrix> view(const Matrix& h) {
    return Eigen::Map<const DenseMatrix>(h.data().data(), static_cast<Eigen::Index>(h.rows()),
                                         static_cast<Eigen::Index>(h.cols()));
}

// Cholesky factor of h - shift*I, or nothing when the shifted matrix is not
// positive definite.
std::optional<Eigen::LLT<Eigen::MatrixXd>> cholesky_shifted(const Matrix& h, double shift) {
    Eigen::MatrixXd a = view(h);
    a.diagonal().array() -= shift;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success) return std::nullopt;
    return llt;
}

void cholesky_solve(const Eigen::LLT<Eigen::MatrixXd>& llt, std::vector<double>& x) {
    Eigen::Map<Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
    v = llt.solve(v);
}

double l2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

EigenResult lowest_by_inverse_iteration(const Matrix& h, double tol) {
    const std::size_t n = h.rows();
    const double scale = std::max(1.0, h.norm());

    double lower = h(0, 0);
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) radius += std::abs(h(i, j));
        }
        lower = std::min(lower, h(i, i) - radius);
    }

    // sigma stays strictly below lambda_1: Cholesky succeeding certifies it.
    double safe = lower - 1e-3 * scale;
    double sigma = safe;
    auto factor = cholesky_shifted(h, sigma);
    if (!factor) throw Error(ErrorCode::EigensolverFailure, "Gershgorin shift not definite");

    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.01 * std::sin(static_cast<double>(i + 1));
    double nx = l2(x);
    for (double& v : x) v /= nx;

    std::vector<double> hx(n);
    for (int it = 0; it < kMaxInverseIterations; ++it) {
        cholesky_solve(*factor, x);
        nx = l2(x);
        for (double& v : x) v /= nx;

        kernels::matvec_serial(h, x, hx);
        const double theta = std::inner_product(x.begin(), x.end(), hx.begin(), 0.0);
        double rnorm = 0.0;
        for (std::size_t i = 0; i < n; ++i) rnorm += (hx[i] - theta * x[i]) * (hx[i] - theta * x[i]);
        rnorm = std::sqrt(rnorm);

        if (rnorm <= tol * scale) {
            fix_sign(x);
            return EigenResult{{theta}, {x}, {rnorm}};
        }

        // Move the shift toward the Rayleigh quotient; back off by bisection
        // whenever it would cross lambda_1.
        double trial = theta - rnorm - 1e-12 * scale;
        if (trial > sigma) {
            for (int backoff = 0; backoff < 60; ++backoff) {
                if (auto f = cholesky_shifted(h, trial)) {
                    safe = trial;
                    factor = std::move(f);
                    break;
                }
                trial = 0.5 * (trial + safe);
            }
            sigma = safe;
        }
    }
    throw Error(ErrorCode::EigensolverFailure, "inverse iteration did not converge");
}

}  // namespace

EigenResult full_eigen(const Matrix& h) {
    require_symmetric(h);
    const std::size_t n = h.rows();
    const Eigen::MatrixXd a = view(h);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (a + a.transpose()));
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::EigensolverFailure, "self-adjoint eigensolver did not converge");
    }

    // Eigenvalues come back ascending.
    EigenResult r;
    for (Eigen::Index idx = 0; idx < static_cast<Eigen::Index>(n); ++idx) {
        std::vector<double> vec(n);
        for (std::size_t k = 0; k < n; ++k) vec[k] = solver.eigenvectors()(static_cast<Eigen::Index>(k), idx);
        fix_sign(vec);
        const double lambda = solver.eigenvalues()(idx);
        r.eigenvalues.push_back(lambda);
        r.residuals.push_back(residual(h, vec, lambda));
        r.eigenvectors.push_back(std::move(vec));
    }
    check_residuals(h, r);
    return r;
}

EigenResult smallest_eigpairs(const Matrix& h, std::size_t count, double tol, Method method) {
    require_symmetric(h);
    if (count == 0 || count > h.rows()) {
        throw Error(ErrorCode::InvalidInput, "eigenpair count out of range");
    }
    if (method == Method::InverseIteration && count != 1) {
        throw Error(ErrorCode::InvalidInput, "inverse iteration computes one pair");
    }
    if (method == Method::InverseIteration || (method == Method::Auto && count == 1)) {
        EigenResult r = lowest_by_inverse_iteration(h, std::max(tol, 1e-14));
        check_residuals(h, r);
        return r;
    }
    EigenResult full = full_eigen(h);
    full.eigenvalues.resize(count);
    full.eigenvectors.resize(count);
    full.residuals.resize(count);
    return full;
}

double spectral_gap(const Matrix& h) {
    if (h.rows() < 2) throw Error(ErrorCode::InvalidInput, "spectral gap needs dimension >= 2");
    const EigenResult r = full_eigen(h);
    return std::max(0.0, r.eigenvalues[1] - r.eigenvalues[0]);
}

double default_degeneracy_tol(double lambda_max) noexcept {
    return 1e-9 * std::max(1.0, lambda_max);
}

std::size_t minimal_multiplicity(const EigenResult& full, double degeneracy_tol) {
    if (full.eigenvalues.empty()) return 0;
    if (degeneracy_tol < 0.0) degeneracy_tol = default_degeneracy_tol(full.eigenvalues.back());
    const double cut = full.eigenvalues.front() + degeneracy_tol;
    return static_cast<std::size_t>(std::count_if(full.eigenvalues.begin(), full.eigenvalues.end(),
                                                  [cut](double l) { return l <= cut; }));
}

double minimal_space_gap(const EigenResult& full, double degeneracy_tol) {
    const std::size_t mult = minimal_multiplicity(full, degeneracy_tol);
    if (mult >= full.eigenvalues.size()) return 0.0;
    return full.eigenvalues[mult] - full.eigenvalues.front();
}

namespace {

void validate_start(std::span<const double> start, std::size_t n) {
    if (start.size() != n) throw Error(ErrorCode::InvalidInput, "start vector has wrong dimension");
    double mass = 0.0;
    for (double x : start) {
        if (x < 0.0) throw Error(ErrorCode::InvalidInput, "start vector must be nonnegative");
        mass += x;
    }
    if (!(mass > 0.0)) throw Error(ErrorCode::InvalidInput, "start vector has zero mass");
}

std::vector<double> l1_normalized(std::vector<double> proj, double start_mass) {
    const double mass = kernels::l1_norm_serial(proj);
    if (!(mass > 1e-12 * start_mass)) {
        throw Error(ErrorCode::NoOverlap, "start vector has no overlap with the minimal eigenspace");
    }
    for (double& x : proj) x /= mass;
    return proj;
}

}  // namespace

std::vector<double> minimal_space_projection(const Matrix& h, std::span<const double> start,
                                             double degeneracy_tol) {
    validate_start(start, h.rows());
    const EigenResult full = full_eigen(h);
    if (degeneracy_tol < 0.0) degeneracy_tol = default_degeneracy_tol(full.eigenvalues.back());
    const double cut = full.eigenvalues.front() + degeneracy_tol;

    std::vector<double> proj(h.rows(), 0.0);
    for (std::size_t k = 0; k < full.eigenvalues.size() && full.eigenvalues[k] <= cut; ++k) {
        const auto& v = full.eigenvectors[k];
        const double c = std::inner_product(v.begin(), v.end(), start.begin(), 0.0);
        for (std::size_t i = 0; i < proj.size(); ++i) proj[i] += c * v[i];
    }
    return l1_normalized(std::move(proj), kernels::l1_norm_serial(start));
}

std::vector<std::vector<std::size_t>> irreducible_blocks(const Matrix& h) {
    const std::size_t n = h.rows();
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<bool> seen(n, false);
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> block{s};
        seen[s] = true;
        for (std::size_t head = 0; head < block.size(); ++head) {
            const std::size_t i = block[head];
            for (std::size_t j = 0; j < n; ++j) {
                if (!seen[j] && h(i, j) != 0.0) {
                    seen[j] = true;
                    block.push_back(j);
                }
            }
        }
        std::sort(block.begin(), block.end());
        blocks.push_back(std::move(block));
    }
    return blocks;
}

std::vector<double> minimal_space_projection_blocks(std::span<const Block> blocks,
                                                    std::span<const double> start,
                                                    double degeneracy_tol) {
    std::size_t dim = 0;
    for (const auto& b : blocks) dim += b.index.size();
    validate_start(start, dim);

    std::vector<EigenResult> eig;
    eig.reserve(blocks.size());
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    for (const auto& b : blocks) {
        eig.push_back(full_eigen(b.matrix));
        const auto& vals = eig.back().eigenvalues;
        lambda_min = eig.size() == 1 ? vals.front() : std::min(lambda_min, vals.front());
        lambda_max = eig.size() == 1 ? vals.back() : std::max(lambda_max, vals.back());
    }
    if (degeneracy_tol < 0.0) degeneracy_tol = default_degeneracy_tol(lambda_max);
    const double cut = lambda_min + degeneracy_tol;

    std::vector<double> proj(dim, 0.0);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto& index = blocks[b].index;
        const auto& e = eig[b];
        for (std::size_t k = 0; k < e.eigenvalues.size() && e.eigenvalues[k] <= cut; ++k) {
            const auto& v = e.eigenvectors[k];
            double c = 0.0;
            for (std::size_t a = 0; a < v.size(); ++a) c += v[a] * start[index[a]];
            for (std::size_t a = 0; a < v.size(); ++a) proj[index[a]] += c * v[a];
        }
    }
    return l1_normalized(std::move(proj), kernels::l1_norm_serial(start));
}

std::vector<double> minimal_space_projection_blockwise(const Matrix& h,
                                                       std::span<const double> start,
                                                       double degeneracy_tol) {
    require_symmetric(h);
    validate_start(start, h.rows());
    std::vector<Block> blocks;
    for (auto& index : irreducible_blocks(h)) {
        Matrix sub = h.principal_submatrix(index);
        blocks.push_back(Block{std::move(index), std::move(sub)});
    }
    return minimal_space_projection_blocks(blocks, start, degeneracy_tol);
}

}  // namespace wormhole::spectral
