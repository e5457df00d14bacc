#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wormhole/marks.hpp"
#include "wormhole/matrix.hpp"
#include "wormhole/orbitgraph.hpp"

// Classical wormhole random walk on the unmarked vertices of an orbit graph.
namespace wormhole::walk {

inline constexpr std::size_t kDefaultMaxDimension = 5000;
inline constexpr double kNormalizationTol = 1e-12;

/// Laplacian with marked rows and columns deleted. Row r corresponds to
/// vertex `vertices[r]`.
struct GroundedLaplacian {
    Matrix matrix;
    std::vector<Int> vertices;  // unmarked labels, ascending
    Int n = 0;

    std::size_t dimension() const noexcept { return vertices.size(); }
    double max_diagonal() const noexcept;
    /// Row of vertex v, or nothing if v is marked.
    std::optional<std::size_t> row_of(Int v) const;
};

GroundedLaplacian grounded_laplacian(const OrbitGraph& g, const MarkSet& marks,
                                     std::size_t max_dimension = kDefaultMaxDimension);

/// 1 / (2 * max_degree + 1); Gershgorin keeps dt below 1 / lambda_max.
double default_dt(const GroundedLaplacian& lp) noexcept;

/// E = I - Lp * dt. Requires dt < 1 / lambda_max; when lambda_max is not
/// supplied the Gershgorin bound 2 * max_degree stands in for it.
Matrix walking_matrix(const GroundedLaplacian& lp, double dt,
                      std::optional<double> lambda_max = std::nullopt);

struct WalkState {
    std::vector<double> distribution;  // over lp.vertices
    std::size_t t = 0;
};

WalkState uniform_start(std::size_t dimension);

/// One renormalized step: v = E P, S = |v|_1, W = 1 - S, P' = (1 + W/S) v.
WalkState step(const WalkState& p, const Matrix& e);
WalkState step_serial(const WalkState& p, const Matrix& e);

struct WalkOptions {
    std::optional<double> dt;       // default_dt when empty
    std::size_t max_iters = 1'000'000;
    double tol = 1e-10;             // l-infinity change between iterations
    std::size_t snapshot_cadence = 0;  // 0: only the first and last states
};

struct WalkTrace {
    std::vector<Int> vertices;  // unmarked labels, row order of each snapshot
    Int n = 0;
    double dt = 0.0;
    std::vector<WalkState> snapshots;  // t = 0 first, final state last
    bool converged = false;
    std::size_t iterations = 0;

    const WalkState& final_state() const { return snapshots.back(); }
    /// Probability per vertex 1..N-1 (index v-1), marked vertices 0.
    std::vector<double> full_distribution(const WalkState& s) const;
};

WalkTrace run(const OrbitGraph& g, const MarkSet& marks, const WalkOptions& options = {});

/// Limit of the walk from the uniform start: the l1-normalized projection
/// onto the minimal eigenspace of the grounded Laplacian. Built block by block
/// from the unmarked components, so it never materializes the dense matrix.
/// Entry r belongs to the r-th unmarked vertex.
std::vector<double> limiting_distribution(const OrbitGraph& g, const MarkSet& marks,
                                          double degeneracy_tol = -1.0);

/// First vertex (ascending) with mass above eps whose gcd with N is a proper
/// divisor gives the factor pair.
std::optional<FactorPair> extract_factor(std::span<const double> distribution,
                                         std::span<const Int> vertices, Int n, double eps);

}  // namespace wormhole::walk
