#include "wormhole/walk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "wormhole/error.hpp"
#include "wormhole/kernels.hpp"
#include "wormhole/spectral.hpp"

namespace wormhole::walk {

double GroundedLaplacian::max_diagonal() const noexcept {
    double best = 0.0;
    for (std::size_t i = 0; i < matrix.rows(); ++i) best = std::max(best, matrix(i, i));
    return best;
}

std::optional<std::size_t> GroundedLaplacian::row_of(Int v) const {
    const auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - vertices.begin());
}

GroundedLaplacian grounded_laplacian(const OrbitGraph& g, const MarkSet& marks,
                                     std::size_t max_dimension) {
    if (!marks.vertices().empty() && marks.vertices().back() >= g.n()) {
        throw Error(ErrorCode::InvalidMarks, "marked vertex outside the graph");
    }
    GroundedLaplacian lp;
    lp.n = g.n();
    lp.vertices = marks.complement(g.n());
    const std::size_t dim = lp.vertices.size();
    if (dim > max_dimension) {
        throw Error(ErrorCode::DimensionTooLarge,
                    "grounded dimension " + std::to_string(dim) + " exceeds cap " +
                        std::to_string(max_dimension));
    }
    lp.matrix = Matrix(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        const Int v = lp.vertices[r];
        const auto nb = g.neighbors(v);
        // Degree counts marked neighbors too: deleting rows keeps D intact.
        lp.matrix(r, r) = static_cast<double>(nb.size());
        for (Int u : nb) {
            if (const auto c = lp.row_of(u)) lp.matrix(r, *c) = -1.0;
        }
    }
    return lp;
}

double default_dt(const GroundedLaplacian& lp) noexcept {
    return 1.0 / (2.0 * lp.max_diagonal() + 1.0);
}

Matrix walking_matrix(const GroundedLaplacian& lp, double dt, std::optional<double> lambda_max) {
    const double bound = lambda_max ? *lambda_max : 2.0 * lp.max_diagonal();
    if (!std::isfinite(dt) || dt < 0.0 || (bound > 0.0 && dt * bound >= 1.0)) {
        throw Error(ErrorCode::InvalidDt,
                    "dt=" + std::to_string(dt) + " violates dt < 1/" + std::to_string(bound));
    }
    const std::size_t n = lp.dimension();
    Matrix e(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            e(i, j) = (i == j ? 1.0 : 0.0) - dt * lp.matrix(i, j);
        }
    }
    return e;
}

WalkState uniform_start(std::size_t dimension) {
    return WalkState{std::vector<double>(dimension, 1.0 / static_cast<double>(dimension)), 0};
}

namespace {

WalkState renormalize(const WalkState& p, std::vector<double> v) {
    const double s = kernels::l1_norm(v);
    if (!(s > 0.0)) throw Error(ErrorCode::AbsorbedAll, "every walker entered a wormhole");
    const double w = 1.0 - s;
    const double factor = 1.0 + w / s;
    for (double& x : v) {
        const double scaled = factor * x;
        if (std::abs(scaled - x / s) > kNormalizationTol) {
            throw std::logic_error("redistribution disagrees with direct normalization");
        }
        x = scaled;
    }
    return WalkState{std::move(v), p.t + 1};
}

}  // namespace

WalkState step(const WalkState& p, const Matrix& e) {
    std::vector<double> v(p.distribution.size());
    kernels::matvec(e, p.distribution, v);
    return renormalize(p, std::move(v));
}

WalkState step_serial(const WalkState& p, const Matrix& e) {
    std::vector<double> v(p.distribution.size());
    kernels::matvec_serial(e, p.distribution, v);
    return renormalize(p, std::move(v));
}

std::vector<double> WalkTrace::full_distribution(const WalkState& s) const {
    std::vector<double> out(static_cast<std::size_t>(n - 1), 0.0);
    for (std::size_t r = 0; r < vertices.size(); ++r) {
        out[static_cast<std::size_t>(vertices[r] - 1)] = s.distribution[r];
    }
    return out;
}

WalkTrace run(const OrbitGraph& g, const MarkSet& marks, const WalkOptions& options) {
    const GroundedLaplacian lp = grounded_laplacian(g, marks);
    WalkTrace trace;
    trace.vertices = lp.vertices;
    trace.n = g.n();
    trace.dt = options.dt ? *options.dt : default_dt(lp);
    const Matrix e = walking_matrix(lp, trace.dt);

    WalkState current = uniform_start(lp.dimension());
    trace.snapshots.push_back(current);
    for (std::size_t it = 0; it < options.max_iters; ++it) {
        WalkState next = step(current, e);
        double change = 0.0;
        for (std::size_t i = 0; i < next.distribution.size(); ++i) {
            change = std::max(change, std::abs(next.distribution[i] - current.distribution[i]));
        }
        current = std::move(next);
        trace.iterations = current.t;
        if (change < options.tol) {
            trace.converged = true;
            break;
        }
        if (options.snapshot_cadence > 0 && current.t % options.snapshot_cadence == 0) {
            trace.snapshots.push_back(current);
        }
    }
    if (trace.snapshots.back().t != current.t) trace.snapshots.push_back(current);
    return trace;
}

std::vector<double> limiting_distribution(const OrbitGraph& g, const MarkSet& marks,
                                          double degeneracy_tol) {
    const std::vector<Int> unmarked = marks.complement(g.n());
    std::vector<std::size_t> row(static_cast<std::size_t>(g.n()), SIZE_MAX);
    for (std::size_t r = 0; r < unmarked.size(); ++r) {
        row[static_cast<std::size_t>(unmarked[r])] = r;
    }

    std::vector<spectral::Block> blocks;
    std::vector<bool> seen(unmarked.size(), false);
    for (std::size_t s = 0; s < unmarked.size(); ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> index{s};
        seen[s] = true;
        for (std::size_t head = 0; head < index.size(); ++head) {
            for (Int u : g.neighbors(unmarked[index[head]])) {
                const std::size_t r = row[static_cast<std::size_t>(u)];
                if (r != SIZE_MAX && !seen[r]) {
                    seen[r] = true;
                    index.push_back(r);
                }
            }
        }
        std::sort(index.begin(), index.end());

        Matrix m(index.size(), index.size());
        for (std::size_t a = 0; a < index.size(); ++a) {
            const Int v = unmarked[index[a]];
            m(a, a) = static_cast<double>(g.degree(v));
            for (Int u : g.neighbors(v)) {
                const std::size_t r = row[static_cast<std::size_t>(u)];
                if (r == SIZE_MAX) continue;
                const auto pos = std::lower_bound(index.begin(), index.end(), r);
                m(a, static_cast<std::size_t>(pos - index.begin())) = -1.0;
            }
        }
        blocks.push_back(spectral::Block{std::move(index), std::move(m)});
    }
    const std::vector<double> start(unmarked.size(), 1.0 / static_cast<double>(unmarked.size()));
    return spectral::minimal_space_projection_blocks(blocks, start, degeneracy_tol);
}

std::optional<FactorPair> extract_factor(std::span<const double> distribution,
                                         std::span<const Int> vertices, Int n, double eps) {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (!(distribution[i] > eps)) continue;
        const Int d = numtheory::gcd(vertices[i], n);
        if (d != 1 && d != n) {
            const Int other = n / d;
            return FactorPair{std::min(d, other), std::max(d, other), n};
        }
    }
    return std::nullopt;
}

}  // namespace wormhole::walk
