#include "wormhole/aqc.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "wormhole/error.hpp"
#include "wormhole/kernels.hpp"
#include "wormhole/walk.hpp"

namespace wormhole::aqc {

namespace {

using Apply = std::function<void(double s, std::span<const Complex> psi, std::span<Complex> out)>;

void require_time(double total_time) {
    if (!std::isfinite(total_time) || total_time < 0.0) {
        throw Error(ErrorCode::InvalidT, "total time must be finite and nonnegative");
    }
}

// out = -i T H(s) psi, given h(s, psi, out) = H(s) psi.
Evolution integrate(const Apply& h, double total_time, const QuantumState& psi0,
                    std::size_t steps, std::size_t cadence) {
    if (steps < 1) throw Error(ErrorCode::InvalidInput, "steps must be at least 1");
    const std::size_t n = psi0.amplitudes.size();
    if (std::abs(kernels::l2_norm(psi0.amplitudes) - 1.0) > kMaxStepDrift) {
        throw Error(ErrorCode::InvalidInput, "initial state must have unit norm");
    }
    const double dh = 1.0 / static_cast<double>(steps);
    const Complex minus_i_t{0.0, -total_time};

    std::vector<Complex> k1(n), k2(n), k3(n), k4(n), tmp(n);
    auto rhs = [&](double s, std::span<const Complex> x, std::vector<Complex>& out) {
        h(s, x, out);
        for (Complex& z : out) z *= minus_i_t;
    };

    Evolution ev;
    ev.steps = steps;
    ev.snapshots.push_back(QuantumState{psi0.amplitudes, 0.0});
    std::vector<Complex> psi = psi0.amplitudes;
    for (std::size_t step = 0; step < steps; ++step) {
        const double s = static_cast<double>(step) * dh;
        rhs(s, psi, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + 0.5 * dh * k1[i];
        rhs(s + 0.5 * dh, tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + 0.5 * dh * k2[i];
        rhs(s + 0.5 * dh, tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + dh * k3[i];
        rhs(s + dh, tmp, k4);
        for (std::size_t i = 0; i < n; ++i) {
            psi[i] += dh / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }

        const double norm = kernels::l2_norm(psi);
        const double drift = std::abs(norm - 1.0);
        ev.max_step_drift = std::max(ev.max_step_drift, drift);
        ev.total_drift += drift;
        if (drift > kMaxStepDrift) {
            throw Error(ErrorCode::StepTooCoarse,
                        "norm drift " + std::to_string(drift) + " at step " + std::to_string(step) +
                            "; raise the step count");
        }
        for (Complex& z : psi) z /= norm;

        const double s_next = static_cast<double>(step + 1) * dh;
        if (step + 1 == steps) {
            ev.snapshots.push_back(QuantumState{psi, 1.0});
        } else if (cadence > 0 && (step + 1) % cadence == 0) {
            ev.snapshots.push_back(QuantumState{psi, s_next});
        }
    }
    return ev;
}

}  // namespace

Matrix initial_hamiltonian(std::size_t n) {
    Matrix h(n, n, -1.0 / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) h(i, i) += 1.0;
    return h;
}

HamiltonianSystem build_system(const OrbitGraph& g, const MarkSet& marks, double total_time) {
    require_time(total_time);
    walk::GroundedLaplacian lp = walk::grounded_laplacian(g, marks);
    HamiltonianSystem sys;
    sys.problem = std::move(lp.matrix);
    sys.vertices = std::move(lp.vertices);
    sys.n = g.n();
    sys.total_time = total_time;
    sys.max_degree = g.max_degree();
    return sys;
}

QuantumState ground_state_initial(std::size_t n) {
    if (n < 1) throw Error(ErrorCode::InvalidInput, "dimension must be at least 1");
    return QuantumState{std::vector<Complex>(n, Complex{1.0 / std::sqrt(static_cast<double>(n)), 0.0}),
                        0.0};
}

std::size_t default_steps(double total_time, std::size_t max_degree) {
    const double wanted = std::ceil(20.0 * total_time * (2.0 * static_cast<double>(max_degree) + 1.0));
    return std::max<std::size_t>(1000, static_cast<std::size_t>(wanted));
}

Evolution evolve(const HamiltonianSystem& sys, const QuantumState& psi0, std::size_t steps,
                 std::size_t snapshot_cadence) {
    require_time(sys.total_time);
    const std::size_t n = sys.dimension();
    if (psi0.amplitudes.size() != n) throw Error(ErrorCode::InvalidInput, "state dimension mismatch");
    std::vector<Complex> hp(n);
    const double inv_n = 1.0 / static_cast<double>(n);
    // H_I psi = psi - mean(psi) * 1, without forming the all-ones matrix.
    Apply h = [&](double s, std::span<const Complex> psi, std::span<Complex> out) {
        Complex mean{};
        for (const Complex& z : psi) mean += z;
        mean *= inv_n;
        kernels::matvec(sys.problem, psi, hp);
        for (std::size_t i = 0; i < n; ++i) out[i] = (1.0 - s) * (psi[i] - mean) + s * hp[i];
    };
    return integrate(h, sys.total_time, psi0, steps, snapshot_cadence);
}

Evolution evolve_dense(const Matrix& initial, const Matrix& problem, double total_time,
                       const QuantumState& psi0, std::size_t steps, std::size_t snapshot_cadence) {
    require_time(total_time);
    const std::size_t n = psi0.amplitudes.size();
    if (initial.rows() != n || problem.rows() != n) {
        throw Error(ErrorCode::InvalidInput, "Hamiltonian dimension mismatch");
    }
    std::vector<Complex> a(n), b(n);
    Apply h = [&](double s, std::span<const Complex> psi, std::span<Complex> out) {
        kernels::matvec(initial, psi, a);
        kernels::matvec(problem, psi, b);
        for (std::size_t i = 0; i < n; ++i) out[i] = (1.0 - s) * a[i] + s * b[i];
    };
    return integrate(h, total_time, psi0, steps, snapshot_cadence);
}

AmplitudeResult amplitudes(const QuantumState& final_state, std::span<const Int> vertices, Int n) {
    if (final_state.amplitudes.size() != vertices.size()) {
        throw Error(ErrorCode::InvalidInput, "state dimension mismatch");
    }
    AmplitudeResult r;
    r.n = n;
    r.probs.assign(static_cast<std::size_t>(n - 1), 0.0);
    r.amps.assign(static_cast<std::size_t>(n - 1), 0.0);
    double root_mass = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const double p = std::norm(final_state.amplitudes[i]);
        const auto slot = static_cast<std::size_t>(vertices[i] - 1);
        r.probs[slot] = p;
        r.amps[slot] = std::sqrt(p);
        root_mass += r.amps[slot];
    }
    if (!(root_mass > 0.0)) throw Error(ErrorCode::InvalidInput, "state has zero norm");
    for (double& a : r.amps) a /= root_mass;
    return r;
}

FullEvolution evolve_full_grounded(const OrbitGraph& g, const MarkSet& marks, double total_time,
                                   std::size_t steps) {
    require_time(total_time);
    Matrix l = laplacian(g);
    const std::size_t dim = g.vertex_count();
    std::vector<double> unmarked(dim, 1.0);
    for (Int v : marks.vertices()) {
        const auto m = static_cast<std::size_t>(v - 1);
        for (std::size_t j = 0; j < dim; ++j) {
            l(m, j) = 0.0;
            l(j, m) = 0.0;
        }
        l(m, m) = 1.0;
        unmarked[m] = 0.0;
    }
    const double n_free = static_cast<double>(dim - marks.size());
    Matrix hi = Matrix::identity(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) hi(i, j) -= unmarked[i] * unmarked[j] / n_free;
    }
    QuantumState psi0;
    psi0.amplitudes.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) psi0.amplitudes[i] = unmarked[i] / std::sqrt(n_free);

    const Evolution ev = evolve_dense(hi, l, total_time, psi0, steps);
    FullEvolution out;
    out.max_step_drift = ev.max_step_drift;
    for (const Complex& z : ev.snapshots.back().amplitudes) out.probs.push_back(std::norm(z));
    return out;
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) throw Error(ErrorCode::InvalidInput, "vector lengths differ");
    double uv = 0.0, uu = 0.0, vv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        uv += u[i] * v[i];
        uu += u[i] * u[i];
        vv += v[i] * v[i];
    }
    if (!(uu > 0.0) || !(vv > 0.0)) throw Error(ErrorCode::InvalidInput, "zero vector");
    return uv / (std::sqrt(uu) * std::sqrt(vv));
}

}  // namespace wormhole::aqc
