#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "wormhole/marks.hpp"
#include "wormhole/matrix.hpp"
#include "wormhole/orbitgraph.hpp"

// Simulated adiabatic evolution H(s) = (1 - s) H_I + s H_p under the linear
// schedule s = t / T, with hbar = 1:  d psi / ds = -i T H(s) psi.
namespace wormhole::aqc {

using Complex = std::complex<double>;

inline constexpr double kMaxStepDrift = 1e-6;

struct HamiltonianSystem {
    Matrix problem;             // grounded Laplacian H_p
    std::vector<Int> vertices;  // unmarked labels, row order
    Int n = 0;
    double total_time = 0.0;
    std::size_t max_degree = 0;

    std::size_t dimension() const noexcept { return vertices.size(); }
};

/// I - J / n, the complete-graph Laplacian scaled by 1/n.
Matrix initial_hamiltonian(std::size_t n);

HamiltonianSystem build_system(const OrbitGraph& g, const MarkSet& marks, double total_time);

struct QuantumState {
    std::vector<Complex> amplitudes;
    double s = 0.0;
};

/// Kernel of H_I: every entry 1 / sqrt(n).
QuantumState ground_state_initial(std::size_t n);

/// max(1000, ceil(20 T (2 max_degree + 1))).
std::size_t default_steps(double total_time, std::size_t max_degree);

struct Evolution {
    std::vector<QuantumState> snapshots;  // s = 0 first, s = 1 last
    std::size_t steps = 0;
    double max_step_drift = 0.0;    // largest | |psi|_2 - 1 | before renormalizing
    double total_drift = 0.0;       // sum of the per-step drifts
};

/// Classic RK4 at uniform step 1/steps, renormalizing after each step.
/// Snapshots every `snapshot_cadence` steps (0: first and last only). Throws
/// step-too-coarse if a single step drifts more than 1e-6 in norm.
Evolution evolve(const HamiltonianSystem& sys, const QuantumState& psi0, std::size_t steps,
                 std::size_t snapshot_cadence = 0);

/// Same integration for arbitrary dense H_I and H_p of equal dimension.
Evolution evolve_dense(const Matrix& initial, const Matrix& problem, double total_time,
                       const QuantumState& psi0, std::size_t steps,
                       std::size_t snapshot_cadence = 0);

struct AmplitudeResult {
    Int n = 0;
    std::vector<double> probs;  // |psi_v|^2 per vertex 1..N-1, marked = 0
    std::vector<double> amps;   // sqrt(probs) / |sqrt(probs)|_1
};

AmplitudeResult amplitudes(const QuantumState& final_state, std::span<const Int> vertices, Int n);

/// Full-dimension form: marked rows and columns of L zeroed with a unit
/// diagonal, marked amplitudes started at zero, H_I = I - u u^T / n on the
/// unmarked indicator u. Returns probabilities per vertex 1..N-1.
struct FullEvolution {
    std::vector<double> probs;
    double max_step_drift = 0.0;
};
FullEvolution evolve_full_grounded(const OrbitGraph& g, const MarkSet& marks, double total_time,
                                   std::size_t steps);

/// <u, v> / (|u|_2 |v|_2); throws invalid-input for a zero vector.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

}  // namespace wormhole::aqc
