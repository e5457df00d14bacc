#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "wormhole/marks.hpp"
#include "wormhole/orbitgraph.hpp"

// Success conditions for a set of marked vertices and their probability P(k)
// over uniformly random k-subsets, exactly and by Monte Carlo.
namespace wormhole::marking {

enum class Mode { Strict, Weak };

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// Every black component holds a mark and some red or blue component holds
/// none.
bool check_strict(const CycleDecomposition& decomp, const MarkSet& marks);

/// 1 / (2 (N - 1)).
double default_weak_eps(Int n) noexcept;

/// The walk's limiting distribution puts mass above eps only on vertices
/// sharing a factor with N.
bool check_weak(const OrbitGraph& g, const FactorPair& factors, const MarkSet& marks,
                double eps);

/// Uniform k-subset of {1, ..., n_vertices} without replacement.
MarkSet sample_marks(std::size_t n_vertices, std::size_t k, std::mt19937_64& rng);

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

struct ExactProbability {
    std::uint64_t successes = 0;
    std::uint64_t subsets = 0;
    double value() const noexcept {
        return subsets == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(subsets);
    }
};

/// Exact fraction of k-subsets satisfying the predicate. Strict mode walks
/// subsets in lexicographic order and cuts branches that can no longer mark
/// every black component. Throws use-monte-carlo beyond the budget.
ExactProbability exact_success_prob(const OrbitGraph& g, const FactorPair& factors,
                                    std::size_t k, Mode mode,
                                    std::uint64_t budget = kDefaultEnumerationBudget);

struct SuccessEstimate {
    std::size_t k = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double p_hat = 0.0;
    double std_err = 0.0;
};

SuccessEstimate make_estimate(std::size_t k, std::uint64_t trials, std::uint64_t successes);

/// Monte Carlo estimate; trial i draws its marks from substream(seed, k, i).
SuccessEstimate estimate_success_prob(const OrbitGraph& g, const FactorPair& factors,
                                      std::size_t k, std::uint64_t trials, Mode mode,
                                      std::uint64_t seed);
SuccessEstimate estimate_success_prob_serial(const OrbitGraph& g, const FactorPair& factors,
                                             std::size_t k, std::uint64_t trials, Mode mode,
                                             std::uint64_t seed);

/// One estimate per k, parallel across k. Identical to calling the serial
/// estimator for each k in turn.
std::vector<SuccessEstimate> success_sweep(const OrbitGraph& g, const FactorPair& factors,
                                           std::span<const std::size_t> ks,
                                           std::uint64_t trials, Mode mode,
                                           std::uint64_t seed);

}  // namespace wormhole::marking
