#include "wormhole/marking.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "wormhole/error.hpp"
#include "wormhole/rng.hpp"
#include "wormhole/walk.hpp"

namespace wormhole::marking {

namespace {

// Reusable view of a decomposition for evaluating many mark sets.
class StrictEvaluator {
public:
    explicit StrictEvaluator(const CycleDecomposition& d) : d_(d), hits_(d.components.size(), 0) {
        for (const auto& c : d.components) {
            if (c.vertex_class == VertexClass::Black) ++black_;
        }
    }

    bool operator()(std::span<const Int> marks) {
        std::fill(hits_.begin(), hits_.end(), 0);
        std::size_t covered = 0;
        for (Int v : marks) {
            const std::size_t c = d_.component_of[static_cast<std::size_t>(v - 1)];
            if (hits_[c]++ == 0 && d_.components[c].vertex_class == VertexClass::Black) ++covered;
        }
        if (covered != black_) return false;
        for (std::size_t c = 0; c < hits_.size(); ++c) {
            if (hits_[c] == 0 && d_.components[c].vertex_class != VertexClass::Black) return true;
        }
        return false;
    }

private:
    const CycleDecomposition& d_;
    std::vector<std::uint32_t> hits_;
    std::size_t black_ = 0;
};

// Lexicographic k-subset enumeration with pruning on black coverage.
class PrunedStrictCounter {
public:
    explicit PrunedStrictCounter(const CycleDecomposition& d)
        : d_(d), hits_(d.components.size(), 0), last_(d.components.size(), 0) {
        for (std::size_t c = 0; c < d.components.size(); ++c) {
            last_[c] = d.components[c].vertices.back();
            if (d.components[c].vertex_class == VertexClass::Black) ++black_;
        }
    }

    std::uint64_t count(std::size_t k) {
        successes_ = 0;
        recurse(1, k, 0);
        return successes_;
    }

private:
    std::size_t comp(Int v) const { return d_.component_of[static_cast<std::size_t>(v - 1)]; }
    bool black(std::size_t c) const { return d_.components[c].vertex_class == VertexClass::Black; }

    void recurse(Int next, std::size_t remaining, std::size_t covered) {
        if (black_ - covered > remaining) return;
        if (remaining == 0) {
            if (covered != black_) return;
            for (std::size_t c = 0; c < hits_.size(); ++c) {
                if (hits_[c] == 0 && !black(c)) {
                    ++successes_;
                    return;
                }
            }
            return;
        }
        const Int n = d_.n;
        for (Int v = next; v <= n - 1; ++v) {
            if (static_cast<std::size_t>(n - v) < remaining) return;
            const std::size_t c = comp(v);
            const bool newly = hits_[c]++ == 0 && black(c);
            recurse(v + 1, remaining - 1, covered + (newly ? 1 : 0));
            --hits_[c];
            // Skipping v for good: a black component ending at v with no mark
            // can never be covered later.
            if (black(c) && hits_[c] == 0 && last_[c] == v) return;
        }
    }

    const CycleDecomposition& d_;
    std::vector<std::uint32_t> hits_;
    std::vector<Int> last_;
    std::size_t black_ = 0;
    std::uint64_t successes_ = 0;
};

void require_k(std::size_t n_vertices, std::size_t k) {
    if (k < 1 || k + 1 > n_vertices) {
        throw Error(ErrorCode::InvalidK, "k=" + std::to_string(k) + " must lie in [1, " +
                                             std::to_string(n_vertices) + " - 1]");
    }
}

bool evaluate(Mode mode, const OrbitGraph& g, const FactorPair& f, StrictEvaluator& strict,
              const MarkSet& marks) {
    if (mode == Mode::Strict) return strict(marks.vertices());
    return check_weak(g, f, marks, default_weak_eps(g.n()));
}

}  // namespace

bool check_strict(const CycleDecomposition& decomp, const MarkSet& marks) {
    StrictEvaluator eval(decomp);
    return eval(marks.vertices());
}

double default_weak_eps(Int n) noexcept { return 1.0 / (2.0 * static_cast<double>(n - 1)); }

bool check_weak(const OrbitGraph& g, const FactorPair& factors, const MarkSet& marks,
                double eps) {
    if (!(eps > 0.0)) throw Error(ErrorCode::InvalidInput, "weak threshold must be positive");
    const std::vector<Int> unmarked = marks.complement(g.n());
    const std::vector<double> limit = walk::limiting_distribution(g, marks);
    for (std::size_t r = 0; r < unmarked.size(); ++r) {
        if (limit[r] > eps && numtheory::gcd(unmarked[r], factors.n) == 1) return false;
    }
    return true;
}

MarkSet sample_marks(std::size_t n_vertices, std::size_t k, std::mt19937_64& rng) {
    require_k(n_vertices, k);
    std::vector<Int> pool(n_vertices);
    std::iota(pool.begin(), pool.end(), Int{1});
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, n_vertices - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return MarkSet::from(std::move(pool), static_cast<Int>(n_vertices) + 1);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(r);
}

ExactProbability exact_success_prob(const OrbitGraph& g, const FactorPair& factors,
                                    std::size_t k, Mode mode, std::uint64_t budget) {
    const std::size_t nv = g.vertex_count();
    require_k(nv, k);
    const std::uint64_t subsets = binomial(nv, k);
    if (subsets > budget) {
        throw Error(ErrorCode::UseMonteCarlo, std::to_string(subsets) +
                                                  " subsets exceed the enumeration budget");
    }
    ExactProbability out;
    out.subsets = subsets;
    if (mode == Mode::Strict) {
        const CycleDecomposition d = decompose(g, factors);
        PrunedStrictCounter counter(d);
        out.successes = counter.count(k);
        return out;
    }

    const double eps = default_weak_eps(g.n());
    std::vector<Int> chosen(k);
    std::iota(chosen.begin(), chosen.end(), Int{1});
    const Int top = static_cast<Int>(nv);
    while (true) {
        if (check_weak(g, factors, MarkSet::from(chosen, g.n()), eps)) ++out.successes;
        std::size_t i = k;
        while (i > 0 && chosen[i - 1] == top - static_cast<Int>(k - i)) --i;
        if (i == 0) break;
        ++chosen[i - 1];
        for (std::size_t j = i; j < k; ++j) chosen[j] = chosen[j - 1] + 1;
    }
    return out;
}

SuccessEstimate make_estimate(std::size_t k, std::uint64_t trials, std::uint64_t successes) {
    SuccessEstimate e{k, trials, successes, 0.0, 0.0};
    if (trials > 0) {
        e.p_hat = static_cast<double>(successes) / static_cast<double>(trials);
        e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
    }
    return e;
}

SuccessEstimate estimate_success_prob_serial(const OrbitGraph& g, const FactorPair& factors,
                                             std::size_t k, std::uint64_t trials, Mode mode,
                                             std::uint64_t seed) {
    if (trials < 1) throw Error(ErrorCode::InvalidInput, "trials must be at least 1");
    require_k(g.vertex_count(), k);
    const CycleDecomposition d = decompose(g, factors);
    StrictEvaluator strict(d);
    std::uint64_t successes = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        auto rng = substream(seed, k, i);
        if (evaluate(mode, g, factors, strict, sample_marks(g.vertex_count(), k, rng))) ++successes;
    }
    return make_estimate(k, trials, successes);
}

SuccessEstimate estimate_success_prob(const OrbitGraph& g, const FactorPair& factors,
                                      std::size_t k, std::uint64_t trials, Mode mode,
                                      std::uint64_t seed) {
    if (trials < 1) throw Error(ErrorCode::InvalidInput, "trials must be at least 1");
    require_k(g.vertex_count(), k);
    const CycleDecomposition d = decompose(g, factors);
    std::uint64_t successes = 0;
    const auto n_trials = static_cast<std::int64_t>(trials);
#pragma omp parallel reduction(+ : successes)
    {
        StrictEvaluator strict(d);
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n_trials; ++i) {
            auto rng = substream(seed, k, static_cast<std::uint64_t>(i));
            if (evaluate(mode, g, factors, strict, sample_marks(g.vertex_count(), k, rng))) {
                ++successes;
            }
        }
    }
    return make_estimate(k, trials, successes);
}

std::vector<SuccessEstimate> success_sweep(const OrbitGraph& g, const FactorPair& factors,
                                           std::span<const std::size_t> ks,
                                           std::uint64_t trials, Mode mode,
                                           std::uint64_t seed) {
    if (trials < 1) throw Error(ErrorCode::InvalidInput, "trials must be at least 1");
    for (std::size_t k : ks) require_k(g.vertex_count(), k);
    const CycleDecomposition d = decompose(g, factors);
    std::vector<SuccessEstimate> out(ks.size());
    const auto cells = static_cast<std::int64_t>(ks.size());
#pragma omp parallel
    {
        StrictEvaluator strict(d);
#pragma omp for schedule(dynamic)
        for (std::int64_t c = 0; c < cells; ++c) {
            const std::size_t k = ks[static_cast<std::size_t>(c)];
            std::uint64_t successes = 0;
            for (std::uint64_t i = 0; i < trials; ++i) {
                auto rng = substream(seed, k, i);
                if (evaluate(mode, g, factors, strict, sample_marks(g.vertex_count(), k, rng))) {
                    ++successes;
                }
            }
            out[static_cast<std::size_t>(c)] = make_estimate(k, trials, successes);
        }
    }
    return out;
}

}  // namespace wormhole::marking
