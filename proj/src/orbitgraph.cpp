#include "wormhole/orbitgraph.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>

#include "wormhole/error.hpp"

namespace wormhole {

namespace {

class DisjointSet {
public:
    explicit DisjointSet(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace

OrbitGraph OrbitGraph::build(Int n, std::span<const Int> alphas, BuildOptions options) {
    if (n < 6 || n >= numtheory::kMaxModulus) {
        throw Error(ErrorCode::InvalidN, "N=" + std::to_string(n) + " outside [6, 2^31)");
    }
    if (!options.skip_validation) {
        try {
            numtheory::factor_by_trial_division(n);
        } catch (const Error& e) {
            throw Error(ErrorCode::InvalidN, e.what());
        }
    }
    if (alphas.empty()) throw Error(ErrorCode::InvalidAlpha, "alpha list is empty");

    OrbitGraph g;
    g.n_ = n;
    for (Int a : alphas) {
        if (a < 1 || a >= n || !numtheory::is_totative(a, n)) {
            throw Error(ErrorCode::InvalidAlpha,
                        "alpha=" + std::to_string(a) + " is not a totative of " + std::to_string(n));
        }
        if ((a == 1 || a == n - 1) && !options.allow_trivial_alpha) {
            throw Error(ErrorCode::InvalidAlpha,
                        "alpha=" + std::to_string(a) + " only yields self-loops and 2-cycles");
        }
        g.alphas_.push_back(a);
    }

    for (Int a : g.alphas_) {
        for (Int i = 1; i < n; ++i) {
            const Int j = a * i % n;
            if (j != i) g.edges_.emplace_back(std::min(i, j), std::max(i, j));
        }
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

    g.adjacency_.resize(g.vertex_count());
    for (const auto& [u, v] : g.edges_) {
        g.adjacency_[static_cast<std::size_t>(u - 1)].push_back(v);
        g.adjacency_[static_cast<std::size_t>(v - 1)].push_back(u);
    }
    for (auto& list : g.adjacency_) std::sort(list.begin(), list.end());
    return g;
}

std::span<const Int> OrbitGraph::neighbors(Int v) const {
    if (v < 1 || v >= n_) {
        throw Error(ErrorCode::InvalidInput, "vertex " + std::to_string(v) + " out of range");
    }
    return adjacency_[static_cast<std::size_t>(v - 1)];
}

std::size_t OrbitGraph::max_degree() const noexcept {
    std::size_t best = 0;
    for (const auto& list : adjacency_) best = std::max(best, list.size());
    return best;
}

bool OrbitGraph::has_edge(Int u, Int v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::string_view to_string(VertexClass c) noexcept {
    switch (c) {
        case VertexClass::Black: return "black";
        case VertexClass::Red: return "red";
        case VertexClass::Blue: return "blue";
    }
    return "black";
}

VertexClass classify(Int v, const FactorPair& factors) {
    const Int g = numtheory::gcd(v, factors.n);
    if (g == 1) return VertexClass::Black;
    if (g == factors.p) return VertexClass::Red;
    if (g == factors.q) return VertexClass::Blue;
    throw Error(ErrorCode::InvalidInput,
                "vertex " + std::to_string(v) + " is not in 1..N-1 for N=" + std::to_string(factors.n));
}

std::size_t CycleDecomposition::count(VertexClass c) const noexcept {
    return static_cast<std::size_t>(std::count_if(
        components.begin(), components.end(), [c](const Component& k) { return k.vertex_class == c; }));
}

std::vector<std::vector<Int>> connected_components(const OrbitGraph& g) {
    DisjointSet dsu(g.vertex_count());
    for (const auto& [u, v] : g.edges()) {
        dsu.unite(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1));
    }
    std::vector<std::vector<Int>> out;
    std::vector<std::size_t> slot(g.vertex_count(), SIZE_MAX);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        const std::size_t root = dsu.find(i);
        if (slot[root] == SIZE_MAX) {
            slot[root] = out.size();
            out.emplace_back();
        }
        out[slot[root]].push_back(static_cast<Int>(i + 1));
    }
    return out;
}

CycleDecomposition decompose(const OrbitGraph& g, const FactorPair& factors) {
    if (factors.n != g.n()) {
        throw Error(ErrorCode::InvalidInput, "factor pair does not match graph modulus");
    }
    CycleDecomposition d;
    d.n = g.n();
    d.alphas = g.alphas();
    d.component_of.resize(g.vertex_count());
    for (auto& vertices : connected_components(g)) {
        const VertexClass cls = classify(vertices.front(), factors);
        for (Int v : vertices) {
            if (classify(v, factors) != cls) {
                throw Error(ErrorCode::InvalidInput, "component mixes vertex classes");
            }
            d.component_of[static_cast<std::size_t>(v - 1)] = d.components.size();
        }
        d.components.push_back(Component{std::move(vertices), cls});
    }
    return d;
}

CycleCountBreakdown cycle_count_formula(const FactorPair& f, Int alpha) {
    // Orbit of p lives in (Z/qZ)*, orbit of q in (Z/pZ)*.
    const Int orbit_p = numtheory::multiplicative_order(alpha, f.q);
    const Int orbit_q = numtheory::multiplicative_order(alpha, f.p);
    CycleCountBreakdown b;
    b.red_count = (f.q - 1) / orbit_p;
    b.blue_count = (f.p - 1) / orbit_q;
    b.black_count = (f.p - 1) * (f.q - 1) / numtheory::lcm(orbit_p, orbit_q);
    b.total = b.red_count + b.blue_count + b.black_count;
    return b;
}

Matrix laplacian(const OrbitGraph& g) {
    const std::size_t n = g.vertex_count();
    Matrix l(n, n);
    for (const auto& [u, v] : g.edges()) {
        const auto i = static_cast<std::size_t>(u - 1);
        const auto j = static_cast<std::size_t>(v - 1);
        l(i, j) = -1.0;
        l(j, i) = -1.0;
        l(i, i) += 1.0;
        l(j, j) += 1.0;
    }
    return l;
}

}  // namespace wormhole
