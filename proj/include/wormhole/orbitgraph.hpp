#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "wormhole/matrix.hpp"
#include "wormhole/numtheory.hpp"

namespace wormhole {

using numtheory::FactorPair;
using numtheory::Int;

struct BuildOptions {
    // alpha = 1 and alpha = N-1 only produce self-loops and 2-cycles.
    bool allow_trivial_alpha = false;
    // Skip the semiprime check on N for exploratory graphs.
    bool skip_validation = false;
};

/// Union of the multiplication graphs G_{N,alpha} over a list of alphas, on
/// the vertices 1..N-1. Self-loops are dropped and repeated edges collapsed.
/// Immutable after construction.
class OrbitGraph {
public:
    using Edge = std::pair<Int, Int>;  // first < second

    static OrbitGraph build(Int n, std::span<const Int> alphas, BuildOptions options = {});

    Int n() const noexcept { return n_; }
    std::size_t vertex_count() const noexcept { return static_cast<std::size_t>(n_ - 1); }
    const std::vector<Int>& alphas() const noexcept { return alphas_; }

    /// Sorted, duplicate-free.
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    /// Sorted neighbor labels of vertex v in [1, N-1].
    std::span<const Int> neighbors(Int v) const;

    std::size_t degree(Int v) const { return neighbors(v).size(); }
    std::size_t max_degree() const noexcept;

    bool has_edge(Int u, Int v) const;

private:
    Int n_ = 0;
    std::vector<Int> alphas_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Int>> adjacency_;  // index v-1
};

enum class VertexClass { Black, Red, Blue };

std::string_view to_string(VertexClass c) noexcept;

/// Black iff gcd(v,N)=1, Red iff gcd(v,N)=p, Blue iff gcd(v,N)=q.
VertexClass classify(Int v, const FactorPair& factors);

struct Component {
    std::vector<Int> vertices;  // ascending
    VertexClass vertex_class = VertexClass::Black;
};

struct CycleDecomposition {
    Int n = 0;
    std::vector<Int> alphas;
    std::vector<Component> components;  // ordered by smallest vertex
    std::vector<std::size_t> component_of;  // index v-1 -> component index

    std::size_t count(VertexClass c) const noexcept;
};

/// Connected components by union-find, each labeled with its color class.
CycleDecomposition decompose(const OrbitGraph& g, const FactorPair& factors);

/// Uncolored connected components; used where the factors are unknown.
std::vector<std::vector<Int>> connected_components(const OrbitGraph& g);

struct CycleCountBreakdown {
    Int red_count = 0;
    Int blue_count = 0;
    Int black_count = 0;
    Int total = 0;
};

/// Closed-form cycle count of G_{N,alpha} from the orbit sizes of p and q.
CycleCountBreakdown cycle_count_formula(const FactorPair& factors, Int alpha);

/// Dense combinatorial Laplacian L = D - A, row i <-> vertex i+1.
Matrix laplacian(const OrbitGraph& g);

}  // namespace wormhole
