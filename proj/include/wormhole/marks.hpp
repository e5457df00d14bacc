#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wormhole/numtheory.hpp"

namespace wormhole {

/// The k "wormhole" vertices: sorted, distinct, inside [1, N-1], with at
/// least one vertex of the graph left unmarked.
class MarkSet {
public:
    MarkSet() = default;

    /// Sorts and validates; throws invalid-marks.
    static MarkSet from(std::vector<numtheory::Int> vertices, numtheory::Int n);

    const std::vector<numtheory::Int>& vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    bool contains(numtheory::Int v) const;

    /// Unmarked vertices of 1..N-1, ascending.
    std::vector<numtheory::Int> complement(numtheory::Int n) const;

private:
    std::vector<numtheory::Int> vertices_;
};

}  // namespace wormhole
