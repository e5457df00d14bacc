#include "wormhole/marks.hpp"

#include <algorithm>
#include <string>

#include "wormhole/error.hpp"

namespace wormhole {

MarkSet MarkSet::from(std::vector<numtheory::Int> vertices, numtheory::Int n) {
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
        throw Error(ErrorCode::InvalidMarks, "duplicate marked vertex");
    }
    if (vertices.empty()) throw Error(ErrorCode::InvalidMarks, "at least one vertex must be marked");
    if (vertices.front() < 1 || vertices.back() > n - 1) {
        throw Error(ErrorCode::InvalidMarks, "marked vertex outside 1.." + std::to_string(n - 1));
    }
    if (static_cast<numtheory::Int>(vertices.size()) > n - 2) {
        throw Error(ErrorCode::InvalidMarks, "at least one vertex must stay unmarked");
    }
    MarkSet m;
    m.vertices_ = std::move(vertices);
    return m;
}

bool MarkSet::contains(numtheory::Int v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::vector<numtheory::Int> MarkSet::complement(numtheory::Int n) const {
    std::vector<numtheory::Int> out;
    out.reserve(static_cast<std::size_t>(n - 1) - vertices_.size());
    auto it = vertices_.begin();
    for (numtheory::Int v = 1; v < n; ++v) {
        if (it != vertices_.end() && *it == v) {
            ++it;
            continue;
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace wormhole
