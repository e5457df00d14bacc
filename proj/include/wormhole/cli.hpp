#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wormhole/numtheory.hpp"
#include "wormhole/rng.hpp"

namespace wormhole::cli {

struct RunConfig {
    numtheory::Int n = 0;
    std::vector<numtheory::Int> alphas;
    std::optional<std::string> marks;  // comma list or "all-but-one"
    std::optional<std::size_t> k;
    std::uint64_t seed = kDefaultSeed;
    std::optional<double> dt;
    double tol = 1e-10;
    std::size_t max_iters = 1'000'000;
    double total_time = 10.0;
    std::size_t steps = 0;  // 0: integrator default
    std::uint64_t trials = 1000;
    std::string mode = "strict";
    std::string format;  // empty: per-command default
    std::string output;  // empty: stdout
    std::size_t cadence = 0;
};

/// Entry point shared by the executable and the tests. Returns the process
/// exit status: 0 success, 2 validation error, 3 numerical failure,
/// 4 factor not found within the attempt budget.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wormhole::cli
