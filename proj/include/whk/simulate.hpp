#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "whk/information_process.hpp"

namespace whk {

enum class Measure { P, B };

struct PathSample {
    std::vector<double> times;
    std::vector<double> values;
    Measure measure = Measure::P;
    std::uint64_t seed = 0;
    std::uint64_t path_index = 0;
};

/// Simulates the information process on a strictly increasing grid in
/// [0, U). Under P: draw X from the prior, an independent Brownian bridge
/// beta pinned at 0 at both ends, and set L = sigma*t*X + beta. Under B:
/// L is a standard Brownian bridge. Sampling is exact (sequential bridge
/// conditioning, no Euler discretisation), and path i depends only on
/// (seed, i), not on the thread count.
std::vector<PathSample> simulate_paths(const InformationModel& model,
                                       std::span<const double> grid,
                                       std::size_t n_paths, Measure measure,
                                       std::uint64_t seed, int n_threads = 0);

}  // namespace whk
