#include "whk/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace whk {

namespace {

void validate_grid(const InformationModel& model, std::span<const double> grid) {
    if (grid.empty()) throw std::invalid_argument("simulate_paths: empty grid");
    if (!(grid.front() >= 0.0)) throw std::domain_error("simulate_paths: grid starts before 0");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw std::invalid_argument("simulate_paths: grid must be strictly increasing");
        }
    }
    if (grid.back() > model.max_time()) {
        throw std::domain_error("simulate_paths: grid point at or beyond the horizon");
    }
}

// Exact Brownian bridge pinned at 0 at times 0 and U, sampled sequentially.
void sample_bridge(const InformationModel& model, std::span<const double> grid,
                   Rng& rng, std::vector<double>& out) {
    double prev_t = 0.0;
    double prev_v = 0.0;
    out.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        if (t == prev_t) {
            out[i] = prev_v;
            continue;
        }
        const BridgeLaw law = bridge_conditional_law(model, prev_t, t, prev_v);
        const double v = law.mean + std::sqrt(law.variance) * rng.normal();
        out[i] = v;
        prev_t = t;
        prev_v = v;
    }
}

}  // namespace

std::vector<PathSample> simulate_paths(const InformationModel& model,
                                       std::span<const double> grid,
                                       std::size_t n_paths, Measure measure,
                                       std::uint64_t seed, int n_threads) {
    validate_grid(model, grid);
    if (n_paths < 1) throw std::invalid_argument("simulate_paths: n_paths must be >= 1");

    std::vector<PathSample> paths(n_paths);

    auto fill_range = [&](std::size_t begin, std::size_t end) {
        std::vector<double> bridge;
        for (std::size_t i = begin; i < end; ++i) {
            Rng rng(seed, i);
            PathSample& path = paths[i];
            path.times.assign(grid.begin(), grid.end());
            path.measure = measure;
            path.seed = seed;
            path.path_index = i;
            if (measure == Measure::B) {
                sample_bridge(model, grid, rng, path.values);
            } else {
                const double x = model.prior().sample(rng);
                sample_bridge(model, grid, rng, bridge);
                path.values.resize(grid.size());
                for (std::size_t k = 0; k < grid.size(); ++k) {
                    path.values[k] = model.sigma() * grid[k] * x + bridge[k];
                }
            }
        }
    };

    std::size_t workers = n_threads > 0
                              ? static_cast<std::size_t>(n_threads)
                              : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, n_paths);
    if (workers <= 1) {
        fill_range(0, n_paths);
        return paths;
    }

    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n_paths + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n_paths, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(fill_range, begin, end);
    }
    for (std::thread& t : pool) t.join();
    return paths;
}

}  // namespace whk
