#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "rebsim/protocols/pareto.hpp"
#include "rebsim/sweep/grid.hpp"

namespace rebsim {

struct SweepMetadata {
    std::string config_hash;
    std::size_t rows = 0;
    int workers = 1;
    double wall_seconds = 0.0;
};

struct SweepResult {
    SweepGrid grid;
    std::vector<ProtocolOutcome> rows; // row-major grid index order
    SweepMetadata meta;
};

using PointEvaluator = std::function<ProtocolOutcome(const std::map<std::string, double>&)>;

// Evaluate every grid point exactly once. Per-point failures become error
// rows instead of aborting the sweep, and the result is identical for any
// parallelism degree: each row is computed independently from its grid
// values and written by index.
inline SweepResult run_sweep(const PointEvaluator& eval, const SweepGrid& grid,
                             int parallelism, const std::string& config_hash = "") {
    grid.check();
    if (parallelism < 1) parallelism = 1;
    const std::size_t total = grid.cardinality();

    SweepResult result;
    result.grid = grid;
    result.rows.resize(total);
    result.meta.config_hash = config_hash;
    result.meta.rows = total;
    result.meta.workers = parallelism;

    const auto started = std::chrono::steady_clock::now();
    auto worker_loop = [&](std::atomic<std::size_t>& cursor) {
        for (std::size_t i = cursor.fetch_add(1); i < total; i = cursor.fetch_add(1)) {
            const auto values = grid.point(i);
            try {
                result.rows[i] = eval(values);
                result.rows[i].swept_values = values;
            } catch (const std::exception& e) {
                ProtocolOutcome failed;
                failed.swept_values = values;
                failed.error = e.what();
                failed.success_probability = std::numeric_limits<double>::quiet_NaN();
                failed.fidelity = std::numeric_limits<double>::quiet_NaN();
                failed.infidelity = std::numeric_limits<double>::quiet_NaN();
                result.rows[i] = std::move(failed);
            }
        }
    };

    std::atomic<std::size_t> cursor{0};
    if (parallelism == 1 || total <= 1) {
        worker_loop(cursor);
    } else {
        std::vector<std::thread> pool;
        const int n = static_cast<int>(std::min<std::size_t>(total, parallelism));
        pool.reserve(n);
        for (int w = 0; w < n; ++w) pool.emplace_back([&] { worker_loop(cursor); });
        for (auto& t : pool) t.join();
    }
    result.meta.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

// Frontier rows of a sweep (indices into result.rows).
inline std::vector<std::size_t> pareto_rows(const SweepResult& result) {
    return pareto_frontier(result.rows);
}

inline std::optional<std::size_t> best_point(const SweepResult& result, double max_infidelity) {
    return best_point(result.rows, max_infidelity);
}

} // namespace rebsim
