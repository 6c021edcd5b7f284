#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

#include "rebsim/protocols/protocol.hpp"

namespace rebsim {

namespace detail {

inline bool swept_less(const std::map<std::string, double>& a,
                       const std::map<std::string, double>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace detail

// Non-dominated set (maximize success probability, minimize infidelity) as
// indices into `rows`, sorted by ascending success probability. Error rows
// are never part of the frontier. Duplicate (success, infidelity) pairs
// collapse to one representative, tie-broken by (infidelity, swept values).
inline std::vector<std::size_t> pareto_frontier(const std::vector<ProtocolOutcome>& rows) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].ok()) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (rows[a].success_probability != rows[b].success_probability)
            return rows[a].success_probability > rows[b].success_probability;
        if (rows[a].infidelity != rows[b].infidelity)
            return rows[a].infidelity < rows[b].infidelity;
        return detail::swept_less(rows[a].swept_values, rows[b].swept_values);
    });
    std::vector<std::size_t> frontier;
    double best_infidelity = std::numeric_limits<double>::infinity();
    for (std::size_t idx : order) {
        if (rows[idx].infidelity < best_infidelity) {
            frontier.push_back(idx);
            best_infidelity = rows[idx].infidelity;
        }
    }
    std::reverse(frontier.begin(), frontier.end()); // ascending success
    return frontier;
}

// Max-success row with infidelity <= bound; empty optional when no row
// qualifies (the explicit no-solution result).
inline std::optional<std::size_t> best_point(const std::vector<ProtocolOutcome>& rows,
                                             double max_infidelity) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].ok() || rows[i].infidelity > max_infidelity) continue;
        if (!best || rows[i].success_probability > rows[*best].success_probability ||
            (rows[i].success_probability == rows[*best].success_probability &&
             rows[i].infidelity < rows[*best].infidelity))
            best = i;
    }
    return best;
}

} // namespace rebsim
