#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "rebsim/core/errors.hpp"

namespace rebsim {

struct SweepAxis {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    int count = 1;
    enum class Scale { Linear, Log } scale = Scale::Linear;

    void check() const {
        if (count < 1) throw ConfigError("sweep axis '" + name + "': count must be >= 1");
        if (min > max) throw ConfigError("sweep axis '" + name + "': min > max");
        if (scale == Scale::Log && min <= 0.0)
            throw ConfigError("sweep axis '" + name + "': log scale requires min > 0");
    }

    double value(int i) const {
        if (count == 1) return min;
        const double f = static_cast<double>(i) / (count - 1);
        if (scale == Scale::Linear) return min + (max - min) * f;
        return std::exp(std::log(min) + (std::log(max) - std::log(min)) * f);
    }
};

// Row-major cartesian product of the axes; axis order is config order.
struct SweepGrid {
    std::vector<SweepAxis> axes;

    void check() const {
        for (const auto& a : axes) a.check();
    }

    std::size_t cardinality() const {
        std::size_t n = 1;
        for (const auto& a : axes) n *= static_cast<std::size_t>(a.count);
        return n;
    }

    std::map<std::string, double> point(std::size_t row_major_index) const {
        std::map<std::string, double> values;
        std::size_t rem = row_major_index;
        for (std::size_t a = axes.size(); a-- > 0;) {
            const auto c = static_cast<std::size_t>(axes[a].count);
            values[axes[a].name] = axes[a].value(static_cast<int>(rem % c));
            rem /= c;
        }
        return values;
    }
};

} // namespace rebsim
