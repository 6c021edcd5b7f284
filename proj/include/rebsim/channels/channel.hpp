#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "rebsim/core/named_state.hpp"

namespace rebsim {

// One stage of a channel: attach fresh ground-state ancillas, apply one
// Kraus family sum_i K_i rho K_i^dag, trace out modes.
struct ChannelStage {
    std::vector<ModeLabel> attach;
    std::vector<NamedOperator> kraus;
    std::vector<std::string> trace_out;
};

// A completely positive trace-non-increasing map on named modes, expressed as
// an ordered list of stages. Multi-stage channels trace internal ancillas as
// soon as they are done with them, which keeps the working register small.
// Channels are immutable after construction and their application is pure.
class Channel {
public:
    Channel(std::string name, std::vector<ChannelStage> stages,
            std::vector<std::string> require_vacuum = {})
        : name_(std::move(name)),
          stages_(std::move(stages)),
          require_vacuum_(std::move(require_vacuum)) {
        if (stages_.empty())
            throw CompositionError("channel '" + name_ + "' has no stages");
        std::vector<std::string> internal;
        for (const auto& st : stages_) {
            if (st.kraus.empty())
                throw CompositionError("channel '" + name_ + "' has a stage without "
                                       "Kraus operators");
            for (const auto& k : st.kraus)
                if (k.labels() != st.kraus.front().labels())
                    throw CompositionError("channel '" + name_ +
                                           "': Kraus operators disagree on mode labels");
            for (const auto& a : st.attach) internal.push_back(a.name);
            for (const auto& m : st.kraus.front().labels()) {
                const bool is_internal =
                    std::find(internal.begin(), internal.end(), m.name) != internal.end();
                const bool known =
                    std::find(targets_.begin(), targets_.end(), m.name) != targets_.end();
                if (!is_internal && !known) targets_.push_back(m.name);
            }
        }
    }

    // Single-stage convenience constructor.
    Channel(std::string name, std::vector<ModeLabel> attach,
            std::vector<NamedOperator> kraus, std::vector<std::string> trace_out,
            std::vector<std::string> require_vacuum = {})
        : Channel(std::move(name),
                  std::vector<ChannelStage>{ChannelStage{std::move(attach), std::move(kraus),
                                                         std::move(trace_out)}},
                  std::move(require_vacuum)) {}

    const std::string& name() const { return name_; }
    const std::vector<ChannelStage>& stages() const { return stages_; }
    // Modes that must already exist in the input state.
    const std::vector<std::string>& target_modes() const { return targets_; }
    const std::vector<std::string>& vacuum_preconditions() const { return require_vacuum_; }

    NamedState operator()(const NamedState& in) const {
        check_vacuum(in);
        NamedState work = in;
        for (const auto& st : stages_) {
            for (const auto& m : st.attach)
                work = tensor_product(work, NamedState::ground({m}));
            work = apply_kraus(st.kraus, work);
            if (!st.trace_out.empty()) work = partial_trace(work, st.trace_out);
        }
        return work;
    }

private:
    void check_vacuum(const NamedState& state) const {
        for (const auto& name : require_vacuum_) {
            const int pos = state.find_mode(name);
            if (pos < 0)
                throw CompositionError("channel '" + name_ + "': mode '" + name +
                                       "' not found");
            const auto s = detail::strides(state.labels());
            const int d = state.labels()[pos].dim;
            double occupied = 0.0;
            for (std::size_t idx = 0; idx < state.dim(); ++idx)
                if ((idx / s[pos]) % static_cast<std::size_t>(d) != 0)
                    occupied += state.matrix()(idx, idx).real();
            if (occupied > 1e-12 * std::max(1.0, state.trace()))
                throw CompositionError("channel '" + name_ + "': target mode '" + name +
                                       "' is not in vacuum");
        }
    }

    std::string name_;
    std::vector<ChannelStage> stages_;
    std::vector<std::string> require_vacuum_;
    std::vector<std::string> targets_;
};

namespace detail {

// Generated ancilla names use a reserved prefix so they cannot collide with
// user-declared protocol modes.
inline std::string ancilla_name(const std::string& base, const char* role) {
    return "~" + base + "." + role;
}

} // namespace detail

} // namespace rebsim
