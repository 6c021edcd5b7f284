#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rebsim/channels/channel.hpp"
#include "rebsim/protocols/herald.hpp"

namespace rebsim {

// Working register for a protocol run. Independent subsystems are kept as
// separate tensor factors and merged only when a channel or the herald spans
// them, which keeps the dense matrices small through the node-local stages.
class ProtocolState {
public:
    void introduce(const ModeLabel& mode) {
        for (const auto& f : factors_)
            if (f.has_mode(mode.name))
                throw CompositionError("mode '" + mode.name + "' introduced twice");
        factors_.push_back(NamedState::ground({mode}));
    }

    void apply(const Channel& ch) {
        NamedState merged = take_merged(ch.target_modes());
        // Move the channel's targets to the trailing positions once, so every
        // stage inside the channel applies without further permutations
        // (ancillas attach behind them). The factor keeps the new order; all
        // addressing is by name.
        const auto& targets = ch.target_modes();
        bool trailing = true;
        const std::size_t lead = merged.mode_count() - targets.size();
        for (std::size_t i = 0; i < targets.size(); ++i)
            if (merged.labels()[lead + i].name != targets[i]) { trailing = false; break; }
        if (!trailing) {
            std::vector<std::string> order;
            for (const auto& mode : merged.labels()) {
                if (std::find(targets.begin(), targets.end(), mode.name) == targets.end())
                    order.push_back(mode.name);
            }
            order.insert(order.end(), targets.begin(), targets.end());
            merged = permuted(merged, order);
        }
        factors_.push_back(ch(merged));
    }

    NamedState merge_all() const {
        if (factors_.empty()) throw CompositionError("protocol state is empty");
        NamedState out = factors_.front();
        for (std::size_t i = 1; i < factors_.size(); ++i)
            out = tensor_product(out, factors_[i]);
        return out;
    }

    double total_trace() const {
        double t = 1.0;
        for (const auto& f : factors_) t *= f.trace();
        return t;
    }

    // Largest top-Fock-level population across the named photonic modes;
    // the truncation-leakage probe.
    double max_top_level_population() const {
        double worst = 0.0;
        for (const auto& f : factors_) {
            const double tr = f.trace();
            if (tr <= 0.0) continue;
            for (const auto& m : f.labels()) {
                if (m.kind == ModeKind::Spin || m.dim < 3) continue;
                worst = std::max(worst, f.top_level_population(m.name) / tr);
            }
        }
        return worst;
    }

private:
    NamedState take_merged(const std::vector<std::string>& modes) {
        if (modes.empty())
            throw CompositionError("channel does not act on any existing mode");
        std::vector<std::size_t> hit;
        for (const auto& name : modes) {
            bool found = false;
            for (std::size_t i = 0; i < factors_.size(); ++i) {
                if (factors_[i].has_mode(name)) {
                    if (std::find(hit.begin(), hit.end(), i) == hit.end()) hit.push_back(i);
                    found = true;
                    break;
                }
            }
            if (!found)
                throw CompositionError("mode '" + name + "' not present in protocol state");
        }
        std::sort(hit.begin(), hit.end());
        NamedState merged = factors_[hit.front()];
        for (std::size_t k = 1; k < hit.size(); ++k)
            merged = tensor_product(merged, factors_[hit[k]]);
        for (std::size_t k = hit.size(); k-- > 0;)
            factors_.erase(factors_.begin() + static_cast<std::ptrdiff_t>(hit[k]));
        return merged;
    }

    std::vector<NamedState> factors_;
};

struct Step {
    std::string note;
    Channel channel;
};

// An ordered pipeline of channel invocations with a herald rule and per-pattern
// Bell-state assignment.
struct ProtocolSpec {
    std::string name;
    std::vector<ModeLabel> initial_modes;
    std::vector<Step> steps;
    HeraldRule herald;
    std::pair<std::string, std::string> spin_pair;
    std::map<std::string, double> swept_values;
    double leakage_tolerance = default_tolerances().truncation_leakage;
};

struct ProtocolOutcome {
    double success_probability = 0.0;
    double fidelity = 0.0;
    double infidelity = 1.0;
    std::string herald_pattern;
    std::map<std::string, double> swept_values;
    std::string error;           // empty if the run succeeded
    bool truncation_warning = false;

    bool ok() const { return error.empty(); }
};

// Execute the pipeline on an initially ground/vacuum composite state, sum the
// outcome over all accepting herald patterns with per-pattern Bell
// reassignment, and report the trace-weighted fidelity.
inline ProtocolOutcome run(const ProtocolSpec& spec) {
    ProtocolOutcome outcome;
    outcome.swept_values = spec.swept_values;

    ProtocolState state;
    for (const auto& m : spec.initial_modes) state.introduce(m);
    for (const auto& step : spec.steps) state.apply(step.channel);
    if (state.max_top_level_population() > spec.leakage_tolerance)
        outcome.truncation_warning = true;

    const NamedState joint = state.merge_all();
    const auto components = evaluate_herald(joint, spec.herald);

    double total = 0.0, weighted_fidelity = 0.0;
    std::string labels;
    for (const auto& c : components) {
        if (!labels.empty()) labels += "|";
        labels += c.label;
        if (c.probability <= 0.0) continue;
        total += c.probability;
        const auto f = bell_fidelity(c.state, spec.spin_pair.first, spec.spin_pair.second);
        weighted_fidelity += c.probability * f[c.target];
    }
    if (total <= 0.0)
        throw NumericalGuardError("protocol '" + spec.name +
                                  "': herald has zero total probability");

    outcome.success_probability = total;
    outcome.fidelity = weighted_fidelity / total;
    outcome.infidelity = 1.0 - outcome.fidelity;
    outcome.herald_pattern = labels;
    return outcome;
}

} // namespace rebsim
