#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rebsim/channels/photonic.hpp"
#include "rebsim/core/bell.hpp"

namespace rebsim {

// A physical detector watching one or more photonic modes; for threshold
// detection a click means "not all watched modes in vacuum", for
// number-resolving detection "exactly one photon total across them".
struct DetectorSpec {
    std::string name;
    std::vector<std::string> modes;
};

enum class ClickReq { Click, NoClick };

// One accepting detector pattern with the Bell state it heralds.
struct HeraldPattern {
    std::string label;
    std::vector<ClickReq> per_detector; // aligned with HeraldRule::detectors
    BellKind target = BellKind::PhiPlus;
};

struct HeraldRule {
    std::vector<DetectorSpec> detectors;
    std::vector<HeraldPattern> accepting;
    DetectionKind kind = DetectionKind::Click;

    void check() const {
        if (accepting.empty())
            throw CompositionError("herald rule needs at least one accepting pattern");
        for (const auto& p : accepting)
            if (p.per_detector.size() != detectors.size())
                throw CompositionError("herald pattern '" + p.label +
                                       "' does not cover every detector");
    }

    std::vector<std::string> detected_modes() const {
        std::vector<std::string> out;
        for (const auto& d : detectors)
            out.insert(out.end(), d.modes.begin(), d.modes.end());
        return out;
    }
};

struct HeraldComponent {
    std::string label;
    BellKind target = BellKind::PhiPlus;
    double probability = 0.0;
    NamedState state; // detector modes projected and traced out
};

namespace detail {

// Photon count per detector for every joint basis index.
inline std::vector<std::vector<int>> detector_counts(const NamedState& joint,
                                                     const HeraldRule& rule) {
    const auto s = strides(joint.labels());
    std::vector<std::vector<int>> counts(rule.detectors.size(),
                                         std::vector<int>(joint.dim(), 0));
    for (std::size_t d = 0; d < rule.detectors.size(); ++d) {
        for (const auto& mode_name : rule.detectors[d].modes) {
            const int pos = joint.find_mode(mode_name);
            if (pos < 0)
                throw CompositionError("herald: detector mode '" + mode_name +
                                       "' not present in the final state");
            const auto dim = static_cast<std::size_t>(joint.labels()[pos].dim);
            for (std::size_t idx = 0; idx < joint.dim(); ++idx)
                counts[d][idx] += static_cast<int>((idx / s[pos]) % dim);
        }
    }
    return counts;
}

inline bool pattern_admits(const HeraldPattern& p, DetectionKind kind,
                           const std::vector<std::vector<int>>& counts, std::size_t idx) {
    for (std::size_t d = 0; d < p.per_detector.size(); ++d) {
        const int n = counts[d][idx];
        const bool ok = p.per_detector[d] == ClickReq::NoClick
                            ? (n == 0)
                            : (kind == DetectionKind::Click ? n >= 1 : n == 1);
        if (!ok) return false;
    }
    return true;
}

} // namespace detail

namespace detail {

// Partial trace of (Pi rho Pi) for a diagonal projector given as a basis
// mask, without materializing the projected matrix.
inline NamedState masked_partial_trace(const NamedState& state,
                                       const std::vector<std::string>& names,
                                       const std::vector<std::uint8_t>& mask) {
    std::vector<bool> traced(state.mode_count(), false);
    for (const auto& name : names) {
        const int pos = state.find_mode(name);
        if (pos < 0) throw CompositionError("herald: unknown mode '" + name + "'");
        traced[static_cast<std::size_t>(pos)] = true;
    }
    const auto all_strides = strides(state.labels());
    std::vector<ModeLabel> kept;
    std::vector<std::size_t> kept_strides, traced_strides;
    std::vector<int> traced_dims;
    for (std::size_t i = 0; i < state.mode_count(); ++i) {
        if (traced[i]) {
            traced_strides.push_back(all_strides[i]);
            traced_dims.push_back(state.labels()[i].dim);
        } else {
            kept.push_back(state.labels()[i]);
            kept_strides.push_back(all_strides[i]);
        }
    }
    auto offsets = [](const std::vector<std::size_t>& strides_in,
                      const std::vector<int>& dims) {
        std::size_t total = 1;
        for (int d : dims) total *= static_cast<std::size_t>(d);
        std::vector<std::size_t> off(total, 0);
        std::vector<int> digit(dims.size(), 0);
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t o = 0;
            for (std::size_t p = 0; p < dims.size(); ++p)
                o += static_cast<std::size_t>(digit[p]) * strides_in[p];
            off[idx] = o;
            for (std::size_t p = dims.size(); p-- > 0;) {
                if (++digit[p] < dims[p]) break;
                digit[p] = 0;
            }
        }
        return off;
    };
    std::vector<int> kept_dims;
    for (const auto& m : kept) kept_dims.push_back(m.dim);
    const auto kept_off = offsets(kept_strides, kept_dims);
    const auto traced_off = offsets(traced_strides, traced_dims);

    // The mask only involves detector-mode digits, all of which are traced,
    // so admission is a property of the traced offset alone.
    std::vector<std::size_t> admitted;
    for (std::size_t t : traced_off)
        if (mask[t]) admitted.push_back(t);

    const Matrix& rho = state.matrix();
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(kept_off.size()),
                              static_cast<Eigen::Index>(kept_off.size()));
    for (std::size_t c = 0; c < kept_off.size(); ++c)
        for (std::size_t r = 0; r < kept_off.size(); ++r) {
            Complex sum(0, 0);
            for (std::size_t t : admitted)
                sum += rho(static_cast<Eigen::Index>(kept_off[r] + t),
                           static_cast<Eigen::Index>(kept_off[c] + t));
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = sum;
        }
    return NamedState(std::move(kept), std::move(out));
}

} // namespace detail

// Project the joint state onto each accepting pattern (diagonal projectors in
// the Fock basis), trace out every detected mode, and report the component
// probability. The pattern probabilities of the full click/no-click family
// tile the pre-measurement trace.
inline std::vector<HeraldComponent> evaluate_herald(const NamedState& joint,
                                                    const HeraldRule& rule) {
    rule.check();
    const auto counts = detail::detector_counts(joint, rule);
    const auto detected = rule.detected_modes();

    std::vector<HeraldComponent> out;
    out.reserve(rule.accepting.size());
    for (const auto& pattern : rule.accepting) {
        std::vector<std::uint8_t> mask(joint.dim());
        for (std::size_t idx = 0; idx < joint.dim(); ++idx)
            mask[idx] = detail::pattern_admits(pattern, rule.kind, counts, idx) ? 1 : 0;
        NamedState component = detail::masked_partial_trace(joint, detected, mask);
        out.push_back(HeraldComponent{pattern.label, pattern.target, component.trace(),
                                      std::move(component)});
    }
    return out;
}

} // namespace rebsim
