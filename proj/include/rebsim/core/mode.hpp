#pragma once

#include <cstddef>
#include <string>
#include <unordered_set>
#include <vector>

#include "rebsim/core/errors.hpp"

namespace rebsim {

enum class ModeKind { Spin, Photon, IncoherentPhoton, Loss };

inline const char* to_string(ModeKind k) {
    switch (k) {
        case ModeKind::Spin: return "spin";
        case ModeKind::Photon: return "photon";
        case ModeKind::IncoherentPhoton: return "incoherent-photon";
        case ModeKind::Loss: return "loss";
    }
    return "?";
}

// A named, dimensioned subsystem. For photon-like modes dim = N_max + 1
// (Fock truncation); for spins dim is the number of levels.
struct ModeLabel {
    std::string name;
    int dim = 2;
    ModeKind kind = ModeKind::Photon;

    bool operator==(const ModeLabel& o) const {
        return name == o.name && dim == o.dim && kind == o.kind;
    }
};

inline ModeLabel spin_mode(std::string name) {
    return ModeLabel{std::move(name), 2, ModeKind::Spin};
}

inline ModeLabel photon_mode(std::string name, int dim) {
    return ModeLabel{std::move(name), dim, ModeKind::Photon};
}

inline ModeLabel incoherent_mode(std::string name, int dim) {
    return ModeLabel{std::move(name), dim, ModeKind::IncoherentPhoton};
}

inline ModeLabel loss_mode(std::string name, int dim) {
    return ModeLabel{std::move(name), dim, ModeKind::Loss};
}

inline void check_label(const ModeLabel& m) {
    if (m.name.empty())
        throw CompositionError("mode label with empty name");
    if (m.dim < 2)
        throw CompositionError("mode '" + m.name + "' has dim " +
                               std::to_string(m.dim) + " (must be >= 2)");
}

inline void check_unique_names(const std::vector<ModeLabel>& labels) {
    std::unordered_set<std::string> seen;
    for (const auto& m : labels) {
        check_label(m);
        if (!seen.insert(m.name).second)
            throw CompositionError("duplicate mode name '" + m.name + "'");
    }
}

inline std::size_t product_dim(const std::vector<ModeLabel>& labels) {
    std::size_t d = 1;
    for (const auto& m : labels) d *= static_cast<std::size_t>(m.dim);
    return d;
}

} // namespace rebsim
