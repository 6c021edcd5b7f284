#pragma once

#include <array>
#include <cmath>
#include <string>

#include "rebsim/core/named_state.hpp"

namespace rebsim {

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline const char* to_string(BellKind k) {
    switch (k) {
        case BellKind::PhiPlus: return "phi_plus";
        case BellKind::PhiMinus: return "phi_minus";
        case BellKind::PsiPlus: return "psi_plus";
        case BellKind::PsiMinus: return "psi_minus";
    }
    return "?";
}

// Two-qubit Bell vector in the basis |00>,|01>,|10>,|11>.
inline Vector bell_vector(BellKind k) {
    Vector v = Vector::Zero(4);
    const double s = 1.0 / std::sqrt(2.0);
    switch (k) {
        case BellKind::PhiPlus:  v(0) = s; v(3) = s; break;
        case BellKind::PhiMinus: v(0) = s; v(3) = -s; break;
        case BellKind::PsiPlus:  v(1) = s; v(2) = s; break;
        case BellKind::PsiMinus: v(1) = s; v(2) = -s; break;
    }
    return v;
}

struct BellFidelities {
    double phi_plus = 0, phi_minus = 0, psi_plus = 0, psi_minus = 0;

    double operator[](BellKind k) const {
        switch (k) {
            case BellKind::PhiPlus: return phi_plus;
            case BellKind::PhiMinus: return phi_minus;
            case BellKind::PsiPlus: return psi_plus;
            case BellKind::PsiMinus: return psi_minus;
        }
        return 0;
    }
};

// Overlap of the normalized two-spin reduced state with all four Bell states.
// All modes other than the two named spins are traced out first.
inline BellFidelities bell_fidelity(const NamedState& state,
                                    const std::string& spin_a,
                                    const std::string& spin_b) {
    if (state.mode(spin_a).dim != 2 || state.mode(spin_b).dim != 2)
        throw CompositionError("bell_fidelity: both spins must have dim 2");
    const double tr = state.trace();
    if (!(tr > 0.0))
        throw NumericalGuardError("bell_fidelity: zero-trace state has undefined fidelity");

    std::vector<std::string> others;
    for (const auto& m : state.labels())
        if (m.name != spin_a && m.name != spin_b) others.push_back(m.name);
    NamedState reduced = partial_trace(state, others);
    reduced = permuted(reduced, {spin_a, spin_b});
    const Matrix rho = reduced.matrix() / tr;

    BellFidelities f;
    auto overlap = [&rho](BellKind k) {
        const Vector v = bell_vector(k);
        return std::real((v.adjoint() * rho * v)(0, 0));
    };
    f.phi_plus = overlap(BellKind::PhiPlus);
    f.phi_minus = overlap(BellKind::PhiMinus);
    f.psi_plus = overlap(BellKind::PsiPlus);
    f.psi_minus = overlap(BellKind::PsiMinus);
    return f;
}

} // namespace rebsim
