#pragma once

#include <cmath>

#include "rebsim/channels/channel.hpp"

namespace rebsim {

// Parameters of the spin building blocks: preparation fidelity and the
// one-/two-qubit depolarizing fidelities.
struct SpinChannelParams {
    double f_state = 1.0;
    double f1 = 1.0;
    double f2 = 1.0;

    void check() const {
        for (double f : {f_state, f1, f2})
            if (f < 0.0 || f > 1.0)
                throw CompositionError("spin channel fidelity outside [0,1]");
    }
};

namespace detail {

inline Matrix pauli(char which) {
    Matrix m(2, 2);
    switch (which) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw CompositionError("unknown Pauli label");
    }
    return m;
}

} // namespace detail

// Replacement channel: outputs F|psi><psi| + (1-F)|psi_perp><psi_perp| on the
// named spin regardless of its previous content.
inline Channel prepare_state(const ModeLabel& spin, const Eigen::Vector2cd& psi, double f_state) {
    if (f_state < 0.0 || f_state > 1.0)
        throw CompositionError("prepare_state: fidelity outside [0,1]");
    if (std::abs(psi.norm() - 1.0) > 1e-9)
        throw CompositionError("prepare_state: state vector is not normalized");
    if (spin.dim != 2)
        throw CompositionError("prepare_state: spin mode must have dim 2");
    // The unique orthogonal qubit state.
    Eigen::Vector2cd perp;
    perp << -std::conj(psi(1)), std::conj(psi(0));
    std::vector<NamedOperator> kraus;
    const double a = std::sqrt(f_state), b = std::sqrt(1.0 - f_state);
    for (int basis = 0; basis < 2; ++basis) {
        Eigen::RowVector2cd bra = Eigen::RowVector2cd::Zero();
        bra(basis) = 1.0;
        if (a > 0.0) kraus.emplace_back(std::vector<ModeLabel>{spin}, Matrix(a * psi * bra));
        if (b > 0.0) kraus.emplace_back(std::vector<ModeLabel>{spin}, Matrix(b * perp * bra));
    }
    return Channel("prepare_state(" + spin.name + ")", {}, std::move(kraus), {});
}

// Unitary single-qubit gate.
inline Channel pauli_gate(const ModeLabel& spin, char which) {
    return Channel(std::string("pauli_") + which + "(" + spin.name + ")", {},
                   {NamedOperator({spin}, detail::pauli(which))}, {});
}

// F rho + (1-F)/3 sum_{X,Y,Z} sigma rho sigma.
inline Channel depolarize_one(const ModeLabel& spin, double f1) {
    if (f1 < 0.0 || f1 > 1.0)
        throw CompositionError("depolarize_one: fidelity outside [0,1]");
    std::vector<NamedOperator> kraus;
    kraus.emplace_back(std::vector<ModeLabel>{spin},
                       Matrix(std::sqrt(f1) * detail::pauli('I')));
    const double w = std::sqrt((1.0 - f1) / 3.0);
    if (w > 0.0)
        for (char p : {'X', 'Y', 'Z'})
            kraus.emplace_back(std::vector<ModeLabel>{spin}, Matrix(w * detail::pauli(p)));
    return Channel("depolarize_one(" + spin.name + ")", {}, std::move(kraus), {});
}

// F rho + (1-F)/15 sum over the 15 non-identity Pauli pairs.
inline Channel depolarize_two(const ModeLabel& a, const ModeLabel& b, double f2) {
    if (f2 < 0.0 || f2 > 1.0)
        throw CompositionError("depolarize_two: fidelity outside [0,1]");
    std::vector<NamedOperator> kraus;
    const double w = std::sqrt((1.0 - f2) / 15.0);
    for (char pa : {'I', 'X', 'Y', 'Z'})
        for (char pb : {'I', 'X', 'Y', 'Z'}) {
            const bool identity = (pa == 'I' && pb == 'I');
            const double c = identity ? std::sqrt(f2) : w;
            if (c == 0.0) continue;
            kraus.emplace_back(std::vector<ModeLabel>{a, b},
                               Matrix(c * kron(detail::pauli(pa), detail::pauli(pb))));
        }
    return Channel("depolarize_two(" + a.name + "," + b.name + ")", {}, std::move(kraus), {});
}

} // namespace rebsim
