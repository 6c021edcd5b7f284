#pragma once

#include <cmath>
#include <numbers>

#include "rebsim/channels/channel.hpp"

namespace rebsim {

enum class DetectionKind { Click, SinglePhoton };

inline const char* to_string(DetectionKind k) {
    return k == DetectionKind::Click ? "click" : "single_photon";
}

// Beamsplitter into a vacuum ancilla with theta_L = arcsin(sqrt(L)), ancilla
// traced out. Trace-preserving.
inline Channel photonic_loss(const ModeLabel& mode, double loss) {
    if (loss < 0.0 || loss > 1.0)
        throw CompositionError("photonic_loss: loss outside [0,1]");
    const ModeLabel anc = loss_mode(detail::ancilla_name(mode.name, "loss"), mode.dim);
    const double theta = std::asin(std::sqrt(loss));
    NamedOperator u({mode, anc}, beamsplitter_unitary(mode.dim, anc.dim, theta));
    return Channel("photonic_loss(" + mode.name + ")", {anc}, {std::move(u)}, {anc.name});
}

// exp[theta (a b^dag - a^dag b)] on two equal-truncation modes. theta = pi/4
// is the balanced beamsplitter used for interference and Bell measurements.
inline Channel mode_mix(const ModeLabel& a, const ModeLabel& b,
                        double theta = std::numbers::pi / 4) {
    if (a.dim != b.dim)
        throw CompositionError("mode_mix: modes '" + a.name + "' and '" + b.name +
                               "' have different truncation");
    NamedOperator u({a, b}, beamsplitter_unitary(a.dim, b.dim, theta));
    return Channel("mode_mix(" + a.name + "," + b.name + ")", {}, {std::move(u)}, {});
}

// Projective detection on one mode, detected mode traced out afterwards.
// The trace ratio across the channel is the click probability.
inline Channel detect(const ModeLabel& mode, DetectionKind kind) {
    Matrix pi;
    if (kind == DetectionKind::Click) {
        pi = Matrix::Identity(mode.dim, mode.dim) - fock_projector(mode.dim, 0);
    } else {
        pi = fock_projector(mode.dim, 1);
    }
    NamedOperator proj({mode}, std::move(pi));
    return Channel(std::string("detect[") + to_string(kind) + "](" + mode.name + ")", {},
                   {std::move(proj)}, {mode.name});
}

// Two-mode-squeezer pair source: S2(zeta)|0000><0000|S2^dag on four
// polarization modes (a_H, a_V, b_H, b_V), kept within the truncated space.
inline Channel spdc_pair(double zeta, const ModeLabel& a_h, const ModeLabel& a_v,
                         const ModeLabel& b_h, const ModeLabel& b_v,
                         double leakage_tol = default_tolerances().truncation_leakage) {
    const int d = a_h.dim;
    for (const ModeLabel* m : {&a_v, &b_h, &b_v})
        if (m->dim != d)
            throw CompositionError("spdc_pair: all four modes need equal truncation");

    const Matrix a = annihilation(d);
    const Matrix id = Matrix::Identity(d, d);
    auto four = [&](const Matrix& m0, const Matrix& m1, const Matrix& m2, const Matrix& m3) {
        return kron(kron(m0, m1), kron(m2, m3));
    };
    // zeta (aH^dag bV^dag + aV^dag bH^dag) - h.c.
    Matrix g = zeta * (four(a.adjoint(), id, id, a.adjoint()) +
                       four(id, a.adjoint(), a.adjoint(), id)) -
               zeta * (four(a, id, id, a) + four(id, a, a, id));
    Matrix u = expm_antihermitian(g);

    // Leakage guard: population with any mode at its top Fock level when the
    // squeezer acts on vacuum.
    Vector out = u.col(0);
    double top = 0.0;
    for (Eigen::Index idx = 0; idx < out.size(); ++idx) {
        std::size_t rem = static_cast<std::size_t>(idx);
        bool at_top = false;
        for (int m = 3; m >= 0; --m) {
            if (static_cast<int>(rem % d) == d - 1) at_top = true;
            rem /= static_cast<std::size_t>(d);
        }
        if (at_top) top += std::norm(out(idx));
    }
    if (top > leakage_tol)
        throw NumericalGuardError("spdc_pair: truncation leakage " + std::to_string(top) +
                                  " exceeds " + std::to_string(leakage_tol) +
                                  " at Fock dim " + std::to_string(d));

    NamedOperator squeezer({a_h, a_v, b_h, b_v}, std::move(u));
    return Channel("spdc_pair", {}, {std::move(squeezer)}, {},
                   {a_h.name, a_v.name, b_h.name, b_v.name});
}

} // namespace rebsim
