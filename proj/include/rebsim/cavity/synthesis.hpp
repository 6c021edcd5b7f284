#pragma once

#include <cmath>
#include <complex>

#include "rebsim/core/fock.hpp"
#include "rebsim/core/tolerances.hpp"

namespace rebsim {

// Beamsplitter-cascade synthesis of the loss-reflection(-transmission)
// routing unitaries. A single photon entering the first port leaves with
// amplitude r on the reflect port, t on the transmit port and l on the loss
// port, with theta_1 = arcsin(sqrt(L)) = arctan(sqrt(L)/sqrt(1-L)).

struct TwoPortSynthesis {
    double theta1 = 0.0;
    double phase_r = 0.0;
    double phase_l = 0.0;

    // Unitary on (reflect, loss), both truncated at `dim`.
    // exp[theta (a l^dag - a^dag l)] sends the input amplitude to
    // (cos theta, +sin theta); the phase shifters then set r and l.
    Matrix unitary(int dim) const {
        Matrix bs = beamsplitter_unitary(dim, dim, theta1);
        Vector diag(dim * dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                diag(i * dim + j) = std::exp(Complex(0, phase_r * i + phase_l * j));
        return diag.asDiagonal() * bs;
    }
};

inline TwoPortSynthesis synthesize_two_port(Complex r, double loss,
                                            const Tolerances& tol = default_tolerances()) {
    if (loss < 0.0)
        throw CompositionError("synthesize_two_port: negative loss");
    if (std::norm(r) + loss > 1.0 + tol.magnitude_unit)
        throw CompositionError("synthesize_two_port: |r|^2 + L exceeds 1");
    TwoPortSynthesis s;
    s.theta1 = std::asin(std::sqrt(std::min(1.0, loss)));
    s.phase_r = (std::abs(r) > 0.0) ? std::arg(r) : 0.0;
    s.phase_l = 0.0; // loss amplitude comes out real positive
    return s;
}

// Variant keeping the complex loss coefficient's phase.
inline TwoPortSynthesis synthesize_two_port(Complex r, Complex l,
                                            const Tolerances& tol = default_tolerances()) {
    TwoPortSynthesis s = synthesize_two_port(r, std::norm(l), tol);
    if (std::abs(l) > 0.0) s.phase_l = std::arg(l);
    return s;
}

struct ThreePortSynthesis {
    double theta1 = 0.0; // input/loss splitter
    double theta2 = 0.0; // reflect/transmit splitter
    double phase_r = 0.0;
    double phase_t = 0.0;
    double phase_l = 0.0;

    // Unitary on (reflect, transmit, loss), all truncated at `dim`.
    Matrix unitary(int dim) const {
        const Matrix a = annihilation(dim);
        const Matrix id = Matrix::Identity(dim, dim);
        auto three = [&](const Matrix& m0, const Matrix& m1, const Matrix& m2) {
            return kron(kron(m0, m1), m2);
        };
        Matrix g1 = three(a.adjoint(), id, a) - three(a, id, a.adjoint());
        Matrix g2 = three(a.adjoint(), a, id) - three(a, a.adjoint(), id);
        Matrix u = expm_antihermitian(theta2 * g2) * expm_antihermitian(theta1 * g1);
        Vector diag(dim * dim * dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                for (int k = 0; k < dim; ++k)
                    diag((i * dim + j) * dim + k) =
                        std::exp(Complex(0, phase_r * i + phase_t * j + phase_l * k));
        return diag.asDiagonal() * u;
    }
};

inline ThreePortSynthesis synthesize_three_port(Complex r, Complex t, Complex l,
                                                const Tolerances& tol = default_tolerances()) {
    const double mag = std::norm(r) + std::norm(t) + std::norm(l);
    if (std::abs(mag - 1.0) > tol.magnitude_unit)
        throw CompositionError("synthesize_three_port: |r|^2+|t|^2+|l|^2 = " +
                               std::to_string(mag) + " violates the unit-magnitude invariant");
    ThreePortSynthesis s;
    const double loss = std::min(1.0, std::norm(l));
    s.theta1 = std::atan2(std::sqrt(loss), std::sqrt(std::max(0.0, 1.0 - loss)));
    const double rt = std::sqrt(std::norm(r) + std::norm(t));
    if (rt > 0.0) {
        // normalized r', t' fix the second splitter angle
        s.theta2 = std::atan2(std::abs(t) / rt, std::abs(r) / rt);
    }
    s.phase_r = (std::abs(r) > 0.0) ? std::arg(r) : 0.0;
    // The cascade produces -|t| and -|l|; the phase shifters absorb the signs.
    s.phase_t = (std::abs(t) > 0.0) ? std::arg(t) + std::numbers::pi : 0.0;
    s.phase_l = (std::abs(l) > 0.0) ? std::arg(l) + std::numbers::pi : 0.0;
    return s;
}

} // namespace rebsim
