#pragma once

#include <cmath>
#include <complex>
#include <variant>

#include "rebsim/cavity/synthesis.hpp"
#include "rebsim/channels/channel.hpp"

namespace rebsim {

// Branch probabilities of the optical-pi-pulse emission channel, conditioned
// on the bright spin state (the dark state never emits). Must sum to 1.
struct EmissionChannelParams {
    double p_coh = 1.0;
    double p_incoh = 0.0;
    double p_2ph = 0.0;
    double p_loss = 0.0;

    void check(double tol = default_tolerances().magnitude_unit) const {
        for (double p : {p_coh, p_incoh, p_2ph, p_loss})
            if (p < 0.0)
                throw CompositionError("emission channel probability is negative");
        const double sum = p_coh + p_incoh + p_2ph + p_loss;
        if (std::abs(sum - 1.0) > tol)
            throw CompositionError("emission channel probabilities sum to " +
                                   std::to_string(sum) + ", expected 1");
    }
};

// Amplitudes of the weak-drive coherent-scattering channel: collected
// coherent amplitude, loss-mode amplitude, and the mean incoherent photon
// number |beta|^2 feeding a Poisson-distributed incoherent mode.
struct ScatterChannelParams {
    Complex alpha{0, 0};
    Complex alpha_loss{0, 0};
    double beta_sq = 0.0;

    void check() const {
        if (beta_sq < 0.0)
            throw CompositionError("scatter channel: |beta|^2 must be >= 0");
    }
};

// Spin-conditioned reflection/transmission/loss coefficients, one triple per
// spin state k in {0, 1}.
struct ReflectionCoefficients {
    Complex r[2] = {Complex(1, 0), Complex(1, 0)};
    Complex t[2] = {Complex(0, 0), Complex(0, 0)};
    Complex l[2] = {Complex(0, 0), Complex(0, 0)};

    void check(double tol = default_tolerances().magnitude_unit) const {
        for (int k = 0; k < 2; ++k) {
            const double mag = std::norm(r[k]) + std::norm(t[k]) + std::norm(l[k]);
            if (std::abs(mag - 1.0) > tol)
                throw CompositionError(
                    "reflection coefficients for spin state " + std::to_string(k) +
                    " have |r|^2+|t|^2+|l|^2 = " + std::to_string(mag));
        }
    }
};

// Spontaneous emission after an optical pi pulse. The bright state emits into
// the coherent mode with amplitude sqrt(p_coh), into an internal loss mode
// with sqrt(p_loss) (traced out), adds a distinguishable photon to the
// incoherent mode with probability p_incoh, or double-emits with p_2ph.
// The incoherent mode is retained: being a distinct named mode it never
// interferes at beamsplitters.
inline Channel emit_spontaneous(const ModeLabel& spin, const ModeLabel& photon,
                                const ModeLabel& incoh, const EmissionChannelParams& p) {
    p.check();
    if (spin.dim != 2)
        throw CompositionError("emit_spontaneous: spin mode must have dim 2");
    if (p.p_2ph > 0.0 && photon.dim < 3)
        throw CompositionError("emit_spontaneous: two-photon branch needs photon dim >= 3");

    const ModeLabel anc = loss_mode(detail::ancilla_name(photon.name, "emit_loss"), 2);
    const Matrix p0 = fock_projector(2, 0);
    const Matrix p1 = fock_projector(2, 1);
    const Matrix ip = Matrix::Identity(photon.dim, photon.dim);
    const Matrix ii = Matrix::Identity(incoh.dim, incoh.dim);
    const Matrix il = Matrix::Identity(2, 2);
    const Matrix adag = creation(photon.dim);
    const Matrix idag = creation(incoh.dim);
    const Matrix ldag = creation(2);

    const std::vector<ModeLabel> labels{spin, photon, incoh, anc};
    auto op4 = [&](const Matrix& s, const Matrix& ph, const Matrix& in, const Matrix& lo) {
        return kron(kron(s, ph), kron(in, lo));
    };

    std::vector<NamedOperator> kraus;
    // Main Kraus operator: dark state untouched; bright state emits coherently
    // or into the loss ancilla within one coherent branch.
    Matrix main = op4(p0, ip, ii, il);
    if (p.p_coh > 0.0) main += std::sqrt(p.p_coh) * op4(p1, adag, ii, il);
    if (p.p_loss > 0.0) main += std::sqrt(p.p_loss) * op4(p1, ip, ii, ldag);
    kraus.emplace_back(labels, std::move(main));
    if (p.p_incoh > 0.0)
        kraus.emplace_back(labels, Matrix(std::sqrt(p.p_incoh) * op4(p1, ip, idag, il)));
    if (p.p_2ph > 0.0) {
        Matrix two = adag * adag / std::sqrt(2.0);
        kraus.emplace_back(labels, Matrix(std::sqrt(p.p_2ph) * op4(p1, two, ii, il)));
    }

    return Channel("emit_spontaneous(" + spin.name + "->" + photon.name + ")", {anc},
                   std::move(kraus), {anc.name}, {photon.name, incoh.name});
}

// Weak coherent drive scattered off the emitter. Conditioned on the bright
// state, the photon mode is displaced by alpha and an internal loss mode by
// alpha_loss; k incoherent photons are added with Poisson weight P_beta(k)
// (renormalized within the truncation). Assumes perfect downstream filtering
// of the incoherent mode.
inline Channel scatter_coherent(const ModeLabel& spin, const ModeLabel& photon,
                                const ModeLabel& incoh, const ScatterChannelParams& p,
                                double leakage_tol = default_tolerances().truncation_leakage) {
    p.check();
    if (spin.dim != 2)
        throw CompositionError("scatter_coherent: spin mode must have dim 2");
    if (poisson_tail(std::norm(p.alpha), photon.dim) > leakage_tol)
        throw NumericalGuardError("scatter_coherent: |alpha|^2 = " +
                                  std::to_string(std::norm(p.alpha)) +
                                  " leaks past Fock dim " + std::to_string(photon.dim));
    if (poisson_tail(p.beta_sq, incoh.dim) > leakage_tol)
        throw NumericalGuardError("scatter_coherent: |beta|^2 = " + std::to_string(p.beta_sq) +
                                  " leaks past incoherent Fock dim " +
                                  std::to_string(incoh.dim));

    const ModeLabel anc = loss_mode(detail::ancilla_name(photon.name, "scatter_loss"),
                                    photon.dim);
    if (poisson_tail(std::norm(p.alpha_loss), anc.dim) > leakage_tol)
        throw NumericalGuardError("scatter_coherent: |alpha_L|^2 leaks past Fock dim " +
                                  std::to_string(anc.dim));

    const Matrix p0 = fock_projector(2, 0);
    const Matrix p1 = fock_projector(2, 1);
    const Matrix ip = Matrix::Identity(photon.dim, photon.dim);
    const Matrix ii = Matrix::Identity(incoh.dim, incoh.dim);
    const Matrix il = Matrix::Identity(anc.dim, anc.dim);
    const std::vector<ModeLabel> labels{spin, photon, incoh, anc};
    auto op4 = [&](const Matrix& s, const Matrix& ph, const Matrix& in, const Matrix& lo) {
        return kron(kron(s, ph), kron(in, lo));
    };

    const Matrix cond = op4(p0, ip, ii, il) +
                        op4(p1, displacement(photon.dim, p.alpha), ii,
                            displacement(anc.dim, p.alpha_loss));

    // Poisson weights renormalized within the truncation keep the channel
    // exactly trace-preserving.
    std::vector<double> weight(static_cast<std::size_t>(incoh.dim));
    double z = 0.0, term = std::exp(-p.beta_sq);
    for (int k = 0; k < incoh.dim; ++k) {
        if (k > 0) term *= p.beta_sq / k;
        weight[static_cast<std::size_t>(k)] = term;
        z += term;
    }
    const Matrix idag = creation(incoh.dim);
    std::vector<NamedOperator> kraus;
    Matrix raise_k = Matrix::Identity(incoh.dim, incoh.dim);
    double k_fact = 1.0;
    for (int k = 0; k < incoh.dim; ++k) {
        if (k > 0) {
            raise_k = idag * raise_k;
            k_fact *= k;
        }
        const double w = weight[static_cast<std::size_t>(k)] / z;
        if (w <= 0.0) continue;
        Matrix add_k = op4(p0, ip, ii, il) + op4(p1, ip, raise_k / std::sqrt(k_fact), il);
        kraus.emplace_back(labels, Matrix(std::sqrt(w) * add_k * cond));
    }

    return Channel("scatter_coherent(" + spin.name + "->" + photon.name + ")", {anc},
                   std::move(kraus), {anc.name}, {photon.name, incoh.name});
}

// --- conditional reflection --------------------------------------------------

struct PhaseReflection {};
struct AmplitudeReflection {
    ModeLabel transmit;
    bool trace_transmit = true;
};
using ReflectVariant = std::variant<PhaseReflection, AmplitudeReflection>;

// Spin-conditioned reflection off the cavity. Phase variant: per spin state k
// the photon picks up phase(r_k) and amplitude sqrt(1-L_k), with L_k routed
// into a loss ancilla (any transmission folded into the loss). Amplitude
// variant: full three-output routing (reflect/transmit/loss) built from the
// three-port synthesis; the transmit mode is retained or traced per protocol.
inline Channel reflect_conditional(const ModeLabel& spin, const ModeLabel& photon,
                                   const ReflectionCoefficients& coeffs,
                                   const ReflectVariant& variant) {
    coeffs.check();
    if (spin.dim != 2)
        throw CompositionError("reflect_conditional: spin mode must have dim 2");
    const Matrix p0 = fock_projector(2, 0);
    const Matrix p1 = fock_projector(2, 1);
    const int d = photon.dim;

    if (std::holds_alternative<PhaseReflection>(variant)) {
        const ModeLabel anc = loss_mode(detail::ancilla_name(photon.name, "refl_loss"), d);
        auto port = [&](int k) {
            const double loss = std::max(0.0, 1.0 - std::norm(coeffs.r[k]));
            const Complex l_amp = std::abs(coeffs.l[k]) > 0.0
                                      ? Complex(std::polar(std::sqrt(loss), std::arg(coeffs.l[k])))
                                      : Complex(std::sqrt(loss), 0.0);
            return synthesize_two_port(coeffs.r[k], l_amp).unitary(d);
        };
        Matrix cond = kron(p0, port(0)) + kron(p1, port(1));
        NamedOperator u({spin, photon, anc}, std::move(cond));
        return Channel("reflect_phase(" + spin.name + "," + photon.name + ")", {anc},
                       {std::move(u)}, {anc.name});
    }

    const auto& amp = std::get<AmplitudeReflection>(variant);
    if (amp.transmit.dim != d)
        throw CompositionError("reflect_conditional: transmit mode truncation must match "
                               "the photon mode");
    if (amp.trace_transmit) {
        // Staged form of the three-port cascade: each splitter's output is
        // traced as soon as nothing touches it again, so the working register
        // only ever holds one ancilla. Exactly equal to the monolithic
        // three-port followed by tracing transmit and loss.
        const ModeLabel anc_l = loss_mode(detail::ancilla_name(photon.name, "refl_loss"), d);
        const ModeLabel anc_t = loss_mode(detail::ancilla_name(photon.name, "refl_tr"), d);
        auto split = [&](const ModeLabel& anc, const Complex amps[2]) {
            Matrix cond = Matrix::Zero(2 * d * d, 2 * d * d);
            for (int k = 0; k < 2; ++k) {
                const double keep = std::max(0.0, 1.0 - std::norm(amps[k]));
                Matrix port =
                    synthesize_two_port(Complex(std::sqrt(keep), 0), amps[k]).unitary(d);
                cond += kron(fock_projector(2, k), port);
            }
            return NamedOperator({spin, photon, anc}, std::move(cond));
        };
        const Complex loss_amp[2] = {coeffs.l[0], coeffs.l[1]};
        Complex trans_amp[2];
        for (int k = 0; k < 2; ++k) {
            const double remaining = 1.0 - std::norm(coeffs.l[k]);
            trans_amp[k] = remaining > 1e-300
                               ? coeffs.t[k] / std::sqrt(remaining)
                               : Complex(0, 0);
        }
        // conditional reflection phases on the surviving amplitude
        Matrix phases = Matrix::Zero(2 * d, 2 * d);
        for (int k = 0; k < 2; ++k) {
            const double phi = std::abs(coeffs.r[k]) > 0 ? std::arg(coeffs.r[k]) : 0.0;
            for (int n = 0; n < d; ++n)
                phases(k * d + n, k * d + n) = std::exp(Complex(0, phi * n));
        }
        std::vector<ChannelStage> stages;
        stages.push_back({{anc_l}, {split(anc_l, loss_amp)}, {anc_l.name}});
        stages.push_back({{anc_t}, {split(anc_t, trans_amp)}, {anc_t.name}});
        stages.push_back({{}, {NamedOperator({spin, photon}, std::move(phases))}, {}});
        return Channel("reflect_amplitude(" + spin.name + "," + photon.name + ")",
                       std::move(stages));
    }
    const ModeLabel anc = loss_mode(detail::ancilla_name(photon.name, "refl_loss"), d);
    auto port = [&](int k) {
        return synthesize_three_port(coeffs.r[k], coeffs.t[k], coeffs.l[k]).unitary(d);
    };
    Matrix cond = kron(p0, port(0)) + kron(p1, port(1));
    NamedOperator u({spin, photon, amp.transmit, anc}, std::move(cond));
    return Channel("reflect_amplitude(" + spin.name + "," + photon.name + ")",
                   {amp.transmit, anc}, {std::move(u)}, {anc.name});
}

} // namespace rebsim
