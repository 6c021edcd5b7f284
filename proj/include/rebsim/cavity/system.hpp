#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "rebsim/channels/spin_photon.hpp"
#include "rebsim/core/errors.hpp"

namespace rebsim {

// All rates and frequencies are stored in GHz.

struct EmitterParams {
    double omega_a_ghz = 0.0;     // optical transition frequency
    double gamma_r_ghz = 0.0;     // ZPL radiative decay rate
    double gamma_ghz = 0.0;       // total decay rate
    double gamma_star_ghz = 0.0;  // pure dephasing rate
    double sigma_omega_ghz = 0.0; // spectral diffusion std (stored, unused by default)
    double debye_waller = 1.0;
    double quantum_efficiency = 1.0;
    double delta_01_ghz = 0.0;    // bright-dark optical transition splitting

    // Total homogeneous linewidth.
    double total_linewidth_ghz() const { return gamma_ghz + gamma_star_ghz; }

    void check() const {
        if (gamma_r_ghz < 0 || gamma_ghz < gamma_r_ghz)
            throw ConfigError("emitter rates must satisfy gamma >= gamma_r >= 0");
        if (gamma_star_ghz < 0 || sigma_omega_ghz < 0)
            throw ConfigError("emitter noise rates must be >= 0");
        if (debye_waller < 0 || debye_waller > 1)
            throw ConfigError("Debye-Waller factor outside [0,1]");
        if (quantum_efficiency < 0 || quantum_efficiency > 1)
            throw ConfigError("quantum efficiency outside [0,1]");
    }
};

struct CavityParams {
    double omega_c_ghz = 0.0;
    double kappa_r_ghz = 0.0; // reflection (input/output) port
    double kappa_t_ghz = 0.0; // transmission port
    double kappa_l_ghz = 0.0; // intrinsic loss port

    double kappa_ghz() const { return kappa_r_ghz + kappa_t_ghz + kappa_l_ghz; }
    double quality_factor() const { return omega_c_ghz / kappa_ghz(); }

    void check() const {
        if (kappa_r_ghz < 0 || kappa_t_ghz < 0 || kappa_l_ghz < 0)
            throw ConfigError("cavity port rates must be >= 0");
    }
};

struct CoupledSystem {
    EmitterParams emitter;
    CavityParams cavity;
    double g_ghz = 0.0; // vacuum Rabi frequency

    void check() const {
        emitter.check();
        cavity.check();
        if (g_ghz < 0) throw ConfigError("coupling rate g must be >= 0");
    }
};

// Probe frequency and the three mutually consistent detunings.
struct OperatingPoint {
    double nu_ghz = 0.0;

    static OperatingPoint at_frequency(double nu_ghz) { return OperatingPoint{nu_ghz}; }

    // Operating point from the swept detunings: nu = omega_a + Delta_la,
    // with the cavity placed at omega_c = omega_a - Delta_ac.
    static OperatingPoint from_detunings(double delta_la_ghz, double omega_a_ghz) {
        return OperatingPoint{omega_a_ghz + delta_la_ghz};
    }

    double delta_lc_ghz(const CoupledSystem& s) const { return nu_ghz - s.cavity.omega_c_ghz; }
    double delta_la_ghz(const CoupledSystem& s) const { return nu_ghz - s.emitter.omega_a_ghz; }
    double delta_ac_ghz(const CoupledSystem& s) const {
        return s.emitter.omega_a_ghz - s.cavity.omega_c_ghz;
    }
};

enum class LinewidthMode { Bare, Dephased };

// C = 4g^2 / (kappa gamma), with gamma either the bare decay rate or the
// dephasing-broadened linewidth gamma + gamma*.
inline double cooperativity(const CoupledSystem& s, LinewidthMode mode) {
    const double kappa = s.cavity.kappa_ghz();
    const double gamma = mode == LinewidthMode::Bare ? s.emitter.gamma_ghz
                                                     : s.emitter.total_linewidth_ghz();
    if (kappa <= 0.0 || gamma <= 0.0)
        throw NumericalGuardError("cooperativity: kappa and gamma must be positive");
    return 4.0 * s.g_ghz * s.g_ghz / (kappa * gamma);
}

// F_p = 4g^2 / (kappa gamma_r).
inline double purcell_factor(const CoupledSystem& s) {
    const double kappa = s.cavity.kappa_ghz();
    if (kappa <= 0.0 || s.emitter.gamma_r_ghz <= 0.0)
        throw NumericalGuardError("purcell_factor: kappa and gamma_r must be positive");
    return 4.0 * s.g_ghz * s.g_ghz / (kappa * s.emitter.gamma_r_ghz);
}

// Q/V form, with the mode volume given in units of the vacuum wavelength
// cubed: F_p = (3 / 4 pi^2) (Q / V) (lambda / n)^3 = 3 Q / (4 pi^2 V n^3).
inline double purcell_from_qv(double quality, double volume_cubic_wavelengths,
                              double refractive_index) {
    if (volume_cubic_wavelengths <= 0.0 || refractive_index <= 0.0)
        throw NumericalGuardError("purcell_from_qv: V and n must be positive");
    const double pi = std::numbers::pi;
    return 3.0 * quality /
           (4.0 * pi * pi * volume_cubic_wavelengths * std::pow(refractive_index, 3));
}

// Strong-coupling outcoupling efficiency (kappa_r / kappa) * (kappa / (kappa + gamma)),
// stated for kappa_t = 0 with kappa_r the output port of the emitted photons.
inline double outcoupling_efficiency_strong(const CoupledSystem& s) {
    const double kappa = s.cavity.kappa_ghz();
    if (kappa <= 0.0)
        throw NumericalGuardError("outcoupling_efficiency_strong: kappa must be positive");
    return (s.cavity.kappa_r_ghz / kappa) * (kappa / (kappa + s.emitter.gamma_ghz));
}

struct ResponseTriple {
    Complex r{1, 0};
    Complex t{0, 0};
    Complex l{0, 0};
};

// Steady-state single-frequency scattering amplitudes of the coupled system,
//   r = 1 - kappa_r / D(nu),  t = sqrt(kappa_r kappa_t) / D(nu),
//   D(nu) = i(omega_c - nu) + kappa/2 + g^2 / (i(omega_tr - nu) + gamma/2 + gamma*),
// where the bright spin state (k=1) couples at omega_a and the dark state
// (k=0) at omega_a + delta_01 with the same g. |l|^2 completes the magnitude;
// its phase follows the kappa_l port term and is never interfered with.
inline ResponseTriple response_coefficients(const CoupledSystem& s, const OperatingPoint& op,
                                            int spin_state) {
    if (spin_state != 0 && spin_state != 1)
        throw CompositionError("response_coefficients: spin state must be 0 or 1");
    const double kappa = s.cavity.kappa_ghz();
    if (kappa <= 0.0)
        throw NumericalGuardError("response_coefficients: kappa must be positive");
    const double nu = op.nu_ghz;
    const double omega_tr = spin_state == 1
                                ? s.emitter.omega_a_ghz
                                : s.emitter.omega_a_ghz + s.emitter.delta_01_ghz;
    Complex denom(kappa / 2.0, s.cavity.omega_c_ghz - nu);
    if (s.g_ghz > 0.0) {
        const Complex emitter_term(s.emitter.gamma_ghz / 2.0 + s.emitter.gamma_star_ghz,
                                   omega_tr - nu);
        if (emitter_term == Complex(0, 0))
            throw NumericalGuardError("response_coefficients: singular emitter response");
        denom += s.g_ghz * s.g_ghz / emitter_term;
    }

    ResponseTriple out;
    out.r = 1.0 - s.cavity.kappa_r_ghz / denom;
    out.t = std::sqrt(s.cavity.kappa_r_ghz * s.cavity.kappa_t_ghz) / denom;
    const double rt = std::norm(out.r) + std::norm(out.t);
    if (rt > 1.0 + default_tolerances().magnitude_unit)
        throw NumericalGuardError("response_coefficients: |r|^2 + |t|^2 = " +
                                  std::to_string(rt) + " > 1 signals a formula violation");
    const double loss_sq = std::max(0.0, 1.0 - rt);
    double loss_phase = 0.0;
    if (s.cavity.kappa_l_ghz > 0.0)
        loss_phase = std::arg(std::sqrt(s.cavity.kappa_r_ghz * s.cavity.kappa_l_ghz) / denom);
    out.l = std::polar(std::sqrt(loss_sq), loss_phase);
    return out;
}

inline ReflectionCoefficients reflection_coefficients(const CoupledSystem& s,
                                                      const OperatingPoint& op) {
    ReflectionCoefficients c;
    for (int k = 0; k < 2; ++k) {
        const ResponseTriple rt = response_coefficients(s, op, k);
        c.r[k] = rt.r;
        c.t[k] = rt.t;
        c.l[k] = rt.l;
    }
    return c;
}

// Emission channel branch probabilities (bright state), from the
// cavity-enhanced rates. The spin populations enter inside the channel, so
// the channel stays linear. Two-photon emission is neglected (p_2ph = 0).
inline EmissionChannelParams emission_channel_probabilities(const CoupledSystem& s) {
    const double kappa = s.cavity.kappa_ghz();
    const double big_gamma = s.emitter.total_linewidth_ghz();
    const double c = cooperativity(s, LinewidthMode::Dephased);
    const double fp_gamma_r = purcell_factor(s) * s.emitter.gamma_r_ghz; // = 4g^2/kappa
    const double branch = (s.cavity.kappa_r_ghz / kappa) * (c / (c + 1.0));

    EmissionChannelParams p;
    p.p_coh = branch * fp_gamma_r / (big_gamma + fp_gamma_r);
    p.p_incoh = branch * (s.emitter.gamma_star_ghz + s.emitter.sigma_omega_ghz) /
                (big_gamma + fp_gamma_r);
    p.p_2ph = 0.0;
    p.p_loss = 1.0 - p.p_coh - p.p_incoh - p.p_2ph;
    if (p.p_loss < -default_tolerances().magnitude_unit)
        throw NumericalGuardError("emission_channel_probabilities: parameter inconsistency, "
                                  "branch probabilities exceed 1");
    p.p_loss = std::max(0.0, p.p_loss);
    return p;
}

// Cavity-modified ratios of the coherent-scattering channel.
struct ScatterDerived {
    double eta = 0.0;       // collection efficiency of the coherent emission
    double gamma_prime = 0; // Purcell-broadened linewidth
    double dw_prime = 0;
    double qe_prime = 0;
};

inline ScatterDerived scatter_derived(const CoupledSystem& s) {
    const double fp = purcell_factor(s);
    const double dw = s.emitter.debye_waller;
    const double qe = s.emitter.quantum_efficiency;
    ScatterDerived d;
    d.eta = (s.cavity.kappa_r_ghz / s.cavity.kappa_ghz()) * (fp / (fp + 1.0));
    d.gamma_prime = s.emitter.total_linewidth_ghz() + fp * s.emitter.gamma_r_ghz;
    d.dw_prime = (fp + 1.0) * dw / (fp * dw + 1.0);
    d.qe_prime = qe * (fp * dw + 1.0) / (1.0 + fp * qe * dw);
    return d;
}

// Splits the total scattered amplitude alpha_tot into the collected coherent
// amplitude alpha = eta alpha_tot and the loss amplitude, and derives the mean
// incoherent photon number |beta|^2.
inline ScatterChannelParams scattering_channel_amplitudes(const CoupledSystem& s,
                                                          Complex alpha_tot) {
    const ScatterDerived d = scatter_derived(s);
    if (d.eta <= 0.0 && std::abs(alpha_tot) > 0.0)
        throw NumericalGuardError("scattering_channel_amplitudes: zero collection efficiency "
                                  "with nonzero input");
    ScatterChannelParams p;
    p.alpha = d.eta * alpha_tot;
    p.alpha_loss = (1.0 - d.eta) * alpha_tot; // = ((1-eta)/eta) alpha
    const double gs = s.emitter.gamma_star_ghz;
    const double incoh_term = gs > 0.0 ? gs / (d.gamma_prime - gs) : 0.0;
    const double qd = d.qe_prime * d.dw_prime;
    const double ineff_term = qd > 0.0 ? (1.0 - qd) / qd : 0.0;
    if (qd <= 0.0 && std::abs(alpha_tot) > 0.0)
        throw NumericalGuardError("scattering_channel_amplitudes: QE'*DW' = 0");
    p.beta_sq = (incoh_term + ineff_term) * std::norm(alpha_tot);
    return p;
}

} // namespace rebsim
