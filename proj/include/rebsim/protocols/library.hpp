#pragma once

#include <optional>
#include <string>

#include "rebsim/cavity/system.hpp"
#include "rebsim/channels/photonic.hpp"
#include "rebsim/channels/spin.hpp"
#include "rebsim/channels/spin_photon.hpp"
#include "rebsim/protocols/protocol.hpp"

namespace rebsim {

// Loss fractions for the traveling photons: `link_loss` and `insertion_loss`
// are the fractions LOST by default; set loss_is_transmission to read them as
// transmitted fractions instead.
struct LossBudget {
    double link_loss = 0.9;
    double insertion_loss = 0.5;
    bool loss_is_transmission = false;

    double link() const { return loss_is_transmission ? 1.0 - link_loss : link_loss; }
    double insertion() const {
        return loss_is_transmission ? 1.0 - insertion_loss : insertion_loss;
    }
};

namespace detail {

// Unitary placing one photon into a vacuum mode (swaps the first two Fock
// levels, identity above).
inline Matrix create_photon_unitary(int dim) {
    Matrix m = Matrix::Identity(dim, dim);
    m(0, 0) = 0;
    m(1, 1) = 0;
    m(0, 1) = 1;
    m(1, 0) = 1;
    return m;
}

// |+> time-bin photon: create in the early mode, then split over early/late.
inline Channel inject_timebin_plus(const ModeLabel& early, const ModeLabel& late) {
    Matrix u = beamsplitter_unitary(early.dim, late.dim, std::numbers::pi / 4) *
               kron(create_photon_unitary(early.dim), Matrix::Identity(late.dim, late.dim));
    NamedOperator op({early, late}, std::move(u));
    return Channel("inject_photon_plus(" + early.name + "," + late.name + ")", {},
                   {std::move(op)}, {}, {early.name, late.name});
}

// Weak-coherent-state |+>: amplitude alpha split evenly over the two bins.
inline Channel inject_wcs_plus(const ModeLabel& early, const ModeLabel& late, double alpha,
                               double leakage_tol) {
    const double per_bin = alpha * alpha / 2.0;
    if (poisson_tail(per_bin, early.dim) > leakage_tol)
        throw NumericalGuardError("wcs input: |alpha|^2/2 = " + std::to_string(per_bin) +
                                  " leaks past Fock dim " + std::to_string(early.dim));
    Matrix u = kron(displacement(early.dim, alpha / std::sqrt(2.0)),
                    displacement(late.dim, alpha / std::sqrt(2.0)));
    NamedOperator op({early, late}, std::move(u));
    return Channel("inject_wcs(" + early.name + "," + late.name + ")", {}, {std::move(op)},
                   {}, {early.name, late.name});
}

// 50/50 split of a (distinguishable) mode toward a second detector port.
inline Channel split_to_port(const ModeLabel& mode, const ModeLabel& other_port) {
    NamedOperator u({mode, other_port},
                    beamsplitter_unitary(mode.dim, other_port.dim, std::numbers::pi / 4));
    return Channel("split(" + mode.name + ")", {other_port}, {std::move(u)}, {});
}

inline void add_loss(ProtocolSpec& spec, const ModeLabel& mode, double loss, const char* note) {
    if (loss <= 0.0) return;
    spec.steps.push_back({note, photonic_loss(mode, loss)});
}

} // namespace detail

// --- Protocol A: emission-based, Fock encoding, detection in midpoint -------

struct ProtocolAConfig {
    double alpha = 0.05; // bright-state population of the prepared spins
    int fock_dim = 3;
    DetectionKind detection = DetectionKind::Click;
    LossBudget losses;
    SpinChannelParams spin;
    double leakage_tolerance = default_tolerances().truncation_leakage;
    // Overrides the cavity-derived emission branch probabilities (ideal limits).
    std::optional<EmissionChannelParams> emission_override;
};

// Both nodes prepare sqrt(1-alpha)|0> + sqrt(alpha)|1>, emit, and the
// midpoint interferes the coherent modes; a single detector click heralds
// a |Psi+-> Bell pair. Incoherent photons travel the same arms and are
// 50/50-split over both detectors without interfering.
inline ProtocolSpec protocol_a(const CoupledSystem& device, const ProtocolAConfig& cfg) {
    if (cfg.alpha < 0.0 || cfg.alpha > 1.0)
        throw ConfigError("protocol A: alpha outside (0,1)");
    cfg.spin.check();
    const EmissionChannelParams emission =
        cfg.emission_override ? *cfg.emission_override : emission_channel_probabilities(device);

    ProtocolSpec spec;
    spec.name = "A";
    spec.leakage_tolerance = cfg.leakage_tolerance;
    const ModeLabel spin_a = spin_mode("spinA"), spin_b = spin_mode("spinB");
    const ModeLabel ph_a = photon_mode("phA", cfg.fock_dim);
    const ModeLabel ph_b = photon_mode("phB", cfg.fock_dim);
    const ModeLabel inc_a = incoherent_mode("incohA", 2);
    const ModeLabel inc_b = incoherent_mode("incohB", 2);
    const ModeLabel inc_a2 = incoherent_mode("incohA.d2", 2);
    const ModeLabel inc_b1 = incoherent_mode("incohB.d1", 2);
    spec.initial_modes = {spin_a, ph_a, inc_a, spin_b, ph_b, inc_b};
    spec.spin_pair = {spin_a.name, spin_b.name};

    Eigen::Vector2cd psi;
    psi << std::sqrt(1.0 - cfg.alpha), std::sqrt(cfg.alpha);
    for (const auto* node : {&spin_a, &spin_b})
        spec.steps.push_back({"prepare spin", prepare_state(*node, psi, cfg.spin.f_state)});
    spec.steps.push_back({"emit A", emit_spontaneous(spin_a, ph_a, inc_a, emission)});
    spec.steps.push_back({"emit B", emit_spontaneous(spin_b, ph_b, inc_b, emission)});

    for (const auto* m : {&ph_a, &ph_b, &inc_a, &inc_b}) {
        detail::add_loss(spec, *m, cfg.losses.insertion(), "insertion loss");
        detail::add_loss(spec, *m, cfg.losses.link(), "link loss");
    }

    // the incoherent splits commute with the coherent-mode interference and
    // run first, while the node registers are still small
    spec.steps.push_back({"split incohA", detail::split_to_port(inc_a, inc_a2)});
    spec.steps.push_back({"split incohB", detail::split_to_port(inc_b, inc_b1)});
    spec.steps.push_back({"midpoint beamsplitter", mode_mix(ph_a, ph_b)});

    spec.herald.kind = cfg.detection;
    spec.herald.detectors = {{"D1", {ph_a.name, inc_a.name, inc_b1.name}},
                             {"D2", {ph_b.name, inc_a2.name, inc_b.name}}};
    spec.herald.accepting = {
        {"D1", {ClickReq::Click, ClickReq::NoClick}, BellKind::PsiMinus},
        {"D2", {ClickReq::NoClick, ClickReq::Click}, BellKind::PsiPlus},
    };
    spec.swept_values["alpha"] = cfg.alpha;
    return spec;
}

// --- Protocols B and C: projector-based, time-bin encoding ------------------

struct ProjectorConfig {
    double delta_la_ghz = 0.0; // probe-emitter detuning
    double delta_ac_ghz = 0.0; // emitter-cavity detuning
    int fock_dim = 3;
    DetectionKind detection = DetectionKind::Click;
    LossBudget losses;
    SpinChannelParams spin;
    double leakage_tolerance = default_tolerances().truncation_leakage;
    // Overrides the cavity-derived reflection coefficients (ideal limits).
    std::optional<ReflectionCoefficients> coefficient_override;
    // Protocol C only: weak-coherent-state input of this amplitude instead of
    // single photons.
    std::optional<double> wcs_alpha;
};

namespace detail {

inline ReflectionCoefficients resolve_coefficients(const CoupledSystem& device,
                                                   const ProjectorConfig& cfg) {
    if (cfg.coefficient_override) {
        cfg.coefficient_override->check();
        return *cfg.coefficient_override;
    }
    CoupledSystem sys = device;
    sys.cavity.omega_c_ghz = sys.emitter.omega_a_ghz - cfg.delta_ac_ghz;
    const OperatingPoint op =
        OperatingPoint::from_detunings(cfg.delta_la_ghz, sys.emitter.omega_a_ghz);
    return reflection_coefficients(sys, op);
}

// Time-bin spin-photon gate: reflect early bin, flip the spin, reflect late bin.
inline void add_projector_node(ProtocolSpec& spec, const ModeLabel& spin,
                               const ModeLabel& early, const ModeLabel& late,
                               const ReflectionCoefficients& coeffs,
                               const SpinChannelParams& sp) {
    const int d = early.dim;
    auto amp = [&](const ModeLabel& bin) {
        return AmplitudeReflection{photon_mode(ancilla_name(bin.name, "transmit"), d), true};
    };
    spec.steps.push_back({"reflect early", reflect_conditional(spin, early, coeffs, amp(early))});
    spec.steps.push_back({"spin flip", pauli_gate(spin, 'X')});
    if (sp.f1 < 1.0)
        spec.steps.push_back({"spin gate error", depolarize_one(spin, sp.f1)});
    spec.steps.push_back({"reflect late", reflect_conditional(spin, late, coeffs, amp(late))});
}

} // namespace detail

// Sender-receiver projector protocol: one |+> time-bin photon reflects off
// both nodes in turn, then an X-basis time-bin measurement heralds |Phi+->.
inline ProtocolSpec protocol_b(const CoupledSystem& device, const ProjectorConfig& cfg) {
    cfg.spin.check();
    if (cfg.wcs_alpha)
        throw ConfigError("protocol B: WCS input is only defined for protocol C");
    const ReflectionCoefficients coeffs = detail::resolve_coefficients(device, cfg);

    ProtocolSpec spec;
    spec.name = "B";
    spec.leakage_tolerance = cfg.leakage_tolerance;
    const ModeLabel spin_a = spin_mode("spinA"), spin_b = spin_mode("spinB");
    const ModeLabel early = photon_mode("E", cfg.fock_dim);
    const ModeLabel late = photon_mode("L", cfg.fock_dim);
    spec.initial_modes = {spin_a, early, late, spin_b};
    spec.spin_pair = {spin_a.name, spin_b.name};

    Eigen::Vector2cd plus;
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    spec.steps.push_back({"prepare spin A", prepare_state(spin_a, plus, cfg.spin.f_state)});
    spec.steps.push_back({"prepare spin B", prepare_state(spin_b, plus, cfg.spin.f_state)});
    spec.steps.push_back({"photon source", detail::inject_timebin_plus(early, late)});

    detail::add_projector_node(spec, spin_a, early, late, coeffs, cfg.spin);
    for (const auto* bin : {&early, &late}) {
        detail::add_loss(spec, *bin, cfg.losses.insertion(), "insertion loss A");
        detail::add_loss(spec, *bin, cfg.losses.link(), "link loss");
    }
    detail::add_projector_node(spec, spin_b, early, late, coeffs, cfg.spin);
    for (const auto* bin : {&early, &late})
        detail::add_loss(spec, *bin, cfg.losses.insertion(), "insertion loss B");

    spec.steps.push_back({"time-bin X measurement", mode_mix(early, late)});
    spec.herald.kind = cfg.detection;
    spec.herald.detectors = {{"DE", {early.name}}, {"DL", {late.name}}};
    spec.herald.accepting = {
        {"DE", {ClickReq::Click, ClickReq::NoClick}, BellKind::PhiMinus},
        {"DL", {ClickReq::NoClick, ClickReq::Click}, BellKind::PhiPlus},
    };
    spec.swept_values["delta_la_ghz"] = cfg.delta_la_ghz;
    spec.swept_values["delta_ac_ghz"] = cfg.delta_ac_ghz;
    return spec;
}

// Detection-in-midpoint projector protocol: each node reflects its own |+>
// time-bin photon (single photon or WCS), the midpoint performs a time-bin
// Bell measurement and heralds the |Psi+-> class on one-early-one-late
// two-click patterns.
inline ProtocolSpec protocol_c(const CoupledSystem& device, const ProjectorConfig& cfg) {
    cfg.spin.check();
    if (cfg.wcs_alpha && cfg.fock_dim < 4)
        throw ConfigError("protocol C: WCS input requires Fock dim >= 4");
    const ReflectionCoefficients coeffs = detail::resolve_coefficients(device, cfg);

    ProtocolSpec spec;
    spec.name = cfg.wcs_alpha ? "C-wcs" : "C";
    spec.leakage_tolerance = cfg.leakage_tolerance;
    const ModeLabel spin_a = spin_mode("spinA"), spin_b = spin_mode("spinB");
    const ModeLabel e_a = photon_mode("EA", cfg.fock_dim);
    const ModeLabel l_a = photon_mode("LA", cfg.fock_dim);
    const ModeLabel e_b = photon_mode("EB", cfg.fock_dim);
    const ModeLabel l_b = photon_mode("LB", cfg.fock_dim);
    spec.initial_modes = {spin_a, e_a, l_a, spin_b, e_b, l_b};
    spec.spin_pair = {spin_a.name, spin_b.name};

    Eigen::Vector2cd plus;
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    auto add_node = [&](const ModeLabel& spin, const ModeLabel& early, const ModeLabel& late,
                        const char* who) {
        spec.steps.push_back({std::string("prepare spin ") + who,
                              prepare_state(spin, plus, cfg.spin.f_state)});
        if (cfg.wcs_alpha) {
            spec.steps.push_back({std::string("wcs source ") + who,
                                  detail::inject_wcs_plus(early, late, *cfg.wcs_alpha,
                                                          spec.leakage_tolerance)});
        } else {
            spec.steps.push_back({std::string("photon source ") + who,
                                  detail::inject_timebin_plus(early, late)});
        }
        detail::add_projector_node(spec, spin, early, late, coeffs, cfg.spin);
        for (const auto* bin : {&early, &late}) {
            detail::add_loss(spec, *bin, cfg.losses.insertion(), "insertion loss");
            detail::add_loss(spec, *bin, cfg.losses.link(), "link loss");
        }
    };
    add_node(spin_a, e_a, l_a, "A");
    add_node(spin_b, e_b, l_b, "B");

    spec.steps.push_back({"BSM early", mode_mix(e_a, e_b)});
    spec.steps.push_back({"BSM late", mode_mix(l_a, l_b)});

    spec.herald.kind = cfg.detection;
    spec.herald.detectors = {{"E1", {e_a.name}},
                             {"E2", {e_b.name}},
                             {"L1", {l_a.name}},
                             {"L2", {l_b.name}}};
    const auto c = ClickReq::Click, n = ClickReq::NoClick;
    spec.herald.accepting = {
        {"E1L1", {c, n, c, n}, BellKind::PsiPlus},
        {"E2L2", {n, c, n, c}, BellKind::PsiPlus},
        {"E1L2", {c, n, n, c}, BellKind::PsiMinus},
        {"E2L1", {n, c, c, n}, BellKind::PsiMinus},
    };
    spec.swept_values["delta_la_ghz"] = cfg.delta_la_ghz;
    spec.swept_values["delta_ac_ghz"] = cfg.delta_ac_ghz;
    if (cfg.wcs_alpha) spec.swept_values["wcs_alpha"] = *cfg.wcs_alpha;
    return spec;
}

} // namespace rebsim
