#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "rebsim/protocols/library.hpp"
#include "rebsim/sweep/grid.hpp"

namespace rebsim {

using Json = nlohmann::json;

// --- shipped device profiles -------------------------------------------------

// SiV-in-nanocavity parameter sets; all rates normalized to GHz at parse.
// The projector device is critically coupled (kappa_r = kappa/2); only
// kappa_r/kappa is observable in the projector protocols, the t/l split is a
// convention and can be overridden.
inline CoupledSystem projector_profile() {
    CoupledSystem s;
    s.emitter.omega_a_ghz = 406706.0;
    s.emitter.gamma_r_ghz = 13.1e-3;
    s.emitter.gamma_ghz = 92.5e-3;
    s.emitter.gamma_star_ghz = 30.5e-3;
    s.emitter.sigma_omega_ghz = 0.0;
    s.emitter.debye_waller = 0.7;
    s.emitter.quantum_efficiency = 0.2;
    s.emitter.delta_01_ghz = 1.0;
    s.cavity.omega_c_ghz = 406706.0;
    s.cavity.kappa_r_ghz = 10.9;
    s.cavity.kappa_t_ghz = 10.9;
    s.cavity.kappa_l_ghz = 0.0;
    s.g_ghz = 8.38;
    return s;
}

inline CoupledSystem emission_profile() {
    CoupledSystem s;
    s.emitter.omega_a_ghz = 406706.0;
    s.emitter.gamma_r_ghz = 13.1e-3;
    s.emitter.gamma_ghz = 100.0e-3;
    s.emitter.gamma_star_ghz = 30.5e-3;
    s.emitter.sigma_omega_ghz = 0.0;
    s.emitter.debye_waller = 0.7;
    s.emitter.quantum_efficiency = 0.2;
    s.emitter.delta_01_ghz = 1.0;
    s.cavity.omega_c_ghz = 406706.0;
    s.cavity.kappa_r_ghz = 240.0;
    s.cavity.kappa_t_ghz = 0.0;
    s.cavity.kappa_l_ghz = 89.0;
    s.g_ghz = 6.81;
    return s;
}

// --- config document ----------------------------------------------------------

enum class ProtocolName { A, B, C };

struct Config {
    CoupledSystem system;
    std::string profile_name = "projector";

    ProtocolName protocol = ProtocolName::B;
    ProtocolAConfig a;
    ProjectorConfig bc;
    int fock_dim = 3;

    SweepGrid sweep;
    Tolerances tolerances;

    std::string out_csv;
    std::string out_metadata;
    std::string format = "csv";
};

namespace detail {

inline std::string join_path(const std::string& base, const std::string& key) {
    return base.empty() ? key : base + "." + key;
}

inline const Json* find(const Json& j, const std::string& key) {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

inline double require_number(const Json& j, const std::string& path) {
    if (!j.is_number())
        throw ConfigError("config error at " + path + ": expected a number");
    return j.get<double>();
}

inline double number_or(const Json& parent, const std::string& base, const std::string& key,
                        double fallback) {
    const Json* j = find(parent, key);
    if (!j) return fallback;
    return require_number(*j, join_path(base, key));
}

inline bool bool_or(const Json& parent, const std::string& base, const std::string& key,
                    bool fallback) {
    const Json* j = find(parent, key);
    if (!j) return fallback;
    if (!j->is_boolean())
        throw ConfigError("config error at " + join_path(base, key) + ": expected a boolean");
    return j->get<bool>();
}

inline std::string string_or(const Json& parent, const std::string& base,
                             const std::string& key, const std::string& fallback) {
    const Json* j = find(parent, key);
    if (!j) return fallback;
    if (!j->is_string())
        throw ConfigError("config error at " + join_path(base, key) + ": expected a string");
    return j->get<std::string>();
}

inline void apply_system_overrides(CoupledSystem& s, const Json& j, const std::string& base) {
    if (!j.is_object())
        throw ConfigError("config error at " + base + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string path = join_path(base, it.key());
        const std::string& k = it.key();
        if (k == "omega_a_thz") s.emitter.omega_a_ghz = 1e3 * require_number(*it, path);
        else if (k == "omega_a_ghz") s.emitter.omega_a_ghz = require_number(*it, path);
        else if (k == "gamma_r_mhz") s.emitter.gamma_r_ghz = 1e-3 * require_number(*it, path);
        else if (k == "gamma_mhz") s.emitter.gamma_ghz = 1e-3 * require_number(*it, path);
        else if (k == "gamma_star_mhz")
            s.emitter.gamma_star_ghz = 1e-3 * require_number(*it, path);
        else if (k == "sigma_omega_mhz")
            s.emitter.sigma_omega_ghz = 1e-3 * require_number(*it, path);
        else if (k == "delta_01_ghz") s.emitter.delta_01_ghz = require_number(*it, path);
        else if (k == "debye_waller") s.emitter.debye_waller = require_number(*it, path);
        else if (k == "quantum_efficiency")
            s.emitter.quantum_efficiency = require_number(*it, path);
        else if (k == "g_ghz") s.g_ghz = require_number(*it, path);
        else if (k == "kappa_r_ghz") s.cavity.kappa_r_ghz = require_number(*it, path);
        else if (k == "kappa_t_ghz") s.cavity.kappa_t_ghz = require_number(*it, path);
        else if (k == "kappa_l_ghz") s.cavity.kappa_l_ghz = require_number(*it, path);
        else if (k == "omega_c_ghz") s.cavity.omega_c_ghz = require_number(*it, path);
        else
            throw ConfigError("config error at " + path + ": unknown system field");
    }
}

inline const Json& require_field(const Json& j, const std::string& base,
                                 const std::string& key) {
    const Json* f = find(j, key);
    if (!f)
        throw ConfigError("config error at " + join_path(base, key) +
                          ": missing required field");
    return *f;
}

inline SweepAxis parse_axis(const Json& j, const std::string& base) {
    if (!j.is_object())
        throw ConfigError("config error at " + base + ": expected an object");
    SweepAxis axis;
    axis.name = string_or(j, base, "name", "");
    if (axis.name.empty())
        throw ConfigError("config error at " + base + ".name: axis name required");
    axis.min = require_number(require_field(j, base, "min"), join_path(base, "min"));
    axis.max = require_number(require_field(j, base, "max"), join_path(base, "max"));
    const Json* count = find(j, "count");
    if (!count || !count->is_number_integer())
        throw ConfigError("config error at " + join_path(base, "count") +
                          ": expected an integer");
    axis.count = count->get<int>();
    const std::string scale = string_or(j, base, "scale", "linear");
    if (scale == "linear") axis.scale = SweepAxis::Scale::Linear;
    else if (scale == "log") axis.scale = SweepAxis::Scale::Log;
    else
        throw ConfigError("config error at " + join_path(base, "scale") +
                          ": expected \"linear\" or \"log\"");
    axis.check();
    return axis;
}

} // namespace detail

inline Config parse_config(const Json& doc) {
    if (!doc.is_object()) throw ConfigError("config error: document must be a JSON object");
    Config cfg;

    // system
    if (const Json* system = detail::find(doc, "system")) {
        cfg.profile_name = detail::string_or(*system, "system", "profile", "projector");
        if (cfg.profile_name == "projector") cfg.system = projector_profile();
        else if (cfg.profile_name == "emission") cfg.system = emission_profile();
        else
            throw ConfigError("config error at system.profile: expected \"projector\" or "
                              "\"emission\"");
        if (const Json* ov = detail::find(*system, "overrides"))
            detail::apply_system_overrides(cfg.system, *ov, "system.overrides");
    } else {
        cfg.system = projector_profile();
    }
    cfg.system.check();

    // truncation and tolerances
    if (const Json* tr = detail::find(doc, "truncation")) {
        const double d = detail::number_or(*tr, "truncation", "fock_dim", 3);
        if (d < 2 || d != std::floor(d))
            throw ConfigError("config error at truncation.fock_dim: expected an integer >= 2");
        cfg.fock_dim = static_cast<int>(d);
    }
    if (const Json* tol = detail::find(doc, "tolerances")) {
        cfg.tolerances.truncation_leakage = detail::number_or(
            *tol, "tolerances", "truncation_leakage", cfg.tolerances.truncation_leakage);
        cfg.tolerances.hermiticity = detail::number_or(*tol, "tolerances", "hermiticity",
                                                       cfg.tolerances.hermiticity);
    }

    // protocol
    const Json* proto = detail::find(doc, "protocol");
    if (!proto || !proto->is_object())
        throw ConfigError("config error at protocol: expected an object");
    const std::string name = detail::string_or(*proto, "protocol", "name", "");
    LossBudget losses;
    losses.link_loss = detail::number_or(*proto, "protocol", "link_loss", losses.link_loss);
    losses.insertion_loss =
        detail::number_or(*proto, "protocol", "insertion_loss", losses.insertion_loss);
    losses.loss_is_transmission =
        detail::bool_or(*proto, "protocol", "loss_is_transmission", false);
    for (double l : {losses.link_loss, losses.insertion_loss})
        if (l < 0.0 || l > 1.0)
            throw ConfigError("config error at protocol: loss fractions must be in [0,1]");
    SpinChannelParams spin;
    spin.f_state = detail::number_or(*proto, "protocol", "f_state", 1.0);
    spin.f1 = detail::number_or(*proto, "protocol", "f1", 1.0);
    spin.f2 = detail::number_or(*proto, "protocol", "f2", 1.0);
    spin.check();
    const std::string det = detail::string_or(*proto, "protocol", "detection", "click");
    DetectionKind detection;
    if (det == "click") detection = DetectionKind::Click;
    else if (det == "single_photon") detection = DetectionKind::SinglePhoton;
    else
        throw ConfigError("config error at protocol.detection: expected \"click\" or "
                          "\"single_photon\"");

    if (name == "A") {
        cfg.protocol = ProtocolName::A;
        cfg.a.alpha = detail::number_or(*proto, "protocol", "alpha", 0.05);
        cfg.a.fock_dim = cfg.fock_dim;
        cfg.a.detection = detection;
        cfg.a.losses = losses;
        cfg.a.spin = spin;
        cfg.a.leakage_tolerance = cfg.tolerances.truncation_leakage;
        if (cfg.a.alpha < 0.0 || cfg.a.alpha > 1.0)
            throw ConfigError("config error at protocol.alpha: expected a value in [0,1]");
    } else if (name == "B" || name == "C") {
        cfg.protocol = name == "B" ? ProtocolName::B : ProtocolName::C;
        cfg.bc.delta_la_ghz = detail::number_or(*proto, "protocol", "delta_la_ghz", 0.0);
        cfg.bc.delta_ac_ghz = detail::number_or(*proto, "protocol", "delta_ac_ghz", 0.0);
        cfg.bc.fock_dim = cfg.fock_dim;
        cfg.bc.detection = detection;
        cfg.bc.losses = losses;
        cfg.bc.spin = spin;
        cfg.bc.leakage_tolerance = cfg.tolerances.truncation_leakage;
        if (const Json* wcs = detail::find(*proto, "wcs_alpha")) {
            if (name == "B")
                throw ConfigError("config error at protocol.wcs_alpha: protocol B has no "
                                  "WCS variant");
            cfg.bc.wcs_alpha = detail::require_number(*wcs, "protocol.wcs_alpha");
        }
    } else {
        throw ConfigError("config error at protocol.name: expected \"A\", \"B\" or \"C\"");
    }

    // sweep
    if (const Json* sweep = detail::find(doc, "sweep")) {
        if (const Json* axes = detail::find(*sweep, "axes")) {
            if (!axes->is_array())
                throw ConfigError("config error at sweep.axes: expected an array");
            int i = 0;
            for (const auto& a : *axes)
                cfg.sweep.axes.push_back(
                    detail::parse_axis(a, "sweep.axes[" + std::to_string(i++) + "]"));
        }
    }
    static const std::vector<std::string> axis_names = {
        "alpha", "delta_la_ghz", "delta_ac_ghz", "wcs_alpha", "g_ghz", "kappa_ghz"};
    for (const auto& a : cfg.sweep.axes) {
        if (std::find(axis_names.begin(), axis_names.end(), a.name) == axis_names.end())
            throw ConfigError("config error at sweep.axes: unknown axis '" + a.name + "'");
        if (a.name == "alpha" && cfg.protocol != ProtocolName::A)
            throw ConfigError("config error at sweep.axes: axis 'alpha' applies to protocol A");
        if ((a.name == "delta_la_ghz" || a.name == "delta_ac_ghz" || a.name == "wcs_alpha") &&
            cfg.protocol == ProtocolName::A)
            throw ConfigError("config error at sweep.axes: axis '" + a.name +
                              "' applies to protocols B/C");
    }

    // output
    if (const Json* out = detail::find(doc, "output")) {
        cfg.out_csv = detail::string_or(*out, "output", "csv", "");
        cfg.out_metadata = detail::string_or(*out, "output", "metadata", "");
        cfg.format = detail::string_or(*out, "output", "format", "csv");
        if (cfg.format != "csv" && cfg.format != "json")
            throw ConfigError("config error at output.format: expected \"csv\" or \"json\"");
    }
    return cfg;
}

inline Config load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    Json doc;
    try {
        doc = Json::parse(f);
    } catch (const std::exception& e) {
        throw ConfigError("config parse error in '" + path + "': " + e.what());
    }
    return parse_config(doc);
}

// Resolve one grid point into a ready-to-run protocol spec.
inline ProtocolSpec build_protocol(const Config& cfg,
                                   const std::map<std::string, double>& point) {
    CoupledSystem system = cfg.system;
    ProtocolAConfig a = cfg.a;
    ProjectorConfig bc = cfg.bc;
    for (const auto& [name, value] : point) {
        if (name == "alpha") a.alpha = value;
        else if (name == "delta_la_ghz") bc.delta_la_ghz = value;
        else if (name == "delta_ac_ghz") bc.delta_ac_ghz = value;
        else if (name == "wcs_alpha") bc.wcs_alpha = value;
        else if (name == "g_ghz") system.g_ghz = value;
        else if (name == "kappa_ghz") {
            // scale all ports to the requested total
            const double k0 = system.cavity.kappa_ghz();
            if (k0 <= 0.0) throw ConfigError("kappa_ghz axis: profile has zero kappa");
            const double f = value / k0;
            system.cavity.kappa_r_ghz *= f;
            system.cavity.kappa_t_ghz *= f;
            system.cavity.kappa_l_ghz *= f;
        } else
            throw ConfigError("unknown sweep parameter '" + name + "'");
    }
    switch (cfg.protocol) {
        case ProtocolName::A: return protocol_a(system, a);
        case ProtocolName::B: return protocol_b(system, bc);
        case ProtocolName::C: return protocol_c(system, bc);
    }
    throw ConfigError("unreachable protocol name");
}

// FNV-1a hash of the canonical config serialization; identifies a sweep in
// its metadata sidecar.
inline std::string config_hash(const Json& doc) {
    const std::string canonical = doc.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace rebsim
