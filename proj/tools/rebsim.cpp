// rebsim: config-driven driver for the remote-entanglement protocol
// simulator. Subcommands: params | run | sweep | pareto.
//
// Exit codes: 0 ok, 2 config error, 3 numerical guard tripped,
// 4 empty feasible set.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rebsim/config/config.hpp"
#include "rebsim/sweep/csv.hpp"
#include "rebsim/sweep/sweep.hpp"
#include "rebsim/version.hpp"

namespace {

using rebsim::Json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitNoSolution = 4;

int resolve_parallelism(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("REBSIM_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

Json load_config_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw rebsim::ConfigError("cannot open config file '" + path + "'");
    try {
        return Json::parse(f);
    } catch (const std::exception& e) {
        throw rebsim::ConfigError("config parse error in '" + path + "': " + e.what());
    }
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        rebsim::write_file(out_path, content);
    }
}

rebsim::OperatingPoint configured_point(const rebsim::Config& cfg,
                                        rebsim::CoupledSystem& sys) {
    sys = cfg.system;
    sys.cavity.omega_c_ghz = sys.emitter.omega_a_ghz - cfg.bc.delta_ac_ghz;
    return rebsim::OperatingPoint::from_detunings(cfg.bc.delta_la_ghz,
                                                  sys.emitter.omega_a_ghz);
}

int cmd_params(const std::string& config_path, const std::string& out_path,
               const std::string& format) {
    const rebsim::Config cfg = rebsim::load_config(config_path);
    rebsim::CoupledSystem sys;
    const auto op = configured_point(cfg, sys);
    const auto scatter = rebsim::scatter_derived(sys);
    const auto emission = rebsim::emission_channel_probabilities(sys);

    Json doc;
    doc["profile"] = cfg.profile_name;
    doc["cooperativity_bare"] = rebsim::cooperativity(sys, rebsim::LinewidthMode::Bare);
    doc["cooperativity_dephased"] =
        rebsim::cooperativity(sys, rebsim::LinewidthMode::Dephased);
    doc["purcell_factor"] = rebsim::purcell_factor(sys);
    doc["outcoupling_efficiency"] = rebsim::outcoupling_efficiency_strong(sys);
    doc["quality_factor"] = sys.cavity.quality_factor();
    doc["gamma_total_ghz"] = sys.emitter.total_linewidth_ghz();
    doc["gamma_prime_ghz"] = scatter.gamma_prime;
    doc["dw_prime"] = scatter.dw_prime;
    doc["qe_prime"] = scatter.qe_prime;
    doc["collection_efficiency"] = scatter.eta;
    doc["emission"] = {{"p_coh", emission.p_coh},
                       {"p_incoh", emission.p_incoh},
                       {"p_2ph", emission.p_2ph},
                       {"p_loss", emission.p_loss}};
    doc["operating_point"] = {{"nu_ghz", op.nu_ghz},
                              {"delta_la_ghz", op.delta_la_ghz(sys)},
                              {"delta_ac_ghz", op.delta_ac_ghz(sys)},
                              {"delta_lc_ghz", op.delta_lc_ghz(sys)}};
    for (int k = 0; k < 2; ++k) {
        const auto rt = rebsim::response_coefficients(sys, op, k);
        Json triple = {{"r_re", rt.r.real()}, {"r_im", rt.r.imag()},
                       {"t_re", rt.t.real()}, {"t_im", rt.t.imag()},
                       {"l_re", rt.l.real()}, {"l_im", rt.l.imag()},
                       {"r_abs2", std::norm(rt.r)}, {"t_abs2", std::norm(rt.t)},
                       {"l_abs2", std::norm(rt.l)}};
        doc[k == 0 ? "response_spin0" : "response_spin1"] = triple;
    }

    if (format == "json") {
        emit(out_path, doc.dump(2) + "\n");
        return kExitOk;
    }
    std::ostringstream text;
    text << "profile:                  " << cfg.profile_name << "\n";
    text << "cooperativity (bare):     " << doc["cooperativity_bare"].get<double>() << "\n";
    text << "cooperativity (dephased): " << doc["cooperativity_dephased"].get<double>()
         << "\n";
    text << "purcell factor:           " << doc["purcell_factor"].get<double>() << "\n";
    text << "outcoupling efficiency:   " << doc["outcoupling_efficiency"].get<double>()
         << "\n";
    text << "quality factor:           " << doc["quality_factor"].get<double>() << "\n";
    text << "Gamma (GHz):              " << doc["gamma_total_ghz"].get<double>() << "\n";
    text << "Gamma' (GHz):             " << doc["gamma_prime_ghz"].get<double>() << "\n";
    text << "DW':                      " << doc["dw_prime"].get<double>() << "\n";
    text << "QE':                      " << doc["qe_prime"].get<double>() << "\n";
    text << "collection efficiency:    " << doc["collection_efficiency"].get<double>()
         << "\n";
    text << "emission p_coh/p_incoh/p_2ph/p_loss: " << emission.p_coh << " "
         << emission.p_incoh << " " << emission.p_2ph << " " << emission.p_loss << "\n";
    for (int k = 0; k < 2; ++k) {
        const auto rt = rebsim::response_coefficients(sys, op, k);
        text << "response spin " << k << ": r = (" << rt.r.real() << ", " << rt.r.imag()
             << "), t = (" << rt.t.real() << ", " << rt.t.imag() << "), |l|^2 = "
             << std::norm(rt.l) << "\n";
    }
    emit(out_path, text.str());
    return kExitOk;
}

Json outcome_to_json(const rebsim::ProtocolOutcome& out) {
    Json j;
    j["success_probability"] = out.success_probability;
    j["fidelity"] = out.fidelity;
    j["infidelity"] = out.infidelity;
    j["herald_pattern"] = out.herald_pattern;
    j["truncation_warning"] = out.truncation_warning;
    Json swept = Json::object();
    for (const auto& [k, v] : out.swept_values) swept[k] = v;
    j["swept_values"] = swept;
    if (!out.error.empty()) j["error"] = out.error;
    return j;
}

int cmd_run(const std::string& config_path, const std::string& out_path) {
    const rebsim::Config cfg = rebsim::load_config(config_path);
    const auto spec = rebsim::build_protocol(cfg, {});
    const auto outcome = rebsim::run(spec);
    if (outcome.truncation_warning)
        std::cerr << "warning: truncation leakage above "
                  << cfg.tolerances.truncation_leakage << " detected\n";
    emit(out_path, outcome_to_json(outcome).dump(2) + "\n");
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path, int parallelism) {
    const Json doc = load_config_json(config_path);
    const rebsim::Config cfg = rebsim::parse_config(doc);
    const int workers = resolve_parallelism(parallelism);
    const std::string hash = rebsim::config_hash(doc);

    auto eval = [&cfg](const std::map<std::string, double>& values) {
        return rebsim::run(rebsim::build_protocol(cfg, values));
    };
    const auto result = rebsim::run_sweep(eval, cfg.sweep, workers, hash);

    const std::string csv_path = !out_path.empty() ? out_path : cfg.out_csv;
    emit(csv_path, rebsim::sweep_to_csv(result));

    Json meta;
    meta["version"] = rebsim::kVersion;
    meta["csv_schema"] = rebsim::kCsvSchemaVersion;
    meta["config_hash"] = result.meta.config_hash;
    meta["rows"] = result.meta.rows;
    meta["workers"] = result.meta.workers;
    meta["wall_seconds"] = result.meta.wall_seconds;
    Json axes = Json::array();
    for (const auto& a : result.grid.axes)
        axes.push_back(
            {{"name", a.name},
             {"min", a.min},
             {"max", a.max},
             {"count", a.count},
             {"scale", a.scale == rebsim::SweepAxis::Scale::Log ? "log" : "linear"}});
    meta["axes"] = axes;
    std::string meta_path = !cfg.out_metadata.empty() ? cfg.out_metadata : "";
    if (meta_path.empty() && !csv_path.empty()) meta_path = csv_path + ".meta.json";
    if (!meta_path.empty()) rebsim::write_file(meta_path, meta.dump(2) + "\n");
    return kExitOk;
}

int cmd_pareto(const std::string& in_path, const std::string& out_path,
               std::optional<double> max_infidelity) {
    const auto result = rebsim::read_sweep_csv(in_path);
    if (max_infidelity) {
        const auto best = rebsim::best_point(result, *max_infidelity);
        if (!best) {
            std::cerr << "no row satisfies infidelity <= " << *max_infidelity << "\n";
            return kExitNoSolution;
        }
        std::string text = rebsim::sweep_csv_header(result.grid) +
                           rebsim::sweep_row_csv(result.grid, result.rows[*best]);
        emit(out_path, text);
        return kExitOk;
    }
    const auto frontier = rebsim::pareto_rows(result);
    if (frontier.empty()) {
        std::cerr << "no feasible rows in '" << in_path << "'\n";
        return kExitNoSolution;
    }
    std::string text = rebsim::sweep_csv_header(result.grid);
    for (std::size_t idx : frontier)
        text += rebsim::sweep_row_csv(result.grid, result.rows[idx]);
    emit(out_path, text);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Photon-mediated remote-entanglement protocol simulator"};
    app.set_version_flag("--version", rebsim::kVersion);
    app.require_subcommand(1);

    std::string config_path, out_path, in_path, format = "csv";
    int parallelism = 0;
    long seed = 0; // reserved for stochastic extensions
    std::optional<double> max_infidelity;

    app.add_option("--seed", seed, "reserved");

    auto* params = app.add_subcommand("params", "print derived device quantities");
    params->add_option("--config", config_path, "config file")->required();
    params->add_option("--out", out_path, "output path (default stdout)");
    params->add_option("--format", format, "csv|json");

    auto* runc = app.add_subcommand("run", "run a single protocol instance");
    runc->add_option("--config", config_path, "config file")->required();
    runc->add_option("--out", out_path, "output path (default stdout)");
    runc->add_option("--format", format, "csv|json");

    auto* sweep = app.add_subcommand("sweep", "run the configured parameter sweep");
    sweep->add_option("--config", config_path, "config file")->required();
    sweep->add_option("--out", out_path, "CSV output path");
    sweep->add_option("--parallelism", parallelism,
                      "worker threads (default REBSIM_THREADS or hardware)");
    sweep->add_option("--format", format, "csv|json");

    auto* pareto = app.add_subcommand("pareto", "reduce a sweep CSV to its frontier");
    pareto->add_option("results", in_path, "sweep CSV path")->required();
    pareto->add_option("--out", out_path, "output path (default stdout)");
    pareto->add_option("--max-infidelity", max_infidelity,
                       "print the best point with infidelity <= bound instead");

    CLI11_PARSE(app, argc, argv);

    try {
        if (params->parsed())
            return cmd_params(config_path, out_path, format == "json" ? "json" : "text");
        if (runc->parsed()) return cmd_run(config_path, out_path);
        if (sweep->parsed()) return cmd_sweep(config_path, out_path, parallelism);
        if (pareto->parsed()) return cmd_pareto(in_path, out_path, max_infidelity);
    } catch (const rebsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const rebsim::NumericalGuardError& e) {
        std::cerr << "numerical guard: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const rebsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
