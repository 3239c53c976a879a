#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>

#include "csv.hpp"

namespace detumble::cli {

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot open output file: " + path);
    }
    return out;
}

void append_vec3(std::vector<std::string>& cells, const Vec3& v) {
    cells.push_back(format_double(v.x()));
    cells.push_back(format_double(v.y()));
    cells.push_back(format_double(v.z()));
}

void write_telemetry_rows(std::ostream& out, const Telemetry& telemetry) {
    const std::array<std::string, 14> header = {
        "t",   "omega_x", "omega_y",  "omega_z",  "b_x",      "b_y",      "b_z",
        "m_x", "m_y",     "m_z",      "torque_x", "torque_y", "torque_z",
        "kinetic_energy"};
    write_csv_row(out, header);
    for (const TelemetryRow& row : telemetry.rows) {
        std::vector<std::string> cells;
        cells.reserve(header.size());
        cells.push_back(format_double(row.t));
        append_vec3(cells, row.omega);
        append_vec3(cells, row.b_body);
        append_vec3(cells, row.moment);
        append_vec3(cells, row.torque);
        cells.push_back(format_double(row.energy));
        write_csv_row(out, cells);
    }
}

const char* algorithm_name(Algorithm algorithm) {
    return algorithm == Algorithm::bdot ? "bdot" : "omega_cross_b";
}

} // namespace

int cmd_simulate(const RunSpec& spec, const std::string& out_csv, std::ostream& log) {
    std::ofstream out = open_output(out_csv);

    Telemetry telemetry;
    try {
        telemetry = run_detumble(spec.sim);
    } catch (const SimulationAbort& abort) {
        write_telemetry_rows(out, abort.partial);
        out << "# abort: " << abort.what() << '\n';
        log << "numerical abort: " << abort.what() << '\n'
            << "partial telemetry (" << abort.partial.rows.size() << " rows) -> "
            << out_csv << '\n';
        return kExitNumerical;
    }

    write_telemetry_rows(out, telemetry);

    log << "algorithm          : " << algorithm_name(spec.sim.controller.algorithm)
        << " (k_c = " << format_double(spec.sim.controller.k_c)
        << ", dt = " << format_double(spec.sim.controller.dt) << " s)\n"
        << "initial |omega|    : " << format_double(telemetry.initial_omega.norm())
        << " rad/s\n"
        << "final |omega|      : " << format_double(telemetry.final_omega.norm())
        << " rad/s\n"
        << "avg angular accel  : "
        << format_double(average_angular_acceleration(telemetry)) << " rad/s^2\n"
        << "energy monotone    : " << (telemetry.energy_monotone ? "yes" : "no") << '\n'
        << "rows written       : " << telemetry.rows.size() << " -> " << out_csv << '\n';
    return kExitOk;
}

int cmd_sweep(const RunSpec& spec, const std::string& out_csv, int threads,
              std::ostream& log) {
    if (!spec.sweep) {
        throw ConfigError("sweep command requires a sweep section in the config");
    }
    const SweepSpec& sweep = *spec.sweep;

    SweepOptions options;
    options.horizon = sweep.horizon;
    options.threads = threads;
    options.randomize_attitude = sweep.randomize_attitude;

    const std::string measured_name = sweep.horizon == SweepHorizon::one_interval
                                          ? "delta_omega"
                                          : "avg_angular_accel";

    std::ofstream out = open_output(out_csv);
    std::size_t failed = 0;

    if (!sweep.axis2) {
        const std::vector<Sweep1DRow> rows =
            sweep_1d(spec.sim, sweep.axis1, sweep.values1, options);
        const std::array<std::string, 3> header = {sweep_axis_name(sweep.axis1),
                                                   measured_name, "error"};
        write_csv_row(out, header);
        for (const Sweep1DRow& row : rows) {
            std::vector<std::string> cells;
            cells.push_back(format_double(row.value));
            cells.push_back(row.ok ? format_double(row.measured) : "");
            cells.push_back(row.error);
            write_csv_row(out, cells);
            failed += row.ok ? 0 : 1;
        }
        log << "sweep rows         : " << rows.size() << " (" << failed
            << " errored) -> " << out_csv << '\n';
    } else {
        const std::vector<Sweep2DRow> rows = sweep_2d(
            spec.sim, sweep.axis1, *sweep.axis2, sweep.values1, sweep.values2, options);
        const std::array<std::string, 4> header = {sweep_axis_name(sweep.axis1),
                                                   sweep_axis_name(*sweep.axis2),
                                                   measured_name, "error"};
        write_csv_row(out, header);
        for (const Sweep2DRow& row : rows) {
            std::vector<std::string> cells;
            cells.push_back(format_double(row.value1));
            cells.push_back(format_double(row.value2));
            cells.push_back(row.ok ? format_double(row.measured) : "");
            cells.push_back(row.error);
            write_csv_row(out, cells);
            failed += row.ok ? 0 : 1;
        }
        log << "sweep grid         : " << sweep.values1.size() << " x "
            << sweep.values2.size() << " (" << failed << " errored) -> " << out_csv
            << '\n';
    }
    return kExitOk;
}

int cmd_check(const RunSpec& spec, const std::string& out_json, std::ostream& log) {
    const StabilityReport report =
        entry_check(spec.sim.initial_omega, spec.sim.controller, spec.sim.body);

    const double omega_mag = spec.sim.initial_omega.norm();
    const double dt = spec.sim.controller.dt;
    const bool type2_applies = spec.sim.controller.algorithm == Algorithm::bdot;

    log << "entry check\n"
        << "  |omega| = " << format_double(omega_mag) << " rad/s, algorithm = "
        << algorithm_name(spec.sim.controller.algorithm)
        << ", k_c = " << format_double(spec.sim.controller.k_c)
        << (spec.gain_from_orbit ? " (orbit gain rule)" : "")
        << ", dt = " << format_double(dt) << " s\n";

    log << "  Type I   per-step overshoot : k_c*dt/J_min = "
        << format_double(report.type1_margin + 2.0) << " (limit 2), margin = "
        << format_double(report.type1_margin) << " -> "
        << (report.type1_unstable ? "VIOLATED" : "ok") << '\n';

    log << "  Type II  field sampling     : max dt = " << format_double(report.type2_max_dt)
        << " s vs dt = " << format_double(dt) << " s";
    if (type2_applies) {
        log << " -> " << (report.type2_violated ? "VIOLATED" : "ok") << '\n';
    } else {
        log << " -> n/a (rate feedback, not B-dot)\n";
    }

    log << "  Type III hold-interval spin : |omega|*dt = " << format_double(omega_mag * dt)
        << " (limit pi), predicted one-interval change = "
        << format_double(report.type3_delta_omega_pred) << " rad/s -> "
        << (report.type3_violated ? "VIOLATED" : "ok") << '\n';

    std::string violated;
    if (report.type1_unstable) {
        violated += " Type I";
    }
    if (report.type2_violated) {
        violated += " Type II";
    }
    if (report.type3_violated) {
        violated += " Type III";
    }
    if (report.recommended_entry) {
        log << "  entry recommended: YES\n";
    } else {
        log << "  entry recommended: NO (violated:" << violated << ")\n";
    }

    if (!out_json.empty()) {
        nlohmann::json j;
        j["algorithm"] = algorithm_name(spec.sim.controller.algorithm);
        j["k_c"] = spec.sim.controller.k_c;
        j["dt"] = dt;
        j["omega_magnitude"] = omega_mag;
        j["type1"] = {{"unstable", report.type1_unstable},
                      {"margin", report.type1_margin}};
        j["type2"] = {{"max_dt", report.type2_max_dt},
                      {"violated", report.type2_violated},
                      {"applies", type2_applies}};
        j["type3"] = {{"predicted_delta_omega", report.type3_delta_omega_pred},
                      {"violated", report.type3_violated}};
        j["recommended_entry"] = report.recommended_entry;
        std::ofstream out = open_output(out_json);
        out << j.dump(2) << '\n';
        log << "  report -> " << out_json << '\n';
    }

    return report.recommended_entry ? kExitOk : kExitEntryRefused;
}

std::string equilibria_path(const std::string& out_csv) {
    const std::size_t dot = out_csv.find_last_of('.');
    const std::size_t slash = out_csv.find_last_of("/\\");
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return out_csv + "_equilibria";
    }
    return out_csv.substr(0, dot) + "_equilibria" + out_csv.substr(dot);
}

int cmd_portrait(const RunSpec& spec, const std::string& out_csv, std::ostream& log) {
    const double dt = spec.sim.controller.dt;
    const double k_c = spec.sim.controller.k_c;
    const double inertia = spec.sim.body.j_min();
    // Spin about body z from identity attitude: the body-frame field sample
    // equals the inertial one at t = 0.
    const Vec3 b = field_inertial(spec.sim.field, 0.0);

    std::ofstream out = open_output(out_csv);
    const std::array<std::string, 2> header = {"omega_z", "omega_z_dot"};
    write_csv_row(out, header);
    const int n = spec.portrait.samples;
    for (int i = 0; i < n; ++i) {
        const double omega_z =
            spec.portrait.omega_max * static_cast<double>(i) / (n - 1);
        const double accel = bdot_phase_acceleration(omega_z, dt, k_c, inertia, b);
        const std::array<std::string, 2> cells = {format_double(omega_z),
                                                  format_double(accel)};
        write_csv_row(out, cells);
    }

    const EquilibriumSet equilibria = classify_equilibria(dt, spec.portrait.omega_max);
    const std::string eq_path = equilibria_path(out_csv);
    std::ofstream eq_out = open_output(eq_path);
    const std::array<std::string, 2> eq_header = {"omega", "kind"};
    write_csv_row(eq_out, eq_header);
    for (double w : equilibria.stable_points) {
        const std::array<std::string, 2> cells = {format_double(w), "stable"};
        write_csv_row(eq_out, cells);
    }
    for (double w : equilibria.unstable_points) {
        const std::array<std::string, 2> cells = {format_double(w), "unstable"};
        write_csv_row(eq_out, cells);
    }

    log << "portrait samples   : " << n << " over [0, "
        << format_double(spec.portrait.omega_max) << "] rad/s -> " << out_csv << '\n'
        << "equilibria         : " << equilibria.stable_points.size() << " stable, "
        << equilibria.unstable_points.size() << " unstable -> " << eq_path << '\n';
    return kExitOk;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Discrete-time magnetic detumbling simulator and stability toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    int threads = 1;
    long long seed_override = -1;

    auto add_common = [&](CLI::App* cmd, bool needs_out) {
        cmd->add_option("--config", config_path, "run configuration file")->required();
        auto* out = cmd->add_option("--out", out_path, "output file path");
        if (needs_out) {
            out->required();
        }
        cmd->add_option("--seed", seed_override, "override sim.seed");
        return cmd;
    };

    CLI::App* simulate = add_common(app.add_subcommand("simulate", "closed-loop run, telemetry CSV"), true);
    CLI::App* sweep = add_common(app.add_subcommand("sweep", "parameter sweep, grid CSV"), true);
    sweep->add_option("--threads", threads, "worker threads for sweep rows")
        ->check(CLI::PositiveNumber);
    CLI::App* check = add_common(app.add_subcommand("check", "pre-flight entry check"), false);
    CLI::App* portrait = add_common(app.add_subcommand("portrait", "phase-portrait CSV"), true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        RunSpec spec = RunSpec::from_file(config_path);
        if (seed_override >= 0) {
            spec.sim.seed = static_cast<std::uint64_t>(seed_override);
        }
        if (simulate->parsed()) {
            return cmd_simulate(spec, out_path, std::cout);
        }
        if (sweep->parsed()) {
            return cmd_sweep(spec, out_path, threads, std::cout);
        }
        if (check->parsed()) {
            return cmd_check(spec, out_path, std::cout);
        }
        if (portrait->parsed()) {
            return cmd_portrait(spec, out_path, std::cout);
        }
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}

} // namespace detumble::cli
