#include "detumble/sim.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <thread>
#include <utility>

namespace detumble {

void SimConfig::validate() const {
    controller.validate();
    if (!(duration >= controller.dt)) {
        throw std::invalid_argument("SimConfig: duration must be >= controller.dt");
    }
    if (substeps < 1) {
        throw std::invalid_argument("SimConfig: substeps must be >= 1");
    }
    if (!initial_omega.allFinite()) {
        throw std::invalid_argument("SimConfig: initial_omega must be finite");
    }
    if (!initial_q.coeffs().allFinite() || !(initial_q.norm() > 0.0)) {
        throw std::invalid_argument("SimConfig: initial_q must be finite and nonzero");
    }
}

SimulationAbort::SimulationAbort(const std::string& message, std::size_t step_,
                                 double t_, Telemetry partial_)
    : std::runtime_error(message), step(step_), t(t_), partial(std::move(partial_)) {}

Telemetry run_detumble(const SimConfig& config) {
    config.validate();

    const double dt = config.controller.dt;
    const auto n_intervals =
        static_cast<std::size_t>(std::floor(config.duration / dt + 1e-9));

    Telemetry telemetry;
    telemetry.rows.reserve(n_intervals);
    telemetry.initial_omega = config.initial_omega;
    telemetry.duration = static_cast<double>(n_intervals) * dt;

    AttitudeState state;
    state.q = config.initial_q.normalized();
    state.omega = config.initial_omega;
    state.t = 0.0;

    std::optional<Vec3> b_prev;
    const double h = dt / config.substeps;

    for (std::size_t k = 0; k < n_intervals; ++k) {
        const double t_k = static_cast<double>(k) * dt;
        state.t = t_k;

        const Vec3 b_body = rotate_to_body(state.q, field_inertial(config.field, t_k));

        ControlCommand command;
        switch (config.controller.algorithm) {
        case Algorithm::omega_cross_b:
            command.moment = omega_cross_b_moment(state.omega, b_body, config.controller.k_c);
            break;
        case Algorithm::bdot:
            // No field-rate information yet on the very first step.
            command.moment = b_prev
                ? bdot_moment(b_body, *b_prev, dt, config.controller.k_c)
                : Vec3::Zero();
            break;
        }
        command.moment = apply_moment_cap(command.moment, config.controller.moment_cap);
        b_prev = b_body;

        const Vec3 torque_start = magnetic_torque(command.moment, b_body);

        TelemetryRow row;
        row.t = t_k;
        row.omega = state.omega;
        row.b_body = b_body;
        row.moment = command.moment;
        row.torque = torque_start;
        row.energy = kinetic_energy(state.omega, config.body);
        telemetry.rows.push_back(row);

        try {
            if (config.torque_hold == TorqueHold::frozen) {
                const Vec3 tau = torque_start;
                for (int s = 0; s < config.substeps; ++s) {
                    state = rk4_step(state, [&](const AttitudeState&) { return tau; },
                                     h, config.body);
                }
            } else {
                const Vec3 moment = command.moment;
                auto torque_fn = [&](const AttitudeState& s) {
                    return magnetic_torque(
                        moment, rotate_to_body(s.q, field_inertial(config.field, s.t)));
                };
                for (int s = 0; s < config.substeps; ++s) {
                    state = rk4_step(state, torque_fn, h, config.body);
                }
            }
        } catch (const std::invalid_argument&) {
            state.omega = Vec3::Constant(std::numeric_limits<double>::quiet_NaN());
        }

        if (!is_finite(state)) {
            std::ostringstream msg;
            msg << "run_detumble: non-finite state in control interval " << k
                << " starting at t = " << t_k;
            throw SimulationAbort(msg.str(), k, t_k, std::move(telemetry));
        }
    }

    telemetry.final_omega = state.omega;
    telemetry.final_energy = kinetic_energy(state.omega, config.body);

    double prev_energy = std::numeric_limits<double>::infinity();
    telemetry.energy_monotone = true;
    for (const TelemetryRow& row : telemetry.rows) {
        if (row.energy > prev_energy) {
            telemetry.energy_monotone = false;
            break;
        }
        prev_energy = row.energy;
    }
    if (telemetry.energy_monotone && telemetry.final_energy > prev_energy) {
        telemetry.energy_monotone = false;
    }
    return telemetry;
}

double average_angular_acceleration(const Telemetry& telemetry) {
    if (telemetry.rows.empty() || !(telemetry.duration > 0.0)) {
        throw std::invalid_argument(
            "average_angular_acceleration: telemetry holds no completed interval");
    }
    return (telemetry.final_omega.norm() - telemetry.initial_omega.norm()) /
           telemetry.duration;
}

const char* sweep_axis_name(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::initial_omega_mag: return "initial_omega_mag";
    case SweepAxis::dt: return "dt";
    case SweepAxis::k_c: return "k_c";
    }
    return "?";
}

namespace {

// Deterministic uniform doubles straight from the mt19937_64 stream, so
// sweep attitude draws do not depend on the standard library's
// distribution implementations.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Quat random_unit_quaternion(std::uint64_t seed, std::uint64_t row) {
    std::seed_seq seq{seed, row};
    std::mt19937_64 rng(seq);
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    const double u3 = uniform01(rng);
    const double two_pi = 2.0 * std::numbers::pi;
    return Quat(std::sqrt(1.0 - u1) * std::sin(two_pi * u2),
                std::sqrt(1.0 - u1) * std::cos(two_pi * u2),
                std::sqrt(u1) * std::sin(two_pi * u3),
                std::sqrt(u1) * std::cos(two_pi * u3));
}

struct RowOutcome {
    double measured = 0.0;
    bool ok = false;
    std::string error;
};

RowOutcome run_sweep_cell(const SimConfig& base, SweepAxis axis1, double value1,
                          std::optional<SweepAxis> axis2, double value2,
                          const SweepOptions& options, std::uint64_t row_index) {
    RowOutcome outcome;

    SimConfig config = base;
    auto apply = [&config](SweepAxis axis, double value) {
        switch (axis) {
        case SweepAxis::initial_omega_mag: {
            const double base_norm = config.initial_omega.norm();
            if (!(base_norm > 0.0)) {
                throw std::invalid_argument(
                    "sweep: base initial_omega must be nonzero to sweep its magnitude");
            }
            config.initial_omega *= value / base_norm;
            break;
        }
        case SweepAxis::dt:
            config.controller.dt = value;
            break;
        case SweepAxis::k_c:
            config.controller.k_c = value;
            break;
        }
    };

    if (!(value1 > 0.0) || (axis2 && !(value2 > 0.0))) {
        outcome.error = "axis value must be positive";
        return outcome;
    }

    try {
        apply(axis1, value1);
        if (axis2) {
            apply(*axis2, value2);
        }
        if (options.horizon == SweepHorizon::one_interval) {
            config.duration = config.controller.dt;
        }
        if (options.randomize_attitude) {
            config.initial_q = random_unit_quaternion(config.seed, row_index);
        }

        const Telemetry telemetry = run_detumble(config);
        switch (options.horizon) {
        case SweepHorizon::one_interval:
            outcome.measured =
                telemetry.final_omega.norm() - telemetry.initial_omega.norm();
            break;
        case SweepHorizon::full_run:
            outcome.measured = average_angular_acceleration(telemetry);
            break;
        }
        outcome.ok = true;
    } catch (const SimulationAbort& abort) {
        outcome.error = abort.what();
    } catch (const std::invalid_argument& err) {
        outcome.error = err.what();
    } catch (const std::domain_error& err) {
        outcome.error = err.what();
    }
    return outcome;
}

void run_indexed(std::size_t n, int threads, const std::function<void(std::size_t)>& work) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            work(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    const auto worker_count = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::jthread> workers;
    workers.reserve(worker_count);
    for (std::size_t w = 0; w < worker_count; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                work(i);
            }
        });
    }
}

} // namespace

std::vector<Sweep1DRow> sweep_1d(const SimConfig& base, SweepAxis axis,
                                 std::span<const double> values,
                                 const SweepOptions& options) {
    if (values.empty()) {
        throw std::invalid_argument("sweep_1d: values must be nonempty");
    }
    std::vector<Sweep1DRow> rows(values.size());
    run_indexed(values.size(), options.threads, [&](std::size_t i) {
        const RowOutcome outcome =
            run_sweep_cell(base, axis, values[i], std::nullopt, 0.0, options, i);
        rows[i] = Sweep1DRow{values[i], outcome.measured, outcome.ok, outcome.error};
    });
    return rows;
}

std::vector<Sweep2DRow> sweep_2d(const SimConfig& base, SweepAxis axis1,
                                 SweepAxis axis2,
                                 std::span<const double> values1,
                                 std::span<const double> values2,
                                 const SweepOptions& options) {
    if (values1.empty() || values2.empty()) {
        throw std::invalid_argument("sweep_2d: value grids must be nonempty");
    }
    if (axis1 == axis2) {
        throw std::invalid_argument("sweep_2d: axes must differ");
    }
    const std::size_t n1 = values1.size();
    const std::size_t n2 = values2.size();
    std::vector<Sweep2DRow> rows(n1 * n2);
    run_indexed(n1 * n2, options.threads, [&](std::size_t i) {
        const std::size_t i1 = i / n2;
        const std::size_t i2 = i % n2;
        const RowOutcome outcome = run_sweep_cell(base, axis1, values1[i1], axis2,
                                                  values2[i2], options, i);
        rows[i] = Sweep2DRow{values1[i1], values2[i2], outcome.measured, outcome.ok,
                             outcome.error};
    });
    return rows;
}

} // namespace detumble
