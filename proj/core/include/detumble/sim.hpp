#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "detumble/control.hpp"
#include "detumble/dynamics.hpp"
#include "detumble/geomag.hpp"
#include "detumble/stability.hpp"

namespace detumble {

/// How the torque evolves within one hold interval. The commanded moment is
/// always fixed in the body frame; the field keeps moving underneath it.
enum class TorqueHold {
    time_varying, ///< torque m x b_body(t) recomputed at every substep
    frozen,       ///< torque fixed at its interval-start value
};

struct SimConfig {
    SpacecraftBody body = SpacecraftBody::spherical(1.0);
    ControllerConfig controller;
    FieldModel field = StaticInertial{};
    Vec3 initial_omega = Vec3::Zero();
    Quat initial_q = Quat::Identity();
    double duration = 60.0;  ///< s, must be >= controller.dt
    int substeps = 20;       ///< RK4 substeps per control interval
    std::uint64_t seed = 0;  ///< attitude randomization in sweeps
    TorqueHold torque_hold = TorqueHold::time_varying;

    /// Throws std::invalid_argument on any violated bound.
    void validate() const;
};

/// One record per control interval, sampled at the interval start.
struct TelemetryRow {
    double t = 0.0;
    Vec3 omega = Vec3::Zero();  ///< body frame, rad/s
    Vec3 b_body = Vec3::Zero(); ///< T
    Vec3 moment = Vec3::Zero(); ///< commanded, A*m^2
    Vec3 torque = Vec3::Zero(); ///< m x b at interval start, N*m
    double energy = 0.0;        ///< 1/2 w^T I w, J
};

struct Telemetry {
    std::vector<TelemetryRow> rows;
    Vec3 initial_omega = Vec3::Zero();
    Vec3 final_omega = Vec3::Zero(); ///< state at t = duration
    double final_energy = 0.0;
    double duration = 0.0;           ///< elapsed simulated time, s
    bool energy_monotone = true;     ///< V non-increasing over rows + final
};

/// Raised when the propagated state stops being finite. Carries whatever
/// telemetry was recorded before the failing interval.
class SimulationAbort : public std::runtime_error {
public:
    SimulationAbort(const std::string& message, std::size_t step, double t,
                    Telemetry partial);

    std::size_t step; ///< control interval index of the failure
    double t;         ///< start time of that interval, s
    Telemetry partial;
};

/// Closed-loop discrete-time detumbling run. At each control instant the
/// body-frame field is sampled, the moment computed (B-dot commands zero on
/// the first step, having no previous sample) and held fixed in the body
/// frame while the rigid-body dynamics are integrated across the interval in
/// `substeps` RK4 steps. Deterministic: identical configs give bit-identical
/// telemetry. Simulates floor(duration/dt) whole control intervals.
Telemetry run_detumble(const SimConfig& config);

/// (|w_final| - |w_initial|) / elapsed, rad/s^2; negative = net detumbling.
/// Throws std::invalid_argument on empty telemetry.
double average_angular_acceleration(const Telemetry& telemetry);

enum class SweepAxis { initial_omega_mag, dt, k_c };
enum class SweepHorizon {
    one_interval, ///< |w(dt)| - |w(0)| after a single control interval
    full_run,     ///< average angular acceleration over the base duration
};

struct SweepOptions {
    SweepHorizon horizon = SweepHorizon::full_run;
    int threads = 1;
    bool randomize_attitude = false; ///< per-row initial q from config.seed
};

struct Sweep1DRow {
    double value = 0.0;
    double measured = 0.0;
    bool ok = false;
    std::string error; ///< set when the axis value was rejected
};

struct Sweep2DRow {
    double value1 = 0.0;
    double value2 = 0.0;
    double measured = 0.0;
    bool ok = false;
    std::string error;
};

const char* sweep_axis_name(SweepAxis axis);

/// One run per value of the chosen axis. Rows may execute concurrently; the
/// result order always follows the input order. Axis values <= 0 produce a
/// row-level error entry instead of failing the sweep.
std::vector<Sweep1DRow> sweep_1d(const SimConfig& base, SweepAxis axis,
                                 std::span<const double> values,
                                 const SweepOptions& options = {});

/// Full factorial grid over two axes, values1-major row order.
std::vector<Sweep2DRow> sweep_2d(const SimConfig& base, SweepAxis axis1,
                                 SweepAxis axis2,
                                 std::span<const double> values1,
                                 std::span<const double> values2,
                                 const SweepOptions& options = {});

} // namespace detumble
