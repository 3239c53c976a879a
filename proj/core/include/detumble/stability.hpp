#pragma once

#include <vector>

#include "detumble/body.hpp"
#include "detumble/control.hpp"

namespace detumble {

/// Pre-flight evaluation of the three discrete-time instability criteria.
/// recommended_entry is true only if none of the three is violated.
struct StabilityReport {
    bool type1_unstable = false;        ///< per-step overshoot, k_c*dt/J_min > 2
    double type1_margin = 0.0;          ///< k_c*dt/J_min - 2 (negative = stable)
    double type2_max_dt = 0.0;          ///< pi/|w|, +inf when |w| = 0
    bool type2_violated = false;        ///< dt >= pi/|w|; evaluated for bdot only
    double type3_delta_omega_pred = 0.0;///< -k_c sin(|w| dt), rad/s
    bool type3_violated = false;        ///< |w|*dt >= pi (hold-interval spin-up)
    bool recommended_entry = false;
};

/// Sampled-map equilibria of the B-dot spin about one axis: stable at even,
/// unstable at odd multiples of pi/dt.
struct EquilibriumSet {
    std::vector<double> stable_points;   ///< 2n*pi/dt, rad/s, ascending
    std::vector<double> unstable_points; ///< (2n+1)*pi/dt, rad/s, ascending
    double omega_max = 0.0;              ///< range bound used, rad/s
};

/// Rotational kinetic energy 1/2 w^T I w, joule. The Lyapunov candidate.
double kinetic_energy(const Vec3& omega, const SpacecraftBody& body);

/// Vdot = w^T torque, watt.
double lyapunov_rate(const Vec3& omega, const Vec3& torque);

/// V(w_k1) - V(w_k); positive flags an energy-increasing step.
double discrete_lyapunov_delta(const Vec3& omega_k, const Vec3& omega_k1,
                               const SpacecraftBody& body);

struct Type1Result {
    bool unstable = false;
    double margin = 0.0; ///< k_c*dt/J_min - 2
};

/// Per-step overshoot criterion, evaluated against the smallest principal
/// moment (the axis with the largest per-step kick).
Type1Result type1_criterion(double k_c, double dt, const SpacecraftBody& body);

/// Per-component flip-and-grow check: true when one impulsive step
/// w -> w + (torque/I)*dt strictly grows the component's magnitude.
bool type1_componentwise(double torque_component, double inertia_axis, double dt,
                         double omega_perp_component);

/// Sampled angular acceleration of the B-dot z-spin, -C sin(wz*dt) with
/// C = k_c (bx^2 + by^2) / (dt * I * |b|^2). The |b|^2 normalization follows
/// from composing the sampled field rotation with the finite-difference
/// moment and the torque cross product; the tests pin it with exactly that
/// composition. Throws std::invalid_argument on dt <= 0 or inertia <= 0,
/// std::domain_error on |b| = 0.
double bdot_phase_acceleration(double omega_z, double dt, double k_c,
                               double inertia, const Vec3& b);

/// Largest alias-free sampling interval pi/|w|, s; +inf when |w| = 0.
double type2_max_dt(const Vec3& omega);

/// All sampled-map equilibria with magnitude <= omega_max.
/// Throws std::invalid_argument unless dt > 0 and omega_max >= 0.
EquilibriumSet classify_equilibria(double dt, double omega_max);

/// Predicted one-interval change -k_c sin(w_i dt) under the fixed-sweep
/// assumption, rad/s.
double type3_delta_omega(double omega_i, double dt, double k_c);

/// Aggregate entry gate: Type I on the controller constants, Type II on the
/// sampling bound (B-dot only), Type III on the hold-interval first-crossing
/// bound |w|*dt < pi (making the gate monotone in |w|).
StabilityReport entry_check(const Vec3& omega, const ControllerConfig& config,
                            const SpacecraftBody& body);

} // namespace detumble
