#pragma once

#include <optional>

#include "detumble/geomag.hpp"
#include "detumble/types.hpp"

namespace detumble {

enum class Algorithm {
    omega_cross_b, ///< m = k_c/|b|^2 (w x b), needs rate + field feedback
    bdot,          ///< m = -k_c/|b|^2 bdot, field feedback only
};

/// Discrete controller parameters. The commanded moment is held constant in
/// the body frame over each interval of length dt (zero-order hold).
struct ControllerConfig {
    Algorithm algorithm = Algorithm::bdot;
    double k_c = 0.0;                 ///< gain, N*m*s
    double dt = 1.0;                  ///< control timestep, s
    std::optional<double> moment_cap; ///< A*m^2, off by default

    /// Throws std::invalid_argument unless dt > 0, k_c >= 0 and any cap > 0.
    void validate() const;
};

/// Magnetic moment held over one control interval.
struct ControlCommand {
    Vec3 moment = Vec3::Zero(); ///< A*m^2, constant in the body frame
};

/// m = (k_c/|b|^2) (w x b). Throws std::domain_error when |b| is zero; the
/// field models never produce one.
Vec3 omega_cross_b_moment(const Vec3& omega, const Vec3& b_body, double k_c);

/// m = -(k_c/|b_k|^2) (b_k - b_prev)/dt, the finite-difference field-rate
/// law. Normalization uses the current sample's |b_k|^2. The first control
/// step (no previous sample) is the harness's responsibility, not handled
/// here. Throws std::domain_error on zero |b_k|, std::invalid_argument on
/// dt <= 0.
Vec3 bdot_moment(const Vec3& b_k, const Vec3& b_prev, double dt, double k_c);

/// Closed-loop gain rule k_c = (4pi/T_orb)(1 + sin xi) J_min.
/// Throws std::invalid_argument unless j_min > 0.
double avanzini_gain(const OrbitConfig& orbit, double j_min);

/// Torque m x b, N*m. Never has a component along b.
Vec3 magnetic_torque(const Vec3& moment, const Vec3& b_body);

/// -k_c (1 - bhat bhat^T) w = -k_c w_perp, the torque both control laws
/// produce in the continuous-time limit. Throws std::domain_error on |b| = 0.
Vec3 projection_torque(const Vec3& omega, const Vec3& b_body, double k_c);

/// Clamps |moment| to the cap when one is set.
Vec3 apply_moment_cap(const Vec3& moment, const std::optional<double>& cap);

} // namespace detumble
