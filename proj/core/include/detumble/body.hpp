#pragma once

#include "detumble/types.hpp"

namespace detumble {

/// Rigid-body mass properties. The inertia tensor is validated once at
/// construction: symmetric (relative asymmetry <= 1e-12), positive definite,
/// and with principal moments obeying the rigid-body triangle bounds
/// (each <= sum of the other two). The inverse is precomputed and checked
/// against identity to 1e-10.
class SpacecraftBody {
public:
    /// Throws std::invalid_argument if the tensor is not a physical inertia.
    explicit SpacecraftBody(const Mat3& inertia);

    static SpacecraftBody from_principal_moments(double ix, double iy, double iz);
    static SpacecraftBody spherical(double moment);

    const Mat3& inertia() const noexcept { return inertia_; }
    const Mat3& inertia_inverse() const noexcept { return inertia_inverse_; }

    /// Eigenvalues of the inertia tensor, ascending.
    const Vec3& principal_moments() const noexcept { return principal_moments_; }

    /// Smallest principal moment, kg*m^2.
    double j_min() const noexcept { return principal_moments_[0]; }

private:
    Mat3 inertia_;
    Mat3 inertia_inverse_;
    Vec3 principal_moments_;
};

} // namespace detumble
