#include "detumble/body.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace detumble {

namespace {

constexpr double kSymmetryTol = 1e-12;   // relative asymmetry
constexpr double kInverseTol = 1e-10;    // |I * I^-1 - 1|
constexpr double kTriangleSlack = 1e-9;  // admits exactly-planar bodies

} // namespace

SpacecraftBody::SpacecraftBody(const Mat3& inertia) {
    if (!inertia.allFinite()) {
        throw std::invalid_argument("SpacecraftBody: inertia has non-finite entries");
    }

    const double scale = inertia.cwiseAbs().maxCoeff();
    if (!(scale > 0.0)) {
        throw std::invalid_argument("SpacecraftBody: inertia is zero");
    }
    const double asymmetry = (inertia - inertia.transpose()).cwiseAbs().maxCoeff();
    if (asymmetry > kSymmetryTol * scale) {
        throw std::invalid_argument("SpacecraftBody: inertia is not symmetric");
    }

    inertia_ = 0.5 * (inertia + inertia.transpose());

    Eigen::SelfAdjointEigenSolver<Mat3> solver(inertia_);
    if (solver.info() != Eigen::Success) {
        throw std::invalid_argument("SpacecraftBody: eigendecomposition failed");
    }
    principal_moments_ = solver.eigenvalues(); // ascending

    if (!(principal_moments_[0] > 0.0)) {
        throw std::invalid_argument("SpacecraftBody: inertia is not positive definite");
    }

    // Physical rigid bodies: no principal moment exceeds the sum of the
    // other two.
    const double a = principal_moments_[0];
    const double b = principal_moments_[1];
    const double c = principal_moments_[2];
    if (c > (a + b) * (1.0 + kTriangleSlack)) {
        throw std::invalid_argument(
            "SpacecraftBody: principal moments violate the rigid-body triangle bound");
    }

    inertia_inverse_ = inertia_.inverse();
    const double identity_err =
        (inertia_ * inertia_inverse_ - Mat3::Identity()).cwiseAbs().maxCoeff();
    if (!(identity_err <= kInverseTol)) {
        throw std::invalid_argument("SpacecraftBody: inertia is numerically singular");
    }
}

SpacecraftBody SpacecraftBody::from_principal_moments(double ix, double iy, double iz) {
    Mat3 inertia = Mat3::Zero();
    inertia.diagonal() << ix, iy, iz;
    return SpacecraftBody(inertia);
}

SpacecraftBody SpacecraftBody::spherical(double moment) {
    return from_principal_moments(moment, moment, moment);
}

} // namespace detumble
