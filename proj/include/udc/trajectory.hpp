#pragma once

#include <variant>

namespace udc {

/// Hyperbolic motion from rest at the cavity entrance, proper acceleration a.
struct UniformAcceleration
{
    double acceleration;
};

/// Inertial motion at speed v in (0, 1).
struct ConstantVelocity
{
    double velocity;
};

/// Low-velocity expansion of hyperbolic motion: z = a tau^2 / 2, t = tau.
struct GalileanApproximation
{
    double acceleration;
};

using TrajectorySpec
    = std::variant<UniformAcceleration, ConstantVelocity, GalileanApproximation>;

/// Throws std::invalid_argument unless a > 0 (accelerated kinds) or
/// 0 < v < 1 (constant velocity).
void validate(TrajectorySpec const& spec);

struct CrossingTime
{
    double proper_time;
};

/// Cavity-frame coordinates on the central axis.
struct WorldlinePoint
{
    double t;
    double z;
};

/// Proper time at which the detector reaches z = L.
CrossingTime crossing_time(TrajectorySpec const& spec, double length = 1.0);

/// Cavity-frame time at which the detector reaches z = L.
double exit_coordinate_time(TrajectorySpec const& spec, double length = 1.0);

/// Position at proper time tau in [0, T]; throws std::domain_error outside.
WorldlinePoint worldline(TrajectorySpec const& spec, double tau, double length = 1.0);

/// Constant velocity with the same cavity-frame crossing time as uniform
/// acceleration aL: v = (1 + 2/(aL))^{-1/2}.
double matched_velocity(double accel_times_length);

/// Coordinate velocity dz/dt at the exit of a uniformly accelerated crossing.
double final_velocity(UniformAcceleration const& spec, double length = 1.0);

/// Lorentz factor of a constant velocity.
double lorentz_factor(double velocity);

}  // namespace udc
