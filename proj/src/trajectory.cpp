#include "udc/trajectory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace udc {

namespace {

template<class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template<class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// arccosh(1 + x) without cancellation for small x
double acosh1p(double x)
{
    return std::log1p(x + std::sqrt(x * (2.0 + x)));
}

}  // namespace

void validate(TrajectorySpec const& spec)
{
    std::visit(overloaded{
                   [](UniformAcceleration const& s) {
                       if (!(s.acceleration > 0) || !std::isfinite(s.acceleration))
                           throw std::invalid_argument(
                               "uniform acceleration requires a > 0, got "
                               + std::to_string(s.acceleration));
                   },
                   [](ConstantVelocity const& s) {
                       if (!(s.velocity > 0 && s.velocity < 1))
                           throw std::invalid_argument(
                               "constant velocity requires 0 < v < 1, got "
                               + std::to_string(s.velocity));
                   },
                   [](GalileanApproximation const& s) {
                       if (!(s.acceleration > 0) || !std::isfinite(s.acceleration))
                           throw std::invalid_argument(
                               "galilean trajectory requires a > 0, got "
                               + std::to_string(s.acceleration));
                   },
               },
               spec);
}

double lorentz_factor(double velocity)
{
    return 1.0 / std::sqrt((1.0 - velocity) * (1.0 + velocity));
}

CrossingTime crossing_time(TrajectorySpec const& spec, double length)
{
    validate(spec);
    double const tau = std::visit(
        overloaded{
            [&](UniformAcceleration const& s) {
                return acosh1p(s.acceleration * length) / s.acceleration;
            },
            [&](ConstantVelocity const& s) {
                return length / (lorentz_factor(s.velocity) * s.velocity);
            },
            [&](GalileanApproximation const& s) {
                return std::sqrt(2.0 * length / s.acceleration);
            },
        },
        spec);
    return {tau};
}

double exit_coordinate_time(TrajectorySpec const& spec, double length)
{
    validate(spec);
    return std::visit(overloaded{
                          [&](UniformAcceleration const& s) {
                              // sinh(aT)/a with cosh(aT) = 1 + aL
                              double const x = s.acceleration * length;
                              return std::sqrt(x * (2.0 + x)) / s.acceleration;
                          },
                          [&](ConstantVelocity const& s) { return length / s.velocity; },
                          [&](GalileanApproximation const& s) {
                              return std::sqrt(2.0 * length / s.acceleration);
                          },
                      },
                      spec);
}

WorldlinePoint worldline(TrajectorySpec const& spec, double tau, double length)
{
    double const total = crossing_time(spec, length).proper_time;
    if (!(tau >= 0.0 && tau <= total))
        throw std::domain_error("worldline: proper time " + std::to_string(tau)
                                + " outside [0, " + std::to_string(total) + "]");
    if (tau == total)
        return {exit_coordinate_time(spec, length), length};
    return std::visit(overloaded{
                          [&](UniformAcceleration const& s) {
                              double const a = s.acceleration;
                              double const sh = std::sinh(0.5 * a * tau);
                              return WorldlinePoint{std::sinh(a * tau) / a, 2.0 * sh * sh / a};
                          },
                          [&](ConstantVelocity const& s) {
                              double const g = lorentz_factor(s.velocity);
                              return WorldlinePoint{g * tau, g * s.velocity * tau};
                          },
                          [&](GalileanApproximation const& s) {
                              return WorldlinePoint{tau, 0.5 * s.acceleration * tau * tau};
                          },
                      },
                      spec);
}

double matched_velocity(double accel_times_length)
{
    if (!(accel_times_length > 0))
        throw std::invalid_argument("matched_velocity requires aL > 0");
    return 1.0 / std::sqrt(1.0 + 2.0 / accel_times_length);
}

double final_velocity(UniformAcceleration const& spec, double length)
{
    validate(spec);
    // tanh(aT) = sqrt(c^2 - 1) / c with c = cosh(aT) = 1 + aL
    double const x = spec.acceleration * length;
    return std::sqrt(x * (2.0 + x)) / (1.0 + x);
}

}  // namespace udc
