#include "udc/cavity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "udc/gauss_legendre.hpp"
#include "udc/specfun.hpp"

namespace udc {

namespace {
constexpr double pi = std::numbers::pi;
}

void validate(CavityGeometry const& geom)
{
    if (!(geom.length > 0) || !std::isfinite(geom.length))
        throw std::invalid_argument("cavity length must be positive");
    if (!(geom.radius > 0) || !std::isfinite(geom.radius))
        throw std::invalid_argument("cavity radius must be positive");
}

void validate(ModeIndex const& idx)
{
    if (idx.m < 0 || idx.l < 1 || idx.n < 1)
        throw std::invalid_argument("invalid mode index (m=" + std::to_string(idx.m)
                                    + ", l=" + std::to_string(idx.l)
                                    + ", n=" + std::to_string(idx.n) + ")");
}

double mode_frequency(CavityGeometry const& geom, ModeIndex const& idx)
{
    validate(idx);
    double const radial = bessel_zero(idx.m, idx.l) / geom.radius;
    double const longitudinal = idx.n * pi / geom.length;
    return std::hypot(radial, longitudinal);
}

double normalization(CavityGeometry const& geom, ModeIndex const& idx)
{
    double const omega = mode_frequency(geom, idx);
    double const jm1 = bessel_j(idx.m + 1, bessel_zero(idx.m, idx.l));
    return 1.0 / (geom.radius * std::sqrt(geom.length * pi * omega) * std::abs(jm1));
}

ModeData mode_data(CavityGeometry const& geom, ModeIndex const& idx)
{
    return {idx, mode_frequency(geom, idx), normalization(geom, idx)};
}

std::complex<double> mode_function(CavityGeometry const& geom, ModeIndex const& idx,
                                   double r, double phi, double z, double t)
{
    if (!(r >= 0 && r <= geom.radius && z >= 0 && z <= geom.length))
        throw std::domain_error("mode_function: point outside the cavity");
    auto const md = mode_data(geom, idx);
    double const x = bessel_zero(idx.m, idx.l);
    // exact zeros on the walls
    double const axial = (z == 0 || z == geom.length)
                             ? 0.0
                             : std::sin(idx.n * pi * z / geom.length);
    double const radial = (r == geom.radius) ? 0.0 : bessel_j(idx.m, x * r / geom.radius);
    return md.norm * axial * radial * std::polar(1.0, idx.m * phi - md.omega * t);
}

namespace {

std::complex<double> inner_product_at(CavityGeometry const& geom, ModeIndex const& a,
                                      ModeIndex const& b, int resolution)
{
    auto const rule = gauss_legendre(resolution);
    auto const ma = mode_data(geom, a);
    auto const mb = mode_data(geom, b);
    double const xa = bessel_zero(a.m, a.l);
    double const xb = bessel_zero(b.m, b.l);

    double radial = 0.0;
    double axial = 0.0;
    double const hr = 0.5 * geom.radius;
    double const hz = 0.5 * geom.length;
    for (int i = 0; i < resolution; ++i)
    {
        double const r = hr * (rule.nodes[i] + 1.0);
        radial += rule.weights[i] * r * bessel_j(a.m, xa * r / geom.radius)
                  * bessel_j(b.m, xb * r / geom.radius);
        double const z = hz * (rule.nodes[i] + 1.0);
        axial += rule.weights[i] * std::sin(a.n * pi * z / geom.length)
                 * std::sin(b.n * pi * z / geom.length);
    }
    radial *= hr;
    axial *= hz;

    // periodic trapezoid in phi
    std::complex<double> angular = 0.0;
    double const dphi = 2.0 * pi / resolution;
    for (int i = 0; i < resolution; ++i)
        angular += std::polar(1.0, (b.m - a.m) * i * dphi);
    angular *= dphi;

    // i (u_a^* d_t u_b - u_b d_t u_a^*) = (omega_a + omega_b) u_a^* u_b at t = 0
    return (ma.omega + mb.omega) * ma.norm * mb.norm * radial * axial * angular;
}

}  // namespace

InnerProductResult kg_inner_product(CavityGeometry const& geom, ModeIndex const& a,
                                    ModeIndex const& b, int resolution, double tolerance)
{
    validate(geom);
    validate(a);
    validate(b);
    if (resolution < 2)
        throw std::invalid_argument("kg_inner_product: resolution must be >= 2");
    auto const coarse = inner_product_at(geom, a, b, resolution);
    auto const fine = inner_product_at(geom, a, b, 2 * resolution);
    double const err = std::abs(fine - coarse);
    return {fine, err, err <= tolerance};
}

}  // namespace udc
