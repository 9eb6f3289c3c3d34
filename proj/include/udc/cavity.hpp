#pragma once

#include <complex>

namespace udc {

/// Cylindrical cavity of length L and radius rho with Dirichlet walls.
/// Results throughout the library are expressed in units where L sets the
/// scale; the default L = 1 makes every input a dimensionless group.
struct CavityGeometry
{
    double length = 1.0;
    double radius = 0.5;

    double aspect() const { return radius / length; }
};

/// Throws std::invalid_argument unless L > 0 and rho > 0.
void validate(CavityGeometry const& geom);

/// Azimuthal m >= 0, radial l >= 1, longitudinal n >= 1.
struct ModeIndex
{
    int m = 0;
    int l = 1;
    int n = 1;

    friend bool operator==(ModeIndex const&, ModeIndex const&) = default;
    friend auto operator<=>(ModeIndex const&, ModeIndex const&) = default;
};

void validate(ModeIndex const& idx);

struct ModeData
{
    ModeIndex index;
    double omega;
    double norm;
};

/// omega = sqrt((x_ml / rho)^2 + (n pi / L)^2).
double mode_frequency(CavityGeometry const& geom, ModeIndex const& idx);

/// Klein-Gordon normalization A_mln = 1 / (rho sqrt(L pi omega) |J_{m+1}(x_ml)|).
double normalization(CavityGeometry const& geom, ModeIndex const& idx);

ModeData mode_data(CavityGeometry const& geom, ModeIndex const& idx);

/// u_mln(r, phi, z, t); throws std::domain_error outside the cavity.
std::complex<double> mode_function(CavityGeometry const& geom, ModeIndex const& idx,
                                   double r, double phi, double z, double t);

struct InnerProductResult
{
    std::complex<double> value;
    double error_estimate;  ///< |I(N) - I(2N)|
    bool converged;         ///< error_estimate <= tolerance
};

/// Klein-Gordon inner product (u_a, u_b) on the t = 0 slice by tensor-product
/// quadrature at `resolution` nodes per axis, checked against 2x resolution.
InnerProductResult kg_inner_product(CavityGeometry const& geom, ModeIndex const& a,
                                    ModeIndex const& b, int resolution = 48,
                                    double tolerance = 1e-6);

}  // namespace udc
