#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "udc/cavity.hpp"
#include "udc/quadrature.hpp"
#include "udc/response.hpp"
#include "udc/trajectory.hpp"

namespace udc {

/// Massive scalar field on a Dirichlet interval of length L. A field built
/// from radial branch l of a cylinder of radius rho carries the effective
/// mass omega0 x_0l / x_01 with omega0 = x_01 / rho.
struct Reduced1DField
{
    double length = 1.0;
    double mass = 0.0;
    std::optional<int> branch;
    std::optional<double> omega0;
};

void validate(Reduced1DField const& field);

Reduced1DField standalone_field(double mass, double length = 1.0);
Reduced1DField branch_field(CavityGeometry const& geom, int l);

/// sqrt(m^2 + (n pi / L)^2).
double mode_frequency_1d(Reduced1DField const& field, int n);

/// exp(-i omega t) sin(n pi z / L) / sqrt(omega L); throws std::domain_error
/// unless 0 <= z <= L.
std::complex<double> mode_function_1d(Reduced1DField const& field, int n, double z, double t);

/// |int_0^T exp(+-i Omega tau) conj(u_n(z(tau), t(tau))) dtau|^2 / lambda^2.
double number_expectation_1d(Reduced1DField const& field, DetectorConfig const& det,
                             TrajectorySpec const& trajectory, int n,
                             QuadratureOptions const& options = {});

/// Per-mode values for n = 1..N_n.
std::vector<double> spectrum_1d(Reduced1DField const& field, DetectorConfig const& det,
                                TrajectorySpec const& trajectory, int cutoff,
                                QuadratureOptions const& options = {});

double transition_probability_1d(Reduced1DField const& field, DetectorConfig const& det,
                                 TrajectorySpec const& trajectory, int cutoff,
                                 QuadratureOptions const& options = {});

/// E(1+1) = pi J_1(x_0l)^2 rho^2 E(3+1) and its inverse.
double energy_map_3to1(double energy, int l, double radius);
double energy_map_1to3(double energy, int l, double radius);

enum class ResonantSelection
{
    SingleClosest,
    Window
};

/// Ratio of the resonant 1+1D contribution to the truncated total. With
/// `Window` the resonant set is every mode with |omega - Omega| / Omega <=
/// threshold (falling back to the closest mode when empty).
ValidityReport resonant_ratio_1d(Reduced1DField const& field, DetectorConfig const& det,
                                 TrajectorySpec const& trajectory, int cutoff,
                                 ResonantSelection selection, double threshold = 0.2,
                                 QuadratureOptions const& options = {});

struct FibreEstimate
{
    double lower;  ///< sum_{l=2}^{N_l} P_l / P_1, each truncated at N_n
    /// same ratio with every branch sum extended past N_n by its n^-3 tail
    std::optional<double> extrapolated;
    Cutoffs cutoffs;
    double velocity;
};

/// Relative weight of the l > 1 branches for constant-velocity crossing,
/// from the closed form term by term.
FibreEstimate fibre_estimator(CavityGeometry const& geom, DetectorConfig const& det,
                              double velocity, Cutoffs const& cutoffs,
                              bool extrapolate_tail = false);

}  // namespace udc
