#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "udc/trajectory.hpp"

namespace udc {

/// Spectral data of one field mode as seen on the cavity axis: a transverse
/// mass (x_0l / rho in 3+1D, the effective mass in 1+1D) and the longitudinal
/// wavenumber n pi / L.
struct FieldMode
{
    double transverse;
    double longitudinal;

    double omega() const { return std::hypot(transverse, longitudinal); }
};

struct QuadratureOptions
{
    double rel_tol = 1e-8;
    double abs_floor = 1e-30;
    int gl_order = 20;
    /// Largest phase advance allowed inside one Gauss-Legendre panel.
    double panel_phase = 4.0 * std::numbers::pi;
    /// Regions whose local expansion parameter |g'|/g^2 (and its higher
    /// analogues) stays below this are integrated by endpoint expansion.
    double asymptotic_threshold = 0.01;
    int max_series_terms = 18;
    long panel_budget = 20'000'000;
};

/// Raised when an oscillatory integral needs more panels than allowed.
class QuadratureError : public std::runtime_error
{
  public:
    QuadratureError(std::string const& what, double achieved_error)
        : std::runtime_error(what), achieved_error_(achieved_error)
    {
    }

    double achieved_error() const { return achieved_error_; }

  private:
    double achieved_error_;
};

/// Response integral of one mode along a trajectory:
///
///   J = int_0^T dtau exp(i signed_gap tau) exp(i omega t(tau)) sin(k z(tau)),
///
/// with signed_gap = +Omega for a detector starting in its ground state and
/// -Omega for one starting excited.
///
/// The sine is split into two pure phases. Each phase is cut at its
/// stationary points and at the extremum of its derivative; pieces whose
/// phase is fast compared with its variation are summed from an endpoint
/// (integration-by-parts) expansion, the rest with Gauss-Legendre panels
/// each spanning at most `panel_phase` radians.
std::complex<double> mode_overlap(TrajectorySpec const& trajectory, FieldMode const& mode,
                                  double signed_gap, double length = 1.0,
                                  QuadratureOptions const& options = {});

}  // namespace udc
