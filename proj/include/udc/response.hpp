#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "udc/cavity.hpp"
#include "udc/quadrature.hpp"
#include "udc/trajectory.hpp"

namespace udc {

enum class InitialState
{
    Ground,
    Excited
};

/// Two-level detector with gap Omega (units 1/L) and coupling lambda.
/// Number expectations are reported divided by lambda^2.
struct DetectorConfig
{
    double gap;
    double coupling = 1.0;
    InitialState initial_state = InitialState::Ground;

    /// +Omega for a ground-state start, -Omega for an excited one.
    double signed_gap() const { return initial_state == InitialState::Ground ? gap : -gap; }
};

void validate(DetectorConfig const& det);

/// Mode-sum cutoffs: l = 1..radial, n = 1..longitudinal.
struct Cutoffs
{
    int radial;
    int longitudinal;
};

void validate(Cutoffs const& cutoffs);

/// Raised when one grid cell cannot be evaluated; names the cell.
class CellError : public std::runtime_error
{
  public:
    CellError(ModeIndex cell, std::string const& reason);

    ModeIndex cell() const { return cell_; }

  private:
    ModeIndex cell_;
};

/// Sum in a fixed pairwise order, so the result does not depend on how the
/// terms were produced.
double pairwise_sum(std::span<double const> values);

/// N_{l,n} / lambda^2 for the on-axis m = 0 mode (l, n) along any supported
/// trajectory: closed forms for constant velocity and the Galilean
/// approximation, oscillatory quadrature for hyperbolic motion.
double number_expectation(CavityGeometry const& geom, DetectorConfig const& det,
                          TrajectorySpec const& trajectory, int l, int n,
                          QuadratureOptions const& options = {});

/// Hyperbolic motion with proper acceleration a; throws QuadratureError when
/// the panel budget is exhausted.
double number_expectation_accelerated(CavityGeometry const& geom, DetectorConfig const& det,
                                      double acceleration, int l, int n,
                                      QuadratureOptions const& options = {});

/// Closed form for constant velocity. Within a relative window of
/// `singular_window` of the removable singularity the value comes from
/// quadrature instead.
inline constexpr double singular_window = 1e-6;
double number_expectation_constant_velocity(CavityGeometry const& geom,
                                            DetectorConfig const& det, double velocity,
                                            int l, int n);

/// Galilean integral D = int_0^T exp(i tau (omega +- Omega)) sin(a pi n tau^2 / 2L)
/// from its closed form in complex error functions. Throws std::domain_error
/// when an error-function argument leaves the supported domain.
std::complex<double> galilean_overlap(CavityGeometry const& geom, DetectorConfig const& det,
                                      double acceleration, int l, int n);
double number_expectation_galilean(CavityGeometry const& geom, DetectorConfig const& det,
                                   double acceleration, int l, int n);

struct ModeCell
{
    double number;  ///< N / lambda^2
    double energy;  ///< omega N / lambda^2
    bool resonant;
};

/// Cells stored row-major in l, then n.
struct ModeGrid
{
    Cutoffs cutoffs;
    double resonance_threshold;
    std::vector<ModeCell> cells;

    ModeCell const& at(int l, int n) const;
};

/// Evaluates every cell with l <= N_l, n <= N_n, spreading rows over
/// `threads` workers (0 picks the hardware concurrency). The result does not
/// depend on the thread count.
ModeGrid compute_grid(CavityGeometry const& geom, DetectorConfig const& det,
                      TrajectorySpec const& trajectory, Cutoffs const& cutoffs,
                      double resonance_threshold = 0.02, QuadratureOptions const& options = {},
                      unsigned threads = 0);

/// Modes with |omega - Omega| / Omega <= threshold, or the single closest
/// mode when none qualifies. Sorted by (l, n).
std::vector<ModeIndex> select_resonant(CavityGeometry const& geom, DetectorConfig const& det,
                                       Cutoffs const& cutoffs, double threshold);

/// Power-law extrapolation of the neglected tail. Each direction compares
/// the last two octave blocks of the grid; a value is absent when there are
/// too few cells or the blocks do not decay.
struct TailEstimate
{
    std::optional<double> beyond_radial;
    std::optional<double> beyond_longitudinal;
    double last_row;     ///< sum over n at l = N_l
    double last_column;  ///< sum over l at n = N_n
};

struct TransitionProbability
{
    double value;  ///< sum of the grid, divided by lambda^2
    TailEstimate tail;
};

TransitionProbability transition_probability(ModeGrid const& grid);
TransitionProbability transition_probability(CavityGeometry const& geom,
                                             DetectorConfig const& det,
                                             TrajectorySpec const& trajectory,
                                             Cutoffs const& cutoffs,
                                             QuadratureOptions const& options = {});

struct ValidityReport
{
    double total;
    double resonant;
    double ratio;  ///< resonant / total; an upper bound because total is truncated
    /// resonant / (total + extrapolated tails), when both tails are available
    std::optional<double> ratio_with_tail;
    double resonance_threshold;
    Cutoffs cutoffs;
    TailEstimate tail;
};

/// Throws std::domain_error when the total vanishes.
ValidityReport validity_ratio(ModeGrid const& grid);
ValidityReport validity_ratio(CavityGeometry const& geom, DetectorConfig const& det,
                              TrajectorySpec const& trajectory, Cutoffs const& cutoffs,
                              double resonance_threshold = 0.02,
                              QuadratureOptions const& options = {});

/// Delta = 1 - N_galilean / N_accelerated per cell; absent where the
/// accelerated value is below `number_floor`.
inline constexpr double number_floor = 1e-300;
struct ErrorMap
{
    Cutoffs cutoffs;
    std::vector<std::optional<double>> delta;

    std::optional<double> at(int l, int n) const;
};

/// Cells whose error-function arguments leave the supported domain use
/// quadrature of the Galilean integrand instead.
ErrorMap relative_error_map(CavityGeometry const& geom, DetectorConfig const& det,
                            double acceleration, Cutoffs const& cutoffs,
                            QuadratureOptions const& options = {}, unsigned threads = 0);

}  // namespace udc
