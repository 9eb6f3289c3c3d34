#include "udc/reduced1d.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "udc/specfun.hpp"

namespace udc {

namespace {

constexpr double pi = std::numbers::pi;

double branch_weight(int l, double radius)
{
    if (l < 1)
        throw std::invalid_argument("branch index must be >= 1");
    double const j1 = bessel_j(1, bessel_zero(0, l));
    return pi * j1 * j1 * radius * radius;
}

// sum_{n > N} n^-3 by Euler-Maclaurin
double cubic_tail(double N)
{
    return 0.5 / (N * N) - 0.5 / (N * N * N) + 0.25 / (N * N * N * N);
}

struct BranchSum
{
    double partial;
    double tail;
};

// sum_n N_{l,n} for constant velocity, with the closed form inlined so the
// Bessel data is fetched once per branch
BranchSum constant_velocity_branch(CavityGeometry const& geom, DetectorConfig const& det,
                                   double velocity, int l, int cutoff)
{
    double const len = geom.length;
    double const gamma = lorentz_factor(velocity);
    double const x = bessel_zero(0, l);
    double const j1 = bessel_j(1, x);
    double const radial = x / geom.radius;
    double const shift = det.signed_gap() / gamma;
    double const prefactor
        = 4.0 / (geom.radius * geom.radius * len * pi * j1 * j1 * gamma * gamma);

    std::vector<double> terms(cutoff);
    for (int n = 1; n <= cutoff; ++n)
    {
        double const k = n * pi / len;
        double const omega = std::hypot(radial, k);
        double const w = omega + shift;
        double const q = k * velocity;
        double term;
        if (std::abs(std::abs(w) - q) <= singular_window * q)
        {
            term = number_expectation_constant_velocity(geom, det, velocity, l, n);
        }
        else
        {
            double const half = 0.5 * w * len / velocity;
            double const trig = (n % 2 == 1) ? std::cos(half) : std::sin(half);
            double const den = (w - q) * (w + q);
            term = prefactor * q * q * trig * trig / (omega * den * den);
        }
        terms[n - 1] = term;
    }

    BranchSum out{pairwise_sum(terms), 0.0};
    // terms fall off like n^-3 once n pi / L dominates the radial frequency;
    // the oscillating factor is averaged over the last half of the range
    int const from = cutoff / 2 + 1;
    if (cutoff >= 8 && from * pi / len > 4.0 * radial)
    {
        std::vector<double> scaled;
        scaled.reserve(cutoff - from + 1);
        for (int n = from; n <= cutoff; ++n)
            scaled.push_back(terms[n - 1] * double(n) * n * n);
        double const mean = pairwise_sum(scaled) / double(scaled.size());
        out.tail = mean * cubic_tail(cutoff);
    }
    else
    {
        out.tail = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

}  // namespace

void validate(Reduced1DField const& field)
{
    if (!(field.length > 0) || !std::isfinite(field.length))
        throw std::invalid_argument("1+1D field length must be positive");
    if (!(field.mass >= 0) || !std::isfinite(field.mass))
        throw std::invalid_argument("1+1D field mass must be nonnegative");
}

Reduced1DField standalone_field(double mass, double length)
{
    Reduced1DField field{length, mass, std::nullopt, std::nullopt};
    validate(field);
    return field;
}

Reduced1DField branch_field(CavityGeometry const& geom, int l)
{
    validate(geom);
    if (l < 1)
        throw std::invalid_argument("branch index must be >= 1");
    double const omega0 = bessel_zero(0, 1) / geom.radius;
    return {geom.length, omega0 * bessel_zero(0, l) / bessel_zero(0, 1), l, omega0};
}

double mode_frequency_1d(Reduced1DField const& field, int n)
{
    validate(field);
    if (n < 1)
        throw std::invalid_argument("mode index n must be >= 1");
    return std::hypot(field.mass, n * pi / field.length);
}

std::complex<double> mode_function_1d(Reduced1DField const& field, int n, double z, double t)
{
    double const omega = mode_frequency_1d(field, n);
    if (!(z >= 0 && z <= field.length))
        throw std::domain_error("mode_function_1d: point outside the interval");
    double const axial = (z == 0 || z == field.length) ? 0.0 : std::sin(n * pi * z / field.length);
    return std::polar(axial / std::sqrt(omega * field.length), -omega * t);
}

double number_expectation_1d(Reduced1DField const& field, DetectorConfig const& det,
                             TrajectorySpec const& trajectory, int n,
                             QuadratureOptions const& options)
{
    validate(det);
    double const omega = mode_frequency_1d(field, n);
    auto const overlap = mode_overlap(trajectory, FieldMode{field.mass, n * pi / field.length},
                                      det.signed_gap(), field.length, options);
    return std::norm(overlap) / (omega * field.length);
}

std::vector<double> spectrum_1d(Reduced1DField const& field, DetectorConfig const& det,
                                TrajectorySpec const& trajectory, int cutoff,
                                QuadratureOptions const& options)
{
    if (cutoff < 1)
        throw std::invalid_argument("1+1D cutoff must be >= 1");
    std::vector<double> out(cutoff);
    for (int n = 1; n <= cutoff; ++n)
    {
        try
        {
            out[n - 1] = number_expectation_1d(field, det, trajectory, n, options);
        }
        catch (QuadratureError const& e)
        {
            throw CellError({0, field.branch.value_or(1), n}, e.what());
        }
    }
    return out;
}

double transition_probability_1d(Reduced1DField const& field, DetectorConfig const& det,
                                 TrajectorySpec const& trajectory, int cutoff,
                                 QuadratureOptions const& options)
{
    return pairwise_sum(spectrum_1d(field, det, trajectory, cutoff, options));
}

double energy_map_3to1(double energy, int l, double radius)
{
    return branch_weight(l, radius) * energy;
}

double energy_map_1to3(double energy, int l, double radius)
{
    return energy / branch_weight(l, radius);
}

ValidityReport resonant_ratio_1d(Reduced1DField const& field, DetectorConfig const& det,
                                 TrajectorySpec const& trajectory, int cutoff,
                                 ResonantSelection selection, double threshold,
                                 QuadratureOptions const& options)
{
    validate(det);
    if (selection == ResonantSelection::Window && !(threshold > 0))
        throw std::invalid_argument("resonance threshold must be positive");
    auto const terms = spectrum_1d(field, det, trajectory, cutoff, options);

    std::vector<double> resonant;
    int closest = 1;
    double best = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= cutoff; ++n)
    {
        double const dev = std::abs(mode_frequency_1d(field, n) - det.gap) / det.gap;
        if (selection == ResonantSelection::Window && dev <= threshold)
            resonant.push_back(terms[n - 1]);
        if (dev < best)
        {
            best = dev;
            closest = n;
        }
    }
    if (resonant.empty())
        resonant.push_back(terms[closest - 1]);

    ValidityReport out{};
    out.total = pairwise_sum(terms);
    if (!(out.total > 0))
        throw std::domain_error("resonant_ratio_1d: total probability vanishes");
    out.resonant = pairwise_sum(resonant);
    out.ratio = out.resonant / out.total;
    out.resonance_threshold = selection == ResonantSelection::Window ? threshold : 0.0;
    out.cutoffs = {1, cutoff};
    out.tail.last_row = out.total;
    out.tail.last_column = terms.back();
    return out;
}

FibreEstimate fibre_estimator(CavityGeometry const& geom, DetectorConfig const& det,
                              double velocity, Cutoffs const& cutoffs, bool extrapolate_tail)
{
    validate(geom);
    validate(det);
    validate(cutoffs);
    validate(TrajectorySpec{ConstantVelocity{velocity}});
    (void)bessel_zero(0, cutoffs.radial);

    std::vector<double> partial(cutoffs.radial);
    std::vector<double> extended(cutoffs.radial);
    bool tails_ok = true;
    for (int l = 1; l <= cutoffs.radial; ++l)
    {
        auto const sum = constant_velocity_branch(geom, det, velocity, l, cutoffs.longitudinal);
        partial[l - 1] = sum.partial;
        extended[l - 1] = sum.partial + sum.tail;
        tails_ok = tails_ok && std::isfinite(sum.tail);
    }

    FibreEstimate out{0.0, std::nullopt, cutoffs, velocity};
    auto ratio = [](std::vector<double> const& p) {
        return pairwise_sum(std::span(p).subspan(1)) / p.front();
    };
    out.lower = ratio(partial);
    if (extrapolate_tail && tails_ok)
        out.extrapolated = ratio(extended);
    return out;
}

}  // namespace udc
