#include "udc/response.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "udc/specfun.hpp"

namespace udc {

namespace {

constexpr double pi = std::numbers::pi;
using cplx = std::complex<double>;

FieldMode field_mode(CavityGeometry const& geom, int l, int n)
{
    return {bessel_zero(0, l) / geom.radius, n * pi / geom.length};
}

double norm_squared(CavityGeometry const& geom, int l, int n)
{
    double const a = normalization(geom, {0, l, n});
    return a * a;
}

void check_cell(CavityGeometry const& geom, DetectorConfig const& det, int l, int n)
{
    validate(geom);
    validate(det);
    validate(ModeIndex{0, l, n});
}

// Runs body(l) for l = 1..rows on a pool of workers. The first failure in
// row order is rethrown after all workers finish.
template<class Body>
void for_each_row(int rows, unsigned threads, Body body)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(rows));
    std::vector<std::exception_ptr> errors(rows);
    std::atomic<int> next{1};
    auto worker = [&] {
        for (int l = next++; l <= rows; l = next++)
        {
            try
            {
                body(l);
            }
            catch (...)
            {
                errors[l - 1] = std::current_exception();
            }
        }
    };
    if (threads <= 1)
    {
        worker();
    }
    else
    {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i)
            pool.emplace_back(worker);
    }
    for (auto const& e : errors)
        if (e)
            std::rethrow_exception(e);
}

// Octave-block power-law extrapolation of sum_{k > N} s_k.
std::optional<double> octave_tail(std::vector<double> const& sums)
{
    std::size_t const count = sums.size();
    if (count < 4)
        return std::nullopt;
    std::span<double const> const all(sums);
    double const upper = pairwise_sum(all.subspan(count / 2));
    double const lower = pairwise_sum(all.subspan(count / 4, count / 2 - count / 4));
    // equal-length blocks for a fair decay ratio
    double const scale = double(count - count / 2) / double(count / 2 - count / 4);
    double const ratio = lower * scale / upper;
    if (!(upper > 0) || !(ratio > 1.0) || !std::isfinite(ratio))
        return std::nullopt;
    return upper / (ratio - 1.0);
}

}  // namespace

void validate(DetectorConfig const& det)
{
    if (!(det.gap > 0) || !std::isfinite(det.gap))
        throw std::invalid_argument("detector gap must be positive");
    if (!(det.coupling > 0) || !std::isfinite(det.coupling))
        throw std::invalid_argument("detector coupling must be positive");
}

void validate(Cutoffs const& cutoffs)
{
    if (cutoffs.radial < 1 || cutoffs.longitudinal < 1)
        throw std::invalid_argument("cutoffs must be >= 1");
}

CellError::CellError(ModeIndex cell, std::string const& reason)
    : std::runtime_error("cell (l=" + std::to_string(cell.l) + ", n=" + std::to_string(cell.n)
                         + "): " + reason),
      cell_(cell)
{
}

double pairwise_sum(std::span<double const> values)
{
    if (values.size() <= 8)
    {
        double s = 0.0;
        for (double v : values)
            s += v;
        return s;
    }
    std::size_t const half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double number_expectation_accelerated(CavityGeometry const& geom, DetectorConfig const& det,
                                      double acceleration, int l, int n,
                                      QuadratureOptions const& options)
{
    check_cell(geom, det, l, n);
    auto const overlap = mode_overlap(UniformAcceleration{acceleration}, field_mode(geom, l, n),
                                      det.signed_gap(), geom.length, options);
    return norm_squared(geom, l, n) * std::norm(overlap);
}

double number_expectation_constant_velocity(CavityGeometry const& geom,
                                            DetectorConfig const& det, double velocity, int l,
                                            int n)
{
    check_cell(geom, det, l, n);
    TrajectorySpec const spec = ConstantVelocity{velocity};
    validate(spec);
    double const gamma = lorentz_factor(velocity);
    auto const mode = field_mode(geom, l, n);
    double const omega = mode.omega();
    double const w = omega + det.signed_gap() / gamma;
    double const q = n * pi * velocity / geom.length;
    double const a2 = norm_squared(geom, l, n);

    if (std::abs(std::abs(w) - q) <= singular_window * q)
        return a2 * std::norm(mode_overlap(spec, mode, det.signed_gap(), geom.length));

    // |int_0^{L/v} e^{iws} sin(qs) ds|^2 = q^2 (2 + 2(-1)^{n+1} cos(wL/v)) / (w^2 - q^2)^2,
    // with 1 -+ cos written as a square to keep the zeros exact
    double const half = 0.5 * w * geom.length / velocity;
    double const trig = (n % 2 == 1) ? std::cos(half) : std::sin(half);
    double const den = (w - q) * (w + q);
    double const integral = 4.0 * q * q * trig * trig / (den * den);
    return a2 * integral / (gamma * gamma);
}

cplx galilean_overlap(CavityGeometry const& geom, DetectorConfig const& det,
                      double acceleration, int l, int n)
{
    check_cell(geom, det, l, n);
    TrajectorySpec const spec = GalileanApproximation{acceleration};
    double const len = geom.length;
    double const a = acceleration;
    double const total = crossing_time(spec, len).proper_time;
    double const w = field_mode(geom, l, n).omega() + det.signed_gap();
    double const an = a * n;
    double const s = std::sqrt(pi * an * len);
    double const r = std::sqrt(len) * w / std::sqrt(pi * an);
    cplx const diag(0.5, 0.5);
    cplx const anti(-0.5, 0.5);
    cplx const e = std::polar(1.0, len * w * w / (2.0 * pi * an));
    cplx const first = erf_complex(diag * (pi * an * total - len * w) / s) + erf_complex(diag * r);
    cplx const second
        = erf_complex(anti * (len * w + pi * an * total) / s) - erf_complex(anti * r);
    cplx const pref = std::polar(1.0, 0.25 * pi) * std::sqrt(len) / (2.0 * std::sqrt(2.0 * an));
    return pref * (e * first + cplx(0.0, 1.0) * std::conj(e) * second);
}

double number_expectation_galilean(CavityGeometry const& geom, DetectorConfig const& det,
                                   double acceleration, int l, int n)
{
    return norm_squared(geom, l, n) * std::norm(galilean_overlap(geom, det, acceleration, l, n));
}

double number_expectation(CavityGeometry const& geom, DetectorConfig const& det,
                          TrajectorySpec const& trajectory, int l, int n,
                          QuadratureOptions const& options)
{
    if (auto const* s = std::get_if<UniformAcceleration>(&trajectory))
        return number_expectation_accelerated(geom, det, s->acceleration, l, n, options);
    if (auto const* s = std::get_if<ConstantVelocity>(&trajectory))
        return number_expectation_constant_velocity(geom, det, s->velocity, l, n);
    auto const& g = std::get<GalileanApproximation>(trajectory);
    return number_expectation_galilean(geom, det, g.acceleration, l, n);
}

ModeCell const& ModeGrid::at(int l, int n) const
{
    if (l < 1 || l > cutoffs.radial || n < 1 || n > cutoffs.longitudinal)
        throw std::out_of_range("ModeGrid::at: index outside cutoffs");
    return cells[std::size_t(l - 1) * cutoffs.longitudinal + (n - 1)];
}

ModeGrid compute_grid(CavityGeometry const& geom, DetectorConfig const& det,
                      TrajectorySpec const& trajectory, Cutoffs const& cutoffs,
                      double resonance_threshold, QuadratureOptions const& options,
                      unsigned threads)
{
    validate(geom);
    validate(det);
    validate(cutoffs);
    validate(trajectory);
    if (!(resonance_threshold > 0))
        throw std::invalid_argument("resonance threshold must be positive");

    ModeGrid grid{cutoffs, resonance_threshold, {}};
    grid.cells.resize(std::size_t(cutoffs.radial) * cutoffs.longitudinal);
    for (auto const& idx : select_resonant(geom, det, cutoffs, resonance_threshold))
        grid.cells[std::size_t(idx.l - 1) * cutoffs.longitudinal + (idx.n - 1)].resonant = true;

    // warm the zero cache before workers share it
    (void)bessel_zero(0, cutoffs.radial);

    for_each_row(cutoffs.radial, threads, [&](int l) {
        for (int n = 1; n <= cutoffs.longitudinal; ++n)
        {
            auto& cell = grid.cells[std::size_t(l - 1) * cutoffs.longitudinal + (n - 1)];
            try
            {
                cell.number = number_expectation(geom, det, trajectory, l, n, options);
            }
            catch (QuadratureError const& e)
            {
                throw CellError({0, l, n}, std::string(e.what()) + " (achieved error "
                                               + std::to_string(e.achieved_error()) + ")");
            }
            cell.energy = mode_frequency(geom, {0, l, n}) * cell.number;
        }
    });
    return grid;
}

std::vector<ModeIndex> select_resonant(CavityGeometry const& geom, DetectorConfig const& det,
                                       Cutoffs const& cutoffs, double threshold)
{
    validate(geom);
    validate(det);
    validate(cutoffs);
    if (!(threshold > 0))
        throw std::invalid_argument("resonance threshold must be positive");
    std::vector<ModeIndex> out;
    ModeIndex closest{0, 1, 1};
    double best = std::numeric_limits<double>::infinity();
    for (int l = 1; l <= cutoffs.radial; ++l)
        for (int n = 1; n <= cutoffs.longitudinal; ++n)
        {
            double const dev = std::abs(mode_frequency(geom, {0, l, n}) - det.gap) / det.gap;
            if (dev <= threshold)
                out.push_back({0, l, n});
            if (dev < best)
            {
                best = dev;
                closest = {0, l, n};
            }
        }
    if (out.empty())
        out.push_back(closest);
    return out;
}

TransitionProbability transition_probability(ModeGrid const& grid)
{
    int const rows = grid.cutoffs.radial;
    int const cols = grid.cutoffs.longitudinal;
    std::vector<double> row_sums(rows);
    std::vector<double> col_sums(cols);
    std::vector<double> buffer(std::max(rows, cols));
    for (int l = 1; l <= rows; ++l)
    {
        for (int n = 1; n <= cols; ++n)
            buffer[n - 1] = grid.at(l, n).number;
        row_sums[l - 1] = pairwise_sum(std::span(buffer).first(cols));
    }
    for (int n = 1; n <= cols; ++n)
    {
        for (int l = 1; l <= rows; ++l)
            buffer[l - 1] = grid.at(l, n).number;
        col_sums[n - 1] = pairwise_sum(std::span(buffer).first(rows));
    }
    TransitionProbability out;
    out.value = pairwise_sum(row_sums);
    out.tail.beyond_radial = octave_tail(row_sums);
    out.tail.beyond_longitudinal = octave_tail(col_sums);
    out.tail.last_row = row_sums.back();
    out.tail.last_column = col_sums.back();
    return out;
}

TransitionProbability transition_probability(CavityGeometry const& geom,
                                             DetectorConfig const& det,
                                             TrajectorySpec const& trajectory,
                                             Cutoffs const& cutoffs,
                                             QuadratureOptions const& options)
{
    return transition_probability(compute_grid(geom, det, trajectory, cutoffs, 0.02, options));
}

ValidityReport validity_ratio(ModeGrid const& grid)
{
    auto const total = transition_probability(grid);
    if (!(total.value > 0))
        throw std::domain_error("validity_ratio: total probability vanishes");
    std::vector<double> res;
    for (int l = 1; l <= grid.cutoffs.radial; ++l)
        for (int n = 1; n <= grid.cutoffs.longitudinal; ++n)
            if (grid.at(l, n).resonant)
                res.push_back(grid.at(l, n).number);
    ValidityReport out;
    out.total = total.value;
    out.resonant = pairwise_sum(res);
    out.ratio = out.resonant / out.total;
    if (total.tail.beyond_radial && total.tail.beyond_longitudinal)
        out.ratio_with_tail = out.resonant
                              / (out.total + *total.tail.beyond_radial
                                 + *total.tail.beyond_longitudinal);
    out.resonance_threshold = grid.resonance_threshold;
    out.cutoffs = grid.cutoffs;
    out.tail = total.tail;
    return out;
}

ValidityReport validity_ratio(CavityGeometry const& geom, DetectorConfig const& det,
                              TrajectorySpec const& trajectory, Cutoffs const& cutoffs,
                              double resonance_threshold, QuadratureOptions const& options)
{
    return validity_ratio(
        compute_grid(geom, det, trajectory, cutoffs, resonance_threshold, options));
}

std::optional<double> ErrorMap::at(int l, int n) const
{
    if (l < 1 || l > cutoffs.radial || n < 1 || n > cutoffs.longitudinal)
        throw std::out_of_range("ErrorMap::at: index outside cutoffs");
    return delta[std::size_t(l - 1) * cutoffs.longitudinal + (n - 1)];
}

ErrorMap relative_error_map(CavityGeometry const& geom, DetectorConfig const& det,
                            double acceleration, Cutoffs const& cutoffs,
                            QuadratureOptions const& options, unsigned threads)
{
    validate(geom);
    validate(det);
    validate(cutoffs);
    validate(TrajectorySpec{UniformAcceleration{acceleration}});
    ErrorMap map{cutoffs, {}};
    map.delta.resize(std::size_t(cutoffs.radial) * cutoffs.longitudinal);
    (void)bessel_zero(0, cutoffs.radial);

    for_each_row(cutoffs.radial, threads, [&](int l) {
        for (int n = 1; n <= cutoffs.longitudinal; ++n)
        {
            double exact;
            try
            {
                exact = number_expectation_accelerated(geom, det, acceleration, l, n, options);
            }
            catch (QuadratureError const& e)
            {
                throw CellError({0, l, n}, e.what());
            }
            double approx;
            try
            {
                approx = number_expectation_galilean(geom, det, acceleration, l, n);
            }
            catch (std::domain_error const&)
            {
                approx = -1.0;
            }
            catch (std::overflow_error const&)
            {
                approx = -1.0;
            }
            if (approx < 0)
            {
                approx = norm_squared(geom, l, n)
                         * std::norm(mode_overlap(GalileanApproximation{acceleration},
                                                  field_mode(geom, l, n), det.signed_gap(),
                                                  geom.length, options));
            }
            if (exact >= number_floor)
                map.delta[std::size_t(l - 1) * cutoffs.longitudinal + (n - 1)]
                    = 1.0 - approx / exact;
        }
    });
    return map;
}

}  // namespace udc
