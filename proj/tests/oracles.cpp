#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>

namespace oracle {

namespace {

// 16-point Gauss-Legendre nodes and weights on [-1, 1] (positive half)
constexpr std::array<double, 8> gl_x{
    0.0950125098376374401853193, 0.2816035507792589132304605, 0.4580167776572273863424194,
    0.6178762444026437484466718, 0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
constexpr std::array<double, 8> gl_w{
    0.1894506104550684962853967, 0.1826034150449235888667637, 0.1691565193950025381893121,
    0.1495959888165767320815017, 0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

}  // namespace

std::complex<double> response_integral(udc::TrajectorySpec const& traj, double transverse,
                                       double longitudinal, double signed_gap, double length,
                                       int density)
{
    double const total = udc::crossing_time(traj, length).proper_time;
    double const omega = std::hypot(transverse, longitudinal);
    // phase budget: |gap| T + omega t(T) + k L bounds the total phase swept
    double const sweep = std::abs(signed_gap) * total
                         + omega * udc::exit_coordinate_time(traj, length)
                         + longitudinal * length;
    long const panels
        = std::max(64L, long(std::ceil(sweep / (0.5 * std::numbers::pi) * density)));
    double const width = total / panels;
    std::complex<double> sum = 0.0;
    for (long j = 0; j < panels; ++j)
    {
        double const mid = (j + 0.5) * width;
        for (std::size_t i = 0; i < gl_x.size(); ++i)
            for (double sgn : {-1.0, 1.0})
            {
                double const tau = mid + sgn * 0.5 * width * gl_x[i];
                auto const p = udc::worldline(traj, tau, length);
                sum += gl_w[i] * std::polar(1.0, signed_gap * tau + omega * p.t)
                       * std::sin(longitudinal * p.z);
            }
    }
    return sum * (0.5 * width);
}

double number_expectation(udc::CavityGeometry const& geom, udc::TrajectorySpec const& traj,
                          double signed_gap, int l, int n, int density)
{
    double const x = boost::math::cyl_bessel_j_zero(0.0, l);
    double const j1 = boost::math::cyl_bessel_j(1, x);
    double const k = n * std::numbers::pi / geom.length;
    double const omega = std::hypot(x / geom.radius, k);
    double const a2 = 1.0 / (geom.radius * geom.radius * geom.length * std::numbers::pi * omega
                             * j1 * j1);
    return a2 * std::norm(response_integral(traj, x / geom.radius, k, signed_gap, geom.length,
                                            density));
}

std::complex<long double> erf_series(std::complex<long double> z)
{
    // erf z = 2/sqrt(pi) sum (-1)^k z^{2k+1} / (k! (2k+1))
    std::complex<long double> term = z;
    std::complex<long double> sum = z;
    std::complex<long double> const z2 = z * z;
    for (int k = 1; k < 400; ++k)
    {
        term *= -z2 / static_cast<long double>(k);
        auto const add = term / static_cast<long double>(2 * k + 1);
        sum += add;
        if (std::abs(add) < 1e-22L * std::abs(sum))
            break;
    }
    return sum * (2.0L / std::sqrt(std::numbers::pi_v<long double>));
}

long double bessel_series(int m, long double x)
{
    // J_m(x) = sum (-1)^k (x/2)^{2k+m} / (k! (k+m)!)
    long double term = 1.0L;
    for (int i = 1; i <= m; ++i)
        term *= (x / 2) / i;
    long double sum = term;
    long double const q = -(x / 2) * (x / 2);
    for (int k = 1; k < 500; ++k)
    {
        term *= q / (static_cast<long double>(k) * (k + m));
        sum += term;
        if (std::abs(term) < 1e-24L * std::abs(sum) && k > x)
            break;
    }
    return sum;
}

}  // namespace oracle
