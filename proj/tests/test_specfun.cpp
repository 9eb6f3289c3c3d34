#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>

#include "oracles.hpp"
#include "udc/specfun.hpp"

using udc::bessel_j;
using udc::bessel_zero;
using udc::erf_complex;
using cplx = std::complex<double>;

namespace {

// Large-x envelope of |J_m|, used to scale errors near zeros.
double envelope(double x)
{
    return std::min(1.0, std::sqrt(2.0 / (std::numbers::pi * std::max(x, 1.0))));
}

}  // namespace

TEST_CASE("bessel_j matches the long double series for small and moderate x")
{
    // the series loses digits to cancellation beyond x ~ 12
    for (int m = 0; m <= 6; ++m)
        for (double x = 0.0; x <= 12.0; x += 0.37)
        {
            double const ref = static_cast<double>(oracle::bessel_series(m, x));
            CHECK(std::abs(bessel_j(m, x) - ref) <= 1e-13 * envelope(x));
        }
}

TEST_CASE("bessel_j matches boost across all regimes")
{
    for (int m = 0; m <= 5; ++m)
        for (double x = 0.01; x < 2e4; x *= 1.07)
        {
            double const ref = boost::math::cyl_bessel_j(m, x);
            CHECK(std::abs(bessel_j(m, x) - ref) <= 1e-13 * envelope(x));
        }
}

TEST_CASE("bessel_j agrees with std::cyl_bessel_j")
{
    for (int m : {0, 1, 2, 7})
        for (double x : {0.5, 3.9, 4.1, 17.0, 55.5, 310.0})
            CHECK(bessel_j(m, x) == doctest::Approx(std::cyl_bessel_j(m, x)).epsilon(1e-12));
}

TEST_CASE("three-term recurrence J_{m-1} + J_{m+1} = (2m/x) J_m")
{
    for (int m = 1; m <= 8; ++m)
        for (double x = 0.3; x < 500.0; x *= 1.3)
        {
            double const lhs = bessel_j(m - 1, x) + bessel_j(m + 1, x);
            double const rhs = 2.0 * m / x * bessel_j(m, x);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * envelope(x) * std::max(1.0, 2.0 * m / x));
        }
}

TEST_CASE("bessel_j rejects invalid input")
{
    CHECK_THROWS_AS(bessel_j(-1, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_j(0, std::nan("")), std::domain_error);
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(3, 0.0) == 0.0);
}

TEST_CASE("bessel zeros match boost and are roots")
{
    for (int m = 0; m <= 3; ++m)
        for (int l : {1, 2, 3, 10, 57, 200, 1000})
        {
            double const z = bessel_zero(m, l);
            double const ref = boost::math::cyl_bessel_j_zero(double(m), l);
            CHECK(z == doctest::Approx(ref).epsilon(1e-13));
            CHECK(std::abs(bessel_j(m, z)) < 1e-13);
        }
    CHECK(bessel_zero(0, 1) == doctest::Approx(2.404825557695773).epsilon(1e-15));
}

TEST_CASE("zeros interlace and increase")
{
    auto const z0 = udc::BesselZeroTable{}.zeros(0, 300);
    auto const z1 = udc::BesselZeroTable{}.zeros(1, 300);
    for (std::size_t i = 0; i + 1 < z0.size(); ++i)
    {
        CHECK(z0[i] < z1[i]);
        CHECK(z1[i] < z0[i + 1]);
    }
}

TEST_CASE("cached and uncached zeros agree, also under concurrent use")
{
    std::vector<double> seen(8 * 50);
    std::vector<std::jthread> pool;
    for (int t = 0; t < 8; ++t)
        pool.emplace_back([&, t] {
            for (int l = 1; l <= 50; ++l)
                seen[t * 50 + (l - 1)] = bessel_zero(t % 3, 7 * l);
        });
    pool.clear();
    for (int t = 0; t < 8; ++t)
        for (int l = 1; l <= 50; ++l)
            CHECK(seen[t * 50 + (l - 1)] == udc::bessel_zero_uncached(t % 3, 7 * l));
    CHECK_THROWS_AS(bessel_zero(0, 0), std::domain_error);
}

TEST_CASE("erf matches frozen high-precision values")
{
    struct Ref
    {
        cplx z, value;
    };
    // 30-digit reference evaluations
    Ref const refs[] = {
        {{1, 1}, {1.3161512816979476, 0.19045346923783469}},
        {{3, 2}, {0.99896327885681727, -1.1546724379290603e-5}},
        {{0.5, 3}, {404.81268348510669, -1172.6091303384733}},
        {{-2, 0.7}, {-1.0073508261871689, 0.00040032590657754864}},
        {{10, 10}, {0.96164937427247486, -0.010987684608193988}},
        {{300, 300}, {0.99867590390353758, 0.00012311695188464785}},
        {{0.001, 0.002}, {0.0011283833044904183, 0.0022567590864395154}},
        {{5, -4}, {1.0000106705918316, -1.9162233374937267e-6}},
        {{-20, -20}, {-1.0189259784997888, -0.0063003109798644005}},
    };
    for (auto const& r : refs)
    {
        CAPTURE(r.z);
        CHECK(std::abs(erf_complex(r.z) - r.value) <= 1e-13 * std::abs(r.value));
    }
}

TEST_CASE("erf matches the Maclaurin series near the origin")
{
    // the series cancels like exp(|z|^2), so stay within |z| < 3.2
    for (double re = -2.25; re <= 2.25; re += 0.25)
        for (double im = -2.25; im <= 2.25; im += 0.25)
        {
            cplx const z(re, im);
            auto const s = oracle::erf_series({re, im});
            cplx const ref(static_cast<double>(s.real()), static_cast<double>(s.imag()));
            CAPTURE(z);
            CHECK(std::abs(erf_complex(z) - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
        }
}

TEST_CASE("erf symmetries and real axis")
{
    for (double re : {-7.5, -1.2, 0.0, 0.3, 2.0, 40.0})
        for (double im : {-6.0, -0.5, 0.0, 1.7, 5.0})
        {
            cplx const z(re, im);
            CAPTURE(z);
            auto const e = erf_complex(z);
            CHECK(std::abs(erf_complex(-z) + e) <= 1e-15 * std::max(1.0, std::abs(e)));
            CHECK(std::abs(erf_complex(std::conj(z)) - std::conj(e))
                  <= 1e-15 * std::max(1.0, std::abs(e)));
        }
    for (double x = -6.0; x <= 6.0; x += 0.1)
        CHECK(erf_complex({x, 0.0}).real() == doctest::Approx(std::erf(x)).epsilon(1e-14));
}

TEST_CASE("erf on the diagonals used by the Galilean closed form has unit-modulus Gaussian")
{
    // erf(c(1+i)) -> 1 with |1 - erf| ~ 1 / (c sqrt(2 pi))
    for (double c : {5.0, 50.0, 500.0})
    {
        auto const e = erf_complex({c, c});
        CHECK(std::abs(1.0 - e) == doctest::Approx(1.0 / (c * std::sqrt(2.0 * std::numbers::pi)))
                                        .epsilon(0.01));
    }
}

TEST_CASE("erf domain and overflow errors")
{
    CHECK_THROWS_AS(erf_complex({1e3 + 1, 0}), std::domain_error);
    CHECK_THROWS_AS(erf_complex({0, -2e3}), std::domain_error);
    CHECK_THROWS_AS(erf_complex({0.1, 40.0}), std::overflow_error);
    CHECK_NOTHROW(erf_complex({1e3, 1e3}));
}

TEST_CASE("faddeeva w at known values")
{
    // w(0) = 1, w(i y) = exp(y^2) erfc(y) for real y
    CHECK(std::abs(udc::faddeeva_w({0, 0}) - cplx(1, 0)) < 1e-15);
    for (double y : {0.1, 1.0, 4.0, 10.0})
    {
        double const ref = std::exp(y * y) * std::erfc(y);
        CHECK(udc::faddeeva_w({0, y}).real() == doctest::Approx(ref).epsilon(1e-13));
    }
}
