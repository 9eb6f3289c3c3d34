#include "udc/specfun.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace udc {

namespace {

constexpr double pi = std::numbers::pi;

double bessel_j_series(int m, double x)
{
    double const half = 0.5 * x;
    double term = 1.0;
    for (int i = 1; i <= m; ++i)
        term *= half / i;
    double const q = -half * half;
    double sum = term;
    for (int k = 1; k < 200; ++k)
    {
        term *= q / (double(k) * double(k + m));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum))
            break;
    }
    return sum;
}

// Miller's algorithm: recur downward from a large order and normalize with
// J_0 + 2 sum_k J_{2k} = 1.
double bessel_j_miller(int m, double x)
{
    int const top = std::max(m, int(x));
    int start = top + 20 + int(std::sqrt(40.0 * top));
    start += start % 2;

    double const two_over_x = 2.0 / x;
    double jp1 = 0.0;
    double j = 1e-30;
    double norm = 0.0;
    double result = 0.0;
    for (int k = start; k > 0; --k)
    {
        double const jm1 = k * two_over_x * j - jp1;
        jp1 = j;
        j = jm1;
        if (std::abs(j) > 1e250)
        {
            j *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
            result *= 1e-250;
        }
        // j now holds J_{k-1}
        if ((k - 1) % 2 == 0 && k - 1 > 0)
            norm += 2.0 * j;
        if (k - 1 == m)
            result = j;
    }
    norm += j;
    return result / norm;
}

double bessel_j_hankel(int m, double x)
{
    double const mu = 4.0 * double(m) * double(m);
    double const eight_x = 8.0 * x;
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 200; ++k)
    {
        double const odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (k * eight_x);
        double const mag = std::abs(term);
        if (mag > prev)
            break;
        prev = mag;
        // signs: P = 1 - a2 + a4 - ..., Q = a1 - a3 + ...
        switch (k % 4)
        {
            case 1: q += term; break;
            case 2: p -= term; break;
            case 3: q -= term; break;
            case 0: p += term; break;
        }
        if (mag < 1e-17)
            break;
    }
    // chi = x - (m/2 + 1/4) pi, expanded so that libm reduces x exactly
    double const shift = (0.5 * m + 0.25) * pi;
    double const cx = std::cos(x);
    double const sx = std::sin(x);
    double const cs = std::cos(shift);
    double const ss = std::sin(shift);
    double const cos_chi = cx * cs + sx * ss;
    double const sin_chi = sx * cs - cx * ss;
    return std::sqrt(2.0 / (pi * x)) * (p * cos_chi - q * sin_chi);
}

double hankel_switchover(int m)
{
    return 25.0 + 0.5 * double(m) * double(m);
}

double bessel_j_derivative(int m, double x)
{
    if (m == 0)
        return -bessel_j(1, x);
    return bessel_j(m - 1, x) - (m / x) * bessel_j(m, x);
}

double mcmahon_guess(int m, int l)
{
    double const mu = 4.0 * double(m) * double(m);
    double const b = (l + 0.5 * m - 0.25) * pi;
    double const e = 8.0 * b;
    return b - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e)
           - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0)
                 / (15.0 * e * e * e * e * e);
}

double newton_polish(int m, double x)
{
    for (int it = 0; it < 60; ++it)
    {
        double const dx = bessel_j(m, x) / bessel_j_derivative(m, x);
        x -= dx;
        if (std::abs(dx) <= 4e-16 * x)
            break;
    }
    return x;
}

// Sign-change scan above `lower` followed by bisection; used when Newton
// from the asymptotic guess lands on the wrong zero.
double bracket_zero(int m, double lower)
{
    double a = lower;
    double fa = bessel_j(m, a);
    for (;;)
    {
        double const b = a + 0.25;
        double const fb = bessel_j(m, b);
        if (fa == 0.0)
            return a;
        if ((fa < 0) != (fb < 0))
        {
            double lo = a, hi = b;
            for (int it = 0; it < 60; ++it)
            {
                double const mid = 0.5 * (lo + hi);
                if ((bessel_j(m, mid) < 0) == (fa < 0))
                    lo = mid;
                else
                    hi = mid;
            }
            return newton_polish(m, 0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
}

}  // namespace

double bessel_j(int m, double x)
{
    if (m < 0)
        throw std::domain_error("bessel_j: negative order " + std::to_string(m));
    if (!std::isfinite(x))
        throw std::domain_error("bessel_j: non-finite argument");
    if (x < 0)
        return (m % 2 ? -1.0 : 1.0) * bessel_j(m, -x);
    if (x == 0.0)
        return m == 0 ? 1.0 : 0.0;
    if (x < 4.0)
        return bessel_j_series(m, x);
    if (x < hankel_switchover(m))
        return bessel_j_miller(m, x);
    return bessel_j_hankel(m, x);
}

double bessel_zero_uncached(int m, int l)
{
    if (m < 0)
        throw std::domain_error("bessel_zero: negative order " + std::to_string(m));
    if (l < 1)
        throw std::domain_error("bessel_zero: zero index starts at 1, got "
                                + std::to_string(l));
    double const guess = mcmahon_guess(m, l);
    double const x = newton_polish(m, guess);
    if (std::abs(x - guess) < 0.5 && x > 0)
        return x;
    // Low l, high m: walk from the previous zero (or from m, below which
    // J_m has no positive zero).
    double lower = m > 0 ? double(m) : 0.5;
    if (l > 1)
        lower = bessel_zero_uncached(m, l - 1) + 0.1;
    return bracket_zero(m, lower);
}

double BesselZeroTable::zero(int m, int l)
{
    if (l < 1)
        throw std::domain_error("bessel_zero: zero index starts at 1, got "
                                + std::to_string(l));
    {
        std::shared_lock lock(mutex_);
        auto it = zeros_.find(m);
        if (it != zeros_.end() && int(it->second.size()) >= l)
            return it->second[l - 1];
    }
    fill(m, l);
    std::shared_lock lock(mutex_);
    return zeros_.at(m)[l - 1];
}

std::vector<double> BesselZeroTable::zeros(int m, int count)
{
    if (count < 1)
        return {};
    zero(m, count);
    std::shared_lock lock(mutex_);
    auto const& v = zeros_.at(m);
    return {v.begin(), v.begin() + count};
}

void BesselZeroTable::fill(int m, int count)
{
    std::unique_lock lock(mutex_);
    auto& v = zeros_[m];
    v.reserve(count);
    while (int(v.size()) < count)
    {
        int const l = int(v.size()) + 1;
        double x = bessel_zero_uncached(m, l);
        if (!v.empty() && x <= v.back())
            x = bracket_zero(m, v.back() + 0.1);
        v.push_back(x);
    }
}

double bessel_zero(int m, int l)
{
    static BesselZeroTable table;
    return table.zero(m, l);
}

//---------------------------------------------------------------------------//
// Faddeeva function, after Poppe & Wijers (ACM TOMS 680): power series near
// the origin, Laplace continued fraction far out, Gautschi's truncated
// Taylor/continued-fraction combination in between.
//---------------------------------------------------------------------------//
std::complex<double> faddeeva_w(std::complex<double> z)
{
    constexpr double factor = 1.12837916709551257388;  // 2/sqrt(pi)
    double const xi = z.real();
    double const yi = z.imag();
    double const xabs = std::abs(xi);
    double const yabs = std::abs(yi);
    double const x = xabs / 6.3;
    double const y = yabs / 4.4;

    double qrho = x * x + y * y;
    double const xquad = (xabs - yabs) * (xabs + yabs);
    double const yquad = 2.0 * xabs * yabs;

    double u = 0, v = 0, u2 = 0, v2 = 0;
    bool const near_origin = qrho < 0.085264;
    if (near_origin)
    {
        qrho = (1.0 - 0.85 * y) * std::sqrt(qrho);
        int const n = int(std::lround(6.0 + 72.0 * qrho));
        int j = 2 * n + 1;
        double xsum = 1.0 / j;
        double ysum = 0.0;
        for (int i = n; i >= 1; --i)
        {
            j -= 2;
            double const xaux = (xsum * xquad - ysum * yquad) / i;
            ysum = (xsum * yquad + ysum * xquad) / i;
            xsum = xaux + 1.0 / j;
        }
        double const u1 = -factor * (xsum * yabs + ysum * xabs) + 1.0;
        double const v1 = factor * (xsum * xabs - ysum * yabs);
        double const daux = std::exp(-xquad);
        u2 = daux * std::cos(yquad);
        v2 = -daux * std::sin(yquad);
        u = u1 * u2 - v1 * v2;
        v = u1 * v2 + v1 * u2;
    }
    else
    {
        double h = 0.0;
        double h2 = 0.0;
        int kapn = 0;
        int nu = 0;
        if (qrho > 1.0)
        {
            qrho = std::sqrt(qrho);
            nu = int(3.0 + 1442.0 / (26.0 * qrho + 77.0));
        }
        else
        {
            qrho = (1.0 - y) * std::sqrt(1.0 - qrho);
            h = 1.88 * qrho;
            h2 = 2.0 * h;
            kapn = int(std::lround(7.0 + 34.0 * qrho));
            nu = int(std::lround(16.0 + 26.0 * qrho));
        }
        bool const use_taylor = h > 0.0;
        double qlambda = use_taylor ? std::pow(h2, kapn) : 0.0;
        double rx = 0, ry = 0, sx = 0, sy = 0;
        for (int n = nu; n >= 0; --n)
        {
            int const np1 = n + 1;
            double const tx = yabs + h + np1 * rx;
            double const ty = xabs - np1 * ry;
            double const c = 0.5 / (tx * tx + ty * ty);
            rx = c * tx;
            ry = c * ty;
            if (use_taylor && n <= kapn)
            {
                double const t = qlambda + sx;
                sx = rx * t - ry * sy;
                sy = ry * t + rx * sy;
                qlambda /= h2;
            }
        }
        if (use_taylor)
        {
            u = factor * sx;
            v = factor * sy;
        }
        else
        {
            u = factor * rx;
            v = factor * ry;
        }
        if (yabs == 0.0)
            u = std::exp(-xabs * xabs);
    }

    if (yi < 0.0)
    {
        if (near_origin)
        {
            u2 *= 2.0;
            v2 *= 2.0;
        }
        else
        {
            double const w1 = 2.0 * std::exp(-xquad);
            u2 = w1 * std::cos(yquad);
            v2 = -w1 * std::sin(yquad);
        }
        u = u2 - u;
        v = v2 - v;
        if (xi > 0.0)
            v = -v;
    }
    else if (xi < 0.0)
    {
        v = -v;
    }
    return {u, v};
}

namespace {

std::complex<double> erf_maclaurin(std::complex<double> z)
{
    // erf z = 2/sqrt(pi) sum_k (-1)^k z^{2k+1} / (k! (2k+1))
    std::complex<double> const z2 = z * z;
    std::complex<double> power = z;
    std::complex<double> sum = z;
    for (int k = 1; k < 100; ++k)
    {
        power *= -z2 / double(k);
        std::complex<double> const term = power / double(2 * k + 1);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum))
            break;
    }
    return sum * (2.0 / std::sqrt(pi));
}

// exp(-z^2) with the product terms split by fma so that the phase 2xy keeps
// full relative precision for large |z|.
std::complex<double> exp_minus_square(std::complex<double> z)
{
    double const x = z.real();
    double const y = z.imag();
    double const re = (y - x) * (x + y);
    double const ph = -2.0 * x * y;
    double const ph_err = std::fma(-2.0 * x, y, -ph);
    double const mag = std::exp(re);
    double const c = std::cos(ph);
    double const s = std::sin(ph);
    return {mag * (c - ph_err * s), mag * (s + ph_err * c)};
}

}  // namespace

std::complex<double> erf_complex(std::complex<double> z)
{
    double const x = z.real();
    double const y = z.imag();
    if (!(std::abs(x) <= erf_domain_limit && std::abs(y) <= erf_domain_limit))
        throw std::domain_error("erf_complex: argument outside |Re z|, |Im z| <= 1e3");
    if (x < 0.0)
        return -erf_complex(-z);
    std::complex<double> result;
    if (std::abs(z) < 2.0)
    {
        result = erf_maclaurin(z);
    }
    else
    {
        // erfc(z) = exp(-z^2) w(iz); Im(iz) = x >= 0 keeps w in the upper
        // half plane where it is bounded.
        std::complex<double> const iz{-y, x};
        result = 1.0 - exp_minus_square(z) * faddeeva_w(iz);
    }
    if (!std::isfinite(result.real()) || !std::isfinite(result.imag()))
        throw std::overflow_error("erf_complex: result not representable");
    return result;
}

}  // namespace udc
