#pragma once

#include <complex>
#include <map>
#include <shared_mutex>
#include <vector>

namespace udc {

/// Bessel function of the first kind J_m(x) for integer order m >= 0.
///
/// Power series for |x| < 4, Miller backward recurrence up to the Hankel
/// switchover, Hankel asymptotic expansion beyond it.
double bessel_j(int m, double x);

/// Cache of positive zeros x_{m,l} of J_m, indexed from l = 1.
///
/// Safe for concurrent use: lookups take a shared lock, fills take an
/// exclusive one.
class BesselZeroTable
{
  public:
    double zero(int m, int l);

    /// First `count` zeros of J_m, i.e. x_{m,1} .. x_{m,count}.
    std::vector<double> zeros(int m, int count);

  private:
    void fill(int m, int count);

    std::map<int, std::vector<double>> zeros_;
    mutable std::shared_mutex mutex_;
};

/// l-th positive zero of J_m (l >= 1), served from a process-wide table.
double bessel_zero(int m, int l);

/// A single zero refined from McMahon's expansion by Newton iteration.
/// Bypasses the cache.
double bessel_zero_uncached(int m, int l);

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz), all quadrants.
std::complex<double> faddeeva_w(std::complex<double> z);

/// Largest |Re z| and |Im z| accepted by erf_complex.
inline constexpr double erf_domain_limit = 1e3;

/// Error function of complex argument.
///
/// Throws std::domain_error outside the documented domain and
/// std::overflow_error when the result is not representable (erf grows like
/// exp(Im(z)^2) off the real axis).
std::complex<double> erf_complex(std::complex<double> z);

}  // namespace udc
