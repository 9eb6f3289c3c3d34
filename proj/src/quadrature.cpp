#include "udc/quadrature.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <optional>
#include <vector>

#include "udc/gauss_legendre.hpp"

namespace udc {

namespace {

using cplx = std::complex<double>;

constexpr int max_degree = 40;
using Series = std::array<double, max_degree + 1>;

// Phase psi_s(tau) = gap tau + omega t(tau) + s k z(tau) of one exponential
// branch of exp(i gap tau + i omega t) sin(k z). Each model provides the
// Taylor coefficients of g = psi', exp(i psi) and the points where g has an
// extremum or a zero.

struct AcceleratedBranch
{
    double a, gap, omega, k, s, length;
    double total, t_exit;
    // g - gap = A e^{a tau} + B e^{-a tau}
    double A, B;

    AcceleratedBranch(double accel, FieldMode const& mode, double signed_gap, double sign,
                      double len, double total_tau, double exit_time)
        : a(accel), gap(signed_gap), omega(mode.omega()), k(mode.longitudinal), s(sign),
          length(len), total(total_tau), t_exit(exit_time)
    {
        double const m2 = mode.transverse * mode.transverse;
        // (omega - k) without cancellation
        double const small = m2 / (omega + k);
        double const large = omega + k;
        A = 0.5 * (s > 0 ? large : small);
        B = 0.5 * (s > 0 ? small : large);
    }

    void taylor(double tau, int degree, double* c) const
    {
        double even, odd;
        if (tau == 0.0)
        {
            even = omega;
            odd = s * k;
        }
        else
        {
            double const ae = A * std::exp(a * tau);
            double const be = B * std::exp(-a * tau);
            even = ae + be;
            odd = ae - be;
        }
        double scale = 1.0;
        for (int j = 0; j <= degree; ++j)
        {
            if (j > 0)
                scale *= a / j;
            c[j] = scale * ((j % 2 == 0) ? even : odd);
        }
        c[0] += gap;
    }

    double g(double tau) const
    {
        return gap + A * std::exp(a * tau) + B * std::exp(-a * tau);
    }

    cplx expi(double tau) const
    {
        if (tau == 0.0)
            return 1.0;
        if (tau == total)
        {
            // exact exit point keeps the two branches' phases commensurate
            double const theta = k * length;
            return std::polar(1.0, gap * tau + omega * t_exit)
                   * cplx(std::cos(theta), s * std::sin(theta));
        }
        // psi = gap tau + (A (e^{a tau} - 1) + B (1 - e^{-a tau})) / a
        double const em = std::expm1(a * tau);
        double const psi = gap * tau + em * (A + B / (1.0 + em)) / a;
        return {std::cos(psi), std::sin(psi)};
    }

    void special_points(double p, double q, std::vector<double>& out) const
    {
        auto push = [&](double x) {
            if (x > p && x < q && std::isfinite(x))
                out.push_back(x);
        };
        if (A > 0 && B > 0)
            push(0.5 * std::log(B / A) / a);
        // zeros: A X^2 + gap X + B = 0 with X = e^{a tau}
        if (A > 0)
        {
            double const disc = gap * gap - 4.0 * A * B;
            if (disc >= 0 && gap < 0)
            {
                double const sq = std::sqrt(disc);
                double const x1 = (-gap + sq) / (2.0 * A);
                double const x2 = (2.0 * B) / (-gap + sq);
                push(std::log(x1) / a);
                push(std::log(x2) / a);
            }
        }
        else if (gap < 0 && B > 0)
        {
            push(std::log(B / -gap) / a);
        }
    }

    double max_abs_g(double p, double q) const
    {
        double m = std::max(std::abs(g(p)), std::abs(g(q)));
        if (A > 0 && B > 0)
        {
            double const crit = 0.5 * std::log(B / A) / a;
            if (crit > p && crit < q)
                m = std::max(m, std::abs(g(crit)));
        }
        return m;
    }
};

struct GalileanBranch
{
    double a, gap, omega, k, s, length, total;

    void taylor(double tau, int degree, double* c) const
    {
        c[0] = g(tau);
        if (degree >= 1)
            c[1] = s * k * a;
        for (int j = 2; j <= degree; ++j)
            c[j] = 0.0;
    }

    double g(double tau) const { return gap + omega + s * k * a * tau; }

    cplx expi(double tau) const
    {
        if (tau == total)
        {
            double const theta = k * length;
            return std::polar(1.0, (gap + omega) * tau)
                   * cplx(std::cos(theta), s * std::sin(theta));
        }
        double const psi = (gap + omega) * tau + s * k * 0.5 * a * tau * tau;
        return {std::cos(psi), std::sin(psi)};
    }

    void special_points(double p, double q, std::vector<double>& out) const
    {
        double const zero = -(gap + omega) / (s * k * a);
        if (zero > p && zero < q)
            out.push_back(zero);
    }

    double max_abs_g(double p, double q) const
    {
        return std::max(std::abs(g(p)), std::abs(g(q)));
    }
};

struct InertialBranch
{
    double gamma, velocity, gap, omega, k, s, length, total;

    void taylor(double tau, int degree, double* c) const
    {
        c[0] = g(tau);
        for (int j = 1; j <= degree; ++j)
            c[j] = 0.0;
    }

    double g(double) const { return gap + gamma * (omega + s * k * velocity); }

    cplx expi(double tau) const
    {
        if (tau == total)
        {
            double const theta = k * length;
            return std::polar(1.0, (gap + gamma * omega) * tau)
                   * cplx(std::cos(theta), s * std::sin(theta));
        }
        double const psi = (gap + gamma * (omega + s * k * velocity)) * tau;
        return {std::cos(psi), std::sin(psi)};
    }

    void special_points(double, double, std::vector<double>&) const {}

    double max_abs_g(double p, double q) const
    {
        return std::max(std::abs(g(p)), std::abs(g(q)));
    }
};

template<class Branch>
class BranchIntegrator
{
  public:
    BranchIntegrator(Branch const& branch, QuadratureOptions const& options)
        : br_(branch), opt_(options), rule_(gauss_legendre(options.gl_order))
    {
    }

    cplx integrate(double total)
    {
        std::vector<double> pts{0.0, total};
        br_.special_points(0.0, total, pts);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        cplx sum = 0.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            sum += piece(pts[i], pts[i + 1], 0);
        return sum;
    }

  private:
    double expansion_parameter(double tau) const
    {
        double c[4];
        br_.taylor(tau, 3, c);
        double const g0 = std::abs(c[0]);
        if (g0 == 0.0)
            return std::numeric_limits<double>::infinity();
        double const d1 = std::abs(c[1]);
        double const d2 = 2.0 * std::abs(c[2]);
        double const d3 = 6.0 * std::abs(c[3]);
        double eps = d1 / (g0 * g0);
        eps = std::max(eps, std::sqrt(d2 / (g0 * g0 * g0)));
        eps = std::max(eps, std::cbrt(d3 / (g0 * g0 * g0 * g0)));
        return eps;
    }

    // Sum of the boundary terms exp(i psi) sum_k h_k at tau, where
    // h_0 = 1/(i g) and h_{k+1} = -h_k' / (i g). Writing h_k = (-i)^{k+1} r_k
    // gives the real recursion r_0 = 1/g, r_{k+1} = -r_k' / g, carried out on
    // truncated Taylor series around tau.
    std::optional<cplx> boundary_term(double tau, double eps) const
    {
        // K! eps^K below roughly 1e-17
        int terms = 1;
        double bound = eps;
        while (bound > 1e-17 && terms < opt_.max_series_terms)
        {
            ++terms;
            bound *= terms * eps;
        }
        // two spare terms, since convergence is judged on a pair
        int const degree = std::min(terms + 2, max_degree);

        Series c{}, inv{}, r{}, next{};
        br_.taylor(tau, degree, c.data());
        inv[0] = 1.0 / c[0];
        for (int j = 1; j <= degree; ++j)
        {
            double acc = 0.0;
            for (int i = 1; i <= j; ++i)
                acc += c[i] * inv[j - i];
            inv[j] = -acc * inv[0];
        }
        r = inv;
        double const r0 = std::abs(r[0]);
        // (-i)^{k+1} cycles through -i, -1, i, 1
        static constexpr cplx rot[4] = {{0, -1}, {-1, 0}, {0, 1}, {1, 0}};
        cplx sum = rot[0] * r[0];
        double const accept = std::max(1e-7 * opt_.rel_tol, 1e-17) * r0;
        double prev = r0;
        double last = r0;
        for (int k = 1; k <= degree; ++k)
        {
            int const deg = degree - k;
            for (int j = 0; j <= deg; ++j)
            {
                double acc = 0.0;
                for (int i = 0; i <= j; ++i)
                    acc += (i + 1) * r[i + 1] * inv[j - i];
                next[j] = -acc;
            }
            for (int j = 0; j <= deg; ++j)
                r[j] = next[j];
            double const term = std::abs(r[0]);
            sum += rot[k % 4] * r[0];
            // a single term can vanish by symmetry (r_1 = 0 where g' = 0),
            // so convergence is judged on the last two terms together
            last = std::max(term, prev);
            if (last <= 1e-17 * r0)
                break;
            if (k > 2 && term > prev && term > accept)
                return std::nullopt;
            prev = term;
        }
        // the two endpoint sums may cancel, so truncate well below rel_tol
        if (last > accept)
            return std::nullopt;
        return sum * br_.expi(tau);
    }

    cplx gauss_panels(double p, double q, long panels)
    {
        used_panels_ += panels;
        if (used_panels_ > opt_.panel_budget)
        {
            // achieved-accuracy estimate from a half-density pass
            long const coarse = std::max(1L, panels / 2);
            double const err = std::abs(raw_panels(p, q, coarse) - raw_panels(p, q, panels));
            throw QuadratureError("oscillatory integral exceeds panel budget of "
                                      + std::to_string(opt_.panel_budget),
                                  err);
        }
        return raw_panels(p, q, panels);
    }

    cplx raw_panels(double p, double q, long panels) const
    {
        double const width = (q - p) / panels;
        double const half = 0.5 * width;
        cplx sum = 0.0;
        for (long j = 0; j < panels; ++j)
        {
            double const mid = p + (j + 0.5) * width;
            cplx panel = 0.0;
            for (std::size_t i = 0; i < rule_.nodes.size(); ++i)
                panel += rule_.weights[i] * br_.expi(mid + half * rule_.nodes[i]);
            sum += panel;
        }
        return sum * half;
    }

    cplx piece(double p, double q, int depth, bool may_split = true)
    {
        double const mid = 0.5 * (p + q);
        double const ep = expansion_parameter(p);
        double const eq = expansion_parameter(q);
        double const thr = opt_.asymptotic_threshold;
        if (ep < thr && eq < thr && expansion_parameter(mid) < thr)
        {
            auto const bq = boundary_term(q, eq);
            auto const bp = boundary_term(p, ep);
            if (bq && bp)
                return *bq - *bp;
        }
        else if (may_split && (ep < thr) != (eq < thr))
        {
            // hand the slow end to panels and the fast end to the expansion
            bool const fast_right = eq < thr;
            double lo = p;
            double hi = q;
            for (int it = 0; it < 24; ++it)
            {
                double const m = 0.5 * (lo + hi);
                if ((expansion_parameter(m) < thr) == fast_right)
                    hi = m;
                else
                    lo = m;
            }
            double const cut = fast_right ? hi : lo;
            if (cut > p && cut < q)
                return fast_right ? piece(p, cut, depth + 1, false) + piece(cut, q, depth + 1)
                                  : piece(p, cut, depth + 1) + piece(cut, q, depth + 1, false);
        }
        double const gmax = br_.max_abs_g(p, q);
        long const panels = std::max(1L, long(std::ceil(gmax * (q - p) / opt_.panel_phase)));
        // uniform panels waste nodes where the frequency changes a lot
        bool const chirped = panels > 2 && gmax > 2.0 * std::min(std::abs(br_.g(p)), std::abs(br_.g(q)));
        if ((panels <= 32 && !chirped) || depth >= 48 || !(mid > p && mid < q))
            return gauss_panels(p, q, panels);
        return piece(p, mid, depth + 1, may_split) + piece(mid, q, depth + 1, may_split);
    }

    Branch br_;
    QuadratureOptions opt_;
    GaussLegendreRule rule_;
    long used_panels_ = 0;
};

template<class Branch>
cplx integrate(Branch const& br, double total, QuadratureOptions const& options)
{
    return BranchIntegrator<Branch>(br, options).integrate(total);
}

template<class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template<class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

cplx mode_overlap(TrajectorySpec const& trajectory, FieldMode const& mode, double signed_gap,
                  double length, QuadratureOptions const& options)
{
    double const total = crossing_time(trajectory, length).proper_time;
    double const omega = mode.omega();
    double const k = mode.longitudinal;
    auto const [plus, minus] = std::visit(
        overloaded{
            [&](UniformAcceleration const& s) {
                double const exit_t = exit_coordinate_time(trajectory, length);
                AcceleratedBranch const bp(s.acceleration, mode, signed_gap, +1.0, length,
                                           total, exit_t);
                AcceleratedBranch const bm(s.acceleration, mode, signed_gap, -1.0, length,
                                           total, exit_t);
                return std::pair{integrate(bp, total, options), integrate(bm, total, options)};
            },
            [&](ConstantVelocity const& s) {
                double const gamma = lorentz_factor(s.velocity);
                InertialBranch const bp{gamma, s.velocity, signed_gap, omega, k, +1.0, length,
                                        total};
                InertialBranch const bm{gamma, s.velocity, signed_gap, omega, k, -1.0, length,
                                        total};
                return std::pair{integrate(bp, total, options), integrate(bm, total, options)};
            },
            [&](GalileanApproximation const& s) {
                GalileanBranch const bp{s.acceleration, signed_gap, omega, k, +1.0, length, total};
                GalileanBranch const bm{s.acceleration, signed_gap, omega, k, -1.0, length, total};
                return std::pair{integrate(bp, total, options), integrate(bm, total, options)};
            },
        },
        trajectory);
    // sin(kz) = (e^{ikz} - e^{-ikz}) / 2i
    return (plus - minus) / cplx(0.0, 2.0);
}

}  // namespace udc
