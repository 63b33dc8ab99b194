#include "accelrad/amplitudes.hpp"

#include "accelrad/errors.hpp"
#include "phase_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace accelrad::amplitudes {

namespace {

constexpr double pi = std::numbers::pi;
const Complex I(0.0, 1.0);

// Contour angle for the infinite-window integral; any value in (0, pi) decays.
constexpr double kContourAngle = pi / 4;

struct ObliqueKernel {
    double nu;
    double alpha;
    double t; // k_z / k
    double W;

    long double phase(long double tau) const
    {
        const long double x = static_cast<long double>(alpha) * tau;
        return static_cast<long double>(nu) / alpha * (std::sinh(x) - t * std::cosh(x)) -
               static_cast<long double>(W) * tau;
    }
    double increment(double origin, double s) const
    {
        // sinh(x0 + y) - sinh x0 and cosh(x0 + y) - cosh x0 without cancellation.
        const double x0 = alpha * origin;
        const double y = alpha * s;
        const double h = std::sinh(0.5 * y);
        const double c1 = 2.0 * h * h; // cosh y - 1
        const double sy = std::sinh(y);
        const double sh = std::sinh(x0);
        const double ch = std::cosh(x0);
        const double dsinh = sh * c1 + ch * sy;
        const double dcosh = ch * c1 + sh * sy;
        return nu / alpha * (dsinh - t * dcosh) - W * s;
    }
    double rate(double tau) const
    {
        const double x = alpha * tau;
        return nu * (std::cosh(x) - t * std::sinh(x)) - W;
    }
    double curvature(double tau) const
    {
        const double x = alpha * tau;
        return alpha * nu * (std::sinh(x) - t * std::cosh(x));
    }
};

void check_oblique(const AtomFieldParams& p, double nu, double t)
{
    p.validate();
    if (!(p.alpha > 0.0))
        throw PreconditionError("angular: requires alpha > 0");
    if (!(nu > 0.0) || !std::isfinite(nu))
        throw PreconditionError("angular: requires nu > 0");
    if (!(std::abs(t) <= 1.0))
        throw PreconditionError("angular: requires |k_z/k| <= 1");
}

// e^{i nu t / alpha} (1/alpha) e^{-xi eta} int e^{i kappa sinh beta - xi beta} dbeta,
// the beta integral taken along beta = s + i theta.
specfun::QuadratureResult rotated_contour(const AtomFieldParams& p, double nu, double t, double W,
                                          const specfun::QuadratureSpec& spec, Complex& prefactor)
{
    const double eta = std::atanh(t);
    const double kappa = nu / p.alpha * std::sqrt((1.0 - t) * (1.0 + t));
    const Complex xi(1.0, W / p.alpha);
    prefactor = std::exp(I * (nu * t / p.alpha) - xi * eta) / p.alpha;

    const double st = std::sin(kContourAngle);
    const double ct = std::cos(kContourAngle);
    auto log_mag = [&](double s) { return -kappa * st * std::cosh(s) - xi.real() * s; };
    const double peak = std::asinh(-xi.real() / (kappa * st));
    const double top = log_mag(peak);
    constexpr double kDrop = 50.0;
    auto edge = [&](double dir) {
        double step = 1.0;
        while (log_mag(peak + dir * step) > top - kDrop)
            step *= 2.0;
        double lo = peak;
        double hi = peak + dir * step;
        for (int i = 0; i < 60; ++i) {
            const double mid = 0.5 * (lo + hi);
            (log_mag(mid) > top - kDrop ? lo : hi) = mid;
        }
        return hi;
    };

    const Complex shift(0.0, kContourAngle);
    auto f = [&](double s) {
        const Complex beta = s + shift;
        return std::exp(I * kappa * std::sinh(beta) - xi * beta);
    };
    auto rate = [&](double s) { return kappa * ct * std::cosh(s) - xi.imag(); };
    return specfun::oscillatory_quadrature(f, edge(-1.0), edge(+1.0), spec, rate);
}

Complex bessel_closed_form(const AtomFieldParams& p, double nu, double t, double W)
{
    const double eta = std::atanh(t);
    const double kappa = nu / p.alpha * std::sqrt((1.0 - t) * (1.0 + t));
    const Complex xi(1.0, W / p.alpha);
    return std::exp(I * (nu * t / p.alpha)) * (2.0 / p.alpha) *
           std::exp(-xi * eta - I * pi * xi / 2.0) * specfun::bessel_k(xi, kappa);
}

} // namespace

AmplitudeResult oblique_reduced_amplitude(const AtomFieldParams& p, double nu, double kz_over_k,
                                          AngularBackend backend, const specfun::QuadratureSpec& spec)
{
    check_oblique(p, nu, kz_over_k);
    spec.validate();
    const double t = kz_over_k;
    if (!(std::abs(t) < 1.0))
        throw DomainError("angular: the infinite window needs |k_z/k| < 1 (kappa_perp > 0)");

    AmplitudeResult r;
    if (backend == AngularBackend::infinite_closed_form) {
        r.backend = Backend::bessel_k;
        r.absorption = bessel_closed_form(p, nu, t, p.omega);
        r.emission = bessel_closed_form(p, nu, t, -p.omega);
        r.err_estimate = 1e-9 * (std::abs(r.absorption) + std::abs(r.emission));
        return r;
    }
    r.backend = Backend::quadrature;
    Complex pa;
    Complex pe;
    const auto qa = rotated_contour(p, nu, t, p.omega, spec, pa);
    const auto qe = rotated_contour(p, nu, t, -p.omega, spec, pe);
    r.absorption = pa * qa.value;
    r.emission = pe * qe.value;
    r.err_estimate = std::abs(pa) * qa.error + std::abs(pe) * qe.error;
    r.flags.unconverged = !qa.converged() || !qe.converged();
    return r;
}

AmplitudeResult angular_amplitude(const AtomFieldParams& p, const FlightWindow& w, double nu,
                                  double kz_over_k, AngularBackend backend,
                                  const specfun::QuadratureSpec& spec)
{
    check_oblique(p, nu, kz_over_k);
    w.validate();
    spec.validate();
    const double t = kz_over_k;

    if (w.infinite) {
        AmplitudeResult r = oblique_reduced_amplitude(p, nu, t, backend, spec);
        r.absorption *= t;
        r.emission *= t;
        r.err_estimate *= std::abs(t);
        return r;
    }
    if (backend == AngularBackend::infinite_closed_form)
        throw PreconditionError("angular: the closed form needs the infinite window");

    AmplitudeResult r;
    r.backend = Backend::quadrature;
    const Complex prefactor = t * std::exp(I * (nu * w.tau_i + nu * t / p.alpha));
    for (double W : {p.omega, -p.omega}) {
        const ObliqueKernel k{nu, p.alpha, t, W};
        detail::PhaseKernel pk{
            [k](long double tau) { return k.phase(tau); },
            [k](double origin, double s) { return k.increment(origin, s); },
            [k](double tau) { return k.rate(tau); },
            [&p](double tau) { return Complex(std::exp(-p.alpha * tau)); },
        };
        const auto q = detail::integrate_phase_kernel(pk, w.tau_i, w.tau_e, spec);
        (W > 0 ? r.absorption : r.emission) = prefactor * q.value;
        r.err_estimate += std::abs(prefactor) * q.error;
        r.flags.unconverged =
            r.flags.unconverged || q.status == specfun::QuadratureStatus::budget_exhausted;
    }
    return r;
}

double angular_modulus_factor(double omega_over_alpha, double kappa_perp)
{
    if (!(kappa_perp > 0.0))
        throw DomainError("angular_modulus_factor: requires kappa_perp > 0");
    const Complex minus = specfun::bessel_k(Complex(1.0, -omega_over_alpha), kappa_perp);
    const Complex plus = specfun::bessel_k(Complex(1.0, omega_over_alpha), kappa_perp);
    return std::norm(minus) / std::norm(plus);
}

AngularStationaryEstimate angular_stationary_ratio(const AtomFieldParams& p, double nu,
                                                   double kz_over_k, const FlightWindow& w)
{
    check_oblique(p, nu, kz_over_k);
    w.validate();
    if (w.infinite)
        throw PreconditionError("angular_stationary_ratio: requires a finite window");
    const double t = kz_over_k;
    const double omega = p.omega;
    const double k_perp = nu * std::sqrt((1.0 - t) * (1.0 + t));
    const double root = omega * omega - k_perp * k_perp;
    if (!(root > 0.0))
        throw DomainError("angular_stationary_ratio: no stationary point (omega <= k_perp)");

    // y = e^{alpha tau}: A y^2 - (omega/nu) y + B = 0.
    const double A = 0.5 * (1.0 - t);
    const double B = 0.5 * (1.0 + t);
    const double c = omega / nu;
    const double disc = std::sqrt(root) / nu;
    std::vector<double> ys;
    if (A == 0.0) {
        ys.push_back(B / c);
    } else {
        const double q = 0.5 * (c + disc); // c > 0, so no cancellation
        ys.push_back(q / A);
        if (q > 0.0)
            ys.push_back(B / q);
    }

    const ObliqueKernel k{nu, p.alpha, t, omega};
    const double width = 1.0 / std::sqrt(p.alpha * std::sqrt(root));
    Complex total;
    std::vector<double> inside;
    for (double y : ys) {
        if (!(y > 0.0))
            continue;
        const double tau = std::log(y) / p.alpha;
        if (!(tau > w.tau_i && tau < w.tau_e))
            continue;
        inside.push_back(tau);
        const double curv = k.curvature(tau);
        const double sign = curv > 0 ? 1.0 : -1.0;
        total += t * std::sqrt(2.0 * pi / std::abs(curv)) * std::exp(I * (sign * pi / 4)) *
                 detail::unit_phase(k.phase(tau)) * std::exp(-p.alpha * tau);
    }
    if (inside.empty())
        throw DomainError("angular_stationary_ratio: no stationary point inside the window");

    AngularStationaryEstimate est;
    est.stationary_points = static_cast<int>(inside.size());
    est.absorption_rate = std::norm(total);
    est.emission_rate = t * t / ((nu + omega) * (nu + omega));
    est.ratio = est.emission_rate / est.absorption_rate;
    est.near_threshold = ys.size() == 2 && std::abs(std::log(ys[0] / ys[1])) / p.alpha < 3.0 * width;
    return est;
}

} // namespace accelrad::amplitudes
