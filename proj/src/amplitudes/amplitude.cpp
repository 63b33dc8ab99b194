#include "accelrad/amplitudes.hpp"

#include "accelrad/errors.hpp"
#include "phase_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace accelrad::amplitudes {

namespace {

constexpr double pi = std::numbers::pi;
const Complex I(0.0, 1.0);

// Asymptotic backends warn below this nu/alpha and omega/alpha.
constexpr double kAsymptoticFloor = 5.0;
// Relative accuracy credited to the incomplete-gamma and gamma closed forms.
constexpr double kClosedFormAccuracy = 1e-10;

// The accelerated kernel exp[i (nu/a)(e^{-a tau} - 1) + i W tau - a tau], a = +-alpha.
struct Kernel {
    double nu;
    double a;
    double W;

    long double phase(long double tau) const
    {
        return static_cast<long double>(nu) / a * std::expm1(-static_cast<long double>(a) * tau) +
               static_cast<long double>(W) * tau;
    }
    double increment(double origin, double s) const
    {
        return nu / a * std::exp(-a * origin) * std::expm1(-a * s) + W * s;
    }
    double rate(double tau) const { return -nu * std::exp(-a * tau) + W; }
    double curvature(double tau) const { return a * nu * std::exp(-a * tau); }
    double envelope(double tau) const { return std::exp(-a * tau); }
};

double signed_alpha(const AtomFieldParams& p, const trajectory::ModeGeometry& m)
{
    return trajectory::direction_sign(m) * p.alpha;
}

void check_common(const AtomFieldParams& p, const FlightWindow& w,
                  const trajectory::ModeGeometry& m)
{
    p.validate();
    w.validate();
    m.validate();
    if (!(p.alpha > 0.0))
        throw PreconditionError("amplitude: requires alpha > 0");
    if (m.direction == trajectory::Propagation::oblique)
        throw PreconditionError("amplitude: oblique modes are handled by angular_amplitude");
}

specfun::QuadratureResult kernel_quadrature(const Kernel& k, const FlightWindow& w,
                                            const specfun::QuadratureSpec& spec)
{
    detail::PhaseKernel pk{
        [k](long double tau) { return k.phase(tau); },
        [k](double origin, double s) { return k.increment(origin, s); },
        [k](double tau) { return k.rate(tau); },
        [k](double tau) { return Complex(k.envelope(tau)); },
    };
    return detail::integrate_phase_kernel(pk, w.tau_i, w.tau_e, spec);
}

struct GammaForm {
    Complex value;
    double scale; // magnitude of the terms combined, for the error estimate
};

// (e^{-ib}/a)(i/b)^xi [Gamma(xi, x_e) - Gamma(xi, x_i)], b = nu/a,
// xi = 1 - iW/a, x = -i b e^{-a tau}.
GammaForm incomplete_gamma_form(const Kernel& k, const FlightWindow& w)
{
    const double b = k.nu / k.a;
    const Complex xi(1.0, -k.W / k.a);
    const Complex prefactor = std::exp(-I * b + xi * std::log(I / b)) / k.a;
    const Complex x_i = -I * b * std::exp(-k.a * w.tau_i);
    const Complex x_e = -I * b * std::exp(-k.a * w.tau_e);
    const Complex g_i = specfun::upper_incomplete_gamma(xi, x_i);
    const Complex g_e = specfun::upper_incomplete_gamma(xi, x_e);
    return {prefactor * (g_e - g_i), std::abs(prefactor) * (std::abs(g_e) + std::abs(g_i))};
}

// (e^{-ib}/alpha)(i/b)^xi Gamma(xi): the window extended to the whole line.
Complex free_space_form(const Kernel& k)
{
    const double b = k.nu / k.a;
    const Complex xi(1.0, -k.W / k.a);
    return std::exp(-I * b + xi * std::log(I / b) + specfun::log_gamma(xi)) / std::abs(k.a);
}

// Integration-by-parts terms of int g e^{i phi} at one end point.
Complex boundary_term(const Kernel& k, double tau, AsymptoticOrder order)
{
    const double g = k.envelope(tau);
    const double d1 = k.rate(tau);
    const Complex e = detail::unit_phase(k.phase(tau));
    Complex term = g * e / (I * d1);
    if (order == AsymptoticOrder::corrected) {
        // (g / phi')' = (g' phi' - g phi'') / phi'^2 with g' = -a g.
        const double dg = (-k.a * g * d1 - g * k.curvature(tau)) / (d1 * d1);
        term += dg * e / d1;
    }
    return term;
}

struct StationaryPoint {
    double tau;
    double curvature;
    Complex value; // full Gaussian contribution S
};

std::optional<StationaryPoint> stationary_point(const Kernel& k, AsymptoticOrder order)
{
    if (!(k.W > 0.0))
        return std::nullopt;
    const double tau = std::log(k.nu / k.W) / k.a;
    const double curvature = k.curvature(tau); // equals a W
    const double sign = curvature > 0 ? 1.0 : -1.0;
    Complex s = std::sqrt(2.0 * pi / std::abs(curvature)) * std::exp(I * (sign * pi / 4)) *
                k.envelope(tau) * detail::unit_phase(k.phase(tau));
    if (order == AsymptoticOrder::corrected)
        s *= 1.0 + I * k.a / (12.0 * k.W);
    return StationaryPoint{tau, curvature, s};
}

AmplitudeFlags asymptotic_flags(double nu, const AtomFieldParams& p)
{
    AmplitudeFlags f;
    f.weak_asymptotics = nu / p.alpha < kAsymptoticFloor || p.omega / p.alpha < kAsymptoticFloor;
    const double width = std::sqrt(p.alpha * p.omega);
    f.resonance_profile = std::abs(nu - p.omega) <= 3.0 * width;
    f.boundary_resonance = std::abs(nu - p.omega) <= width;
    return f;
}

} // namespace

const char* to_string(Backend b)
{
    switch (b) {
    case Backend::quadrature:
        return "quadrature";
    case Backend::incomplete_gamma:
        return "incomplete-gamma";
    case Backend::stationary_phase:
        return "stationary-phase";
    case Backend::free_space:
        return "free-space";
    case Backend::bessel_k:
        return "bessel-k";
    }
    return "unknown";
}

void AtomFieldParams::validate() const
{
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw PreconditionError("AtomFieldParams: omega must be positive");
    if (!(g >= 0.0) || !std::isfinite(g))
        throw PreconditionError("AtomFieldParams: g must be non-negative");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw PreconditionError("AtomFieldParams: alpha must be non-negative");
}

void FlightWindow::validate() const
{
    if (infinite)
        return;
    if (!std::isfinite(tau_i) || !std::isfinite(tau_e) || tau_e < tau_i)
        throw PreconditionError("FlightWindow: requires finite tau_i <= tau_e");
}

StationaryPhaseParts stationary_phase_components(const AtomFieldParams& p, const FlightWindow& w,
                                                 const trajectory::ModeGeometry& m,
                                                 AsymptoticOrder order)
{
    check_common(p, w, m);
    if (w.infinite)
        throw PreconditionError("stationary_phase: requires a finite window");
    if (w.tau_i != 0.0)
        throw PreconditionError("stationary_phase: requires tau_i = 0");

    const Kernel k{m.nu, signed_alpha(p, m), p.omega};
    StationaryPhaseParts parts;
    parts.flags = asymptotic_flags(m.nu, p);
    parts.tau_s = std::numeric_limits<double>::quiet_NaN();
    if (w.tau_e == w.tau_i)
        return parts;

    parts.boundary = boundary_term(k, w.tau_e, order);
    // At nu = omega the lower edge is itself stationary; that term diverges and
    // is carried by the erf profile instead.
    if (std::abs(k.rate(w.tau_i)) > 1e-10 * std::max(m.nu, p.omega))
        parts.boundary -= boundary_term(k, w.tau_i, order);

    const auto sp = stationary_point(k, order);
    if (!sp) {
        parts.flags.stationary_outside = true;
        return parts;
    }
    parts.tau_s = sp->tau;
    const double sigma = std::sqrt(std::abs(sp->curvature) / 2.0);
    parts.erf_argument = (sp->tau - w.tau_i) * sigma;
    const double sign = sp->curvature > 0 ? 1.0 : -1.0;
    parts.profile = 0.5 * sp->value *
                    (1.0 + specfun::erf(parts.erf_argument * std::exp(-I * (sign * pi / 4))));
    if (sp->tau > w.tau_i && sp->tau < w.tau_e) {
        parts.stationary = sp->value;
        parts.flags.near_upper_edge = (w.tau_e - sp->tau) * sigma < 3.0;
    } else {
        parts.flags.stationary_outside = true;
    }
    return parts;
}

AmplitudeResult amplitude(const AtomFieldParams& p, const FlightWindow& w,
                          const trajectory::ModeGeometry& m, Backend backend,
                          const AmplitudeOptions& options)
{
    check_common(p, w, m);
    const double a = signed_alpha(p, m);
    const Kernel absorb{m.nu, a, p.omega};
    const Kernel emit{m.nu, a, -p.omega};

    AmplitudeResult r;
    r.backend = backend;

    const bool finite_backend = backend != Backend::free_space;
    if (finite_backend == w.infinite)
        throw PreconditionError(std::string("amplitude: backend ") + to_string(backend) +
                                (w.infinite ? " needs a finite window" : " needs the infinite window"));

    switch (backend) {
    case Backend::quadrature: {
        options.quadrature.validate();
        const auto qa = kernel_quadrature(absorb, w, options.quadrature);
        const auto qe = kernel_quadrature(emit, w, options.quadrature);
        r.absorption = qa.value;
        r.emission = qe.value;
        r.err_estimate = qa.error + qe.error;
        r.flags.unconverged = qa.status == specfun::QuadratureStatus::budget_exhausted ||
                              qe.status == specfun::QuadratureStatus::budget_exhausted;
        break;
    }
    case Backend::incomplete_gamma: {
        if (w.tau_e == w.tau_i)
            break;
        const auto ga = incomplete_gamma_form(absorb, w);
        const auto ge = incomplete_gamma_form(emit, w);
        r.absorption = ga.value;
        r.emission = ge.value;
        r.err_estimate = kClosedFormAccuracy * (ga.scale + ge.scale);
        break;
    }
    case Backend::free_space: {
        r.absorption = free_space_form(absorb);
        r.emission = free_space_form(emit);
        r.err_estimate = kClosedFormAccuracy * (std::abs(r.absorption) + std::abs(r.emission));
        break;
    }
    case Backend::stationary_phase: {
        const auto parts = stationary_phase_components(p, w, m, options.order);
        r.flags = parts.flags;
        if (w.tau_e == w.tau_i)
            break;
        StationaryComponents c;
        if (parts.flags.resonance_profile && std::isfinite(parts.tau_s)) {
            // The lower edge sits on the resonance: the erf profile replaces both
            // the lower boundary term and the stationary term.
            c.boundary = boundary_term(absorb, w.tau_e, options.order);
            c.stationary = parts.profile;
        } else {
            c.boundary = parts.boundary;
            c.stationary = parts.stationary;
        }
        r.absorption = c.boundary + c.stationary;
        r.components = c;
        r.emission = boundary_term(emit, w.tau_e, options.order) -
                     boundary_term(emit, w.tau_i, options.order);
        // Size of the first omitted term: a / (W tau-scale) relative to the kept ones.
        const double small = std::abs(a) / std::min(m.nu, p.omega);
        const double e_abs = std::abs(c.boundary) * small + std::abs(c.stationary) * small * small;
        r.err_estimate = e_abs + std::abs(r.emission) * small;
        break;
    }
    case Backend::bessel_k:
        throw PreconditionError("amplitude: the bessel-k backend applies to oblique modes only");
    }
    return r;
}

double ratio_free_space(double omega_over_alpha)
{
    if (!(omega_over_alpha > 0.0))
        throw PreconditionError("ratio_free_space: requires omega/alpha > 0");
    return std::exp(-2.0 * pi * omega_over_alpha);
}

double asymptotic_ratio(double nu, double omega, double alpha, bool at_resonance)
{
    if (!(nu > 0.0) || !(omega > 0.0) || !(alpha > 0.0))
        throw PreconditionError("asymptotic_ratio: requires positive nu, omega, alpha");
    if (at_resonance)
        return alpha / (2.0 * pi * omega);
    return alpha * nu * nu / (2.0 * pi * omega * (nu + omega) * (nu + omega));
}

EffectiveTemperature effective_temperature(double omega, double alpha)
{
    if (!(omega > 0.0) || !(alpha > 0.0))
        throw PreconditionError("effective_temperature: requires positive omega and alpha");
    if (!(2.0 * pi * omega > alpha))
        throw DomainError("effective_temperature: requires 2 pi omega > alpha");
    return {std::log(2.0 * pi * omega / alpha), 1.0 / (2.0 * pi)};
}

} // namespace accelrad::amplitudes
