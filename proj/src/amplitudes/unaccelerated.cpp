#include "accelrad/amplitudes.hpp"

#include "accelrad/errors.hpp"

#include <cmath>
#include <numbers>

namespace accelrad::amplitudes {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kSpeedOfLight = 299792458.0; // m/s

// |1 - e^{-i d T}|^2 / d^2 = T^2 sinc^2(d T / 2), finite through d = 0.
double interference_factor(double d, double T)
{
    const double x = 0.5 * d * T;
    if (std::abs(x) < 1e-8)
        return T * T * (1.0 - x * x / 3.0);
    const double s = std::sin(x) / x;
    return T * T * s * s;
}

} // namespace

RateSet interference_rates(double g, double nu_prime, double omega, double T)
{
    if (!(T > 0.0))
        throw PreconditionError("interference_rates: requires T > 0");
    RateSet r;
    r.R1 = g * g * interference_factor(nu_prime - omega, T);
    r.R2 = g * g * interference_factor(nu_prime + omega, T);
    return r;
}

RateSet constant_velocity_rates(const AtomFieldParams& p, double nu, double v_over_c, double T,
                                trajectory::Propagation direction)
{
    p.validate();
    if (!(nu > 0.0))
        throw PreconditionError("constant_velocity_rates: requires nu > 0");
    const trajectory::Worldline w = trajectory::ConstantVelocity{v_over_c};
    const trajectory::ModeGeometry m{nu, direction, direction == trajectory::Propagation::co ? 1.0 : -1.0};
    const double nu_prime = trajectory::doppler_frequency(w, m, 0.0);
    return interference_rates(p.g, nu_prime, p.omega, T);
}

TimeOfFlight time_of_flight_tuning(double nu, double k_dot_v, double omega, int n1, int n2)
{
    const double sum = nu - k_dot_v + omega;
    if (sum == 0.0)
        throw DomainError("time_of_flight_tuning: nu - kv + omega vanishes");
    TimeOfFlight out;
    out.T = (2.0 * n1 - 1.0) * pi / sum;
    const double target = 2.0 * n2 * pi;
    out.consistent = std::abs((nu - k_dot_v - omega) * out.T - target) <=
                     1e-9 * std::max(1.0, std::abs(target));
    out.positive = out.T > 0.0;
    return out;
}

double monochromaticity_bound(double v_m_per_s, double length_over_wavelength)
{
    if (!(v_m_per_s > 0.0) || !(length_over_wavelength > 0.0))
        throw PreconditionError("monochromaticity_bound: requires positive v and L");
    return v_m_per_s / (4.0 * kSpeedOfLight) / length_over_wavelength;
}

ParametricRates parametric_rates(const AtomFieldParams& p, double nu, double omega0, double kzA,
                                 double gamma, int P_max)
{
    p.validate();
    if (!(gamma > 0.0))
        throw PreconditionError("parametric_rates: requires gamma > 0");
    if (!(omega0 > 0.0))
        throw PreconditionError("parametric_rates: requires omega0 > 0");
    if (!(kzA >= 0.0) || static_cast<double>(P_max) < kzA + 20.0)
        throw PreconditionError("parametric_rates: requires P_max >= kzA + 20");

    constexpr int kMaxOrder = 200;
    constexpr int kTailProbe = 40;
    int P = P_max;
    std::vector<double> J;
    while (true) {
        if (P > kMaxOrder)
            throw PreconditionError("parametric_rates: truncation would exceed |p| = 200");
        J = specfun::bessel_j_sequence(std::min(kMaxOrder, P + kTailProbe), kzA);
        double retained = J[0] * J[0];
        for (int k = 1; k <= P; ++k)
            retained += 2.0 * J[k] * J[k];
        double dropped = 0.0;
        for (std::size_t k = static_cast<std::size_t>(P) + 1; k < J.size(); ++k)
            dropped += 2.0 * J[k] * J[k];
        if (dropped <= 1e-14 * retained)
            break;
        P += 10;
    }

    // (-i)^p J_p(kzA) for p = -P..P, with J_{-p} = (-1)^p J_p.
    const Complex minus_i(0.0, -1.0);
    auto sum = [&](double detuning) {
        Complex s;
        Complex phase_pos = 1.0;
        for (int k = 0; k <= P; ++k) {
            const double jp = J[static_cast<std::size_t>(k)];
            s += phase_pos * jp / Complex(detuning + k * omega0, gamma);
            if (k > 0) {
                // (-i)^{-k} (-1)^k J_k = (i)^k (-1)^k J_k = (-i)^k J_k.
                s += phase_pos * jp / Complex(detuning - k * omega0, gamma);
            }
            phase_pos *= minus_i;
        }
        return s;
    };

    ParametricRates out;
    out.terms = P;
    out.rates.R1 = p.g * p.g * std::norm(sum(nu - p.omega));
    out.rates.R2 = p.g * p.g * std::norm(sum(nu + p.omega));
    return out;
}

} // namespace accelrad::amplitudes
