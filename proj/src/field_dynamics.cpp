#include "accelrad/field_dynamics.hpp"

#include "accelrad/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace accelrad::field {

namespace {

// out = L rho for the truncated, trace-preserving birth-death generator.
void apply_generator(const std::vector<double>& rho, double up, double down,
                     std::vector<double>& out)
{
    const std::size_t N = rho.size() - 1;
    for (std::size_t n = 0; n <= N; ++n) {
        const double dn = static_cast<double>(n);
        double v = 0.0;
        if (n < N)
            v -= up * (dn + 1.0) * rho[n];
        if (n > 0)
            v += up * dn * rho[n - 1];
        v -= down * dn * rho[n];
        if (n < N)
            v += down * (dn + 1.0) * rho[n + 1];
        out[n] = v;
    }
}

} // namespace

double PhotonDistribution::trace() const
{
    double sum = 0.0;
    for (double p : rho)
        sum += p;
    return sum;
}

double PhotonDistribution::mean() const
{
    double sum = 0.0;
    for (std::size_t n = 0; n < rho.size(); ++n)
        sum += static_cast<double>(n) * rho[n];
    return sum;
}

void PhotonDistribution::validate() const
{
    if (rho.empty())
        throw PreconditionError("PhotonDistribution: empty");
    for (double p : rho)
        if (!(p >= 0.0) || !std::isfinite(p))
            throw PreconditionError("PhotonDistribution: probabilities must be finite and >= 0");
    if (std::abs(trace() - 1.0) > 1e-9)
        throw PreconditionError("PhotonDistribution: trace must be 1 within 1e-9");
}

PhotonDistribution PhotonDistribution::vacuum(int n_max)
{
    if (n_max < 0)
        throw PreconditionError("PhotonDistribution: n_max must be >= 0");
    PhotonDistribution d;
    d.rho.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    d.rho[0] = 1.0;
    return d;
}

PhotonDistribution PhotonDistribution::geometric(double q, int n_max)
{
    if (!(q >= 0.0 && q < 1.0))
        throw PreconditionError("PhotonDistribution: geometric ratio must lie in [0, 1)");
    if (n_max < 0)
        throw PreconditionError("PhotonDistribution: n_max must be >= 0");
    PhotonDistribution d;
    d.rho.resize(static_cast<std::size_t>(n_max) + 1);
    double term = 1.0 - q;
    for (auto& p : d.rho) {
        p = term;
        term *= q;
    }
    return d;
}

void ThermalOccupations::validate() const
{
    if (!(n_A >= 0.0) || !(n_T >= 0.0))
        throw PreconditionError("ThermalOccupations: occupations must be >= 0");
}

RateSet rates_from_amplitudes(double r, double g, const amplitudes::AmplitudeResult& result)
{
    if (!(r >= 0.0) || !(g >= 0.0))
        throw PreconditionError("rates_from_amplitudes: requires r >= 0 and g >= 0");
    RateSet rates;
    rates.r = r;
    rates.R1 = r * g * g * result.absorption_rate();
    rates.R2 = r * g * g * result.emission_rate();
    return rates;
}

double growth_rate(const RateSet& rates)
{
    return rates.R2 - rates.R1 - rates.kappa_loss;
}

EvolveResult evolve(const PhotonDistribution& initial, const RateSet& rates, double dt, int steps,
                    const EvolveObserver& observer)
{
    initial.validate();
    rates.validate();
    if (steps < 1)
        throw PreconditionError("evolve: requires steps >= 1");
    const double up = rates.R2;
    const double down = rates.R1 + rates.kappa_loss;
    const double stiffness = dt * (up + down) * initial.n_max();
    if (!(dt > 0.0) || !(stiffness < 0.1))
        throw PreconditionError("evolve: requires dt > 0 and dt (R1 + R2 + kappa) n_max < 0.1");

    EvolveResult out{initial, 0.0};
    std::vector<double>& rho = out.dist.rho;
    const std::size_t size = rho.size();
    std::vector<double> k1(size), k2(size), k3(size), k4(size), stage(size);
    const double start_trace = initial.trace();

    for (int step = 1; step <= steps; ++step) {
        apply_generator(rho, up, down, k1);
        for (std::size_t n = 0; n < size; ++n)
            stage[n] = rho[n] + 0.5 * dt * k1[n];
        apply_generator(stage, up, down, k2);
        for (std::size_t n = 0; n < size; ++n)
            stage[n] = rho[n] + 0.5 * dt * k2[n];
        apply_generator(stage, up, down, k3);
        for (std::size_t n = 0; n < size; ++n)
            stage[n] = rho[n] + dt * k3[n];
        apply_generator(stage, up, down, k4);
        for (std::size_t n = 0; n < size; ++n)
            rho[n] += dt / 6.0 * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n]);

        if (rho.back() > kOverflowMass)
            throw TruncationError("evolve: probability " + std::to_string(rho.back()) +
                                  " reached n_max = " + std::to_string(out.dist.n_max()) +
                                  " at step " + std::to_string(step));
        if (observer)
            observer(step, out.dist);
    }
    out.trace_drift = out.dist.trace() - start_trace;
    return out;
}

int default_truncation(double q)
{
    if (!(q >= 0.0 && q < 1.0))
        throw PreconditionError("default_truncation: requires 0 <= q < 1");
    int n = std::max(20, static_cast<int>(std::ceil(20.0 * q / (1.0 - q))));
    while ((1.0 - q) * std::pow(q, n) >= 1e-12)
        n *= 2;
    return n;
}

SteadyState steady_state_thermal(const RateSet& rates)
{
    rates.validate();
    const double down = rates.R1 + rates.kappa_loss;
    if (!(rates.R2 < down))
        throw DomainError("steady_state_thermal: no steady state, growth rate " +
                          std::to_string(growth_rate(rates)) + " >= 0");
    SteadyState s;
    s.boltzmann = rates.R2 / down;
    s.dist = PhotonDistribution::geometric(s.boltzmann, default_truncation(s.boltzmann));
    s.nbar = s.boltzmann / (1.0 - s.boltzmann);
    return s;
}

double atomic_steady_state(const ThermalOccupations& occ)
{
    occ.validate();
    // Numerator and denominator differ by exactly 1; the grouping is symmetric in n_A, n_T.
    const double num = 2.0 * (occ.n_T * occ.n_A) + (occ.n_T + occ.n_A);
    if (std::isinf(num))
        return 1.0;
    return num / (num + 1.0);
}

double unruh_occupation(double omega_over_alpha)
{
    if (!(omega_over_alpha > 0.0))
        throw PreconditionError("unruh_occupation: requires omega/alpha > 0");
    return 1.0 / std::expm1(2.0 * std::numbers::pi * omega_over_alpha);
}

double thermal_occupation(double hbar_omega_over_kT)
{
    if (!(hbar_omega_over_kT > 0.0))
        throw PreconditionError("thermal_occupation: requires hbar omega / kT > 0");
    return 1.0 / std::expm1(hbar_omega_over_kT);
}

double total_variation(const PhotonDistribution& a, const PhotonDistribution& b)
{
    const std::size_t n = std::max(a.rho.size(), b.rho.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = i < a.rho.size() ? a.rho[i] : 0.0;
        const double y = i < b.rho.size() ? b.rho[i] : 0.0;
        sum += std::abs(x - y);
    }
    return 0.5 * sum;
}

} // namespace accelrad::field
