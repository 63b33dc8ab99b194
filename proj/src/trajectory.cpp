#include "accelrad/trajectory.hpp"

#include "accelrad/errors.hpp"

#include <cmath>

namespace accelrad::trajectory {

namespace {

template <class... Fs>
struct Overload : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

} // namespace

void validate(const Worldline& w)
{
    std::visit(Overload{
                   [](const UniformAcceleration& u) {
                       if (!(u.alpha > 0.0))
                           throw PreconditionError("UniformAcceleration: alpha must be positive");
                   },
                   [](const ConstantVelocity& c) {
                       if (!(std::abs(c.v_over_c) < 1.0))
                           throw PreconditionError("ConstantVelocity: |v| must be below c");
                   },
                   [](const Oscillating& o) {
                       if (!(o.amplitude >= 0.0) || !(o.omega0 > 0.0))
                           throw PreconditionError("Oscillating: requires A >= 0 and omega0 > 0");
                   },
               },
               w);
}

double ModeGeometry::longitudinal() const
{
    switch (direction) {
    case Propagation::co:
        return 1.0;
    case Propagation::counter:
        return -1.0;
    case Propagation::oblique:
        break;
    }
    return kz_over_k;
}

double ModeGeometry::transverse() const
{
    const double kz = longitudinal();
    return std::sqrt(std::max(0.0, (1.0 - kz) * (1.0 + kz)));
}

void ModeGeometry::validate() const
{
    if (!(nu > 0.0))
        throw PreconditionError("ModeGeometry: nu must be positive");
    if (direction == Propagation::oblique && !(std::abs(kz_over_k) <= 1.0))
        throw PreconditionError("ModeGeometry: |k_z/k| must not exceed 1");
}

double direction_sign(const ModeGeometry& m)
{
    switch (m.direction) {
    case Propagation::co:
        return 1.0;
    case Propagation::counter:
        return -1.0;
    case Propagation::oblique:
        break;
    }
    throw PreconditionError("direction_sign: oblique modes have no co/counter sign");
}

Event kinematics(const Worldline& w, double tau)
{
    validate(w);
    return std::visit(Overload{
                          [tau](const UniformAcceleration& u) {
                              const double x = u.alpha * tau;
                              // cosh(x) - 1 = 2 sinh^2(x/2) avoids cancellation near tau = 0
                              const double s = std::sinh(0.5 * x);
                              return Event{u.t0 + std::sinh(x) / u.alpha, 2.0 * s * s / u.alpha};
                          },
                          [tau](const ConstantVelocity& c) {
                              const double t = tau / std::sqrt((1.0 - c.v_over_c) * (1.0 + c.v_over_c));
                              return Event{t, c.v_over_c * t};
                          },
                          [tau](const Oscillating& o) {
                              return Event{tau, o.z0 + o.amplitude * std::cos(o.omega0 * tau)};
                          },
                      },
                      w);
}

double velocity(const Worldline& w, double tau)
{
    validate(w);
    return std::visit(Overload{
                          [tau](const UniformAcceleration& u) { return std::tanh(u.alpha * tau); },
                          [](const ConstantVelocity& c) { return c.v_over_c; },
                          [tau](const Oscillating& o) {
                              return -o.amplitude * o.omega0 * std::sin(o.omega0 * tau);
                          },
                      },
                      w);
}

double doppler_frequency(const Worldline& w, const ModeGeometry& m, double tau)
{
    validate(w);
    m.validate();
    if (const auto* u = std::get_if<UniformAcceleration>(&w)) {
        return m.nu * std::exp(-direction_sign(m) * u->alpha * tau);
    }
    if (const auto* c = std::get_if<ConstantVelocity>(&w)) {
        const double kv = direction_sign(m) * c->v_over_c; // k.v / nu
        return m.nu * std::sqrt((1.0 - kv) / (1.0 + kv));
    }
    throw PreconditionError("doppler_frequency: unsupported worldline for a Doppler factor");
}

double coupling_factor(const Worldline& w, const ModeGeometry& m, double tau)
{
    validate(w);
    if (const auto* u = std::get_if<UniformAcceleration>(&w))
        return std::exp(-direction_sign(m) * u->alpha * tau);
    return 1.0;
}

} // namespace accelrad::trajectory
