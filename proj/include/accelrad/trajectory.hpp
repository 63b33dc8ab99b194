#pragma once

// Atom worldlines and the kinematic factors that enter the amplitude
// integrands. Units: c = 1 throughout; lengths are measured in units of
// c / (frequency unit).

#include <variant>

namespace accelrad::trajectory {

/// Hyperbolic (Rindler) motion starting from rest at z = 0 when tau = 0.
struct UniformAcceleration {
    double alpha = 1.0; ///< a / c
    double t0 = 0.0;    ///< lab time at tau = 0
};

struct ConstantVelocity {
    double v_over_c = 0.0;
};

/// z = z0 + A cos(omega0 t), with proper time taken equal to lab time.
struct Oscillating {
    double z0 = 0.0;
    double amplitude = 0.0;
    double omega0 = 1.0;
};

using Worldline = std::variant<UniformAcceleration, ConstantVelocity, Oscillating>;

/// Throws PreconditionError unless alpha > 0, |v| < c, A >= 0 and omega0 > 0
/// as appropriate for the alternative held.
void validate(const Worldline& w);

enum class Propagation { co, counter, oblique };

/// A single field mode seen from the atom.
struct ModeGeometry {
    double nu = 1.0;
    Propagation direction = Propagation::co;
    double kz_over_k = 1.0; ///< only read for oblique modes

    static ModeGeometry co(double nu) { return {nu, Propagation::co, 1.0}; }
    static ModeGeometry counter(double nu) { return {nu, Propagation::counter, -1.0}; }
    static ModeGeometry oblique(double nu, double kz_over_k)
    {
        return {nu, Propagation::oblique, kz_over_k};
    }

    /// k_z / k: +1 for co, -1 for counter, the stored value for oblique.
    double longitudinal() const;
    /// k_perp / k = sqrt(1 - (k_z/k)^2).
    double transverse() const;

    /// Throws PreconditionError unless nu > 0 and |k_z/k| <= 1.
    void validate() const;
};

/// +1 for a co-propagating mode, -1 for counter-propagating. The counter case
/// is obtained from the co case by alpha -> -alpha everywhere in the
/// amplitude integrand. Throws PreconditionError for oblique modes.
double direction_sign(const ModeGeometry& m);

struct Event {
    double t = 0.0; ///< lab time
    double z = 0.0; ///< position along the cavity axis
};

Event kinematics(const Worldline& w, double tau);

/// dz/dt in units of c.
double velocity(const Worldline& w, double tau);

/// Mode frequency seen by the atom at proper time tau.
///
/// Uniform acceleration: nu e^{-alpha tau} (co) or nu e^{+alpha tau}
/// (counter). Constant velocity: nu sqrt((nu - k.v)/(nu + k.v)) with
/// k.v = +nu v for co and -nu v for counter. Throws PreconditionError for
/// other combinations.
double doppler_frequency(const Worldline& w, const ModeGeometry& m, double tau);

/// Boost factor multiplying the coupling g: e^{-alpha tau} co, e^{+alpha tau}
/// counter, 1 for constant velocity and oscillating worldlines.
double coupling_factor(const Worldline& w, const ModeGeometry& m, double tau);

} // namespace accelrad::trajectory
