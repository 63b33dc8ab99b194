#pragma once

#include "accelrad/specfun.hpp"

#include <functional>

namespace accelrad::amplitudes::detail {

using specfun::Complex;

/// Integrand envelope(tau) e^{i phase(tau)} with a large, smooth phase.
struct PhaseKernel {
    std::function<long double(long double)> phase; ///< absolute phase, extended precision
    /// phase(origin + s) - phase(origin), accurate to eps times its own size.
    std::function<double(double origin, double s)> increment;
    std::function<double(double)> rate;      ///< d phase / d tau
    std::function<Complex(double)> envelope; ///< slowly varying amplitude
};

/// Integrates a PhaseKernel over [a, b].
///
/// The window is cut into chunks over which the phase advances by at most
/// kChunkPhase radians. Inside a chunk starting at c the integrand is
/// envelope(c + s) e^{i increment(c, s)} with s measured from c, and
/// e^{i phase(c)} is applied once from the extended-precision phase. Double rounding
/// of the nodes then perturbs the phase by at most kChunkPhase eps rather
/// than |phase| eps.
specfun::QuadratureResult integrate_phase_kernel(const PhaseKernel& kernel, double a, double b,
                                                 const specfun::QuadratureSpec& spec);

inline constexpr double kChunkPhase = 1000.0;

/// e^{i x} for a large extended-precision phase.
Complex unit_phase(long double x);

} // namespace accelrad::amplitudes::detail
