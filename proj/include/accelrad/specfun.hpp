#pragma once

// Complex special functions and an oscillation-aware adaptive quadrature.
//
// Everything here is double precision, pure and stateless. Each function
// documents the band on which its accuracy is tested; outside that band the
// result is still finite or an exception is thrown, never a silent NaN.

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace accelrad::specfun {

using Complex = std::complex<double>;

/// Gamma function for complex argument.
///
/// Lanczos approximation (g = 7, nine terms) with reflection for Re z < 1/2.
/// Relative error below 1e-12 for 0 < Re z <= 5, |Im z| <= 50.
/// Throws DomainError at the poles z = 0, -1, -2, ...
Complex gamma(Complex z);

/// A logarithm of the gamma function (not always the principal branch);
/// exp(log_gamma(z)) equals gamma(z). Useful when |Gamma| under- or overflows.
Complex log_gamma(Complex z);

/// Lower incomplete gamma function gamma(a, u) = int_0^u e^{-x} x^{a-1} dx by
/// its power series. Intended for |u| up to about 12.
Complex lower_incomplete_gamma(Complex a, Complex u);

/// Upper incomplete gamma function Gamma(a, u) = int_u^inf e^{-x} x^{a-1} dx.
///
/// Requires 0 < Re a <= 2 and |arg u| <= pi/2. Uses Gamma(a) - gamma(a, u)
/// for |u| < 8 and a Lentz-evaluated continued fraction for |u| >= 8.
/// Throws PreconditionError outside the supported range and ConvergenceError
/// if the continued fraction stalls.
Complex upper_incomplete_gamma(Complex a, Complex u);

/// |u| at which upper_incomplete_gamma switches from series to continued fraction.
inline constexpr double kIncompleteGammaSwitch = 8.0;

/// Error function of complex argument.
///
/// Maclaurin series near the origin and along the imaginary axis, Laplace
/// continued fraction for erfc elsewhere in the right half-plane, odd
/// symmetry for the left half-plane. Relative error below 1e-10 for
/// |z| <= 20 away from the complex zeros of erf.
Complex erf(Complex z);

/// Bessel function of the first kind J_p(x) of integer order.
///
/// Miller downward recurrence normalised with J_0 + 2 sum J_{2k} = 1.
/// Supports |p| <= 200, |x| <= 500 with absolute error below 1e-12.
double bessel_j(int p, double x);

/// J_0(x) ... J_pmax(x) from a single downward recurrence.
std::vector<double> bessel_j_sequence(int pmax, double x);

/// Modified Bessel function of the second kind K_order(x) for complex order
/// and real x > 0, from K = 1/2 int exp(-x cosh t + order t) dt.
///
/// The integration line is shifted to Im t = phi, with phi chosen from
/// Im(order) so that the exponentially small result is not swamped by
/// cancellation, and the shifted integral is summed with a step-halving
/// trapezoidal rule (the integrand decays double-exponentially).
/// Relative error below 1e-9 for x >= 1e-3, |Im order| <= 100.
Complex bessel_k(Complex order, double x);

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    std::size_t max_subdivisions = 1u << 21;

    /// Throws PreconditionError unless rel_tol > 0, abs_tol >= 0 and
    /// max_subdivisions >= 1.
    void validate() const;
};

enum class QuadratureStatus {
    converged,        ///< error estimate within max(abs_tol, rel_tol |value|)
    roundoff_limited, ///< remaining error is at the floating-point floor
    budget_exhausted, ///< subdivision budget spent; value is the best estimate
};

struct QuadratureResult {
    Complex value;
    double error = 0.0;
    QuadratureStatus status = QuadratureStatus::converged;
    std::size_t panels = 0;
    std::size_t evaluations = 0;

    bool converged() const { return status == QuadratureStatus::converged; }
};

using ComplexIntegrand = std::function<Complex(double)>;

/// Derivative of the integrand phase, used to size the starting panels.
using PhaseRate = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7/15) integration of a complex integrand over a
/// finite interval [a, b].
///
/// When `phase_rate` is given, the interval is first cut into panels no
/// wider than one local oscillation period 2 pi / |phase_rate|; global
/// bisection of the worst panel then proceeds until the summed error
/// estimate meets the tolerance. Exhausting the budget is not an error: the
/// best estimate is returned with status budget_exhausted.
QuadratureResult oscillatory_quadrature(const ComplexIntegrand& f, double a, double b,
                                        const QuadratureSpec& spec = {},
                                        const PhaseRate& phase_rate = {});

} // namespace accelrad::specfun
