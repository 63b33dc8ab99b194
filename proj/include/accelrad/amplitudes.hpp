#pragma once

// Emission and absorption amplitudes of a two-level atom coupled to one field
// mode, for uniformly accelerated, constant-velocity and oscillating atoms.
//
// Conventions: c = 1, frequencies in any common unit (usually alpha = 1).
// For an accelerated atom and a co-propagating mode
//
//     I(W) = int exp[i (nu/alpha)(e^{-alpha tau} - 1) + i W tau - alpha tau] dtau,
//
// with I_a = I(+omega) (absorption) and I_e = I(-omega) (emission). The
// counter-propagating amplitude is the same integral with alpha -> -alpha
// everywhere, nu and omega untouched.

#include "accelrad/rates.hpp"
#include "accelrad/specfun.hpp"
#include "accelrad/trajectory.hpp"

#include <optional>

namespace accelrad::amplitudes {

using specfun::Complex;

struct AtomFieldParams {
    double omega = 1.0; ///< atomic transition frequency
    double g = 1.0;     ///< coupling frequency
    double alpha = 1.0; ///< acceleration frequency a/c; 0 for unaccelerated atoms

    /// Throws PreconditionError unless omega > 0, g >= 0, alpha >= 0.
    void validate() const;
};

/// Proper-time interval the atom spends in the cavity.
struct FlightWindow {
    double tau_i = 0.0;
    double tau_e = 0.0;
    bool infinite = false;

    static FlightWindow finite(double tau_i, double tau_e) { return {tau_i, tau_e, false}; }
    static FlightWindow whole_line() { return {0.0, 0.0, true}; }

    /// Throws PreconditionError if a finite window has tau_e < tau_i or
    /// non-finite ends. tau_e == tau_i is an empty window.
    void validate() const;
};

enum class Backend {
    quadrature,       ///< adaptive quadrature of the defining integral (finite window)
    incomplete_gamma, ///< exact incomplete-gamma representation (finite window)
    stationary_phase, ///< boundary + stationary-point asymptotics (finite window, tau_i = 0)
    free_space,       ///< gamma-function closed form (infinite window)
    bessel_k,         ///< Bessel-K closed form of the oblique-mode amplitude (infinite window)
};

const char* to_string(Backend b);

struct AmplitudeFlags {
    bool weak_asymptotics = false;   ///< nu/alpha or omega/alpha below 5
    bool stationary_outside = false; ///< I_a has no stationary point inside the window
    bool resonance_profile = false;  ///< |nu - omega| <= 3 sqrt(alpha omega): erf profile used
    bool boundary_resonance = false; ///< |nu - omega| <= sqrt(alpha omega)
    bool near_upper_edge = false;    ///< stationary point within 3 widths of tau_e
    bool near_threshold = false;     ///< oblique stationary points nearly coalesce
    bool unconverged = false;        ///< a quadrature hit its subdivision budget
};

/// Split of the stationary-phase absorption amplitude. `boundary` plus
/// `stationary` equals the returned total.
struct StationaryComponents {
    Complex boundary;
    Complex stationary;
};

struct AmplitudeResult {
    Complex absorption; ///< I_a
    Complex emission;   ///< I_e
    Backend backend = Backend::quadrature;
    double err_estimate = 0.0; ///< absolute, covers both channels
    std::optional<StationaryComponents> components;
    AmplitudeFlags flags;

    double absorption_rate() const { return std::norm(absorption); }
    double emission_rate() const { return std::norm(emission); }
    /// |I_e / I_a|^2.
    double ratio() const { return std::norm(emission) / std::norm(absorption); }
};

/// Order of the stationary-phase backend.
enum class AsymptoticOrder {
    leading,  ///< first-order boundary term and leading stationary term
    corrected ///< adds the second boundary term and the 1 + i a/(12 W) stationary correction
};

struct AmplitudeOptions {
    specfun::QuadratureSpec quadrature{};
    AsymptoticOrder order = AsymptoticOrder::corrected;
};

/// I_a and I_e for a uniformly accelerated atom and a co- or
/// counter-propagating mode.
///
/// Window requirements: quadrature, incomplete_gamma and stationary_phase take
/// a finite window (stationary_phase also needs tau_i = 0); free_space takes
/// the infinite window. Violations throw PreconditionError. A quadrature that
/// exhausts its budget sets flags.unconverged instead of throwing.
///
/// stationary_phase: I_a is the boundary sum plus the stationary point
/// contribution; within 3 sqrt(alpha omega) of nu = omega the lower boundary
/// and stationary terms are replaced by the erf profile. I_e has no stationary
/// point and is boundary-only.
AmplitudeResult amplitude(const AtomFieldParams& p, const FlightWindow& w,
                          const trajectory::ModeGeometry& m, Backend backend,
                          const AmplitudeOptions& options = {});

/// The pieces of the stationary-phase estimate of I_a.
struct StationaryPhaseParts {
    Complex boundary;   ///< integration-by-parts sum at both window ends
    Complex stationary; ///< stationary-point term, 0 when tau_s is outside the window
    Complex profile;    ///< S/2 [1 + erf(d e^{-i pi/4 sgn phi''})], 0 without a stationary point
    double tau_s = 0.0; ///< stationary proper time (NaN when none exists)
    double erf_argument = 0.0; ///< d = (tau_s - tau_i) sqrt(|phi''| / 2)
    AmplitudeFlags flags;
};

/// Throws PreconditionError for oblique modes, infinite windows or tau_i != 0.
StationaryPhaseParts stationary_phase_components(const AtomFieldParams& p, const FlightWindow& w,
                                                 const trajectory::ModeGeometry& m,
                                                 AsymptoticOrder order = AsymptoticOrder::corrected);

/// e^{-2 pi omega / alpha}, equal to |I_e / I_a|^2 of the free_space backend.
double ratio_free_space(double omega_over_alpha);

/// Boundary-dominated ratio alpha nu^2 / (2 pi omega (nu + omega)^2), or
/// alpha / (2 pi omega) when `at_resonance`.
double asymptotic_ratio(double nu, double omega, double alpha, bool at_resonance);

struct EffectiveTemperature {
    double hbar_omega_over_kT = 0.0;     ///< ln(2 pi omega / alpha), sudden switching in a cavity
    double unruh_kT_over_hbar_alpha = 0.0; ///< 1 / (2 pi)
};

/// Throws DomainError when 2 pi omega <= alpha.
EffectiveTemperature effective_temperature(double omega, double alpha);

// ---------------------------------------------------------------------------
// Oblique modes
//
//     I_k(W) = t e^{i nu tau_i + i nu t / alpha}
//              int exp[i (nu/alpha)(sinh alpha tau - t cosh alpha tau) - i W tau - alpha tau] dtau
//
// with t = k_z / k. The absorption-like amplitude is I_k(+omega) and the
// emission-like one is I_k(-omega). For the infinite window the constant
// e^{i nu tau_i} is dropped.

enum class AngularBackend {
    quadrature,          ///< finite window: direct; infinite window: rotated contour
    infinite_closed_form ///< 2 e^{-xi eta - i pi xi / 2} K_xi(kappa_perp) / alpha
};

/// I_k(+omega) in `absorption`, I_k(-omega) in `emission`.
///
/// The infinite window is integrated on the contour beta = s + i pi/4
/// (beta = alpha tau - eta), where the integrand decays double-exponentially;
/// the real-axis integral converges only in the Abel sense. The closed form
/// needs |t| < 1 (kappa_perp > 0) and an infinite window.
AmplitudeResult angular_amplitude(const AtomFieldParams& p, const FlightWindow& w, double nu,
                                  double kz_over_k, AngularBackend backend,
                                  const specfun::QuadratureSpec& spec = {});

/// Infinite-window I_k(+-omega) divided by k_z/k, finite at k_z = 0.
/// Throws DomainError for |t| = 1.
AmplitudeResult oblique_reduced_amplitude(const AtomFieldParams& p, double nu, double kz_over_k,
                                          AngularBackend backend,
                                          const specfun::QuadratureSpec& spec = {});

/// |K_{1 - i omega/alpha}(kappa)|^2 / |K_{1 + i omega/alpha}(kappa)|^2, the
/// factor multiplying e^{-2 pi omega / alpha} in the oblique free-space ratio.
double angular_modulus_factor(double omega_over_alpha, double kappa_perp);

struct AngularStationaryEstimate {
    double ratio = 0.0;          ///< |I_k(-omega)|^2 / |I_k(omega)|^2
    double emission_rate = 0.0;  ///< t^2 / (nu + omega)^2
    double absorption_rate = 0.0;
    int stationary_points = 0;   ///< interior points summed coherently
    bool near_threshold = false; ///< points closer than 3 Gaussian widths
};

/// Stationary-phase ratio for an oblique mode and a window starting at 0.
///
/// Stationary points solve cosh x - t sinh x = omega / nu with x = alpha tau;
/// every root inside the window contributes. Throws DomainError when
/// omega^2 <= k_perp^2 or no root lies inside the window.
AngularStationaryEstimate angular_stationary_ratio(const AtomFieldParams& p, double nu,
                                                   double kz_over_k, const FlightWindow& w);

// ---------------------------------------------------------------------------
// Unaccelerated atoms

/// g^2 |1 - e^{-i d T}|^2 / d^2 for d = nu' -+ omega; the d -> 0 limit is g^2 T^2.
RateSet interference_rates(double g, double nu_prime, double omega, double T);

/// Doppler-shifted nu' = nu sqrt((1 - v)/(1 + v)) (co) or with v -> -v
/// (counter), then interference_rates. Throws PreconditionError for |v| >= 1,
/// T <= 0 or oblique direction.
RateSet constant_velocity_rates(const AtomFieldParams& p, double nu, double v_over_c, double T,
                                trajectory::Propagation direction);

struct TimeOfFlight {
    double T = 0.0;
    bool consistent = false; ///< (nu - kv - omega) T = 2 n2 pi within 1e-9
    bool positive = false;   ///< T > 0
};

/// Solves (nu - kv + omega) T = (2 n1 - 1) pi for T and checks the second
/// tuning condition (nu - kv - omega) T = 2 n2 pi. Throws DomainError when
/// nu - kv + omega = 0.
TimeOfFlight time_of_flight_tuning(double nu, double k_dot_v, double omega, int n1, int n2);

/// Velocity spread bound (v / 4c)(lambda / L). `v` in m/s.
double monochromaticity_bound(double v_m_per_s, double length_over_wavelength);

struct ParametricRates {
    RateSet rates;
    int terms = 0; ///< P actually used: the sum runs over p = -P..P
};

/// Oscillating atom z = z0 + A cos(omega0 t):
///
///     R_{1,2} = g^2 | sum_p (-i)^p J_p(kzA) / (nu -+ omega + p omega0 + i gamma) |^2.
///
/// P starts at P_max and grows until the dropped Bessel mass sum_{|p|>P} J_p^2
/// is below 1e-14 of the retained mass. Throws PreconditionError unless
/// gamma > 0, omega0 > 0 and P_max >= kzA + 20, and when P would exceed 200.
ParametricRates parametric_rates(const AtomFieldParams& p, double nu, double omega0, double kzA,
                                 double gamma, int P_max);

} // namespace accelrad::amplitudes
