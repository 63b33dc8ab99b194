#pragma once

// Photon statistics of a cavity mode pumped by a random beam of atoms, and
// the steady-state populations of an atom in two thermal backgrounds.
//
// The diagonal density matrix obeys
//
//     d rho_n / dt = -R2 [(n+1) rho_n - n rho_{n-1}]
//                    -(R1 + kappa) [n rho_n - (n+1) rho_{n+1}],
//
// a birth-death chain with birth rate R2 (n+1) and death rate (R1 + kappa) n.

#include "accelrad/amplitudes.hpp"
#include "accelrad/rates.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace accelrad::field {

/// Diagonal photon-number distribution rho_n, n = 0..n_max().
struct PhotonDistribution {
    std::vector<double> rho;

    int n_max() const { return static_cast<int>(rho.size()) - 1; }
    double trace() const;
    double mean() const;

    /// Throws PreconditionError unless non-empty, every rho_n >= 0 and finite,
    /// and the trace is within 1e-9 of 1.
    void validate() const;

    static PhotonDistribution vacuum(int n_max);
    /// (1 - q) q^n truncated at n_max, not renormalised.
    static PhotonDistribution geometric(double q, int n_max);
};

struct ThermalOccupations {
    double n_A = 0.0; ///< acceleration-induced occupation 1/(e^{2 pi omega/alpha} - 1)
    double n_T = 0.0; ///< background occupation 1/(e^{hbar omega/kT} - 1)

    void validate() const;
};

/// R1 = r g^2 |I_a|^2, R2 = r g^2 |I_e|^2. Throws PreconditionError for negative r or g.
RateSet rates_from_amplitudes(double r, double g, const amplitudes::AmplitudeResult& result);

/// R2 - R1 - kappa, the initial growth rate of the mean photon number.
double growth_rate(const RateSet& rates);

/// Occupation probability mass above which the truncation is considered overrun.
inline constexpr double kOverflowMass = 1e-9;

struct EvolveResult {
    PhotonDistribution dist;
    double trace_drift = 0.0; ///< final trace minus initial trace
};

/// Called after every step with the step index (1-based) and the current state.
using EvolveObserver = std::function<void(int, const PhotonDistribution&)>;

/// Integrates the master equation with classical RK4 steps.
///
/// The top level n_max reflects (no transitions above it), so the truncated
/// generator conserves the trace; the drift is reported, never corrected.
/// Throws PreconditionError unless dt (R1 + R2 + kappa) n_max < 0.1 and
/// steps >= 1, and TruncationError once rho_{n_max} exceeds kOverflowMass.
EvolveResult evolve(const PhotonDistribution& initial, const RateSet& rates, double dt, int steps,
                    const EvolveObserver& observer = {});

/// max(20, ceil(20 q / (1 - q))), doubled until (1 - q) q^n_max < 1e-12.
int default_truncation(double q);

struct SteadyState {
    PhotonDistribution dist;
    double nbar = 0.0;      ///< q / (1 - q)
    double boltzmann = 0.0; ///< q = R2 / (R1 + kappa) = e^{-hbar nu / kT}
};

/// Geometric steady state. Throws DomainError when R2 >= R1 + kappa.
SteadyState steady_state_thermal(const RateSet& rates);

/// rho_aa / rho_bb = [n_T (n_A + 1) + (n_T + 1) n_A] / [n_T n_A + (n_T + 1)(n_A + 1)].
double atomic_steady_state(const ThermalOccupations& occ);

/// 1 / (e^{2 pi omega/alpha} - 1).
double unruh_occupation(double omega_over_alpha);

/// 1 / (e^{x} - 1) with x = hbar omega / kT; x = +inf gives 0.
double thermal_occupation(double hbar_omega_over_kT);

/// (1/2) sum |a_n - b_n|, the shorter distribution padded with zeros.
double total_variation(const PhotonDistribution& a, const PhotonDistribution& b);

} // namespace accelrad::field
