#pragma once

namespace accelrad {

/// Absorption and emission coefficients of the cavity mode.
///
/// R1 and R2 already include the injection rate: R = r g^2 |I|^2. Operations
/// that return rates for a single atom set r = 1.
struct RateSet {
    double R1 = 0.0;         ///< absorption coefficient
    double R2 = 0.0;         ///< emission coefficient
    double r = 1.0;          ///< atom injection rate
    double kappa_loss = 0.0; ///< cavity loss rate

    /// Throws PreconditionError unless every field is finite and >= 0.
    void validate() const;
};

} // namespace accelrad
