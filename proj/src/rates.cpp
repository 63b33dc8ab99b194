#include "accelrad/rates.hpp"

#include "accelrad/errors.hpp"

#include <cmath>

namespace accelrad {

void RateSet::validate() const
{
    for (double v : {R1, R2, r, kappa_loss})
        if (!(v >= 0.0) || !std::isfinite(v))
            throw PreconditionError("RateSet: rates must be finite and non-negative");
}

} // namespace accelrad
