#include "accelrad/specfun.hpp"

#include "accelrad/errors.hpp"

#include <cmath>
#include <numbers>

namespace accelrad::specfun {

namespace {

const double kTwoOverSqrtPi = 2.0 / std::sqrt(std::numbers::pi);

// erf(z) = 2/sqrt(pi) sum_n (-1)^n z^{2n+1} / (n! (2n+1)).
// Cancellation grows like exp(2 Re(z)^2), so this is used only where Re z is small.
Complex erf_maclaurin(Complex z)
{
    const Complex minus_z2 = -z * z;
    Complex power = z; // (-1)^n z^{2n+1} / n!
    Complex sum = z;
    const double z2 = std::norm(z);
    constexpr int kMaxTerms = 10000;
    for (int n = 1; n < kMaxTerms; ++n) {
        power *= minus_z2 / static_cast<double>(n);
        const Complex term = power / static_cast<double>(2 * n + 1);
        sum += term;
        if (static_cast<double>(n) > z2 && std::abs(term) <= 1e-17 * std::abs(sum))
            return kTwoOverSqrtPi * sum;
    }
    throw ConvergenceError("erf: Maclaurin series did not converge");
}

// erfc(z) = exp(-z^2)/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))) for Re z > 0,
// evaluated with the modified Lentz method.
Complex erfc_continued_fraction(Complex z)
{
    constexpr double tiny = 1e-300;
    Complex f = tiny;
    Complex c = f;
    Complex d = 0.0;
    constexpr int kMaxIterations = 100000;
    for (int k = 1; k < kMaxIterations; ++k) {
        const double a = k == 1 ? 1.0 : 0.5 * static_cast<double>(k - 1);
        d = z + a * d;
        if (std::abs(d) < tiny)
            d = tiny;
        c = z + a / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const Complex delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            return std::exp(-z * z) / std::sqrt(std::numbers::pi) * f;
    }
    throw ConvergenceError("erf: continued fraction did not converge");
}

} // namespace

Complex erf(Complex z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("erf: non-finite argument");
    if (z.real() < 0.0)
        return -erf(-z);
    if (z == Complex{})
        return {};

    const double x = z.real();
    Complex value;
    if (std::abs(z) < 3.0 || x < 2.0)
        value = erf_maclaurin(z);
    else
        value = 1.0 - erfc_continued_fraction(z);

    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw DomainError("erf: result overflows double precision");
    return value;
}

} // namespace accelrad::specfun
