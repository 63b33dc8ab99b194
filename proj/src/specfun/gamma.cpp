#include "accelrad/specfun.hpp"

#include "accelrad/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace accelrad::specfun {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

bool is_pole(Complex z)
{
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

Complex lanczos_log_gamma(Complex z)
{
    // Valid for Re z >= 1/2.
    z -= 1.0;
    Complex series = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i)
        series += kLanczos[i] / (z + static_cast<double>(i));
    const Complex t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

} // namespace

Complex log_gamma(Complex z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("log_gamma: non-finite argument");
    if (is_pole(z))
        throw DomainError("gamma: pole at non-positive integer");
    if (z.real() < 0.5) {
        // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
        const Complex s = std::sin(std::numbers::pi * z);
        return std::log(std::numbers::pi) - std::log(s) - lanczos_log_gamma(1.0 - z);
    }
    return lanczos_log_gamma(z);
}

Complex gamma(Complex z)
{
    if (z.imag() == 0.0 && z.real() > 0.0 && z.real() == std::floor(z.real()) && z.real() < 171.0)
        return std::tgamma(z.real());
    const Complex value = std::exp(log_gamma(z));
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw DomainError("gamma: result overflows double precision");
    return value;
}

Complex lower_incomplete_gamma(Complex a, Complex u)
{
    if (u == Complex{})
        return {};
    if (is_pole(a))
        throw DomainError("lower_incomplete_gamma: order at non-positive integer");
    // gamma(a, u) = u^a e^{-u} sum_n u^n / (a (a+1) ... (a+n))
    Complex term = 1.0 / a;
    Complex sum = term;
    constexpr int kMaxTerms = 20000;
    for (int n = 1; n < kMaxTerms; ++n) {
        term *= u / (a + static_cast<double>(n));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum) && static_cast<double>(n) > std::abs(u))
            return std::exp(a * std::log(u) - u) * sum;
    }
    throw ConvergenceError("lower_incomplete_gamma: series did not converge");
}

namespace {

// Gamma(a, z) = e^{-z} z^a / (z + 1 - a - 1 (1 - a) / (z + 3 - a - 2 (2 - a) / ...))
Complex upper_gamma_continued_fraction(Complex a, Complex z)
{
    constexpr double tiny = 1e-300;
    constexpr int kMaxIterations = 200000;
    Complex b = z + 1.0 - a;
    Complex c = 1.0 / tiny;
    Complex d = 1.0 / b;
    Complex h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const Complex an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const Complex delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            return std::exp(a * std::log(z) - z) * h;
    }
    throw ConvergenceError("upper_incomplete_gamma: continued fraction did not converge");
}

} // namespace

Complex upper_incomplete_gamma(Complex a, Complex u)
{
    if (!(a.real() > 0.0 && a.real() <= 2.0))
        throw PreconditionError("upper_incomplete_gamma: requires 0 < Re a <= 2");
    if (!std::isfinite(u.real()) || !std::isfinite(u.imag()))
        throw PreconditionError("upper_incomplete_gamma: non-finite argument");
    if (u == Complex{})
        return gamma(a);
    if (std::abs(std::arg(u)) > std::numbers::pi / 2 + 1e-12)
        throw PreconditionError("upper_incomplete_gamma: requires |arg u| <= pi/2");

    const Complex value = std::abs(u) < kIncompleteGammaSwitch
                              ? gamma(a) - lower_incomplete_gamma(a, u)
                              : upper_gamma_continued_fraction(a, u);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw DomainError("upper_incomplete_gamma: result not representable");
    return value;
}

} // namespace accelrad::specfun
