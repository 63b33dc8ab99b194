#include "accelrad/specfun.hpp"

#include "accelrad/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace accelrad::specfun {

namespace {

constexpr int kMaxOrder = 200;
constexpr double kMaxArgument = 500.0;

// Leading two terms of the ascending series; exact to double precision for x < 1e-5.
double small_argument_j(int p, double x)
{
    const double half = 0.5 * x;
    const double lead = std::exp(p * std::log(half) - std::lgamma(p + 1.0));
    return lead * (1.0 - half * half / (p + 1.0));
}

} // namespace

std::vector<double> bessel_j_sequence(int pmax, double x)
{
    if (pmax < 0 || pmax > kMaxOrder || !(std::abs(x) <= kMaxArgument))
        throw PreconditionError("bessel_j: requires 0 <= p <= 200 and |x| <= 500");

    std::vector<double> out(static_cast<std::size_t>(pmax) + 1, 0.0);
    const double ax = std::abs(x);
    if (ax == 0.0) {
        out[0] = 1.0;
        return out;
    }
    if (ax < 1e-5) {
        for (int p = 0; p <= pmax; ++p)
            out[p] = small_argument_j(p, ax);
    } else {
        const int top = std::max(pmax, static_cast<int>(ax));
        const int start = 2 * ((top + 16 + static_cast<int>(std::sqrt(40.0 * top))) / 2);

        constexpr double kBig = 1e250;
        double above = 0.0;  // J_{k+1}
        double current = 1e-30;  // J_k, unnormalised
        double even_sum = 0.0;
        for (int k = start; k >= 1; --k) {
            const double below = 2.0 * k / ax * current - above;
            above = current;
            current = below; // now J_{k-1}
            const int index = k - 1;
            if (index <= pmax)
                out[index] = current;
            if (index > 0 && index % 2 == 0)
                even_sum += 2.0 * current;
            if (std::abs(current) > kBig) {
                current /= kBig;
                above /= kBig;
                even_sum /= kBig;
                for (int j = index; j <= pmax; ++j)
                    out[j] /= kBig;
            }
        }
        const double norm = current + even_sum;
        for (auto& v : out)
            v /= norm;
    }
    if (x < 0.0)
        for (int p = 1; p <= pmax; p += 2)
            out[p] = -out[p];
    return out;
}

double bessel_j(int p, double x)
{
    if (std::abs(p) > kMaxOrder || !(std::abs(x) <= kMaxArgument))
        throw PreconditionError("bessel_j: requires |p| <= 200 and |x| <= 500");
    const int n = std::abs(p);
    const double value = bessel_j_sequence(n, x)[n];
    // J_{-n} = (-1)^n J_n
    return (p < 0 && n % 2 == 1) ? -value : value;
}

namespace {

// Real part of the exponent -x cosh(s + i phi) + order (s + i phi).
double log_magnitude(double s, double x, double phi, Complex order)
{
    return -x * std::cos(phi) * std::cosh(s) + order.real() * s - order.imag() * phi;
}

} // namespace

Complex bessel_k(Complex order, double x)
{
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("bessel_k: requires x > 0");
    if (!(std::abs(order.imag()) <= 100.0) || !std::isfinite(order.real()))
        throw PreconditionError("bessel_k: requires |Im order| <= 100");

    // Shift the path to Im t = phi, level with the saddle point sinh t0 = order / x,
    // so the oscillation that would cancel down to the small result is mostly removed.
    // |phi| stays below pi/2 - 1/|mu| so that cos(phi) keeps the path decaying.
    const double mu = order.imag();
    const double saddle = std::abs(std::asinh(order / x).imag());
    const double limit = std::max(0.0, std::numbers::pi / 2 - 1.0 / std::abs(mu));
    const double phi = std::copysign(std::min(saddle, limit), mu);
    const double xc = x * std::cos(phi);
    const double peak = std::asinh(order.real() / xc);
    const double top = log_magnitude(peak, x, phi, order);
    constexpr double kDrop = 52.0; // e^-52 ~ 2.6e-23 relative to the largest term

    auto edge = [&](double direction) {
        double step = 1.0;
        double s = peak;
        while (log_magnitude(s + direction * step, x, phi, order) > top - kDrop)
            step *= 2.0;
        double lo = s;
        double hi = s + direction * step;
        for (int i = 0; i < 60; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (log_magnitude(mid, x, phi, order) > top - kDrop)
                lo = mid;
            else
                hi = mid;
        }
        return hi;
    };
    const double s_lo = edge(-1.0);
    const double s_hi = edge(+1.0);

    const Complex shift(0.0, phi);
    auto integrand = [&](double s) {
        const Complex t = Complex(s, 0.0) + shift;
        return std::exp(-x * std::cosh(t) + order * t);
    };

    // Fastest phase rotation on the path bounds the initial step.
    const double rate = x * std::abs(std::sin(phi)) *
                            std::max(std::abs(std::sinh(s_lo)), std::abs(std::sinh(s_hi))) +
                        std::abs(mu);
    double h = std::min(0.5, std::numbers::pi / (2.0 * std::max(rate, 1e-300)));

    auto sum_grid = [&](double step, long first, long last, long stride) {
        Complex sum{};
        for (long k = first; k <= last; k += stride)
            sum += integrand(peak + static_cast<double>(k) * step);
        return sum;
    };

    long k_lo = static_cast<long>(std::floor((s_lo - peak) / h));
    long k_hi = static_cast<long>(std::ceil((s_hi - peak) / h));
    Complex total = h * sum_grid(h, k_lo, k_hi, 1);
    int agreements = 0;
    constexpr long kMaxNodes = 1L << 24;
    while (true) {
        // Halve the step: new nodes are the odd multiples of h/2.
        const double half = 0.5 * h;
        const long first = 2 * k_lo + 1;
        const long last = 2 * k_hi - 1;
        const Complex refined = 0.5 * total + half * sum_grid(half, first, last, 2);
        const double change = std::abs(refined - total);
        h = half;
        k_lo *= 2;
        k_hi *= 2;
        total = refined;
        if (change <= 1e-13 * std::abs(total)) {
            if (++agreements == 2)
                break;
        } else {
            agreements = 0;
        }
        if (k_hi - k_lo > kMaxNodes)
            throw ConvergenceError("bessel_k: trapezoidal sum did not converge");
    }

    const Complex value = 0.5 * total;
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw DomainError("bessel_k: result not representable");
    return value;
}

} // namespace accelrad::specfun
