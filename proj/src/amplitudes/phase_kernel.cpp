#include "phase_kernel.hpp"

#include "accelrad/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace accelrad::amplitudes::detail {

Complex unit_phase(long double x)
{
    const long double reduced = std::remainder(x, 2.0L * std::numbers::pi_v<long double>);
    return std::polar(1.0, static_cast<double>(reduced));
}

namespace {

// Largest |rate| seen at the ends and midpoint of [x, x + width].
double sampled_rate(const PhaseKernel& k, double x, double width)
{
    return std::max({std::abs(k.rate(x)), std::abs(k.rate(x + 0.5 * width)),
                     std::abs(k.rate(x + width))});
}

std::vector<double> chunk_edges(const PhaseKernel& k, double a, double b)
{
    std::vector<double> edges{a};
    double x = a;
    while (x < b) {
        double width = b - x;
        for (int pass = 0; pass < 4; ++pass) {
            const double rate = sampled_rate(k, x, width);
            if (rate * width <= kChunkPhase)
                break;
            width = kChunkPhase / rate;
        }
        x = (b - x <= width * 1.0000001) ? b : x + width;
        edges.push_back(x);
    }
    return edges;
}

} // namespace

specfun::QuadratureResult integrate_phase_kernel(const PhaseKernel& kernel, double a, double b,
                                                 const specfun::QuadratureSpec& spec)
{
    specfun::QuadratureResult total;
    total.status = specfun::QuadratureStatus::converged;
    if (a == b)
        return total;

    const std::vector<double> edges = chunk_edges(kernel, a, b);
    bool exhausted = false;
    for (std::size_t c = 0; c + 1 < edges.size(); ++c) {
        const double origin = edges[c];
        const long double phase0 = kernel.phase(origin);
        auto local = [&](double s) {
            return kernel.envelope(origin + s) * std::polar(1.0, kernel.increment(origin, s));
        };
        auto local_rate = [&](double s) { return kernel.rate(origin + s); };
        const auto part = specfun::oscillatory_quadrature(local, 0.0, edges[c + 1] - edges[c], spec,
                                                          local_rate);
        total.value += unit_phase(phase0) * part.value;
        total.error += part.error;
        total.panels += part.panels;
        total.evaluations += part.evaluations;
        exhausted = exhausted || part.status == specfun::QuadratureStatus::budget_exhausted;
    }

    if (total.error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total.value)))
        total.status = specfun::QuadratureStatus::converged;
    else if (exhausted)
        total.status = specfun::QuadratureStatus::budget_exhausted;
    else
        total.status = specfun::QuadratureStatus::roundoff_limited;
    return total;
}

} // namespace accelrad::amplitudes::detail
