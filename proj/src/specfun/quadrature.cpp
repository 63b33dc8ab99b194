#include "accelrad/specfun.hpp"

#include "accelrad/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace accelrad::specfun {

void QuadratureSpec::validate() const
{
    if (!(rel_tol > 0.0))
        throw PreconditionError("QuadratureSpec: rel_tol must be positive");
    if (!(abs_tol >= 0.0))
        throw PreconditionError("QuadratureSpec: abs_tol must be non-negative");
    if (max_subdivisions < 1)
        throw PreconditionError("QuadratureSpec: max_subdivisions must be at least 1");
}

namespace {

// Kronrod 15-point abscissae; odd indices (1, 3, 5) and 7 are the Gauss 7-point nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
    double a = 0.0;
    double b = 0.0;
    Complex value;
    double error = 0.0;
    double floor = 0.0; // roundoff floor of this panel's estimate

    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel kronrod15(const ComplexIntegrand& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<Complex, 15> fx;
    fx[7] = f(center);
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kNodes[j];
        fx[j] = f(center - dx);
        fx[14 - j] = f(center + dx);
    }

    Complex kronrod = kKronrodWeights[7] * fx[7];
    Complex gauss = kGaussWeights[3] * fx[7];
    double resabs = kKronrodWeights[7] * std::abs(fx[7]);
    for (std::size_t j = 0; j < 7; ++j) {
        const Complex pair = fx[j] + fx[14 - j];
        kronrod += kKronrodWeights[j] * pair;
        resabs += kKronrodWeights[j] * (std::abs(fx[j]) + std::abs(fx[14 - j]));
        if (j % 2 == 1)
            gauss += kGaussWeights[j / 2] * pair;
    }
    const Complex mean = 0.5 * kronrod;
    double resasc = kKronrodWeights[7] * std::abs(fx[7] - mean);
    for (std::size_t j = 0; j < 7; ++j)
        resasc += kKronrodWeights[j] * (std::abs(fx[j] - mean) + std::abs(fx[14 - j] - mean));

    const double width = std::abs(half);
    Panel p;
    p.a = a;
    p.b = b;
    p.value = kronrod * half;
    resabs *= width;
    resasc *= width;
    double err = std::abs((kronrod - gauss) * half);
    // QUADPACK's scaling of |K - G|: the Kronrod value is far more accurate
    // than the Gauss-Kronrod difference suggests once the panel is resolved.
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    p.floor = 50.0 * kEps * resabs;
    p.error = std::max(err, p.floor);
    if (!std::isfinite(p.value.real()) || !std::isfinite(p.value.imag()))
        throw DomainError("oscillatory_quadrature: integrand is not finite on the interval");
    return p;
}

} // namespace

QuadratureResult oscillatory_quadrature(const ComplexIntegrand& f, double a, double b,
                                        const QuadratureSpec& spec, const PhaseRate& phase_rate)
{
    spec.validate();
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw PreconditionError("oscillatory_quadrature: requires finite a < b");

    std::vector<Panel> panels;
    std::size_t evaluations = 0;

    // Starting partition: panels no wider than one local period.
    if (phase_rate) {
        double x = a;
        while (x < b) {
            double width = b - x;
            for (int pass = 0; pass < 3; ++pass) {
                const double rate =
                    std::max(std::abs(phase_rate(x)), std::abs(phase_rate(std::min(b, x + width))));
                if (rate > 0.0)
                    width = std::min(width, 2.0 * std::numbers::pi / rate);
            }
            const double next = (b - x <= width * 1.0000001) ? b : x + width;
            if (!(next > x))
                break;
            panels.push_back(kronrod15(f, x, next));
            evaluations += 15;
            x = next;
            if (panels.size() >= spec.max_subdivisions) {
                if (x < b) {
                    panels.push_back(kronrod15(f, x, b));
                    evaluations += 15;
                }
                break;
            }
        }
    } else {
        panels.push_back(kronrod15(f, a, b));
        evaluations += 15;
    }

    // Max-heap on the error estimate, kept in a plain vector so the running
    // sums can be rebuilt with a linear pass.
    std::vector<Panel> heap = std::move(panels);
    std::make_heap(heap.begin(), heap.end());
    std::vector<Panel> finished; // panels too narrow to split further

    Complex value{};
    double error = 0.0;
    double floor = 0.0;
    auto resum = [&] {
        value = {};
        error = 0.0;
        floor = 0.0;
        for (const auto* set : {&heap, &finished})
            for (const auto& p : *set) {
                value += p.value;
                error += p.error;
                floor += p.floor;
            }
    };
    resum();

    auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(value)); };

    std::size_t since_resum = 0;
    while (!heap.empty() && error > tolerance() && error > 2.0 * floor &&
           heap.size() + finished.size() < spec.max_subdivisions) {
        std::pop_heap(heap.begin(), heap.end());
        const Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) ||
            (worst.b - worst.a) < 1e3 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
            finished.push_back(worst);
            continue;
        }
        const Panel left = kronrod15(f, worst.a, mid);
        const Panel right = kronrod15(f, mid, worst.b);
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        floor += left.floor + right.floor - worst.floor;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());

        // The running sums drift; rebuild them periodically and before stopping.
        if (++since_resum >= 8192 || error <= tolerance() || error <= 2.0 * floor) {
            since_resum = 0;
            resum();
        }
    }

    QuadratureResult result;
    result.value = value;
    result.error = error;
    result.panels = heap.size() + finished.size();
    result.evaluations = evaluations;
    if (error <= tolerance())
        result.status = QuadratureStatus::converged;
    else if (error <= 2.0 * floor)
        result.status = QuadratureStatus::roundoff_limited;
    else
        result.status = QuadratureStatus::budget_exhausted;
    return result;
}

} // namespace accelrad::specfun
