#include "accelrad/cli.hpp"

#include "accelrad/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace accelrad::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Per-row outcome gathered before the table is assembled in row order.
struct RowOutcome {
    std::vector<double> values;
    std::string warning;
    bool failed = false;
};

ScanResult assemble(std::vector<std::string> header, std::vector<RowOutcome>& rows)
{
    ScanResult result;
    result.table.header = std::move(header);
    for (auto& r : rows) {
        result.table.rows.push_back(std::move(r.values));
        if (r.failed)
            ++result.failed_rows;
        if (!r.warning.empty())
            result.warnings.push_back(std::move(r.warning));
    }
    return result;
}

std::string row_label(double nu)
{
    return "nu = " + format_double(nu) + ": ";
}

} // namespace

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++)
                f(i);
        });
    }
    for (auto& th : pool)
        th.join();
}

std::vector<double> frequency_grid(double lo, double hi, int points, bool log_grid)
{
    if (points < 2)
        throw PreconditionError("frequency_grid: requires at least 2 points");
    if (log_grid && !(lo > 0.0))
        throw PreconditionError("frequency_grid: a log grid needs a positive lower end");
    std::vector<double> grid(static_cast<std::size_t>(points));
    const double last = points - 1;
    for (int i = 0; i < points; ++i) {
        const double s = i / last;
        grid[static_cast<std::size_t>(i)] =
            log_grid ? lo * std::pow(hi / lo, s) : lo + (hi - lo) * s;
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

void ScanConfig::validate() const
{
    if (!(omega_over_alpha > 0.0))
        throw PreconditionError("scan: omega/alpha must be positive");
    if (!(nu_min > 0.0) || !(nu_min < nu_max) || !std::isfinite(nu_max))
        throw PreconditionError("scan: requires 0 < nu_min < nu_max");
    if (points < 2)
        throw PreconditionError("scan: requires at least 2 points");
    if (!(tau_i <= tau_e) || !std::isfinite(tau_i) || !std::isfinite(tau_e))
        throw PreconditionError("scan: requires tau_i <= tau_e");
    if (direction == trajectory::Propagation::oblique)
        throw PreconditionError("scan: direction must be co or counter (use `angular` for oblique modes)");
}

ScanResult run_scan(const ScanConfig& cfg)
{
    cfg.validate();
    const auto grid = frequency_grid(cfg.nu_min, cfg.nu_max, cfg.points, cfg.log_grid);
    const amplitudes::AtomFieldParams p{cfg.omega_over_alpha, 1.0, 1.0};
    const auto window = cfg.backend == amplitudes::Backend::free_space
                            ? amplitudes::FlightWindow::whole_line()
                            : amplitudes::FlightWindow::finite(cfg.tau_i, cfg.tau_e);

    std::vector<RowOutcome> rows(grid.size());
    parallel_for(grid.size(), cfg.threads, [&](std::size_t i) {
        const double nu = grid[i];
        RowOutcome& out = rows[i];
        try {
            const trajectory::ModeGeometry m{nu, cfg.direction,
                                             cfg.direction == trajectory::Propagation::co ? 1.0 : -1.0};
            const auto r = amplitudes::amplitude(p, window, m, cfg.backend);
            out.values = {nu, r.absorption_rate(), r.emission_rate(), r.ratio()};
            if (r.flags.unconverged)
                out.warning = row_label(nu) + "quadrature did not converge";
            else if (cfg.backend == amplitudes::Backend::stationary_phase && r.flags.weak_asymptotics)
                out.warning = row_label(nu) + "nu or omega below 5 alpha, asymptotics are weak";
        } catch (const std::exception& e) {
            out.values = {nu, kNaN, kNaN, kNaN};
            out.failed = true;
            out.warning = row_label(nu) + e.what();
        }
    });
    return assemble(kScanHeader, rows);
}

void ParametricScanConfig::validate() const
{
    if (!(nu_min > 0.0) || !(nu_min < nu_max) || !std::isfinite(nu_max))
        throw PreconditionError("parametric: requires 0 < nu_min < nu_max");
    if (points < 2)
        throw PreconditionError("parametric: requires at least 2 points");
}

ScanResult run_parametric_scan(const ParametricScanConfig& cfg)
{
    cfg.validate();
    const auto grid = frequency_grid(cfg.nu_min, cfg.nu_max, cfg.points, false);
    const amplitudes::AtomFieldParams p{cfg.omega, cfg.g, 0.0};
    std::vector<RowOutcome> rows(grid.size());
    parallel_for(grid.size(), cfg.threads, [&](std::size_t i) {
        const double nu = grid[i];
        try {
            const auto r = amplitudes::parametric_rates(p, nu, cfg.omega0, cfg.kzA, cfg.gamma, cfg.P_max);
            rows[i].values = {nu, r.rates.R1, r.rates.R2, r.rates.R2 / r.rates.R1};
        } catch (const std::exception& e) {
            rows[i].values = {nu, kNaN, kNaN, kNaN};
            rows[i].failed = true;
            rows[i].warning = row_label(nu) + e.what();
        }
    });
    return assemble({"nu", "R1", "R2", "ratio"}, rows);
}

} // namespace accelrad::cli
