#pragma once

// Building blocks of the accelrad command-line tool: frequency scans, CSV
// tables, SVG line plots and the steady-state report. All quantities are
// dimensionless: frequencies and times in units of alpha (or of omega for
// unaccelerated atoms).

#include "accelrad/amplitudes.hpp"
#include "accelrad/field_dynamics.hpp"

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace accelrad::cli {

/// Malformed CSV input; the message carries the 1-based line number.
class CsvError : public std::runtime_error {
public:
    CsvError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Index of `name` in the header; throws PreconditionError if absent.
    std::size_t column(const std::string& name) const;
};

/// Decimal text of a double that parses back to the same value (%.17g);
/// non-finite values print as nan, inf, -inf.
std::string format_double(double x);

/// Header line, then one line per row, every line terminated by '\n'.
void write_csv(std::ostream& out, const CsvTable& table);
/// Throws CsvError on an empty input, a non-numeric field or a row whose
/// width differs from the header.
CsvTable read_csv(std::istream& in);

// ---------------------------------------------------------------------------
// Scans

struct ScanConfig {
    double omega_over_alpha = 3.0;
    double nu_min = 0.5;
    double nu_max = 60.0;
    int points = 200;
    trajectory::Propagation direction = trajectory::Propagation::co;
    double tau_i = 0.0; ///< alpha tau_i
    double tau_e = 10.0; ///< alpha tau_e
    amplitudes::Backend backend = amplitudes::Backend::quadrature;
    bool log_grid = false;
    unsigned threads = 0; ///< 0: hardware concurrency

    /// Throws PreconditionError unless 0 < nu_min < nu_max, points >= 2,
    /// tau_i <= tau_e, direction is co or counter, and omega > 0.
    void validate() const;
};

/// Grid of `points` values from lo to hi, uniform or geometric; the ends are exact.
std::vector<double> frequency_grid(double lo, double hi, int points, bool log_grid);

/// Outcome of a scan over one frequency axis.
struct ScanResult {
    CsvTable table;
    std::size_t failed_rows = 0;
    std::vector<std::string> warnings; ///< one entry per row with a problem, in row order
};

/// Header names of a scan table.
inline const std::vector<std::string> kScanHeader{"nu_over_alpha", "abs_rate", "emi_rate", "ratio"};

/// |I_a|^2, |I_e|^2 and |I_e/I_a|^2 at every grid point, alpha = 1.
///
/// Rows are computed concurrently and stored by index, so the table does not
/// depend on the thread count. A row whose evaluation throws is filled with
/// NaN and counted in failed_rows.
ScanResult run_scan(const ScanConfig& cfg);

struct ParametricScanConfig {
    double omega = 1.0;
    double g = 1.0;
    double nu_min = 0.1;
    double nu_max = 5.0;
    int points = 500;
    double omega0 = 1.0;
    double kzA = 2.0;
    double gamma = 0.02;
    int P_max = 30;
    unsigned threads = 0;

    void validate() const;
};

/// Columns nu, R1, R2, ratio.
ScanResult run_parametric_scan(const ParametricScanConfig& cfg);

/// Applies f to every index in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f);

// ---------------------------------------------------------------------------
// Plots

struct PlotOptions {
    std::string x_column;            ///< empty: first column
    std::vector<std::string> columns; ///< empty: every column except x
    bool log_x = false;
    bool log_y = false;
    int width = 800;
    int height = 500;
    std::string title;
};

/// Standalone SVG 1.1 document with one polyline per column.
///
/// Output depends only on the table and options (fixed-precision
/// coordinates, no timestamps). Non-finite points, and non-positive ones on
/// a log axis, break the polyline. Without usable data only the axes are
/// drawn. Throws PreconditionError for an unknown column.
std::string render_svg(const CsvTable& table, const PlotOptions& options);

// ---------------------------------------------------------------------------
// Steady-state report

/// Ordered key/value pairs of a report.
using Report = std::vector<std::pair<std::string, std::string>>;

/// q, nbar, hbar nu / kT = ln((R1 + kappa)/R2) and rho_0..rho_9, or
/// steady_state = none with the growth rate R2 - R1 - kappa.
Report steady_state_report(const RateSet& rates);

/// `key=value` lines.
std::string format_key_value(const Report& report);
/// A flat JSON object; values that parse as numbers are emitted as numbers.
std::string format_json(const Report& report);

} // namespace accelrad::cli
