// accelrad: command-line front end.
//
// Exit status: 0 on success, 1 when a computation or I/O step fails (for
// scans: when any row failed), 2 for invalid command-line or config input.

#include "accelrad/amplitudes.hpp"
#include "accelrad/cli.hpp"
#include "accelrad/errors.hpp"
#include "accelrad/field_dynamics.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace accelrad;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr std::size_t kMaxWarningsShown = 10;

const std::map<std::string, trajectory::Propagation> kDirections{
    {"co", trajectory::Propagation::co},
    {"counter", trajectory::Propagation::counter},
};

const std::map<std::string, amplitudes::Backend> kBackends{
    {"quadrature", amplitudes::Backend::quadrature},
    {"incomplete-gamma", amplitudes::Backend::incomplete_gamma},
    {"stationary-phase", amplitudes::Backend::stationary_phase},
    {"free-space", amplitudes::Backend::free_space},
};

const std::map<std::string, amplitudes::AngularBackend> kAngularBackends{
    {"quadrature", amplitudes::AngularBackend::quadrature},
    {"closed-form", amplitudes::AngularBackend::infinite_closed_form},
};

// Raised for bad config files; reported like a command-line error.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Destination opened before any computation, so an unwritable path fails fast.
class Output {
public:
    explicit Output(const std::string& path) : path_(path)
    {
        if (path_ == "-")
            return;
        file_.open(path_, std::ios::binary);
        if (!file_)
            throw std::runtime_error("cannot open '" + path_ + "' for writing");
    }

    void write(const std::string& text)
    {
        std::ostream& out = path_ == "-" ? std::cout : file_;
        out << text;
        out.flush();
        if (!out)
            throw std::runtime_error("failed writing '" + path_ + "'");
    }

private:
    std::string path_;
    std::ofstream file_;
};

std::string csv_text(const cli::CsvTable& table)
{
    std::ostringstream s;
    cli::write_csv(s, table);
    return s.str();
}

int report_scan(const std::string& name, const cli::ScanResult& result)
{
    const std::size_t rows = result.table.rows.size();
    if (!result.warnings.empty()) {
        std::cerr << name << ": " << result.failed_rows << " of " << rows << " rows failed, "
                  << result.warnings.size() << " rows with warnings\n";
        for (std::size_t i = 0; i < std::min(kMaxWarningsShown, result.warnings.size()); ++i)
            std::cerr << "  " << result.warnings[i] << '\n';
        if (result.warnings.size() > kMaxWarningsShown)
            std::cerr << "  ... " << result.warnings.size() - kMaxWarningsShown << " more\n";
    }
    return result.failed_rows == 0 ? 0 : kExitFailure;
}

void print_report(const cli::Report& report, bool json)
{
    std::cout << (json ? cli::format_json(report) : cli::format_key_value(report));
}

// Command-line arguments with the entries of any `--config FILE` spliced in
// front of the subcommand's own flags, so that flags take precedence.
std::vector<std::string> expand_config(CLI::App& app, const std::vector<std::string>& argv)
{
    if (argv.empty())
        return argv;
    CLI::App* sub = nullptr;
    try {
        sub = app.get_subcommand(argv.front());
    } catch (const CLI::OptionNotFound&) {
        return argv;
    }
    std::vector<std::string> rest(argv.begin() + 1, argv.end());
    std::optional<std::string> path;
    for (std::size_t i = 0; i < rest.size(); ++i) {
        if (rest[i] == "--config" && i + 1 < rest.size()) {
            path = rest[i + 1];
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i),
                       rest.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (rest[i].rfind("--config=", 0) == 0) {
            path = rest[i].substr(9);
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (!path)
        return argv;

    std::ifstream in(*path);
    if (!in)
        throw UsageError("cannot read config file '" + *path + "'");
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigINI().from_config(in);
    } catch (const CLI::ParseError& e) {
        throw UsageError("config file '" + *path + "': " + e.what());
    }

    std::vector<std::string> out{argv.front()};
    for (const auto& item : items) {
        if (item.name == "++" || item.name == "--" || item.name.empty())
            continue; // section markers
        if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == argv.front()))
            throw UsageError("config file '" + *path + "': unexpected section for '" + item.name + "'");
        const CLI::Option* opt = sub->get_option_no_throw("--" + item.name);
        if (opt == nullptr || item.name == "config")
            throw UsageError("config file '" + *path + "': unknown key '" + item.name + "'");
        if (opt->get_expected_min() == 0) {
            const std::string v = item.inputs.empty() ? "true" : item.inputs.front();
            if (v == "true" || v == "1" || v == "on" || v == "yes")
                out.push_back("--" + item.name);
            else if (!(v == "false" || v == "0" || v == "off" || v == "no"))
                throw UsageError("config file '" + *path + "': '" + item.name + "' expects true or false");
            continue;
        }
        out.push_back("--" + item.name);
        for (const auto& v : item.inputs)
            out.push_back(v);
    }
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

void add_config_option(CLI::App* sub)
{
    // Consumed by expand_config before parsing; registered so it shows in --help.
    sub->add_option("--config", "File of `key = value` lines (# comments); flags override it");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Emission and absorption by accelerated two-level atoms in a cavity.\n"
                 "All quantities are dimensionless: frequencies and proper times are in units\n"
                 "of the acceleration frequency alpha = a/c (of omega for unaccelerated atoms)."};
    app.name("accelrad");
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    // scan ------------------------------------------------------------------
    cli::ScanConfig scan;
    std::string scan_out = "-";
    auto* scan_cmd = app.add_subcommand("scan", "Absorption/emission rates over a grid of nu/alpha (CSV)");
    scan_cmd->add_option("--omega", scan.omega_over_alpha, "Atomic frequency omega/alpha")->capture_default_str();
    scan_cmd->add_option("--nu-min", scan.nu_min, "Lowest field frequency nu/alpha")->capture_default_str();
    scan_cmd->add_option("--nu-max", scan.nu_max, "Highest field frequency nu/alpha")->capture_default_str();
    scan_cmd->add_option("--points", scan.points, "Number of grid points (>= 2)")->capture_default_str();
    scan_cmd->add_option("--direction", scan.direction, "Mode direction relative to the acceleration")
        ->transform(CLI::CheckedTransformer(kDirections))
        ->default_str("co");
    scan_cmd->add_option("--tau-i", scan.tau_i, "Cavity entry alpha*tau_i")->capture_default_str();
    scan_cmd->add_option("--tau-e", scan.tau_e, "Cavity exit alpha*tau_e")->capture_default_str();
    scan_cmd->add_option("--backend", scan.backend, "Evaluation method")
        ->transform(CLI::CheckedTransformer(kBackends))
        ->default_str("quadrature");
    scan_cmd->add_flag("--log", scan.log_grid, "Geometric instead of uniform grid");
    scan_cmd->add_option("--threads", scan.threads, "Worker threads (0: all cores)")->capture_default_str();
    scan_cmd->add_option("-o,--output", scan_out, "CSV path, - for stdout")->capture_default_str();
    add_config_option(scan_cmd);

    // steady-state ----------------------------------------------------------
    std::optional<double> ss_R1;
    std::optional<double> ss_R2;
    double ss_kappa = 0.0;
    double ss_r = 1.0;
    double ss_g = 1.0;
    double ss_omega = 3.0;
    double ss_nu = 50.0;
    trajectory::Propagation ss_direction = trajectory::Propagation::co;
    double ss_tau_i = 0.0;
    double ss_tau_e = 10.0;
    amplitudes::Backend ss_backend = amplitudes::Backend::quadrature;
    bool ss_json = false;
    auto* ss_cmd = app.add_subcommand(
        "steady-state", "Thermal steady state of the cavity field from explicit rates or a scan point");
    auto* opt_R1 = ss_cmd->add_option("--R1", ss_R1, "Absorption coefficient (with --R2)");
    auto* opt_R2 = ss_cmd->add_option("--R2", ss_R2, "Emission coefficient (with --R1)");
    opt_R1->needs(opt_R2);
    opt_R2->needs(opt_R1);
    ss_cmd->add_option("--kappa", ss_kappa, "Cavity loss rate")->capture_default_str();
    ss_cmd->add_option("--r", ss_r, "Atom injection rate (scan-point mode)")->capture_default_str();
    ss_cmd->add_option("--g", ss_g, "Coupling constant (scan-point mode)")->capture_default_str();
    ss_cmd->add_option("--omega", ss_omega, "omega/alpha (scan-point mode)")->capture_default_str();
    ss_cmd->add_option("--nu", ss_nu, "nu/alpha (scan-point mode)")->capture_default_str();
    ss_cmd->add_option("--direction", ss_direction, "co or counter (scan-point mode)")
        ->transform(CLI::CheckedTransformer(kDirections))
        ->default_str("co");
    ss_cmd->add_option("--tau-i", ss_tau_i, "alpha*tau_i (scan-point mode)")->capture_default_str();
    ss_cmd->add_option("--tau-e", ss_tau_e, "alpha*tau_e (scan-point mode)")->capture_default_str();
    ss_cmd->add_option("--backend", ss_backend, "Evaluation method; free-space uses the whole worldline")
        ->transform(CLI::CheckedTransformer(kBackends))
        ->default_str("quadrature");
    ss_cmd->add_flag("--json", ss_json, "JSON object instead of key=value lines");
    add_config_option(ss_cmd);

    // angular ---------------------------------------------------------------
    double an_omega = 2.0;
    double an_nu = 4.0;
    double an_kz = 0.5;
    double an_tau_i = 0.0;
    double an_tau_e = 10.0;
    bool an_infinite = false;
    amplitudes::AngularBackend an_backend = amplitudes::AngularBackend::quadrature;
    bool an_json = false;
    auto* an_cmd = app.add_subcommand("angular", "Amplitudes for an obliquely propagating mode");
    an_cmd->add_option("--omega", an_omega, "omega/alpha")->capture_default_str();
    an_cmd->add_option("--nu", an_nu, "nu/alpha")->capture_default_str();
    an_cmd->add_option("--kz", an_kz, "k_z/k in [-1, 1]")->capture_default_str();
    an_cmd->add_option("--tau-i", an_tau_i, "alpha*tau_i")->capture_default_str();
    an_cmd->add_option("--tau-e", an_tau_e, "alpha*tau_e")->capture_default_str();
    an_cmd->add_flag("--infinite", an_infinite, "Whole worldline instead of a cavity window");
    an_cmd->add_option("--backend", an_backend, "quadrature or closed-form (infinite window only)")
        ->transform(CLI::CheckedTransformer(kAngularBackends))
        ->default_str("quadrature");
    an_cmd->add_flag("--json", an_json, "JSON object instead of key=value lines");
    add_config_option(an_cmd);

    // constant-velocity -----------------------------------------------------
    double cv_omega = 1.0;
    double cv_nu = 1.5;
    double cv_v = 0.0;
    double cv_T = 1.0;
    double cv_g = 1.0;
    trajectory::Propagation cv_direction = trajectory::Propagation::co;
    std::optional<double> cv_kv;
    int cv_n1 = 0;
    int cv_n2 = -1;
    std::optional<double> cv_speed;
    double cv_length = 1.0;
    bool cv_json = false;
    auto* cv_cmd = app.add_subcommand(
        "constant-velocity", "Rates for an atom crossing the cavity at constant velocity (units of omega)");
    cv_cmd->add_option("--omega", cv_omega, "Atomic frequency")->capture_default_str();
    cv_cmd->add_option("--nu", cv_nu, "Field frequency")->capture_default_str();
    cv_cmd->add_option("--v", cv_v, "Velocity v/c")->capture_default_str();
    cv_cmd->add_option("--T", cv_T, "Time of flight")->capture_default_str();
    cv_cmd->add_option("--g", cv_g, "Coupling constant")->capture_default_str();
    cv_cmd->add_option("--direction", cv_direction, "co or counter")
        ->transform(CLI::CheckedTransformer(kDirections))
        ->default_str("co");
    auto* opt_kv = cv_cmd->add_option("--kv", cv_kv,
                                      "Doppler term k.v: tune T from n1, n2 and use nu' = nu - kv");
    cv_cmd->add_option("--n1", cv_n1, "Tuning integer n1")->capture_default_str()->needs(opt_kv);
    cv_cmd->add_option("--n2", cv_n2, "Tuning integer n2")->capture_default_str()->needs(opt_kv);
    cv_cmd->add_option("--speed", cv_speed, "Beam speed in m/s: also report the monochromaticity bound");
    cv_cmd->add_option("--length", cv_length, "Cavity length in wavelengths L/lambda")->capture_default_str();
    cv_cmd->add_flag("--json", cv_json, "JSON object instead of key=value lines");
    add_config_option(cv_cmd);

    // parametric ------------------------------------------------------------
    cli::ParametricScanConfig par;
    std::string par_out = "-";
    auto* par_cmd = app.add_subcommand(
        "parametric", "Rates for an oscillating atom over a grid of nu (units of omega, CSV)");
    par_cmd->add_option("--omega", par.omega, "Atomic frequency")->capture_default_str();
    par_cmd->add_option("--g", par.g, "Coupling constant")->capture_default_str();
    par_cmd->add_option("--nu-min", par.nu_min, "Lowest field frequency")->capture_default_str();
    par_cmd->add_option("--nu-max", par.nu_max, "Highest field frequency")->capture_default_str();
    par_cmd->add_option("--points", par.points, "Number of grid points")->capture_default_str();
    par_cmd->add_option("--omega0", par.omega0, "Oscillation frequency omega0")->capture_default_str();
    par_cmd->add_option("--kza", par.kzA, "Modulation depth k_z A")->capture_default_str();
    par_cmd->add_option("--gamma", par.gamma, "Decay rate gamma (> 0)")->capture_default_str();
    par_cmd->add_option("--pmax", par.P_max, "Initial truncation P (>= kzA + 20)")->capture_default_str();
    par_cmd->add_option("--threads", par.threads, "Worker threads (0: all cores)")->capture_default_str();
    par_cmd->add_option("-o,--output", par_out, "CSV path, - for stdout")->capture_default_str();
    add_config_option(par_cmd);

    // plot ------------------------------------------------------------------
    std::string plot_in;
    std::string plot_out;
    cli::PlotOptions plot;
    auto* plot_cmd = app.add_subcommand("plot", "Render CSV columns as an SVG line plot");
    plot_cmd->add_option("-i,--input", plot_in, "CSV file")->required();
    plot_cmd->add_option("-o,--output", plot_out, "SVG path, - for stdout")->required();
    plot_cmd->add_option("--x", plot.x_column, "x column (default: first)");
    plot_cmd->add_option("--columns", plot.columns, "y columns (default: all others)")->delimiter(',');
    plot_cmd->add_flag("--log-x", plot.log_x, "Logarithmic x axis");
    plot_cmd->add_flag("--log-y", plot.log_y, "Logarithmic y axis");
    plot_cmd->add_option("--title", plot.title, "Plot title");
    plot_cmd->add_option("--width", plot.width, "Width in pixels")->capture_default_str();
    plot_cmd->add_option("--height", plot.height, "Height in pixels")->capture_default_str();
    add_config_option(plot_cmd);

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config(app, args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (scan_cmd->parsed()) {
            Output out(scan_out);
            const auto result = cli::run_scan(scan);
            out.write(csv_text(result.table));
            return report_scan("scan", result);
        }
        if (ss_cmd->parsed()) {
            RateSet rates;
            cli::Report head;
            if (ss_R1) {
                rates.R1 = *ss_R1;
                rates.R2 = *ss_R2;
                head.emplace_back("source", "explicit");
            } else {
                const amplitudes::AtomFieldParams p{ss_omega, 1.0, 1.0};
                const auto w = ss_backend == amplitudes::Backend::free_space
                                   ? amplitudes::FlightWindow::whole_line()
                                   : amplitudes::FlightWindow::finite(ss_tau_i, ss_tau_e);
                const trajectory::ModeGeometry m{
                    ss_nu, ss_direction, ss_direction == trajectory::Propagation::co ? 1.0 : -1.0};
                const auto result = amplitudes::amplitude(p, w, m, ss_backend);
                rates = field::rates_from_amplitudes(ss_r, ss_g, result);
                head.emplace_back("source", amplitudes::to_string(ss_backend));
                head.emplace_back("omega_over_alpha", cli::format_double(ss_omega));
                head.emplace_back("nu_over_alpha", cli::format_double(ss_nu));
            }
            rates.kappa_loss = ss_kappa;
            auto report = cli::steady_state_report(rates);
            head.insert(head.end(), report.begin(), report.end());
            print_report(head, ss_json);
            return 0;
        }
        if (an_cmd->parsed()) {
            const amplitudes::AtomFieldParams p{an_omega, 1.0, 1.0};
            const auto w = an_infinite ? amplitudes::FlightWindow::whole_line()
                                       : amplitudes::FlightWindow::finite(an_tau_i, an_tau_e);
            const auto r = amplitudes::angular_amplitude(p, w, an_nu, an_kz, an_backend);
            cli::Report report{
                {"backend", amplitudes::to_string(r.backend)},
                {"abs_rate", cli::format_double(r.absorption_rate())},
                {"emi_rate", cli::format_double(r.emission_rate())},
                {"ratio", cli::format_double(r.ratio())},
                {"err_estimate", cli::format_double(r.err_estimate)},
            };
            const double kappa = an_nu * std::sqrt((1.0 - an_kz) * (1.0 + an_kz));
            if (an_infinite) {
                report.emplace_back("unruh_ratio", cli::format_double(amplitudes::ratio_free_space(an_omega)));
                report.emplace_back("modulus_factor",
                                    cli::format_double(amplitudes::angular_modulus_factor(an_omega, kappa)));
            } else {
                try {
                    const auto est = amplitudes::angular_stationary_ratio(p, an_nu, an_kz, w);
                    report.emplace_back("stationary_ratio", cli::format_double(est.ratio));
                    report.emplace_back("stationary_points", std::to_string(est.stationary_points));
                    report.emplace_back("near_threshold", est.near_threshold ? "true" : "false");
                } catch (const DomainError&) {
                    report.emplace_back("stationary_points", "0");
                }
            }
            if (r.flags.unconverged)
                std::cerr << "angular: quadrature did not converge\n";
            print_report(report, an_json);
            return r.flags.unconverged ? kExitFailure : 0;
        }
        if (cv_cmd->parsed()) {
            const amplitudes::AtomFieldParams p{cv_omega, cv_g, 0.0};
            cli::Report report;
            RateSet rates;
            if (cv_kv) {
                const auto tof = amplitudes::time_of_flight_tuning(cv_nu, *cv_kv, cv_omega, cv_n1, cv_n2);
                report.emplace_back("T", cli::format_double(tof.T));
                report.emplace_back("consistent", tof.consistent ? "true" : "false");
                report.emplace_back("positive", tof.positive ? "true" : "false");
                report.emplace_back("two_omega_T_over_pi", cli::format_double(2.0 * cv_omega * tof.T / std::numbers::pi));
                report.emplace_back("nu_prime", cli::format_double(cv_nu - *cv_kv));
                rates = amplitudes::interference_rates(cv_g, cv_nu - *cv_kv, cv_omega, std::abs(tof.T));
            } else {
                const trajectory::ModeGeometry m{cv_nu, cv_direction,
                                                 cv_direction == trajectory::Propagation::co ? 1.0 : -1.0};
                report.emplace_back(
                    "nu_prime",
                    cli::format_double(trajectory::doppler_frequency(trajectory::ConstantVelocity{cv_v}, m, 0.0)));
                rates = amplitudes::constant_velocity_rates(p, cv_nu, cv_v, cv_T, cv_direction);
            }
            report.emplace_back("R1", cli::format_double(rates.R1));
            report.emplace_back("R2", cli::format_double(rates.R2));
            report.emplace_back("ratio", cli::format_double(rates.R2 / rates.R1));
            if (cv_speed)
                report.emplace_back("monochromaticity_bound",
                                    cli::format_double(amplitudes::monochromaticity_bound(*cv_speed, cv_length)));
            print_report(report, cv_json);
            return 0;
        }
        if (par_cmd->parsed()) {
            Output out(par_out);
            const auto result = cli::run_parametric_scan(par);
            out.write(csv_text(result.table));
            return report_scan("parametric", result);
        }
        if (plot_cmd->parsed()) {
            std::ifstream in(plot_in);
            if (!in)
                throw std::runtime_error("cannot read '" + plot_in + "'");
            const auto table = cli::read_csv(in);
            const auto svg = cli::render_svg(table, plot);
            Output(plot_out).write(svg);
            return 0;
        }
    } catch (const cli::CsvError& e) {
        std::cerr << "error: " << plot_in << ": " << e.what() << '\n';
        return kExitFailure;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return 0;
}
