#include "accelrad/cli.hpp"

#include "accelrad/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>

namespace accelrad::cli {

Report steady_state_report(const RateSet& rates)
{
    rates.validate();
    Report r;
    r.emplace_back("R1", format_double(rates.R1));
    r.emplace_back("R2", format_double(rates.R2));
    r.emplace_back("kappa", format_double(rates.kappa_loss));
    if (!(rates.R2 < rates.R1 + rates.kappa_loss)) {
        r.emplace_back("steady_state", "none");
        r.emplace_back("growth_rate", format_double(field::growth_rate(rates)));
        return r;
    }
    const auto ss = field::steady_state_thermal(rates);
    r.emplace_back("steady_state", "thermal");
    r.emplace_back("q", format_double(ss.boltzmann));
    r.emplace_back("nbar", format_double(ss.nbar));
    r.emplace_back("hbar_nu_over_kT", format_double(-std::log(ss.boltzmann)));
    for (std::size_t n = 0; n < 10; ++n) {
        const double p = n < ss.dist.rho.size() ? ss.dist.rho[n] : 0.0;
        r.emplace_back("rho_" + std::to_string(n), format_double(p));
    }
    return r;
}

std::string format_key_value(const Report& report)
{
    std::string out;
    for (const auto& [key, value] : report)
        out += key + "=" + value + "\n";
    return out;
}

std::string format_json(const Report& report)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report) {
        char* end = nullptr;
        const double v = std::strtod(value.c_str(), &end);
        const bool numeric = !value.empty() && end == value.c_str() + value.size();
        if (numeric && std::isfinite(v))
            j[key] = v;
        else
            j[key] = value; // non-finite numbers have no JSON literal
    }
    return j.dump(2) + "\n";
}

} // namespace accelrad::cli
