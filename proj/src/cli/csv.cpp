#include "accelrad/cli.hpp"

#include "accelrad/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace accelrad::cli {

namespace {

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        fields.push_back(field);
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& text, std::size_t line)
{
    const std::string t = trim(text);
    if (t.empty())
        throw CsvError(line, "empty field");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw CsvError(line, "not a number: '" + t + "'");
    return v;
}

} // namespace

CsvError::CsvError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
{
}

std::size_t CsvTable::column(const std::string& name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    throw PreconditionError("no column named '" + name + "'");
}

std::string format_double(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(std::ostream& out, const CsvTable& table)
{
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out << (i ? "," : "") << table.header[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_double(row[i]);
        out << '\n';
    }
}

CsvTable read_csv(std::istream& in)
{
    CsvTable table;
    std::string line;
    std::size_t number = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++number;
        if (trim(line).empty())
            continue;
        auto fields = split_fields(line);
        if (!have_header) {
            for (auto& f : fields)
                table.header.push_back(trim(f));
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size())
            throw CsvError(number, "expected " + std::to_string(table.header.size()) +
                                       " fields, found " + std::to_string(fields.size()));
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields)
            row.push_back(parse_double(f, number));
        table.rows.push_back(std::move(row));
    }
    if (!have_header)
        throw CsvError(number == 0 ? 1 : number, "no header line");
    return table;
}

} // namespace accelrad::cli
