#include "accelrad/cli.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class Sandbox {
public:
    Sandbox() : dir_(fs::temp_directory_path() / ("accelrad_tool_" + std::to_string(::getpid())))
    {
        fs::create_directories(dir_);
    }
    ~Sandbox() { fs::remove_all(dir_); }

    fs::path path(const std::string& name) const { return dir_ / name; }

    void write(const std::string& name, const std::string& text) const
    {
        std::ofstream(path(name)) << text;
    }

    Run run(const std::string& args) const
    {
        const std::string cmd = std::string("'") + ACCELRAD_TOOL + "' " + args + " >'" +
                                path("stdout").string() + "' 2>'" + path("stderr").string() + "'";
        const int status = std::system(cmd.c_str());
        REQUIRE(WIFEXITED(status));
        return {WEXITSTATUS(status), slurp(path("stdout")), slurp(path("stderr"))};
    }

private:
    fs::path dir_;
};

} // namespace

TEST_CASE("tool: usage errors exit with 2")
{
    Sandbox box;
    CHECK(box.run("").code == 2);
    CHECK(box.run("frobnicate").code == 2);
    CHECK(box.run("scan --points 1 -o -").code == 2);
    CHECK(box.run("scan --direction sideways -o -").code == 2);
    CHECK(box.run("scan --nu-min 5 --nu-max 1 -o -").code == 2);
    CHECK(box.run("steady-state --R1 1").code == 2);
    CHECK(box.run("--help").code == 0);
}

TEST_CASE("tool: scan from a config file with a flag override")
{
    Sandbox box;
    box.write("scan.ini", "# ten points\nomega = 3\nnu-min = 1\nnu-max = 10\npoints = 10\nthreads = 1\n");
    const Run r = box.run("scan --config '" + box.path("scan.ini").string() + "' --points 4 -o '" +
                          box.path("scan.csv").string() + "'");
    CHECK(r.code == 0);
    std::ifstream in(box.path("scan.csv"));
    const auto table = accelrad::cli::read_csv(in);
    CHECK(table.header == accelrad::cli::kScanHeader);
    REQUIRE(table.rows.size() == 4);
    CHECK(table.rows.front()[0] == 1.0);
    CHECK(table.rows.back()[0] == 10.0);

    box.write("bad.ini", "omega = 3\ncolour = blue\n");
    CHECK(box.run("scan --config '" + box.path("bad.ini").string() + "' -o -").code == 2);
    CHECK(box.run("scan --config '" + box.path("missing.ini").string() + "' -o -").code == 2);
}

TEST_CASE("tool: failures exit with 1")
{
    Sandbox box;
    const Run nan_rows = box.run("scan --backend stationary-phase --tau-i 1 --points 3 -o -");
    CHECK(nan_rows.code == 1);
    CHECK(nan_rows.out.find("nan") != std::string::npos);
    CHECK_FALSE(nan_rows.err.empty());

    CHECK(box.run("scan --points 3 -o /nonexistent/dir/out.csv").code == 1);

    box.write("bad.csv", "nu,abs\n1,2\nx,3\n");
    const Run bad = box.run("plot -i '" + box.path("bad.csv").string() + "' -o -");
    CHECK(bad.code == 1);
    CHECK(bad.err.find("line 3") != std::string::npos);
}

TEST_CASE("tool: scan and plot are reproducible")
{
    Sandbox box;
    const std::string csv = box.path("s.csv").string();
    REQUIRE(box.run("scan --points 8 --nu-max 12 --threads 1 -o '" + csv + "'").code == 0);
    const std::string first = slurp(csv);
    REQUIRE(box.run("scan --points 8 --nu-max 12 --threads 3 -o '" + csv + "'").code == 0);
    CHECK(slurp(csv) == first);

    const Run a = box.run("plot -i '" + csv + "' -o - --columns abs_rate,emi_rate --log-y");
    const Run b = box.run("plot -i '" + csv + "' -o - --columns abs_rate,emi_rate --log-y");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("<svg") != std::string::npos);
    CHECK(box.run("plot -i '" + csv + "' -o - --columns nope").code == 2);
}

TEST_CASE("tool: steady-state reports")
{
    Sandbox box;
    const Run kv = box.run("steady-state --R1 1 --R2 0.5");
    CHECK(kv.code == 0);
    CHECK(kv.out.find("nbar=1\n") != std::string::npos);

    const Run fs_point = box.run("steady-state --backend free-space --omega 3 --nu 2 --json");
    CHECK(fs_point.code == 0);
    const auto pos = fs_point.out.find("\"hbar_nu_over_kT\": ");
    REQUIRE(pos != std::string::npos);
    const double x = std::stod(fs_point.out.substr(pos + 19));
    CHECK(x == doctest::Approx(6.0 * std::numbers::pi).epsilon(1e-9));

    const Run gain = box.run("steady-state --R1 1 --R2 2");
    CHECK(gain.code == 0);
    CHECK(gain.out.find("steady_state=none") != std::string::npos);
}
