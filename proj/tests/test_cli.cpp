#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "udc/config.hpp"
#include "udc/run.hpp"

using namespace udc;

namespace {

std::string const small_ratio = R"([run]
scenario = ratio_table
[geometry]
aspect = 0.5
[detector]
gap = 20
state = excited, ground
[trajectory]
kind = accelerated
values = 0.05, 0.5
[cutoffs]
radial = 6
longitudinal = 40
)";

std::string error_of(std::string const& text)
{
    try
    {
        parse_config(text);
    }
    catch (ConfigError const& e)
    {
        return e.what();
    }
    return {};
}

bool contains(std::string const& s, std::string const& part)
{
    return s.find(part) != std::string::npos;
}

std::string slurp(std::filesystem::path const& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("parse fills defaults")
{
    auto const c = parse_config("[run]\nscenario = spectrum\n[detector]\ngap = 20\n"
                                "[trajectory]\nvalues = 0.5\n");
    CHECK(c.scenario == Scenario::Spectrum);
    CHECK(c.aspects == std::vector<double>{0.5});
    CHECK(c.cutoffs.radial == 200);
    CHECK(c.cutoffs.longitudinal == 10000);
    CHECK(c.threshold == 0.02);
    CHECK(c.tolerance == 1e-8);
    CHECK(c.trajectory == TrajectoryKind::Accelerated);
    CHECK(c.format == OutputFormat::Csv);
    CHECK(c.states.size() == 2);
}

TEST_CASE("comments and whitespace are ignored")
{
    auto const c = parse_config("# header\n[run]\n  scenario =  ratio_table  \n; note\n\n"
                                "[detector]\ngap = 5.75\n[trajectory]\nvalues = 0.5\n");
    CHECK(c.scenario == Scenario::RatioTable);
    CHECK(c.gaps == std::vector<double>{5.75});
}

TEST_CASE("errors name the line and key")
{
    auto const base = std::string("[run]\nscenario = spectrum\n[detector]\n");
    CHECK(contains(error_of(base + "gap = -3\n[trajectory]\nvalues = 0.5\n"), "line 4: detector.gap"));
    CHECK(contains(error_of(base + "gap = abc\n[trajectory]\nvalues = 0.5\n"), "detector.gap"));
    CHECK(contains(error_of(base + "gap = 5\nstate = sideways\n[trajectory]\nvalues = 0.5\n"),
                   "detector.state"));
    CHECK(contains(error_of(base + "gap = 5\n[trajectory]\nkind = constant_velocity\nvalues = 1.5\n"),
                   "trajectory.values"));
    CHECK(contains(error_of(base + "gap = 5\n[trajectory]\nvalues = 0.5\n[cutoffs]\nradial = 0\n"),
                   "cutoffs.radial"));
    CHECK(contains(error_of(base + "gap = 5\n[trajectory]\nvalues = 0.5\n[numerics]\ntolerance = 0\n"),
                   "numerics.tolerance"));
    CHECK(contains(error_of(base + "gap = 5\n[trajectory]\nvalues = 0.5\n[numerics]\nthreshold = -1\n"),
                   "numerics.threshold"));
}

TEST_CASE("unknown and duplicate entries are rejected")
{
    CHECK(contains(error_of("[run]\nscenario = spectrum\nspeed = 3\n"), "unknown key 'run.speed'"));
    CHECK(contains(error_of("[bogus]\n"), "unknown section 'bogus'"));
    auto const dup = error_of("[run]\nscenario = spectrum\nscenario = fibre\n");
    CHECK(contains(dup, "duplicate key 'run.scenario'"));
    CHECK(contains(dup, "line 2"));
    CHECK(contains(error_of("[detector]\ngap = 5\n"), "run.scenario"));
    CHECK(contains(error_of("[run]\nscenario = spectrum\n[detector]\ngap = 5\n"), "trajectory.values"));
    CHECK(contains(error_of("[run]\nscenario = spectrum\n[detector]\ngap = 5\n[trajectory]\nvalues =\n"),
                   "trajectory.values"));
}

TEST_CASE("scenario and trajectory combinations are checked")
{
    CHECK_FALSE(error_of("[run]\nscenario = nr_error\n[detector]\ngap = 5\n[trajectory]\n"
                         "kind = constant_velocity\nvalues = 0.5\n")
                    .empty());
    CHECK_FALSE(error_of("[run]\nscenario = fibre\n[detector]\ngap = 5\n[trajectory]\n"
                         "kind = accelerated\nvalues = 0.5\n")
                    .empty());
    CHECK_FALSE(error_of("[run]\nscenario = spectrum\n[geometry]\naspect = 0.5, 0.2\n"
                         "[detector]\ngap = 5, 6, 7\n[trajectory]\nvalues = 0.5\n")
                    .empty());
}

TEST_CASE("canonical text round-trips")
{
    for (auto const& name : preset_names())
    {
        CAPTURE(name);
        auto const c = parse_config(preset_text(name));
        auto const text = to_text(c);
        CHECK(to_text(parse_config(text)) == text);
    }
    CHECK(preset_names().size() == 10);
    CHECK_THROWS_AS(preset_text("nope"), ConfigError);
}

TEST_CASE("output is deterministic and ratios are fractions")
{
    auto const c = parse_config(small_ratio);
    auto const a = format_csv(execute(c, 1));
    auto const b = format_csv(execute(c, 3));
    CHECK(a == b);
    auto const report = execute(c);
    REQUIRE(report.rows.size() == 4);
    for (auto const& row : report.rows)
    {
        double const ratio = std::get<double>(row[6]);
        CHECK(ratio >= 0.0);
        CHECK(ratio <= 1.0);
    }
    CHECK(contains(a, "# convergence"));
    CHECK(contains(a, "aspect,gap,param,state,total,resonant,ratio"));
}

TEST_CASE("json output carries the config, convergence and rows")
{
    auto const report = execute(parse_config(small_ratio));
    auto const doc = nlohmann::json::parse(format_json(report));
    CHECK(doc["config"]["run"]["scenario"] == "ratio_table");
    CHECK(doc["rows"].size() == 4);
    CHECK(doc["convergence"].size() == 4);
    CHECK(doc["rows"][0]["state"] == "excited");
}

TEST_CASE("display rounding")
{
    CHECK(display_rounded(0.47989) == "0.48");
    CHECK(display_rounded(7.0428e-5) == "7.0e-05");
    CHECK(display_rounded(0.0065587) == "6.6e-03");
    CHECK(display_rounded(0.12345, true) == "0.123");
}

#ifdef UDC_CLI_PATH
namespace {

int run_cli(std::string const& args, std::filesystem::path const& out)
{
    std::string const cmd = std::string(UDC_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
    int const status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("command-line driver")
{
    auto const dir = std::filesystem::temp_directory_path() / "udc_cli_test";
    std::filesystem::create_directories(dir);
    auto const cfg = dir / "run.ini";
    std::ofstream(cfg) << small_ratio;

    CHECK(run_cli("--config " + cfg.string() + " --threads 2", dir / "a.csv") == 0);
    CHECK(run_cli("--config " + cfg.string() + " --threads 1", dir / "b.csv") == 0);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));

    CHECK(run_cli("--config " + cfg.string() + " --format json --out " + (dir / "c.json").string(),
                  dir / "c.log")
          == 0);
    CHECK(nlohmann::json::parse(slurp(dir / "c.json"))["rows"].size() == 4);

    CHECK(run_cli("--preset fig2 --cutoff-l 3 --cutoff-n 3", dir / "d.csv") == 0);
    CHECK(contains(slurp(dir / "d.csv"), "radial = 3"));

    auto const bad = dir / "bad.ini";
    std::ofstream(bad) << "[run]\nscenario = spectrum\n[detector]\ngap = -1\n[trajectory]\nvalues = 1\n";
    CHECK(run_cli("--config " + bad.string(), dir / "e.log") == 2);
    CHECK(contains(slurp(dir / "e.log"), "detector.gap"));

    CHECK(run_cli("", dir / "f.log") == 1);
    CHECK(run_cli("--preset nope", dir / "g.log") == 2);
    CHECK(run_cli("--config " + cfg.string() + " --out " + (dir / "missing" / "x.csv").string(),
                  dir / "h.log")
          == 4);
    std::filesystem::remove_all(dir);
}
#endif
