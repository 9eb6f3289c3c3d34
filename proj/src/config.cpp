#include "udc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>

namespace udc {

namespace {

std::string_view trim(std::string_view s)
{
    auto const first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    auto const last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    for (;;)
    {
        auto const pos = s.find(sep);
        out.push_back(trim(s.substr(0, pos)));
        if (pos == std::string_view::npos)
            return out;
        s.remove_prefix(pos + 1);
    }
}

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Location of a value for diagnostics.
struct Where
{
    int line;
    std::string key;

    [[noreturn]] void fail(std::string const& what) const
    {
        throw ConfigError("line " + std::to_string(line) + ": " + key + ": " + what);
    }
};

double parse_double(std::string_view s, Where const& at)
{
    double v = 0.0;
    auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v))
        at.fail("expected a number, got '" + std::string(s) + "'");
    return v;
}

int parse_int(std::string_view s, Where const& at)
{
    // accept exponent notation such as 1e4 when it denotes an integer
    double const v = parse_double(s, at);
    if (v != std::floor(v) || v < -2e9 || v > 2e9)
        at.fail("expected an integer, got '" + std::string(s) + "'");
    return static_cast<int>(v);
}

std::vector<double> parse_doubles(std::string_view s, Where const& at)
{
    std::vector<double> out;
    if (trim(s).empty())
        at.fail("empty list");
    for (auto item : split(s, ','))
        out.push_back(parse_double(item, at));
    return out;
}

std::vector<int> parse_ints(std::string_view s, Where const& at)
{
    std::vector<int> out;
    if (trim(s).empty())
        at.fail("empty list");
    for (auto item : split(s, ','))
        out.push_back(parse_int(item, at));
    return out;
}

bool parse_bool(std::string_view s, Where const& at)
{
    if (s == "true")
        return true;
    if (s == "false")
        return false;
    at.fail("expected true or false, got '" + std::string(s) + "'");
}

template<class E>
E parse_enum(std::string_view s, std::initializer_list<std::pair<std::string_view, E>> options,
             Where const& at)
{
    std::string allowed;
    for (auto const& [name, value] : options)
    {
        if (s == name)
            return value;
        allowed += (allowed.empty() ? "" : ", ") + std::string(name);
    }
    at.fail("expected one of {" + allowed + "}, got '" + std::string(s) + "'");
}

InitialState parse_state(std::string_view s, Where const& at)
{
    return parse_enum<InitialState>(
        s, {{"excited", InitialState::Excited}, {"ground", InitialState::Ground}}, at);
}

using Setter = std::function<void(RunConfig&, std::string_view, Where const&)>;

std::map<std::string, Setter> const& setters()
{
    static std::map<std::string, Setter> const table{
        {"run.scenario",
         [](RunConfig& c, std::string_view v, Where const& at) {
             c.scenario = parse_enum<Scenario>(v,
                                               {{"spectrum", Scenario::Spectrum},
                                                {"ratio_table", Scenario::RatioTable},
                                                {"nr_error", Scenario::NrError},
                                                {"fibre", Scenario::Fibre},
                                                {"table_1d", Scenario::Table1D}},
                                               at);
         }},
        {"run.format",
         [](RunConfig& c, std::string_view v, Where const& at) {
             c.format = parse_enum<OutputFormat>(
                 v, {{"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}}, at);
         }},
        {"run.output", [](RunConfig& c, std::string_view v, Where const&) { c.output = v; }},
        {"geometry.aspect",
         [](RunConfig& c, std::string_view v, Where const& at) {
             c.aspects = parse_doubles(v, at);
             for (double x : c.aspects)
                 if (!(x > 0))
                     at.fail("must be positive");
         }},
        {"detector.gap",
         [](RunConfig& c, std::string_view v, Where const& at) {
             c.gaps = parse_doubles(v, at);
             for (double x : c.gaps)
                 if (!(x > 0))
                     at.fail("must be positive");
         }},
        {"detector.state",
         [](RunConfig& c, std::string_view v, Where const& at) {
             c.states.clear();
             for (auto item : split(v, ','))
                 c.states.push_back(parse_state(item, at));
         }},
        {"trajectory.kind",
         [](RunConfig& c, std::string_view v, Where const& at) {
             c.trajectory = parse_enum<TrajectoryKind>(
                 v,
                 {{"accelerated", TrajectoryKind::Accelerated},
                  {"constant_velocity", TrajectoryKind::ConstantVelocity},
                  {"galilean", TrajectoryKind::Galilean}},
                 at);
         }},
        {"trajectory.values",
         [](RunConfig& c, std::string_view v, Where const& at) {
             c.sweep = parse_doubles(v, at);
             for (double x : c.sweep)
                 if (!(x > 0))
                     at.fail("must be positive");
         }},
        {"cutoffs.radial",
         [](RunConfig& c, std::string_view v, Where const& at) {
             c.cutoffs.radial = parse_int(v, at);
             if (c.cutoffs.radial < 1)
                 at.fail("must be >= 1");
         }},
        {"cutoffs.longitudinal",
         [](RunConfig& c, std::string_view v, Where const& at) {
             c.cutoffs.longitudinal = parse_int(v, at);
             if (c.cutoffs.longitudinal < 1)
                 at.fail("must be >= 1");
         }},
        {"numerics.threshold",
         [](RunConfig& c, std::string_view v, Where const& at) {
             c.threshold = parse_double(v, at);
             if (!(c.threshold > 0))
                 at.fail("must be positive");
         }},
        {"numerics.tolerance",
         [](RunConfig& c, std::string_view v, Where const& at) {
             c.tolerance = parse_double(v, at);
             if (!(c.tolerance > 0 && c.tolerance < 1))
                 at.fail("must lie in (0, 1)");
         }},
        {"fibre.radial",
         [](RunConfig& c, std::string_view v, Where const& at) {
             c.fibre_radial = parse_ints(v, at);
             for (int x : c.fibre_radial)
                 if (x < 1)
                     at.fail("must be >= 1");
         }},
        {"fibre.longitudinal",
         [](RunConfig& c, std::string_view v, Where const& at) {
             c.fibre_longitudinal = parse_ints(v, at);
             for (int x : c.fibre_longitudinal)
                 if (x < 1)
                     at.fail("must be >= 1");
         }},
        {"fibre.extrapolate",
         [](RunConfig& c, std::string_view v, Where const& at) {
             c.extrapolate = parse_bool(v, at);
         }},
        {"reduced.points",
         [](RunConfig& c, std::string_view v, Where const& at) {
             c.points.clear();
             if (trim(v).empty())
                 at.fail("empty list");
             for (auto item : split(v, ','))
             {
                 auto const parts = split(item, ':');
                 if (parts.size() != 2)
                     at.fail("expected mass:gap pairs, got '" + std::string(item) + "'");
                 MassGapPoint const p{parse_double(parts[0], at), parse_double(parts[1], at)};
                 if (!(p.mass >= 0))
                     at.fail("mass must be nonnegative");
                 if (!(p.gap > 0))
                     at.fail("gap must be positive");
                 c.points.push_back(p);
             }
         }},
        {"reduced.selection",
         [](RunConfig& c, std::string_view v, Where const& at) {
             c.selection = parse_enum<ResonantSelection>(
                 v,
                 {{"single", ResonantSelection::SingleClosest},
                  {"window", ResonantSelection::Window}},
                 at);
         }},
    };
    return table;
}

template<class T, class F>
std::string join(std::vector<T> const& values, F&& fmt)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
        out += (i ? ", " : "") + fmt(values[i]);
    return out;
}

}  // namespace

std::string_view to_string(Scenario s)
{
    switch (s)
    {
    case Scenario::Spectrum: return "spectrum";
    case Scenario::RatioTable: return "ratio_table";
    case Scenario::NrError: return "nr_error";
    case Scenario::Fibre: return "fibre";
    case Scenario::Table1D: return "table_1d";
    }
    return "?";
}

std::string_view to_string(TrajectoryKind k)
{
    switch (k)
    {
    case TrajectoryKind::Accelerated: return "accelerated";
    case TrajectoryKind::ConstantVelocity: return "constant_velocity";
    case TrajectoryKind::Galilean: return "galilean";
    }
    return "?";
}

std::string_view to_string(InitialState s)
{
    return s == InitialState::Ground ? "ground" : "excited";
}

std::string_view to_string(ResonantSelection s)
{
    return s == ResonantSelection::SingleClosest ? "single" : "window";
}

std::string_view to_string(OutputFormat f)
{
    return f == OutputFormat::Csv ? "csv" : "json";
}

RunConfig parse_config(std::string_view text)
{
    RunConfig config;
    std::string section;
    std::map<std::string, int> seen;
    std::set<std::string> sections;
    for (auto const& [key, setter] : setters())
        sections.insert(key.substr(0, key.find('.')));

    int line_no = 0;
    for (auto const line : split(text, '\n'))
    {
        ++line_no;
        if (line.empty() || line.front() == '#' || line.front() == ';')
            continue;
        if (line.front() == '[')
        {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!sections.contains(section))
                throw ConfigError("line " + std::to_string(line_no) + ": unknown section '"
                                  + section + "'");
        }
        else
        {
            auto const eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError("line " + std::to_string(line_no)
                                  + ": expected 'key = value'");
            if (section.empty())
                throw ConfigError("line " + std::to_string(line_no)
                                  + ": key outside of any section");
            std::string const path = section + "." + std::string(trim(line.substr(0, eq)));
            auto const it = setters().find(path);
            if (it == setters().end())
                throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + path
                                  + "'");
            if (auto const prev = seen.find(path); prev != seen.end())
                throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + path
                                  + "' (first set on line " + std::to_string(prev->second)
                                  + ")");
            seen.emplace(path, line_no);
            it->second(config, trim(line.substr(eq + 1)), Where{line_no, path});
        }
    }
    if (!seen.contains("run.scenario"))
        throw ConfigError("missing required key 'run.scenario'");
    validate(config);
    return config;
}

void validate(RunConfig const& c)
{
    auto require = [](bool ok, std::string const& what) {
        if (!ok)
            throw ConfigError(what);
    };
    require(c.cutoffs.radial >= 1, "cutoffs.radial: must be >= 1");
    require(c.cutoffs.longitudinal >= 1, "cutoffs.longitudinal: must be >= 1");
    require(c.threshold > 0, "numerics.threshold: must be positive");
    require(c.tolerance > 0 && c.tolerance < 1, "numerics.tolerance: must lie in (0, 1)");
    require(!c.states.empty(), "detector.state: empty list");
    require(!c.sweep.empty(), "missing required key 'trajectory.values' (empty sweep)");
    for (double x : c.sweep)
        require(x > 0, "trajectory.values: must be positive");
    if (c.trajectory == TrajectoryKind::ConstantVelocity)
        for (double v : c.sweep)
            require(v < 1, "trajectory.values: velocities must be below 1");

    if (c.scenario == Scenario::Table1D)
    {
        require(!c.points.empty(), "missing required key 'reduced.points'");
        return;
    }
    require(!c.aspects.empty(), "geometry.aspect: empty list");
    require(!c.gaps.empty(), "missing required key 'detector.gap'");
    for (double x : c.aspects)
        require(x > 0, "geometry.aspect: must be positive");
    for (double x : c.gaps)
        require(x > 0, "detector.gap: must be positive");
    require(c.aspects.size() == c.gaps.size() || c.aspects.size() == 1 || c.gaps.size() == 1,
            "geometry.aspect and detector.gap: lists must have equal length or one entry");
    if (c.scenario == Scenario::NrError)
        require(c.trajectory == TrajectoryKind::Accelerated,
                "trajectory.kind: nr_error requires accelerated");
    if (c.scenario == Scenario::Fibre)
        require(c.trajectory == TrajectoryKind::ConstantVelocity,
                "trajectory.kind: fibre requires constant_velocity");
}

std::string to_text(RunConfig const& c)
{
    auto num = [](double x) { return format_double(x); };
    auto integer = [](int x) { return std::to_string(x); };
    std::string out;
    out += "[run]\n";
    out += "scenario = " + std::string(to_string(c.scenario)) + "\n";
    out += "format = " + std::string(to_string(c.format)) + "\n";
    if (!c.output.empty())
        out += "output = " + c.output + "\n";
    if (c.scenario != Scenario::Table1D)
        out += "[geometry]\naspect = " + join(c.aspects, num) + "\n";
    out += "[detector]\n";
    if (!c.gaps.empty())
        out += "gap = " + join(c.gaps, num) + "\n";
    out += "state = "
           + join(c.states, [](InitialState s) { return std::string(to_string(s)); }) + "\n";
    out += "[trajectory]\nkind = " + std::string(to_string(c.trajectory)) + "\n";
    out += "values = " + join(c.sweep, num) + "\n";
    out += "[cutoffs]\nradial = " + integer(c.cutoffs.radial) + "\n";
    out += "longitudinal = " + integer(c.cutoffs.longitudinal) + "\n";
    out += "[numerics]\nthreshold = " + num(c.threshold) + "\n";
    out += "tolerance = " + num(c.tolerance) + "\n";
    if (c.scenario == Scenario::Fibre)
    {
        out += "[fibre]\n";
        if (!c.fibre_radial.empty())
            out += "radial = " + join(c.fibre_radial, integer) + "\n";
        if (!c.fibre_longitudinal.empty())
            out += "longitudinal = " + join(c.fibre_longitudinal, integer) + "\n";
        out += std::string("extrapolate = ") + (c.extrapolate ? "true" : "false") + "\n";
    }
    if (c.scenario == Scenario::Table1D)
    {
        out += "[reduced]\npoints = "
               + join(c.points,
                      [&](MassGapPoint const& p) { return num(p.mass) + ":" + num(p.gap); })
               + "\n";
        out += "selection = " + std::string(to_string(c.selection)) + "\n";
    }
    return out;
}

namespace {

struct Preset
{
    std::string_view name;
    std::string_view text;
};

constexpr Preset presets[] = {
    {"table1", R"([run]
scenario = ratio_table
[geometry]
aspect = 0.5
[detector]
gap = 5.75
state = excited, ground
[trajectory]
kind = accelerated
values = 5e-5, 5e-4, 5e-3, 5e-2, 0.5, 200
[cutoffs]
radial = 200
longitudinal = 10000
)"},
    {"table3", R"([run]
scenario = fibre
[geometry]
aspect = 0.5
[detector]
gap = 20
state = ground
[trajectory]
kind = constant_velocity
values = 0.005
[fibre]
radial = 50, 250
longitudinal = 100000
extrapolate = true
)"},
    {"table4", R"([run]
scenario = table_1d
[detector]
state = excited, ground
[trajectory]
kind = accelerated
values = 5e-5, 5e-4, 5e-3, 5e-2, 0.5, 200
[cutoffs]
longitudinal = 10000
[reduced]
points = 0:3.14, 2.41:3.95, 4.81:5.74, 48.1:48.19
selection = single
)"},
    {"table5", R"([run]
scenario = table_1d
[detector]
state = excited, ground
[trajectory]
kind = accelerated
values = 5e-5
[cutoffs]
longitudinal = 10000
[reduced]
points = 0:3.14, 0:10, 0:50, 0:100, 2.41:3.95, 2.41:10, 2.41:50, 2.41:100, 4.81:5.74, 4.81:10, 4.81:50, 4.81:100, 48.09:48.19, 48.09:49, 48.09:70, 48.09:111
selection = single
)"},
    {"table6", R"([run]
scenario = table_1d
[detector]
state = ground
[trajectory]
kind = accelerated
values = 5e-5
[cutoffs]
longitudinal = 10000
[numerics]
threshold = 0.2
[reduced]
points = 0:3.14, 0:10, 0:50, 0:100, 2.41:3.95, 2.41:10, 2.41:50, 2.41:100, 4.81:5.74, 4.81:10, 4.81:50, 4.81:100, 48.1:48.19, 48.1:49, 48.1:70, 48.1:111
selection = window
)"},
    {"fig2", R"([run]
scenario = spectrum
[geometry]
aspect = 0.5
[detector]
gap = 20
state = excited, ground
[trajectory]
kind = accelerated
values = 5e-5, 0.05, 0.5, 200
[cutoffs]
radial = 30
longitudinal = 30
)"},
    {"fig3", R"([run]
scenario = spectrum
[geometry]
aspect = 0.5
[detector]
gap = 20
state = excited, ground
[trajectory]
kind = constant_velocity
values = 0.005, 0.16, 0.45, 0.995
[cutoffs]
radial = 30
longitudinal = 30
)"},
    {"fig4", R"([run]
scenario = nr_error
[geometry]
aspect = 0.5
[detector]
gap = 50
state = excited, ground
[trajectory]
kind = accelerated
values = 5e-5, 5e-3, 5e-2
[cutoffs]
radial = 20
longitudinal = 20
)"},
    {"fig5", R"([run]
scenario = spectrum
[geometry]
aspect = 0.02, 0.0066666666666666671
[detector]
gap = 120.2, 360.7
state = excited, ground
[trajectory]
kind = accelerated
values = 5e-5, 0.5
[cutoffs]
radial = 5
longitudinal = 200
)"},
    {"fig6", R"([run]
scenario = spectrum
[geometry]
aspect = 0.02, 0.0066666666666666671
[detector]
gap = 120.2, 360.7
state = excited, ground
[trajectory]
kind = accelerated
values = 5e-5, 0.5
[cutoffs]
radial = 40
longitudinal = 5
)"},
};

}  // namespace

std::vector<std::string> preset_names()
{
    std::vector<std::string> out;
    for (auto const& p : presets)
        out.emplace_back(p.name);
    return out;
}

std::string preset_text(std::string_view name)
{
    for (auto const& p : presets)
        if (p.name == name)
            return std::string(p.text);
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

}  // namespace udc
