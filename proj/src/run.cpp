#include "udc/run.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "udc/specfun.hpp"

namespace udc {

namespace {

std::string full(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

TrajectorySpec make_trajectory(TrajectoryKind kind, double value)
{
    switch (kind)
    {
    case TrajectoryKind::Accelerated: return UniformAcceleration{value};
    case TrajectoryKind::ConstantVelocity: return ConstantVelocity{value};
    case TrajectoryKind::Galilean: return GalileanApproximation{value};
    }
    throw std::logic_error("unreachable trajectory kind");
}

struct Case
{
    double aspect;
    double gap;
};

std::vector<Case> cases(RunConfig const& c)
{
    std::size_t const count = std::max(c.aspects.size(), c.gaps.size());
    std::vector<Case> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back({c.aspects[c.aspects.size() == 1 ? 0 : i], c.gaps[c.gaps.size() == 1 ? 0 : i]});
    return out;
}

std::string label(Case const& k, double param, InitialState s)
{
    return "aspect=" + full(k.aspect) + " gap=" + full(k.gap) + " param=" + full(param)
           + " state=" + std::string(to_string(s));
}

Value opt(std::optional<double> x)
{
    return x ? Value(*x) : Value();
}

void spectrum(RunConfig const& c, unsigned threads, Report& r)
{
    r.columns = {"aspect", "gap", "param", "state", "l", "n", "omega", "number", "energy",
                 "resonant"};
    QuadratureOptions opt_q;
    opt_q.rel_tol = c.tolerance;
    for (auto const& k : cases(c))
        for (double p : c.sweep)
            for (auto s : c.states)
            {
                CavityGeometry const geom{1.0, k.aspect};
                DetectorConfig const det{k.gap, 1.0, s};
                auto const grid = compute_grid(geom, det, make_trajectory(c.trajectory, p),
                                               c.cutoffs, c.threshold, opt_q, threads);
                auto const total = transition_probability(grid);
                r.convergence.push_back({label(k, p, s),
                                         {{"total", total.value},
                                          {"last_row", total.tail.last_row},
                                          {"last_column", total.tail.last_column},
                                          {"tail_radial", total.tail.beyond_radial},
                                          {"tail_longitudinal", total.tail.beyond_longitudinal}}});
                for (int l = 1; l <= c.cutoffs.radial; ++l)
                    for (int n = 1; n <= c.cutoffs.longitudinal; ++n)
                    {
                        auto const& cell = grid.at(l, n);
                        r.rows.push_back({k.aspect, k.gap, p, std::string(to_string(s)),
                                          (long long)l, (long long)n,
                                          mode_frequency(geom, {0, l, n}), cell.number,
                                          cell.energy, (long long)cell.resonant});
                    }
            }
}

void ratio_table(RunConfig const& c, unsigned threads, Report& r)
{
    r.columns = {"aspect", "gap", "param", "state", "total", "resonant", "ratio",
                 "ratio_display", "ratio_with_tail", "resonant_modes"};
    QuadratureOptions opt_q;
    opt_q.rel_tol = c.tolerance;
    for (auto const& k : cases(c))
        for (double p : c.sweep)
            for (auto s : c.states)
            {
                CavityGeometry const geom{1.0, k.aspect};
                DetectorConfig const det{k.gap, 1.0, s};
                auto const grid = compute_grid(geom, det, make_trajectory(c.trajectory, p),
                                               c.cutoffs, c.threshold, opt_q, threads);
                auto const rep = validity_ratio(grid);
                long long resonant = 0;
                for (auto const& cell : grid.cells)
                    resonant += cell.resonant;
                r.convergence.push_back({label(k, p, s),
                                         {{"last_row", rep.tail.last_row},
                                          {"last_column", rep.tail.last_column},
                                          {"tail_radial", rep.tail.beyond_radial},
                                          {"tail_longitudinal", rep.tail.beyond_longitudinal}}});
                r.rows.push_back({k.aspect, k.gap, p, std::string(to_string(s)), rep.total,
                                  rep.resonant, rep.ratio, display_rounded(rep.ratio),
                                  opt(rep.ratio_with_tail), resonant});
            }
}

void nr_error(RunConfig const& c, unsigned threads, Report& r)
{
    r.columns = {"aspect", "gap", "param", "state", "l", "n", "delta"};
    QuadratureOptions opt_q;
    opt_q.rel_tol = c.tolerance;
    for (auto const& k : cases(c))
        for (double p : c.sweep)
            for (auto s : c.states)
            {
                CavityGeometry const geom{1.0, k.aspect};
                DetectorConfig const det{k.gap, 1.0, s};
                auto const map = relative_error_map(geom, det, p, c.cutoffs, opt_q, threads);
                double undefined = 0;
                for (auto const& d : map.delta)
                    undefined += !d.has_value();
                r.convergence.push_back({label(k, p, s), {{"undefined_cells", undefined}}});
                for (int l = 1; l <= c.cutoffs.radial; ++l)
                    for (int n = 1; n <= c.cutoffs.longitudinal; ++n)
                        r.rows.push_back({k.aspect, k.gap, p, std::string(to_string(s)),
                                          (long long)l, (long long)n, opt(map.at(l, n))});
            }
}

void fibre(RunConfig const& c, Report& r)
{
    r.columns = {"aspect", "gap", "velocity", "state", "radial_cutoff", "longitudinal_cutoff",
                 "f_lower", "f_lower_display", "f_extrapolated"};
    auto radial = c.fibre_radial.empty() ? std::vector<int>{c.cutoffs.radial} : c.fibre_radial;
    auto longitudinal = c.fibre_longitudinal.empty()
                            ? std::vector<int>{c.cutoffs.longitudinal}
                            : c.fibre_longitudinal;
    for (auto const& k : cases(c))
        for (double v : c.sweep)
            for (auto s : c.states)
                for (int nl : radial)
                    for (int nn : longitudinal)
                    {
                        CavityGeometry const geom{1.0, k.aspect};
                        DetectorConfig const det{k.gap, 1.0, s};
                        auto const f = fibre_estimator(geom, det, v, {nl, nn}, c.extrapolate);
                        char shown[32];
                        std::snprintf(shown, sizeof shown, "%.2f", f.lower);
                        r.convergence.push_back(
                            {label(k, v, s) + " cutoffs=" + std::to_string(nl) + "x"
                                 + std::to_string(nn),
                             {{"longitudinal_tail_gain",
                               f.extrapolated ? std::optional<double>(*f.extrapolated - f.lower)
                                              : std::nullopt}}});
                        r.rows.push_back({k.aspect, k.gap, v, std::string(to_string(s)),
                                          (long long)nl, (long long)nn, f.lower,
                                          std::string(shown), opt(f.extrapolated)});
                    }
}

void table_1d(RunConfig const& c, Report& r)
{
    r.columns = {"mass", "gap", "param", "state", "total", "resonant", "ratio",
                 "ratio_display"};
    QuadratureOptions opt_q;
    opt_q.rel_tol = c.tolerance;
    for (auto const& pt : c.points)
        for (double p : c.sweep)
            for (auto s : c.states)
            {
                auto const field = standalone_field(pt.mass);
                DetectorConfig const det{pt.gap, 1.0, s};
                auto const rep = resonant_ratio_1d(field, det, make_trajectory(c.trajectory, p),
                                                   c.cutoffs.longitudinal, c.selection,
                                                   c.threshold, opt_q);
                r.convergence.push_back({"mass=" + full(pt.mass) + " gap=" + full(pt.gap)
                                             + " param=" + full(p)
                                             + " state=" + std::string(to_string(s)),
                                         {{"last_term", rep.tail.last_column}}});
                r.rows.push_back({pt.mass, pt.gap, p, std::string(to_string(s)), rep.total,
                                  rep.resonant, rep.ratio, display_rounded(rep.ratio, true)});
            }
}

nlohmann::ordered_json to_json(Value const& v)
{
    return std::visit(
        [](auto const& x) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>)
                return nullptr;
            else
                return x;
        },
        v);
}

}  // namespace

std::string display_rounded(double x, bool fine)
{
    char buf[32];
    if (std::abs(x) >= 0.01 || x == 0.0)
        std::snprintf(buf, sizeof buf, fine ? "%.3f" : "%.2f", x);
    else
        std::snprintf(buf, sizeof buf, "%.1e", x);
    return buf;
}

Report execute(RunConfig const& config, unsigned threads)
{
    validate(config);
    Report r{config, {}, {}, {}};
    switch (config.scenario)
    {
    case Scenario::Spectrum: spectrum(config, threads, r); break;
    case Scenario::RatioTable: ratio_table(config, threads, r); break;
    case Scenario::NrError: nr_error(config, threads, r); break;
    case Scenario::Fibre: fibre(config, r); break;
    case Scenario::Table1D: table_1d(config, r); break;
    }
    return r;
}

std::string format_csv(Report const& report)
{
    std::ostringstream out;
    std::istringstream echo(to_text(report.config));
    for (std::string line; std::getline(echo, line);)
        out << "# " << line << '\n';
    for (auto const& entry : report.convergence)
    {
        out << "# convergence " << entry.label << ':';
        for (auto const& [key, value] : entry.values)
            out << ' ' << key << '=' << (value ? full(*value) : "n/a");
        out << '\n';
    }
    for (std::size_t i = 0; i < report.columns.size(); ++i)
        out << (i ? "," : "") << report.columns[i];
    out << '\n';
    for (auto const& row : report.rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            if (i)
                out << ',';
            std::visit(
                [&](auto const& x) {
                    using T = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<T, double>)
                        out << full(x);
                    else if constexpr (std::is_same_v<T, long long> || std::is_same_v<T, std::string>)
                        out << x;
                },
                row[i]);
        }
        out << '\n';
    }
    return out.str();
}

std::string format_json(Report const& report)
{
    nlohmann::ordered_json doc;
    nlohmann::ordered_json config;
    std::string section;
    std::istringstream echo(to_text(report.config));
    for (std::string line; std::getline(echo, line);)
    {
        if (line.front() == '[')
        {
            section = line.substr(1, line.size() - 2);
            continue;
        }
        auto const eq = line.find(" = ");
        config[section][line.substr(0, eq)] = line.substr(eq + 3);
    }
    doc["config"] = config;
    doc["convergence"] = nlohmann::ordered_json::array();
    for (auto const& entry : report.convergence)
    {
        nlohmann::ordered_json e;
        e["label"] = entry.label;
        for (auto const& [key, value] : entry.values)
            e[key] = value ? nlohmann::ordered_json(*value) : nlohmann::ordered_json(nullptr);
        doc["convergence"].push_back(e);
    }
    doc["rows"] = nlohmann::ordered_json::array();
    for (auto const& row : report.rows)
    {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i)
            obj[report.columns[i]] = to_json(row[i]);
        doc["rows"].push_back(obj);
    }
    return doc.dump(2) + "\n";
}

}  // namespace udc
