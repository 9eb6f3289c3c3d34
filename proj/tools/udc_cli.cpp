// Command-line driver: reads a run description (file or preset), evaluates
// it and writes CSV or JSON.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "udc/config.hpp"
#include "udc/run.hpp"

namespace {

enum Exit
{
    ok = 0,
    usage = 1,
    bad_config = 2,
    failed_cell = 3,
    io_error = 4
};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cavity response of a detector crossing a cylindrical cavity"};
    std::string config_path, preset, out_path, format;
    std::optional<int> cutoff_l, cutoff_n;
    std::optional<double> tol;
    unsigned threads = 0;

    std::string presets;
    for (auto const& name : udc::preset_names())
        presets += (presets.empty() ? "" : "|") + name;

    auto* cfg = app.add_option("--config", config_path, "Run description file")
                    ->check(CLI::ExistingFile);
    app.add_option("--preset", preset, "Built-in parameter block: " + presets)->excludes(cfg);
    app.add_option("--out", out_path, "Output file (default: standard output)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--cutoff-l", cutoff_l, "Radial cutoff N_l")->check(CLI::PositiveNumber);
    app.add_option("--cutoff-n", cutoff_n, "Longitudinal cutoff N_n")->check(CLI::PositiveNumber);
    app.add_option("--tol", tol, "Quadrature relative tolerance");
    app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
    CLI11_PARSE(app, argc, argv);

    udc::RunConfig config;
    try
    {
        std::string text;
        if (!preset.empty())
        {
            text = udc::preset_text(preset);
        }
        else if (!config_path.empty())
        {
            std::ifstream in(config_path);
            std::ostringstream buf;
            buf << in.rdbuf();
            text = buf.str();
        }
        else
        {
            std::cerr << "error: one of --config or --preset is required\n";
            return usage;
        }
        config = udc::parse_config(text);
        if (cutoff_l)
        {
            config.cutoffs.radial = *cutoff_l;
            if (!config.fibre_radial.empty())
                config.fibre_radial = {*cutoff_l};
        }
        if (cutoff_n)
        {
            config.cutoffs.longitudinal = *cutoff_n;
            if (!config.fibre_longitudinal.empty())
                config.fibre_longitudinal = {*cutoff_n};
        }
        if (tol)
            config.tolerance = *tol;
        if (!format.empty())
            config.format = format == "json" ? udc::OutputFormat::Json : udc::OutputFormat::Csv;
        if (!out_path.empty())
            config.output = out_path;
        udc::validate(config);
    }
    catch (udc::ConfigError const& e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return bad_config;
    }

    udc::Report report;
    try
    {
        report = udc::execute(config, threads);
    }
    catch (udc::CellError const& e)
    {
        std::cerr << "computation failed: " << e.what() << '\n';
        return failed_cell;
    }
    catch (std::exception const& e)
    {
        std::cerr << "computation failed: " << e.what() << '\n';
        return failed_cell;
    }

    std::string const text = config.format == udc::OutputFormat::Json ? udc::format_json(report)
                                                                       : udc::format_csv(report);
    if (config.output.empty())
    {
        std::cout << text;
        return ok;
    }
    std::ofstream out(config.output, std::ios::binary);
    out << text;
    if (!out)
    {
        std::cerr << "error: cannot write " << config.output << '\n';
        return io_error;
    }
    return ok;
}
