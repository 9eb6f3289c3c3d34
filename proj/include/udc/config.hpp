#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "udc/reduced1d.hpp"
#include "udc/response.hpp"

namespace udc {

enum class Scenario
{
    Spectrum,
    RatioTable,
    NrError,
    Fibre,
    Table1D
};

enum class TrajectoryKind
{
    Accelerated,
    ConstantVelocity,
    Galilean
};

enum class OutputFormat
{
    Csv,
    Json
};

/// One 1+1D case: field mass m L and detector gap Omega L.
struct MassGapPoint
{
    double mass;
    double gap;
};

/// Fully validated description of one run. All lengths are in units of L.
struct RunConfig
{
    Scenario scenario = Scenario::Spectrum;
    /// rho / L values; paired with `gaps` (a single entry broadcasts).
    std::vector<double> aspects{0.5};
    std::vector<double> gaps;
    std::vector<InitialState> states{InitialState::Excited, InitialState::Ground};
    TrajectoryKind trajectory = TrajectoryKind::Accelerated;
    /// a L for accelerated kinds, v for constant velocity.
    std::vector<double> sweep;
    Cutoffs cutoffs{200, 10000};
    double threshold = 0.02;
    double tolerance = 1e-8;
    OutputFormat format = OutputFormat::Csv;
    std::string output;  ///< empty writes to standard output

    std::vector<int> fibre_radial;
    std::vector<int> fibre_longitudinal;
    bool extrapolate = false;

    std::vector<MassGapPoint> points;
    ResonantSelection selection = ResonantSelection::SingleClosest;
};

class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Parses the INI-style run description documented in the README and
/// validates it. Throws ConfigError naming the line and key path.
RunConfig parse_config(std::string_view text);

/// Checks cross-field consistency; throws ConfigError.
void validate(RunConfig const& config);

/// Canonical text form; parse_config(to_text(c)) reproduces c.
std::string to_text(RunConfig const& config);

/// Built-in parameter blocks: table1, table3, table4, table5, table6,
/// fig2, fig3, fig4, fig5, fig6.
std::vector<std::string> preset_names();
/// Config text of a preset; throws ConfigError for unknown names.
std::string preset_text(std::string_view name);

std::string_view to_string(Scenario s);
std::string_view to_string(TrajectoryKind k);
std::string_view to_string(InitialState s);
std::string_view to_string(ResonantSelection s);
std::string_view to_string(OutputFormat f);

}  // namespace udc
