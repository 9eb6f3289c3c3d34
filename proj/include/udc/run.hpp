#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "udc/config.hpp"

namespace udc {

/// Empty, integer, real or text cell of an output table.
using Value = std::variant<std::monostate, long long, double, std::string>;

struct ConvergenceEntry
{
    std::string label;
    std::vector<std::pair<std::string, std::optional<double>>> values;
};

/// Result of one run before serialization.
struct Report
{
    RunConfig config;
    std::vector<ConvergenceEntry> convergence;
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;
};

/// Evaluates the scenario. Throws CellError naming the failing cell.
Report execute(RunConfig const& config, unsigned threads = 0);

/// `#` header lines (config echo, convergence), a column line, then rows.
/// Reals use 17 significant digits.
std::string format_csv(Report const& report);
/// {"config": {...}, "convergence": [...], "rows": [...]}.
std::string format_json(Report const& report);

/// Table-style rounding: two decimals at or above 0.01 (three when
/// `fine` is set), two significant digits below.
std::string display_rounded(double x, bool fine = false);

}  // namespace udc
