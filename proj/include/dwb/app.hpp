// Command-line front end: curve, verify, darboux, simulate, report.
#ifndef DWB_APP_HPP
#define DWB_APP_HPP

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dwb/dynamics.hpp"

namespace dwb {

/// Exit codes: 0 all checks passed (or were flagged degenerate), 1 a check
/// failed, 2 bad configuration or input.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Raised by `report` for an input that is not one of this tool's fragments.
class ReportParseError : public std::runtime_error {
public:
    explicit ReportParseError(const std::string& what) : std::runtime_error(what) {}
};

struct PhasePlot {
    std::vector<std::array<double, 2>> trajectory;
    XYPoly F;  // b-free; its zero set is drawn as y = -T(x)/S(x)
    std::string title;
};

/// Static SVG. The viewport is the trajectory bounding box padded by 10%.
std::string render_svg(const PhasePlot& plot);

}  // namespace dwb

#endif  // DWB_APP_HPP
