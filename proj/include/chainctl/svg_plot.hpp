#pragma once

#include <string>
#include <utility>
#include <vector>

namespace chainctl {

// Static SVG reports: log-scale scatter of per-restart synthesis errors,
// and a log-scale bar chart of proof-trace residuals.
void write_restart_scatter_svg(const std::string& path, const std::vector<double>& errors,
                               const std::string& title);
void write_residual_bars_svg(const std::string& path,
                             const std::vector<std::pair<std::string, double>>& residuals,
                             const std::string& title);

}  // namespace chainctl
