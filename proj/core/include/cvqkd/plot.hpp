#pragma once

#include <string>
#include <vector>

#include "cvqkd/analysis.hpp"

namespace cvqkd {

// Static SVG artifacts. Every plot carries axis labels and the params hash;
// the CSV stays the source of truth.
std::string heatmap_svg(const std::vector<GridCell>& cells,
                        const std::string& hash);
std::string heatmap_svg(const std::vector<ToleranceCell>& cells,
                        const std::string& hash);
std::string compare_svg(const std::vector<CompareRow>& rows,
                        const std::string& hash);
std::string optimize_svg(const std::vector<OptimizeCell>& cells,
                         const std::string& hash);

}  // namespace cvqkd
