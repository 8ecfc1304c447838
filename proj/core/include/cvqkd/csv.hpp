#pragma once

#include <string>
#include <vector>

#include "cvqkd/analysis.hpp"
#include "cvqkd/montecarlo.hpp"

namespace cvqkd {

// Comma separator, \n line endings, mandatory header with units in
// brackets. Values carry 12 significant digits except the Monte Carlo
// dataset, which uses shortest round-trip formatting.
std::string to_csv(const std::vector<GridCell>& cells);
std::string to_csv(const std::vector<ToleranceCell>& cells);
std::string to_csv(const std::vector<CompareRow>& rows);
std::string to_csv(const std::vector<OptimizeCell>& cells);
std::string to_csv(const McDataset& ds);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace cvqkd
