#pragma once

#include <string>
#include <vector>

#include "cvqkd/config.hpp"
#include "cvqkd/montecarlo.hpp"

namespace cvqkd {

// JSON documents with sorted keys: payload under "results" plus the
// canonical config text and {tool_version, params_hash} metadata, enough to
// reproduce the run byte for byte.
std::string to_json(const KeyRateReport& report, const RunConfig& cfg);
std::string to_json(const std::vector<GridCell>& cells, const RunConfig& cfg);
std::string to_json(const std::vector<ToleranceCell>& cells,
                    const RunConfig& cfg);
std::string to_json(const std::vector<CompareRow>& rows, const RunConfig& cfg);
std::string to_json(const std::vector<OptimizeCell>& cells,
                    const RunConfig& cfg);
std::string to_json(const McValidateReport& report, const McDataset& ds,
                    const RunConfig& cfg);

}  // namespace cvqkd
