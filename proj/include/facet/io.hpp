#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "facet/experiments.hpp"
#include "facet/generators.hpp"
#include "facet/lp.hpp"

namespace facet {

/// On-disk instance: schema version, dimensions, row-major entries and
/// an optional plant sidecar carried verbatim through read/write.
struct NativeInstanceDocument {
  StandardFormLP lp;
  nlohmann::ordered_json plant;  // null when absent
};

/// Minimal free-format MPS subset: NAME, ROWS (N/E/G/L), COLUMNS, RHS,
/// BOUNDS limited to LO/UP/FR, ENDATA. Inequalities get slack columns
/// named _s<k>; bounded variables are shifted or boxed with extra rows;
/// free variables are split. Anything else is rejected loudly.
StandardFormLP parse_mps(const std::string& text);

NativeInstanceDocument read_native(const std::string& text);
std::string write_native(const NativeInstanceDocument& doc);

/// Wraps a generated instance, planting the construction metadata in
/// the sidecar so recovery experiments can verify against it.
NativeInstanceDocument to_document(const PlantedInstance& inst);

ExperimentConfig load_experiment_config(const std::string& json_text);

/// Command-line surface. Returns the process exit code: 0 success,
/// 1 usage error, 2 computation error, 3 assertion failure in the
/// theorem suite. Data goes to `out`, diagnostics to `err`.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err);

}  // namespace facet
