#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ris/core.hpp"
#include "ris/experiment.hpp"

namespace ris {

inline constexpr const char* kToolVersion = "0.1.0";

// One tabular value; monostate renders as an empty CSV field / JSON null.
using Cell = std::variant<std::monostate, bool, long long, double, std::string>;

struct DataTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

using MetaList = std::vector<std::pair<std::string, Cell>>;

// A command result: configuration echo, the primary table, and an optional
// aggregate table. Rendering is deterministic (no timestamps), so repeated
// runs produce byte-identical files.
struct ResultDocument {
    MetaList meta;
    DataTable data;
    std::optional<DataTable> aggregates;
};

// Meta as leading '# key=value' comment lines, then a mandatory header row and
// the data rows; the aggregate table follows after a '# aggregates' marker.
// Doubles are printed with 17 significant digits so they round-trip exactly.
std::string render_csv(const ResultDocument& doc);

// Single JSON document {"meta": {...}, "data": [...]} with an optional
// "aggregates" array; rows are objects keyed by column name.
std::string render_json(const ResultDocument& doc);

// Channel instance file: {"direct": {"beta", "alpha"}, "cascaded": [...]},
// angles in radians. Parse problems surface as errors naming the file and the
// offending field or byte position.
ChannelInstance load_channel_instance(const std::filesystem::path& path);
void save_channel_instance(const ChannelInstance& channel, const std::filesystem::path& path);

// Monte-Carlo campaign description (see README for the schema).
struct ExperimentSpec {
    ChannelModelConfig channel;
    int k = 4;
    double range = kTwoPi;
    PdaProfile profile;
    bool peak_aligned = true;
    int trials = 1;
    std::vector<Algorithm> algorithms;
    MonteCarloOptions options;
};

ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

// Coefficient set a spec describes: peak-aligned sampling by default, the
// literal profile otherwise.
CoefficientSet coefficient_set_for(const ExperimentSpec& spec);

}  // namespace ris
