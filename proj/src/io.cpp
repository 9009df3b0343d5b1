#include "ris/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ris {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string cell_to_csv(const Cell& cell) {
    struct Visitor {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(const std::string& s) const { return csv_escape(s); }
    };
    return std::visit(Visitor{}, cell);
}

ordered_json cell_to_json(const Cell& cell) {
    struct Visitor {
        ordered_json operator()(std::monostate) const { return nullptr; }
        ordered_json operator()(bool b) const { return b; }
        ordered_json operator()(long long v) const { return v; }
        ordered_json operator()(double v) const { return v; }
        ordered_json operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, cell);
}

void append_table_csv(std::ostringstream& out, const DataTable& table) {
    for (size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out << ',';
        out << csv_escape(table.columns[c]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << cell_to_csv(row[c]);
        }
        out << '\n';
    }
}

ordered_json table_to_json(const DataTable& table) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json obj = ordered_json::object();
        for (size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
            obj[table.columns[c]] = cell_to_json(row[c]);
        }
        rows.push_back(std::move(obj));
    }
    return rows;
}

}  // namespace

std::string render_csv(const ResultDocument& doc) {
    std::ostringstream out;
    for (const auto& [key, value] : doc.meta) {
        out << "# " << key << '=' << cell_to_csv(value) << '\n';
    }
    append_table_csv(out, doc.data);
    if (doc.aggregates) {
        out << "# aggregates\n";
        append_table_csv(out, *doc.aggregates);
    }
    return out.str();
}

std::string render_json(const ResultDocument& doc) {
    ordered_json j;
    ordered_json meta = ordered_json::object();
    for (const auto& [key, value] : doc.meta) meta[key] = cell_to_json(value);
    j["meta"] = std::move(meta);
    j["data"] = table_to_json(doc.data);
    if (doc.aggregates) j["aggregates"] = table_to_json(*doc.aggregates);
    return j.dump(2) + "\n";
}

namespace {

ordered_json parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(path.string() + ": cannot open file");
    }
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

double require_number(const ordered_json& j, const std::string& field,
                      const std::filesystem::path& path) {
    if (!j.contains(field) || !j.at(field).is_number()) {
        throw std::runtime_error(path.string() + ": field '" + field +
                                 "' is missing or not a number");
    }
    return j.at(field).get<double>();
}

ChannelTap parse_tap(const ordered_json& j, const std::string& where,
                     const std::filesystem::path& path) {
    if (!j.is_object()) {
        throw std::runtime_error(path.string() + ": " + where + " must be an object");
    }
    return ChannelTap{require_number(j, "beta", path), require_number(j, "alpha", path)};
}

}  // namespace

ChannelInstance load_channel_instance(const std::filesystem::path& path) {
    const ordered_json j = parse_file(path);
    if (!j.is_object() || !j.contains("direct") || !j.contains("cascaded")) {
        throw std::runtime_error(path.string() +
                                 ": expected an object with 'direct' and 'cascaded' fields");
    }
    ChannelTap direct = parse_tap(j.at("direct"), "'direct'", path);
    if (!j.at("cascaded").is_array()) {
        throw std::runtime_error(path.string() + ": 'cascaded' must be an array");
    }
    std::vector<ChannelTap> cascaded;
    cascaded.reserve(j.at("cascaded").size());
    size_t index = 0;
    for (const auto& tap : j.at("cascaded")) {
        cascaded.push_back(parse_tap(tap, "'cascaded[" + std::to_string(index) + "]'", path));
        ++index;
    }
    try {
        return make_channel(direct, std::move(cascaded));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

void save_channel_instance(const ChannelInstance& channel, const std::filesystem::path& path) {
    ordered_json j;
    j["direct"] = {{"beta", channel.direct.beta}, {"alpha", channel.direct.alpha}};
    ordered_json cascaded = ordered_json::array();
    for (const auto& tap : channel.cascaded) {
        cascaded.push_back({{"beta", tap.beta}, {"alpha", tap.alpha}});
    }
    j["cascaded"] = std::move(cascaded);
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path.string() + ": cannot open file for writing");
    out << j.dump(2) << '\n';
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
    const ordered_json j = parse_file(path);
    if (!j.is_object()) {
        throw std::runtime_error(path.string() + ": expected a configuration object");
    }
    ExperimentSpec spec;
    spec.channel.n_elements = static_cast<int>(require_number(j, "N", path));
    spec.k = static_cast<int>(require_number(j, "K", path));
    spec.range = j.contains("R") ? require_number(j, "R", path) : kTwoPi;
    spec.profile.beta_min = j.contains("beta_min") ? require_number(j, "beta_min", path) : 1.0;
    spec.profile.alpha_r = j.contains("alpha_r") ? require_number(j, "alpha_r", path) : 1.6;
    spec.profile.phi_r = j.contains("phi_r") ? require_number(j, "phi_r", path) : kPi / 2.0;
    if (j.contains("peak_aligned")) {
        if (!j.at("peak_aligned").is_boolean()) {
            throw std::runtime_error(path.string() + ": field 'peak_aligned' must be a boolean");
        }
        spec.peak_aligned = j.at("peak_aligned").get<bool>();
    }
    spec.channel.rician_kappa = j.contains("kappa") ? require_number(j, "kappa", path) : 0.0;
    spec.trials = static_cast<int>(require_number(j, "trials", path));
    spec.channel.seed = static_cast<std::uint64_t>(require_number(j, "seed", path));
    spec.channel.direct_power =
        j.contains("direct_power") ? require_number(j, "direct_power", path) : 1.0;
    spec.channel.element_power =
        j.contains("element_power") ? require_number(j, "element_power", path) : 1.0;

    if (!j.contains("algorithms") || !j.at("algorithms").is_array() ||
        j.at("algorithms").empty()) {
        throw std::runtime_error(path.string() + ": field 'algorithms' must be a nonempty array");
    }
    for (const auto& name : j.at("algorithms")) {
        if (!name.is_string()) {
            throw std::runtime_error(path.string() + ": algorithm names must be strings");
        }
        const auto algorithm = algorithm_from_string(name.get<std::string>());
        if (!algorithm) {
            throw std::runtime_error(path.string() + ": unknown algorithm '" +
                                     name.get<std::string>() +
                                     "' (expected alg1|apq|eapq|exhaustive)");
        }
        spec.algorithms.push_back(*algorithm);
    }
    for (const char* field : {"percentiles", "cdf_grid"}) {
        if (!j.contains(field)) continue;
        if (!j.at(field).is_array()) {
            throw std::runtime_error(path.string() + ": field '" + std::string(field) +
                                     "' must be an array of numbers");
        }
        auto& dst = std::string(field) == "percentiles" ? spec.options.percentiles
                                                        : spec.options.cdf_grid;
        for (const auto& v : j.at(field)) {
            if (!v.is_number()) {
                throw std::runtime_error(path.string() + ": field '" + std::string(field) +
                                         "' must contain numbers only");
            }
            dst.push_back(v.get<double>());
        }
    }
    if (j.contains("exhaustive_budget")) {
        spec.options.exhaustive_budget =
            static_cast<std::uint64_t>(require_number(j, "exhaustive_budget", path));
    }
    if (j.contains("threads")) {
        spec.options.threads = static_cast<int>(require_number(j, "threads", path));
    }
    return spec;
}

CoefficientSet coefficient_set_for(const ExperimentSpec& spec) {
    const PhaseShiftSet phases = build_phase_set(spec.k, spec.range);
    const PdaProfile profile =
        make_pda_profile(spec.profile.beta_min, spec.profile.alpha_r, spec.profile.phi_r);
    const double offset = spec.peak_aligned ? 0.0 : literal_peak_offset(phases, profile);
    return build_coefficient_set(phases, profile, offset);
}

}  // namespace ris
