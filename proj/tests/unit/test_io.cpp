#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ris/io.hpp"

using namespace ris;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("ris_io_test_" + name);
}

}  // namespace

TEST_CASE("channel instance round trip") {
    const ChannelInstance original =
        make_channel({0.9, -1.4}, {{1.2, 0.4}, {0.0, 2.9}, {2.1, -3.1}});
    const fs::path path = temp_file("roundtrip.json");
    save_channel_instance(original, path);
    const ChannelInstance loaded = load_channel_instance(path);
    CHECK(loaded.direct.beta == original.direct.beta);
    CHECK(loaded.direct.alpha == original.direct.alpha);
    REQUIRE(loaded.cascaded.size() == 3);
    for (size_t n = 0; n < 3; ++n) {
        CHECK(loaded.cascaded[n].beta == original.cascaded[n].beta);
        CHECK(loaded.cascaded[n].alpha == original.cascaded[n].alpha);
    }
    fs::remove(path);
}

TEST_CASE("channel instance diagnostics name the file and field") {
    const fs::path path = temp_file("bad_instance.json");
    {
        std::ofstream out(path);
        out << R"({"direct": {"beta": 1.0}, "cascaded": []})";
    }
    CHECK_THROWS_WITH_AS(load_channel_instance(path), doctest::Contains("alpha"),
                         std::runtime_error);
    {
        std::ofstream out(path);
        out << "{not json";
    }
    CHECK_THROWS_WITH_AS(load_channel_instance(path), doctest::Contains("bad_instance"),
                         std::runtime_error);
    CHECK_THROWS_AS(load_channel_instance(temp_file("missing.json")), std::runtime_error);
    fs::remove(path);
}

TEST_CASE("experiment spec parsing with defaults") {
    const fs::path path = temp_file("spec.json");
    {
        std::ofstream out(path);
        out << R"({"N": 16, "K": 3, "trials": 5, "seed": 11, "algorithms": ["apq", "alg1"]})";
    }
    const ExperimentSpec spec = load_experiment_spec(path);
    CHECK(spec.channel.n_elements == 16);
    CHECK(spec.k == 3);
    CHECK(spec.range == kTwoPi);
    CHECK(spec.profile.beta_min == 1.0);
    CHECK(spec.profile.alpha_r == 1.6);
    CHECK(spec.peak_aligned);
    CHECK(spec.trials == 5);
    CHECK(spec.channel.seed == 11);
    CHECK(spec.algorithms == std::vector<Algorithm>{Algorithm::apq, Algorithm::alg1});
    const CoefficientSet ws = coefficient_set_for(spec);
    CHECK(ws.size() == 3);
    for (double g : ws.gains) CHECK(g == 1.0);
    fs::remove(path);
}

TEST_CASE("experiment spec rejects unknown algorithms") {
    const fs::path path = temp_file("spec_bad_alg.json");
    {
        std::ofstream out(path);
        out << R"({"N": 4, "K": 2, "trials": 1, "seed": 0, "algorithms": ["newton"]})";
    }
    CHECK_THROWS_WITH_AS(load_experiment_spec(path), doctest::Contains("newton"),
                         std::runtime_error);
    fs::remove(path);
}

TEST_CASE("csv and json renderings carry the same values") {
    ResultDocument doc;
    doc.meta = {{"tool", std::string("ris")}, {"trials", static_cast<long long>(2)}};
    doc.data.columns = {"trial", "algorithm", "power", "flag", "empty"};
    doc.data.rows.push_back({Cell{static_cast<long long>(0)}, Cell{std::string("alg1")},
                             Cell{0.1234567890123456789}, Cell{true}, Cell{std::monostate{}}});
    doc.data.rows.push_back({Cell{static_cast<long long>(1)}, Cell{std::string("apq")},
                             Cell{-7.25e-11}, Cell{false}, Cell{std::monostate{}}});

    const std::string csv = render_csv(doc);
    const std::string json_text = render_json(doc);
    const auto j = nlohmann::json::parse(json_text);
    REQUIRE(j.at("data").size() == 2);

    // Re-parse the CSV by hand and compare field-for-field.
    std::vector<std::vector<std::string>> lines;
    {
        std::istringstream in(csv);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::vector<std::string> fields;
            std::istringstream ls(line);
            std::string field;
            while (std::getline(ls, field, ',')) fields.push_back(field);
            if (static_cast<int>(line.size()) > 0 && line.back() == ',') fields.push_back("");
            lines.push_back(std::move(fields));
        }
    }
    REQUIRE(lines.size() == 3);  // header + 2 rows
    CHECK(lines[0] == std::vector<std::string>{"trial", "algorithm", "power", "flag", "empty"});
    for (size_t r = 0; r < 2; ++r) {
        const auto& row = lines[r + 1];
        const auto& jrow = j.at("data").at(r);
        CHECK(std::stoll(row[0]) == jrow.at("trial").get<long long>());
        CHECK(row[1] == jrow.at("algorithm").get<std::string>());
        // 17 significant digits round-trip exactly.
        CHECK(std::strtod(row[2].c_str(), nullptr) == jrow.at("power").get<double>());
        CHECK((row[3] == "true") == jrow.at("flag").get<bool>());
        CHECK(jrow.at("empty").is_null());
    }
}

TEST_CASE("csv escapes embedded delimiters") {
    ResultDocument doc;
    doc.data.columns = {"name"};
    doc.data.rows.push_back({Cell{std::string("a,b\"c")}});
    const std::string csv = render_csv(doc);
    CHECK(csv.find("\"a,b\"\"c\"") != std::string::npos);
}

TEST_CASE("rendering is deterministic") {
    ResultDocument doc;
    doc.meta = {{"seed", static_cast<long long>(5)}};
    doc.data.columns = {"x"};
    doc.data.rows.push_back({Cell{1.5}});
    CHECK(render_csv(doc) == render_csv(doc));
    CHECK(render_json(doc) == render_json(doc));
}
