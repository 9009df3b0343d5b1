// Command-line front end: single-instance solving, oracle validation,
// Monte-Carlo campaigns, analytic tables, and boundary inspection, emitting
// plot-ready CSV or JSON.
//
// Exit codes: 0 success, 1 validation failure (optimality gap), 2 usage or
// parse error.

#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ris/analysis.hpp"
#include "ris/core.hpp"
#include "ris/experiment.hpp"
#include "ris/io.hpp"
#include "ris/quantize.hpp"
#include "ris/search.hpp"

namespace {

using namespace ris;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitUsage = 2;

struct OutputOptions {
    std::string format = "csv";
    std::string out_path;
    bool degrees = false;

    // Angle conversions at the CLI boundary; the library is radians-only.
    double in(double angle) const { return degrees ? angle * kPi / 180.0 : angle; }
    double out(double angle) const { return degrees ? angle * 180.0 / kPi : angle; }
};

struct SetOptions {
    int k = 4;
    double range = kTwoPi;
    double beta_min = 1.0;
    double alpha_r = 1.6;
    double phi_r = kPi / 2.0;
    double peak_offset = 0.0;
    bool literal_sampling = false;

    CoefficientSet make(const OutputOptions& output) const {
        const PhaseShiftSet phases = build_phase_set(k, output.in(range));
        const PdaProfile profile = make_pda_profile(beta_min, alpha_r, output.in(phi_r));
        const double offset = literal_sampling ? literal_peak_offset(phases, profile)
                                               : output.in(peak_offset);
        return build_coefficient_set(phases, profile, offset);
    }

    void echo(MetaList& meta, const OutputOptions& output) const {
        meta.emplace_back("K", static_cast<long long>(k));
        meta.emplace_back("R", output.in(range));
        meta.emplace_back("beta_min", beta_min);
        meta.emplace_back("alpha_r", alpha_r);
        meta.emplace_back("phi_r", output.in(phi_r));
        meta.emplace_back("peak_offset", output.in(peak_offset));
        meta.emplace_back("literal_sampling", literal_sampling);
    }
};

void add_set_options(CLI::App* cmd, SetOptions& set) {
    cmd->add_option("--K", set.k, "Number of discrete phases (>= 2)");
    cmd->add_option("--R", set.range, "Phase range in radians (default 2*pi)");
    cmd->add_option("--beta-min", set.beta_min, "Minimum element gain in [0, 1]");
    cmd->add_option("--alpha-r", set.alpha_r, "Amplitude-law steepness (>= 0)");
    cmd->add_option("--phi-r", set.phi_r, "Amplitude-law rotation (default pi/2)");
    cmd->add_option("--peak-offset", set.peak_offset,
                    "Rotation of the gain peak relative to the first phase");
    cmd->add_flag("--literal-sampling", set.literal_sampling,
                  "Sample the amplitude law at the raw phases instead of peak-aligned");
}

void add_output_options(CLI::App* cmd, OutputOptions& output) {
    cmd->add_option("--format", output.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", output.out_path, "Write the result to a file instead of stdout");
    cmd->add_flag("--degrees", output.degrees,
                  "Interpret angle-valued flags and emit angle columns in degrees");
}

void emit(const ResultDocument& doc, const OutputOptions& output) {
    const std::string text = output.format == "json" ? render_json(doc) : render_csv(doc);
    if (output.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output.out_path, std::ios::binary);
    if (!out) throw std::runtime_error(output.out_path + ": cannot open for writing");
    out << text;
}

MetaList base_meta(const std::string& command) {
    return MetaList{{"tool", std::string("ris")},
                    {"version", std::string(kToolVersion)},
                    {"command", command}};
}

Cell optional_cell(const std::optional<double>& v) {
    if (v) return Cell{*v};
    return Cell{std::monostate{}};
}

int cmd_solve(const std::string& instance_path, const std::string& algorithm_name,
              std::uint64_t budget, const SetOptions& set, const OutputOptions& output) {
    const auto algorithm = algorithm_from_string(algorithm_name);
    if (!algorithm) {
        std::cerr << "ris solve: unknown algorithm '" << algorithm_name
                  << "' (expected alg1|apq|eapq|exhaustive)\n";
        return kExitUsage;
    }
    const ChannelInstance channel = load_channel_instance(instance_path);
    const CoefficientSet ws = set.make(output);

    BeamformingSolution sol;
    switch (*algorithm) {
        case Algorithm::alg1: sol = sweep_optimize(channel, ws); break;
        case Algorithm::apq: sol = apq_solve(channel, ws); break;
        case Algorithm::eapq: sol = eapq_solve(channel, ws); break;
        case Algorithm::exhaustive: sol = exhaustive_search(channel, ws, budget); break;
    }
    if (*algorithm == Algorithm::alg1 && !sol.certified_optimal) {
        std::cerr << "warning: coefficient set is not locally convex; "
                     "the sweep result is not certified optimal\n";
    }

    ResultDocument doc;
    doc.meta = base_meta("solve");
    doc.meta.emplace_back("instance", instance_path);
    doc.meta.emplace_back("algorithm", to_string(*algorithm));
    set.echo(doc.meta, output);

    doc.data.columns = {"key", "value"};
    auto add = [&](const std::string& key, Cell value) {
        doc.data.rows.push_back({Cell{key}, std::move(value)});
    };
    add("power", Cell{sol.power});
    add("snr_boost", optional_cell(sol.snr_boost));
    add("g_re", Cell{sol.g.real()});
    add("g_im", Cell{sol.g.imag()});
    add("steps", Cell{sol.steps});
    add("schedule_size", Cell{static_cast<long long>(sol.schedule_size)});
    add("certified_optimal", Cell{sol.certified_optimal});
    if (!std::isnan(sol.mu_angle)) add("mu_angle", Cell{output.out(sol.mu_angle)});
    for (size_t n = 0; n < sol.selections.size(); ++n) {
        const int k = sol.selections[n];
        add("selection[" + std::to_string(n) + "]", Cell{static_cast<long long>(k)});
        add("phase[" + std::to_string(n) + "]",
            Cell{output.out(ws.phases.phases[static_cast<size_t>(k)])});
        if (!sol.quantization_errors.empty()) {
            add("delta[" + std::to_string(n) + "]", Cell{output.out(sol.quantization_errors[n])});
        }
    }
    emit(doc, output);
    return kExitOk;
}

int cmd_validate(int n, int trials, std::uint64_t seed, double direct_power,
                 double element_power, double tolerance, std::uint64_t budget, int threads,
                 const SetOptions& set, const OutputOptions& output) {
    const CoefficientSet ws = set.make(output);
    ChannelModelConfig config;
    config.n_elements = n;
    config.direct_power = direct_power;
    config.element_power = element_power;
    config.seed = seed;

    MonteCarloOptions options;
    options.exhaustive_budget = budget;
    options.threads = threads;
    const ExperimentResult result = run_monte_carlo(
        config, ws, {Algorithm::alg1, Algorithm::exhaustive}, trials, options);

    ResultDocument doc;
    doc.meta = base_meta("validate");
    doc.meta.emplace_back("N", static_cast<long long>(n));
    doc.meta.emplace_back("trials", static_cast<long long>(trials));
    doc.meta.emplace_back("seed", static_cast<long long>(seed));
    doc.meta.emplace_back("tolerance", tolerance);
    set.echo(doc.meta, output);

    doc.data.columns = {"trial", "alg1_power", "exhaustive_power", "relative_gap"};
    double max_gap = 0.0;
    double gap_sum = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        const TrialRecord& a = result.records[static_cast<size_t>(trial) * 2];
        const TrialRecord& e = result.records[static_cast<size_t>(trial) * 2 + 1];
        const double gap = e.power > 0.0 ? std::abs(e.power - a.power) / e.power : 0.0;
        max_gap = std::max(max_gap, gap);
        gap_sum += gap;
        doc.data.rows.push_back({Cell{static_cast<long long>(trial)}, Cell{a.power},
                                 Cell{e.power}, Cell{gap}});
    }
    DataTable summary;
    summary.columns = {"max_gap", "mean_gap", "trials", "certified"};
    summary.rows.push_back({Cell{max_gap}, Cell{gap_sum / trials},
                            Cell{static_cast<long long>(trials)}, Cell{ws.locally_convex}});
    doc.aggregates = std::move(summary);
    emit(doc, output);

    std::cerr << "validate: max_gap=" << max_gap << " mean_gap=" << gap_sum / trials
              << " trials=" << trials << (ws.locally_convex ? "" : " (uncertified set)") << "\n";
    const bool failed = ws.locally_convex && max_gap > tolerance;
    return failed ? kExitValidationFailure : kExitOk;
}

int cmd_loss_table(const std::vector<double>& beta_mins, const std::vector<int>& ks,
                   double alpha_r, bool literal_sampling, const OutputOptions& output) {
    ResultDocument doc;
    doc.meta = base_meta("loss-table");
    doc.meta.emplace_back("alpha_r", alpha_r);
    doc.meta.emplace_back("literal_sampling", literal_sampling);

    doc.data.columns = {"beta_min", "K", "e_pda", "loss_db", "gain_loss_db",
                        "quantization_loss_db"};
    for (double beta_min : beta_mins) {
        for (int k : ks) {
            const PhaseShiftSet phases = build_phase_set(k, kTwoPi);
            const PdaProfile profile = make_pda_profile(beta_min, alpha_r);
            const double offset =
                literal_sampling ? literal_peak_offset(phases, profile) : 0.0;
            const CoefficientSet ws = build_coefficient_set(phases, profile, offset);
            const RatioReport report = approx_ratio_uniform(ws);
            const LossDecomposition parts = loss_db_decomposition(ws);
            doc.data.rows.push_back({Cell{beta_min}, Cell{static_cast<long long>(k)},
                                     Cell{report.e_pda}, Cell{report.loss_db},
                                     Cell{parts.gain_loss_db}, Cell{parts.quantization_loss_db}});
        }
    }
    emit(doc, output);
    return kExitOk;
}

std::string format_number_label(double p) {
    std::string s = std::to_string(p);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

int cmd_montecarlo(const std::string& config_path, const OutputOptions& output) {
    const ExperimentSpec spec = load_experiment_spec(config_path);
    const CoefficientSet ws = coefficient_set_for(spec);
    const ExperimentResult result =
        run_monte_carlo(spec.channel, ws, spec.algorithms, spec.trials, spec.options);

    ResultDocument doc;
    doc.meta = base_meta("montecarlo");
    doc.meta.emplace_back("config", config_path);
    doc.meta.emplace_back("N", static_cast<long long>(spec.channel.n_elements));
    doc.meta.emplace_back("K", static_cast<long long>(spec.k));
    doc.meta.emplace_back("R", spec.range);
    doc.meta.emplace_back("beta_min", spec.profile.beta_min);
    doc.meta.emplace_back("alpha_r", spec.profile.alpha_r);
    doc.meta.emplace_back("phi_r", spec.profile.phi_r);
    doc.meta.emplace_back("peak_aligned", spec.peak_aligned);
    doc.meta.emplace_back("kappa", spec.channel.rician_kappa);
    doc.meta.emplace_back("direct_power", spec.channel.direct_power);
    doc.meta.emplace_back("element_power", spec.channel.element_power);
    doc.meta.emplace_back("trials", static_cast<long long>(spec.trials));
    doc.meta.emplace_back("seed", static_cast<long long>(spec.channel.seed));

    doc.data.columns = {"trial", "algorithm", "power", "snr_boost", "normalized_power", "steps"};
    for (const TrialRecord& rec : result.records) {
        doc.data.rows.push_back({Cell{static_cast<long long>(rec.trial)},
                                 Cell{to_string(rec.algorithm)}, Cell{rec.power},
                                 optional_cell(rec.snr_boost), Cell{rec.normalized_power},
                                 Cell{rec.steps}});
    }

    DataTable aggregates;
    aggregates.columns = {"algorithm", "mean_power", "mean_normalized_power", "mean_snr_boost"};
    for (double p : spec.options.percentiles) {
        aggregates.columns.push_back("p" + format_number_label(p));
    }
    for (double g : spec.options.cdf_grid) {
        aggregates.columns.push_back("cdf@" + format_number_label(g));
    }
    for (const AlgorithmSummary& s : result.summaries) {
        std::vector<Cell> row{Cell{to_string(s.algorithm)}, Cell{s.mean_power},
                              Cell{s.mean_normalized_power}, optional_cell(s.mean_snr_boost)};
        for (double v : s.percentile_values) row.push_back(Cell{v});
        for (double v : s.cdf) row.push_back(Cell{v});
        aggregates.rows.push_back(std::move(row));
    }
    doc.aggregates = std::move(aggregates);
    emit(doc, output);
    return kExitOk;
}

int cmd_boundaries(const SetOptions& set, const OutputOptions& output) {
    const CoefficientSet ws = set.make(output);
    const BoundaryAngles ba = boundary_offsets(ws);

    ResultDocument doc;
    doc.meta = base_meta("boundaries");
    set.echo(doc.meta, output);
    doc.data.columns = {"k", "phase", "gain", "delta", "s_angle"};
    for (int k = 0; k < ws.size(); ++k) {
        doc.data.rows.push_back({Cell{static_cast<long long>(k)},
                                 Cell{output.out(ws.phases.phases[static_cast<size_t>(k)])},
                                 Cell{ws.gains[static_cast<size_t>(k)]},
                                 Cell{output.out(ba.deltas[static_cast<size_t>(k)])},
                                 Cell{output.out(ba.s_angles[static_cast<size_t>(k)])}});
    }
    emit(doc, output);
    return kExitOk;
}

int cmd_ratios(const std::vector<int>& ks, const std::vector<double>& ranges, double beta_min,
               double alpha_r, bool literal_sampling, bool include_continuous,
               const OutputOptions& output) {
    ResultDocument doc;
    doc.meta = base_meta("ratios");
    doc.meta.emplace_back("beta_min", beta_min);
    doc.meta.emplace_back("alpha_r", alpha_r);
    doc.meta.emplace_back("literal_sampling", literal_sampling);

    const PdaProfile profile = make_pda_profile(beta_min, alpha_r);
    doc.data.columns = {"K", "R", "regime", "e_pda", "loss_db"};
    for (int k : ks) {
        for (double range_flag : ranges) {
            const double range = output.in(range_flag);
            const PhaseShiftSet phases = build_phase_set(k, range);
            const double offset =
                literal_sampling ? literal_peak_offset(phases, profile) : 0.0;
            const CoefficientSet ws = build_coefficient_set(phases, profile, offset);
            const RatioReport report = phases.regime == PhaseRegime::uniform
                                           ? approx_ratio_uniform(ws)
                                           : approx_ratio_limited(ws, range);
            doc.data.rows.push_back(
                {Cell{static_cast<long long>(k)}, Cell{output.out(range)},
                 Cell{std::string(report.regime == RatioRegime::uniform ? "uniform" : "limited")},
                 Cell{report.e_pda}, Cell{report.loss_db}});
        }
    }
    if (include_continuous) {
        const RatioReport report = approx_ratio_continuous(profile);
        doc.data.rows.push_back({Cell{std::monostate{}}, Cell{std::monostate{}},
                                 Cell{std::string("continuous")}, Cell{report.e_pda},
                                 Cell{report.loss_db}});
    }
    emit(doc, output);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS discrete-beamforming optimizer and analysis toolkit"};
    app.require_subcommand(1);

    OutputOptions output;
    SetOptions set;

    // solve
    std::string instance_path;
    std::string algorithm_name = "alg1";
    std::uint64_t budget = kDefaultExhaustiveBudget;
    CLI::App* solve = app.add_subcommand("solve", "Optimize a single channel instance");
    solve->add_option("--instance", instance_path, "Channel instance file (JSON)")->required();
    solve->add_option("--algorithm", algorithm_name, "alg1|apq|eapq|exhaustive");
    solve->add_option("--budget", budget, "Evaluation budget for exhaustive search");
    add_set_options(solve, set);
    add_output_options(solve, output);

    // validate
    int validate_n = 10;
    int validate_trials = 100;
    std::uint64_t validate_seed = 1;
    double direct_power = 1.0;
    double element_power = 1.0;
    double tolerance = 1e-9;
    int threads = 0;
    CLI::App* validate =
        app.add_subcommand("validate", "Compare the sweep against exhaustive search");
    validate->add_option("--N", validate_n, "Number of RIS elements");
    validate->add_option("--trials", validate_trials, "Number of random channel trials");
    validate->add_option("--seed", validate_seed, "Channel seed");
    validate->add_option("--direct-power", direct_power, "E[beta_0^2] (0 disables)");
    validate->add_option("--element-power", element_power, "E[beta_n^2]");
    validate->add_option("--tol", tolerance, "Maximum allowed relative power gap");
    validate->add_option("--budget", budget, "Evaluation budget for exhaustive search");
    validate->add_option("--threads", threads, "Worker threads (0 = hardware)");
    add_set_options(validate, set);
    add_output_options(validate, output);

    // loss-table
    std::vector<double> beta_mins{0.2, 0.5, 0.8};
    std::vector<int> table_ks{2, 3, 4, 6, 8};
    double table_alpha = 1.6;
    bool literal_sampling = false;
    CLI::App* loss_table =
        app.add_subcommand("loss-table", "Closed-form dB loss per (beta_min, K)");
    loss_table->add_option("--beta-min", beta_mins, "Attenuation levels")->delimiter(',');
    loss_table->add_option("--K", table_ks, "Phase counts")->delimiter(',');
    loss_table->add_option("--alpha-r", table_alpha, "Amplitude-law steepness");
    loss_table->add_flag("--literal-sampling", literal_sampling,
                         "Sample the amplitude law at the raw phases");
    add_output_options(loss_table, output);

    // montecarlo
    std::string config_path;
    CLI::App* montecarlo = app.add_subcommand("montecarlo", "Run a Monte-Carlo campaign");
    montecarlo->add_option("--config", config_path, "Experiment config file (JSON)")->required();
    add_output_options(montecarlo, output);

    // boundaries
    CLI::App* boundaries =
        app.add_subcommand("boundaries", "Inspect per-phase decision boundaries");
    add_set_options(boundaries, set);
    add_output_options(boundaries, output);

    // ratios
    std::vector<int> ratio_ks{2, 3, 4, 8};
    std::vector<double> ratio_ranges{kTwoPi};
    double ratio_beta_min = 1.0;
    double ratio_alpha = 1.6;
    bool include_continuous = false;
    CLI::App* ratios = app.add_subcommand("ratios", "Closed-form approximation ratios");
    ratios->add_option("--K", ratio_ks, "Phase counts")->delimiter(',');
    ratios->add_option("--R", ratio_ranges, "Phase ranges in radians")->delimiter(',');
    ratios->add_option("--beta-min", ratio_beta_min, "Minimum element gain");
    ratios->add_option("--alpha-r", ratio_alpha, "Amplitude-law steepness");
    ratios->add_flag("--literal-sampling", literal_sampling,
                     "Sample the amplitude law at the raw phases");
    ratios->add_flag("--continuous", include_continuous, "Append the continuous-phase limit");
    add_output_options(ratios, output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    // With --degrees the radian defaults of unset angle flags switch to their
    // degree equivalents, so in() maps them back unchanged.
    if (output.degrees) {
        for (CLI::App* sub : {solve, validate, boundaries}) {
            if (!sub->parsed()) continue;
            if (sub->count("--R") == 0) set.range = 360.0;
            if (sub->count("--phi-r") == 0) set.phi_r = 90.0;
        }
        if (ratios->parsed() && ratios->count("--R") == 0) ratio_ranges = {360.0};
    }

    try {
        if (solve->parsed()) return cmd_solve(instance_path, algorithm_name, budget, set, output);
        if (validate->parsed()) {
            return cmd_validate(validate_n, validate_trials, validate_seed, direct_power,
                                element_power, tolerance, budget, threads, set, output);
        }
        if (loss_table->parsed()) {
            return cmd_loss_table(beta_mins, table_ks, table_alpha, literal_sampling, output);
        }
        if (montecarlo->parsed()) return cmd_montecarlo(config_path, output);
        if (boundaries->parsed()) return cmd_boundaries(set, output);
        if (ratios->parsed()) {
            return cmd_ratios(ratio_ks, ratio_ranges, ratio_beta_min, ratio_alpha,
                              literal_sampling, include_continuous, output);
        }
    } catch (const std::exception& e) {
        std::cerr << "ris: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
