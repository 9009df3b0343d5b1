#include "ris/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ris/quantize.hpp"

namespace ris {

double TrialRng::next_rayleigh(double mean_square) {
    // log1p(-u) = ln(1 - u) with 1 - u in (0, 1], so the argument never hits 0.
    return std::sqrt(-mean_square * std::log1p(-next_unit()));
}

ChannelInstance generate_channel(const ChannelModelConfig& config, std::uint64_t trial_index) {
    if (config.n_elements < 0) {
        throw std::invalid_argument("generate_channel: negative element count");
    }
    if (!(config.direct_power >= 0.0) || !(config.element_power >= 0.0)) {
        throw std::invalid_argument("generate_channel: channel powers must be nonnegative");
    }
    if (config.rician_kappa != 0.0) {
        throw std::invalid_argument(
            "generate_channel: only pure scattering (kappa = 0) is implemented");
    }
    TrialRng rng(config.seed, trial_index);
    ChannelInstance channel;
    if (config.direct_power > 0.0) {
        channel.direct.beta = rng.next_rayleigh(config.direct_power);
        channel.direct.alpha = rng.next_angle();
    }
    channel.cascaded.resize(static_cast<size_t>(config.n_elements));
    for (auto& tap : channel.cascaded) {
        tap.beta = rng.next_rayleigh(config.element_power);
        tap.alpha = rng.next_angle();
    }
    return channel;
}

std::string to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::alg1: return "alg1";
        case Algorithm::apq: return "apq";
        case Algorithm::eapq: return "eapq";
        case Algorithm::exhaustive: return "exhaustive";
    }
    return "unknown";
}

std::optional<Algorithm> algorithm_from_string(std::string_view name) {
    if (name == "alg1") return Algorithm::alg1;
    if (name == "apq") return Algorithm::apq;
    if (name == "eapq") return Algorithm::eapq;
    if (name == "exhaustive") return Algorithm::exhaustive;
    return std::nullopt;
}

namespace {

BeamformingSolution solve_with(Algorithm algorithm, const ChannelInstance& channel,
                               const CoefficientSet& ws, std::uint64_t budget) {
    switch (algorithm) {
        case Algorithm::alg1: return sweep_optimize(channel, ws);
        case Algorithm::apq: return apq_solve(channel, ws);
        case Algorithm::eapq: return eapq_solve(channel, ws);
        case Algorithm::exhaustive: return exhaustive_search(channel, ws, budget);
    }
    throw std::logic_error("solve_with: unhandled algorithm");
}

}  // namespace

ExperimentResult run_monte_carlo(const ChannelModelConfig& config, const CoefficientSet& ws,
                                 const std::vector<Algorithm>& algorithms, int trials,
                                 const MonteCarloOptions& options) {
    if (trials < 1) throw std::invalid_argument("run_monte_carlo: need at least one trial");
    if (algorithms.empty()) throw std::invalid_argument("run_monte_carlo: no algorithms given");
    if (!std::is_sorted(options.cdf_grid.begin(), options.cdf_grid.end())) {
        throw std::invalid_argument("run_monte_carlo: cdf grid must be sorted");
    }
    // Refuse oversized exhaustive sweeps up front rather than per trial.
    if (std::find(algorithms.begin(), algorithms.end(), Algorithm::exhaustive) !=
        algorithms.end()) {
        const double required = std::pow(static_cast<double>(ws.size()), config.n_elements);
        if (required > static_cast<double>(options.exhaustive_budget)) {
            throw ExhaustiveBudgetError(required, options.exhaustive_budget);
        }
    }

    const size_t per_trial = algorithms.size();
    ExperimentResult result;
    result.records.resize(static_cast<size_t>(trials) * per_trial);

    int thread_count = options.threads > 0
                           ? options.threads
                           : static_cast<int>(std::thread::hardware_concurrency());
    thread_count = std::clamp(thread_count, 1, trials);

    std::atomic<int> next_trial{0};
    std::mutex failure_mutex;
    std::string failure;

    auto worker = [&] {
        for (int trial; (trial = next_trial.fetch_add(1)) < trials;) {
            try {
                const ChannelInstance channel =
                    generate_channel(config, static_cast<std::uint64_t>(trial));
                const double denom = ideal_phases(channel).max_power;
                for (size_t a = 0; a < per_trial; ++a) {
                    const BeamformingSolution sol =
                        solve_with(algorithms[a], channel, ws, options.exhaustive_budget);
                    TrialRecord& rec = result.records[static_cast<size_t>(trial) * per_trial + a];
                    rec.trial = trial;
                    rec.algorithm = algorithms[a];
                    rec.power = sol.power;
                    rec.snr_boost = sol.snr_boost;
                    rec.normalized_power = denom > 0.0 ? sol.power / denom : 0.0;
                    rec.steps = sol.steps;
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (failure.empty()) {
                    failure = "trial " + std::to_string(trial) + ": " + e.what();
                }
                return;
            }
        }
    };

    if (thread_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(thread_count));
        for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (!failure.empty()) throw std::runtime_error("run_monte_carlo: " + failure);

    // Reduce in trial order; independent of the thread count.
    for (size_t a = 0; a < per_trial; ++a) {
        AlgorithmSummary summary;
        summary.algorithm = algorithms[a];
        std::vector<double> metric(static_cast<size_t>(trials));
        double power_sum = 0.0;
        double norm_sum = 0.0;
        double snr_sum = 0.0;
        bool snr_all_defined = true;
        for (int trial = 0; trial < trials; ++trial) {
            const TrialRecord& rec = result.records[static_cast<size_t>(trial) * per_trial + a];
            power_sum += rec.power;
            norm_sum += rec.normalized_power;
            if (rec.snr_boost) {
                snr_sum += *rec.snr_boost;
            } else {
                snr_all_defined = false;
            }
            metric[static_cast<size_t>(trial)] =
                rec.snr_boost ? *rec.snr_boost : rec.normalized_power;
        }
        summary.mean_power = power_sum / trials;
        summary.mean_normalized_power = norm_sum / trials;
        if (snr_all_defined) summary.mean_snr_boost = snr_sum / trials;
        if (!options.cdf_grid.empty()) summary.cdf = empirical_cdf(metric, options.cdf_grid);
        for (double p : options.percentiles) {
            summary.percentile_values.push_back(percentile(metric, p));
        }
        result.summaries.push_back(std::move(summary));
    }
    return result;
}

std::vector<double> empirical_cdf(const std::vector<double>& values,
                                  const std::vector<double>& grid) {
    if (!std::is_sorted(grid.begin(), grid.end())) {
        throw std::invalid_argument("empirical_cdf: grid must be sorted");
    }
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> cdf;
    cdf.reserve(grid.size());
    for (double g : grid) {
        const auto at_most = std::upper_bound(sorted.begin(), sorted.end(), g) - sorted.begin();
        cdf.push_back(sorted.empty() ? 0.0
                                     : static_cast<double>(at_most) /
                                           static_cast<double>(sorted.size()));
    }
    return cdf;
}

double percentile(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("percentile: empty input");
    if (!(p > 0.0 && p < 100.0)) {
        throw std::invalid_argument("percentile: p must lie in (0, 100)");
    }
    std::sort(values.begin(), values.end());
    const auto n = static_cast<long long>(values.size());
    long long rank = static_cast<long long>(std::ceil(p / 100.0 * static_cast<double>(n)));
    rank = std::clamp(rank, 1LL, n);
    return values[static_cast<size_t>(rank - 1)];
}

}  // namespace ris
