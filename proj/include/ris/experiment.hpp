#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ris/core.hpp"
#include "ris/search.hpp"

namespace ris {

// Random channel law: angles uniform on [-pi, pi), magnitudes Rayleigh with
// the configured mean squares. kappa is reserved for a line-of-sight
// component; only pure scattering (kappa = 0) is implemented.
struct ChannelModelConfig {
    int n_elements = 0;
    double direct_power = 1.0;   // E[beta_0^2]; zero disables the direct link
    double element_power = 1.0;  // E[beta_n^2]
    double rician_kappa = 0.0;
    std::uint64_t seed = 0;
};

// Counter-based SplitMix64 stream keyed by (seed, stream index), so a trial's
// draws depend only on (seed, trial) and never on execution order.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t stream)
        : state_(mix(seed + 0x9E3779B97F4A7C15ULL * (stream + 1))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }
    // Uniform on [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    // Uniform on [-pi, pi).
    double next_angle() { return -kPi + next_unit() * kTwoPi; }
    // Rayleigh via inverse CDF, E[x^2] = mean_square.
    double next_rayleigh(double mean_square);

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }
    std::uint64_t state_;
};

// Deterministic in (config.seed, trial_index). Draw order: direct magnitude
// then angle (skipped entirely when direct_power is zero), then per element
// magnitude then angle.
ChannelInstance generate_channel(const ChannelModelConfig& config, std::uint64_t trial_index);

enum class Algorithm { alg1, apq, eapq, exhaustive };

std::string to_string(Algorithm algorithm);
std::optional<Algorithm> algorithm_from_string(std::string_view name);

struct TrialRecord {
    int trial = 0;
    Algorithm algorithm = Algorithm::alg1;
    double power = 0.0;
    std::optional<double> snr_boost;
    double normalized_power = 0.0;  // power / (sum_{n=0..N} beta_n)^2
    long long steps = 0;
};

// Distribution statistics are taken over SNR boost when the direct link is
// present, otherwise over normalized power.
struct AlgorithmSummary {
    Algorithm algorithm = Algorithm::alg1;
    double mean_power = 0.0;
    double mean_normalized_power = 0.0;
    std::optional<double> mean_snr_boost;
    std::vector<double> cdf;               // on MonteCarloOptions::cdf_grid
    std::vector<double> percentile_values;  // for MonteCarloOptions::percentiles
};

struct MonteCarloOptions {
    std::vector<double> percentiles;  // percents in (0, 100)
    std::vector<double> cdf_grid;     // must be sorted ascending
    std::uint64_t exhaustive_budget = kDefaultExhaustiveBudget;
    int threads = 0;  // 0 = hardware concurrency
};

struct ExperimentResult {
    std::vector<TrialRecord> records;  // trial-major, algorithm order as requested
    std::vector<AlgorithmSummary> summaries;
};

// Runs every requested algorithm on the identical channel realization per
// trial. Trials may execute concurrently; records and summaries are collected
// in trial order and are bitwise identical for any thread count.
ExperimentResult run_monte_carlo(const ChannelModelConfig& config, const CoefficientSet& ws,
                                 const std::vector<Algorithm>& algorithms, int trials,
                                 const MonteCarloOptions& options = {});

// Empirical P(X <= g) for each grid point; the grid must be sorted.
std::vector<double> empirical_cdf(const std::vector<double>& values,
                                  const std::vector<double>& grid);

// Nearest-rank percentile: the value at rank ceil(p/100 * count).
double percentile(std::vector<double> values, double p);

}  // namespace ris
