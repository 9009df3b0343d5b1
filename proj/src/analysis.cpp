#include "ris/analysis.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ris {

namespace {

constexpr double kThresholdTol = 1e-12;

double loss_from_ratio(double e_pda) {
    return -10.0 * std::log10(e_pda);
}

double uniform_threshold(int k) { return kTwoPi * (k - 1) / k; }

}  // namespace

double sinc(double x) {
    if (x == 0.0) return 1.0;
    return std::sin(kPi * x) / (kPi * x);
}

RatioReport approx_ratio_uniform(const CoefficientSet& ws) {
    if (ws.phases.regime != PhaseRegime::uniform) {
        throw std::invalid_argument(
            "approx_ratio_uniform: limited-regime set; use approx_ratio_limited");
    }
    const int k = ws.size();
    const double gain_sum = std::accumulate(ws.gains.begin(), ws.gains.end(), 0.0);
    const double root = sinc(1.0 / k) / k * gain_sum;
    RatioReport report;
    report.e_pda = root * root;
    report.loss_db = loss_from_ratio(report.e_pda);
    report.regime = RatioRegime::uniform;
    report.k = k;
    report.range = ws.phases.range;
    return report;
}

LossDecomposition loss_db_decomposition(const CoefficientSet& ws) {
    if (ws.phases.regime != PhaseRegime::uniform) {
        throw std::invalid_argument("loss_db_decomposition: limited-regime set");
    }
    const int k = ws.size();
    const double mean_gain =
        std::accumulate(ws.gains.begin(), ws.gains.end(), 0.0) / k;
    return LossDecomposition{-20.0 * std::log10(mean_gain), -20.0 * std::log10(sinc(1.0 / k))};
}

std::vector<double> limited_pmf(int k, double range) {
    if (k < 2) throw std::invalid_argument("limited_pmf: need at least 2 phases");
    if (!(range > 0.0) || range > kTwoPi) {
        throw std::invalid_argument("limited_pmf: range must lie in (0, 2*pi]");
    }
    if (k == 2) return {0.5, 0.5};
    if (range > uniform_threshold(k) + kThresholdTol) {
        throw std::invalid_argument(
            "limited_pmf: range " + std::to_string(range) +
            " is in the uniform regime; the selection pmf there is 1/K");
    }
    const double edge = (kPi - range / 2.0 + range / (2.0 * (k - 1))) / kTwoPi;
    const double interior = range / (kTwoPi * (k - 1));
    std::vector<double> pmf(static_cast<size_t>(k), interior);
    pmf.front() = edge;
    pmf.back() = edge;
    return pmf;
}

RatioReport approx_ratio_limited(const CoefficientSet& ws, double range) {
    const int k = ws.size();
    if (!(range >= 0.0) || range > uniform_threshold(k) + kThresholdTol) {
        throw std::invalid_argument(
            "approx_ratio_limited: range is in the uniform regime; use approx_ratio_uniform");
    }
    double root;
    if (k == 2) {
        root = std::sin(range / 2.0) / kPi * (ws.gains.front() + ws.gains.back());
    } else {
        const double s_interior = std::sin(range / (2.0 * (k - 1)));
        const double s_edge = std::sin(range / 2.0);
        double interior_sum = 0.0;
        for (int i = 1; i + 1 < k; ++i) interior_sum += ws.gains[static_cast<size_t>(i)];
        root = (interior_sum * s_interior +
                (ws.gains.front() + ws.gains.back()) / 2.0 * (s_interior + s_edge)) /
               kPi;
    }
    RatioReport report;
    report.e_pda = root * root;
    report.loss_db = loss_from_ratio(report.e_pda);
    report.regime = RatioRegime::limited;
    report.k = k;
    report.range = range;
    return report;
}

RatioReport approx_ratio_continuous(const PdaProfile& profile) {
    constexpr int kNodes = 1 << 18;
    // Compensated summation keeps the analytic special cases (constant and
    // linear-in-sine integrands) accurate to well under 1e-10.
    double sum = 0.0;
    double carry = 0.0;
    for (int i = 0; i < kNodes; ++i) {
        const double theta = kTwoPi * i / kNodes;
        const double term = pda_gain(theta, profile) - carry;
        const double next = sum + term;
        carry = (next - sum) - term;
        sum = next;
    }
    const double mean = sum / kNodes;
    RatioReport report;
    report.e_pda = mean * mean;
    report.loss_db = loss_from_ratio(report.e_pda);
    report.regime = RatioRegime::continuous;
    report.k = 0;
    report.range = kTwoPi;
    report.profile = profile;
    return report;
}

}  // namespace ris
