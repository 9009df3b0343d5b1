#pragma once

#include <optional>
#include <vector>

#include "ris/core.hpp"

namespace ris {

enum class RatioRegime { uniform, limited, continuous };

// Large-N approximation ratio of quantized-vs-ideal received power, with the
// equivalent dB loss (positive; infinite when the ratio is zero).
struct RatioReport {
    double e_pda = 1.0;
    double loss_db = 0.0;
    RatioRegime regime = RatioRegime::uniform;
    int k = 0;
    double range = kTwoPi;
    std::optional<PdaProfile> profile;  // echoed when the ratio came from a profile
};

// Normalized sinc, sin(pi*x)/(pi*x).
double sinc(double x);

// (sinc(1/K)/K * sum of gains)^2 for uniformly spread phases.
// Rejects limited-regime coefficient sets.
RatioReport approx_ratio_uniform(const CoefficientSet& ws);

// The two independent addends of the uniform-regime dB loss: attenuation
// (-20*log10 of the mean gain) and quantization (-20*log10 of sinc(1/K)).
struct LossDecomposition {
    double gain_loss_db = 0.0;
    double quantization_loss_db = 0.0;
};

LossDecomposition loss_db_decomposition(const CoefficientSet& ws);

// Selection probabilities for the limited regime: the two edge phases absorb
// the out-of-range mass A/(2*pi) with A = pi - R/2 + R/(2(K-1)); interior
// phases get R/(2*pi*(K-1)). K = 2 is uniformly {1/2, 1/2} for any range.
// Accepts ranges up to the uniform threshold 2*pi*(K-1)/K inclusive.
std::vector<double> limited_pmf(int k, double range);

// Limited-regime ratio with the given range; gains come positionally from ws
// (edge phases first/last). Accepts ranges up to the uniform threshold so the
// two formulas can be compared at the seam.
RatioReport approx_ratio_limited(const CoefficientSet& ws, double range);

// K -> infinity limit: the squared mean of the amplitude law over the circle,
// evaluated by fixed-grid quadrature (2^18 nodes; the grid is uniform and the
// integrand periodic, so the error is far below 1e-10).
RatioReport approx_ratio_continuous(const PdaProfile& profile);

}  // namespace ris
