#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <vector>

#include "ris/angles.hpp"

namespace ris {

enum class PhaseRegime { uniform, limited };

// A set of K discrete phase shifts, strictly increasing in [-pi, pi), together
// with the K cyclic gaps (gaps[k] leads from phases[k] to the next phase
// counterclockwise; the last entry is the wrap gap, so they sum to 2*pi).
struct PhaseShiftSet {
    std::vector<double> phases;
    std::vector<double> gaps;
    double range = kTwoPi;  // phase-shifting capability R of the hardware
    PhaseRegime regime = PhaseRegime::uniform;

    int size() const { return static_cast<int>(phases.size()); }
};

// Equally separated phases over the realizable range [-R/2, R/2]. When R is
// large enough (R >= 2*pi*(K-1)/K) the K phases are spread uniformly over the
// whole circle and centered on zero; otherwise they span exactly [-R/2, R/2].
PhaseShiftSet build_phase_set(int k, double range);

// Escape hatch for arbitrary grids: validates ordering/normalization and
// derives gaps, range (the spanned arc), and regime.
PhaseShiftSet make_phase_set(std::vector<double> phases);

// Parametric phase-dependent amplitude law. The element gain is minimal
// (beta_min) at phi_r - pi/2 and maximal (1.0) at phi_r + pi/2; alpha_r
// controls the steepness of the transition between the two.
struct PdaProfile {
    double beta_min = 1.0;
    double alpha_r = 1.6;
    double phi_r = kPi / 2.0;

    double peak_angle() const { return wrap_angle(phi_r + kPi / 2.0); }
};

PdaProfile make_pda_profile(double beta_min, double alpha_r, double phi_r = kPi / 2.0);

// Gain of an element configured with phase shift theta (total function of theta).
double pda_gain(double theta, const PdaProfile& profile);

// Paired (phase, gain) reflection coefficients gains[k]*e^{j*phases[k]}.
// locally_convex caches the convexity certificate computed at construction.
struct CoefficientSet {
    PhaseShiftSet phases;
    std::vector<double> gains;
    bool locally_convex = true;

    int size() const { return phases.size(); }
    std::complex<double> coefficient(int k) const {
        return std::polar(gains[static_cast<size_t>(k)],
                          phases.phases[static_cast<size_t>(k)]);
    }
};

CoefficientSet make_coefficient_set(PhaseShiftSet phases, std::vector<double> gains);

// Samples the amplitude law along the grid. The curve is rotated so that its
// gain peak sits at angle phases[0] + peak_offset; with the default offset of
// zero the first grid phase carries gain 1 and the remaining gains are taken
// at the grid's angular offsets from it. This peak-on-grid sampling is the
// convention the closed-form loss figures are calibrated against; use
// literal_peak_offset() to instead sample the unrotated law at the raw phases.
CoefficientSet build_coefficient_set(const PhaseShiftSet& phases, const PdaProfile& profile,
                                     double peak_offset = 0.0);

// peak_offset value that makes build_coefficient_set evaluate the profile
// literally, i.e. gains[k] = pda_gain(phases[k], profile).
double literal_peak_offset(const PhaseShiftSet& phases, const PdaProfile& profile);

// True when every cyclically consecutive coefficient triplet spanning less
// than pi bulges strictly outward from its chord (the middle point lies on
// the side opposite the origin). Vacuously true for K = 2. This is the
// premise under which the boundary sweep is certified globally optimal.
bool check_local_convexity(const CoefficientSet& ws);

// One propagation path as magnitude and angle: beta * e^{j*alpha}.
struct ChannelTap {
    double beta = 0.0;
    double alpha = 0.0;
};

// Direct BS-to-UE link plus the N cascaded per-element links.
struct ChannelInstance {
    ChannelTap direct;
    std::vector<ChannelTap> cascaded;

    int n_elements() const { return static_cast<int>(cascaded.size()); }
    std::complex<double> direct_complex() const { return std::polar(direct.beta, direct.alpha); }
    std::complex<double> cascaded_complex(int n) const {
        const ChannelTap& t = cascaded[static_cast<size_t>(n)];
        return std::polar(t.beta, t.alpha);
    }
};

// Validates magnitudes and normalizes all angles into [-pi, pi).
ChannelInstance make_channel(ChannelTap direct, std::vector<ChannelTap> cascaded);

struct ReceivedPower {
    std::complex<double> g;
    double power = 0.0;
};

// Aligned complex sum g = h0 + sum_n h_n * w_{k_n} and its squared magnitude.
ReceivedPower received_power(const ChannelInstance& channel, const CoefficientSet& ws,
                             const std::vector<int>& selections);

// Received power divided by the direct-link-only power beta_0^2. Empty when
// the direct link is absent (beta_0 = 0); callers must fall back to raw power.
std::optional<double> snr_boost(const ChannelInstance& channel, const CoefficientSet& ws,
                                const std::vector<int>& selections);

// A per-element phase assignment with its objective value and solver
// diagnostics. selections holds 0-based indices into the coefficient set.
struct BeamformingSolution {
    std::vector<int> selections;
    std::complex<double> g;
    double power = 0.0;
    std::optional<double> snr_boost;
    // delta_n = theta_n - theta_n^ideal in (-pi, pi]; filled by the quantizers.
    std::vector<double> quantization_errors;

    // Diagnostics.
    long long steps = 0;          // candidate assignments evaluated
    int schedule_size = 0;        // number of distinct sweep boundaries L
    bool certified_optimal = false;
    double mu_angle = std::numeric_limits<double>::quiet_NaN();  // best-arc cursor
    long long vector_additions = 0;  // instrumented sweep cost counter
};

// Builds a solution record for a given assignment (power, g and SNR boost).
BeamformingSolution evaluate_solution(const ChannelInstance& channel, const CoefficientSet& ws,
                                      std::vector<int> selections);

}  // namespace ris
