#pragma once

#include <vector>

#include "ris/core.hpp"

namespace ris {

// Continuous unit-gain benchmark: theta_n = alpha_0 - alpha_n aligns every
// cascaded path with the direct link, achieving (sum_n beta_n)^2.
struct IdealSolution {
    std::vector<double> angles;  // wrapped to [-pi, pi)
    double max_power = 0.0;
};

// With no direct link the direct angle is taken as zero.
IdealSolution ideal_phases(const ChannelInstance& channel);

// Amplitude-introduced polar quantization: snaps each ideal angle to the
// nearest phase under wrapped distance. A tie at a cell midpoint goes to the
// counterclockwise neighbor, matching the half-open quantization cells.
std::vector<int> apq_assign(const ChannelInstance& channel, const PhaseShiftSet& phases);

// Extended APQ: per-element projection argmax toward the direct-link angle,
// i.e. best_projection_assign with the cursor pinned at alpha_0 (zero when beta_0 = 0).
std::vector<int> eapq_assign(const ChannelInstance& channel, const CoefficientSet& ws);

// Convenience wrappers producing full solution records, including the
// per-element quantization errors delta_n relative to the ideal angles.
BeamformingSolution apq_solve(const ChannelInstance& channel, const CoefficientSet& ws);
BeamformingSolution eapq_solve(const ChannelInstance& channel, const CoefficientSet& ws);

}  // namespace ris
