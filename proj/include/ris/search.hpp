#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ris/core.hpp"

namespace ris {

// Per-phase decision-boundary geometry. deltas[k] is the angle from boundary
// s_k back to phase k; s_angles[k] = wrap(phases[k] - deltas[k]) is the cursor
// direction at which phases k-1 and k contribute equally.
struct BoundaryAngles {
    std::vector<double> deltas;
    std::vector<double> s_angles;
};

// Computed with the two-argument arctangent of
//   y = gain[k] - gain[k-1]*cos(gap[k-1]),  x = gain[k-1]*sin(gap[k-1])
// so the wrap gap (> pi, negative sine) lands on the correct branch.
// Rejects coefficient sets containing a zero gain.
BoundaryAngles boundary_offsets(const CoefficientSet& ws);

struct BoundaryUpdate {
    int element;  // n'
    int target;   // k': crossing this boundary switches element n' to phase k'
};

struct BoundaryEvent {
    double angle;  // lambda_l in [0, 2*pi)
    std::vector<BoundaryUpdate> updates;
};

// The full sweep schedule: every per-element boundary angle, deduplicated
// (within 1e-12, including across the 0/2*pi seam) and sorted ascending.
struct BoundarySet {
    BoundaryAngles offsets;
    // element_boundaries[n][k] = wrap_two_pi(alpha_n + s_angles[k])
    std::vector<std::vector<double>> element_boundaries;
    std::vector<BoundaryEvent> schedule;

    int schedule_size() const { return static_cast<int>(schedule.size()); }
};

BoundarySet build_boundary_schedule(const ChannelInstance& channel, const CoefficientSet& ws);

// Per-element argmax of the projection gain[k]*cos(phases[k] + alpha_n - mu);
// ties break toward the smaller index.
std::vector<int> best_projection_assign(double mu_angle, const ChannelInstance& channel,
                               const CoefficientSet& ws);

// Globally optimal assignment via the boundary sweep: initialize at mu = 0,
// cross the L-1 remaining boundaries counterclockwise with incremental g
// updates, and keep the best |g| seen. Certified optimal only when the
// coefficient set is locally convex; otherwise the sweep still runs and the
// returned solution carries certified_optimal = false.
BeamformingSolution sweep_optimize(const ChannelInstance& channel, const CoefficientSet& ws);

inline constexpr std::uint64_t kDefaultExhaustiveBudget = 10'000'000;

// Thrown when an exhaustive search would exceed its evaluation budget.
class ExhaustiveBudgetError : public std::runtime_error {
public:
    ExhaustiveBudgetError(double required, std::uint64_t budget);

    double required_evaluations;  // K^N (may exceed the uint64 range)
    std::uint64_t budget;
};

// Enumerates all K^N assignments; ties resolve to the lexicographically
// smallest selection vector. The oracle for the sweep.
BeamformingSolution exhaustive_search(const ChannelInstance& channel, const CoefficientSet& ws,
                                      std::uint64_t budget = kDefaultExhaustiveBudget);

}  // namespace ris
