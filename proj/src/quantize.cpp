#include "ris/quantize.hpp"

#include <cmath>

#include "ris/search.hpp"

namespace ris {

IdealSolution ideal_phases(const ChannelInstance& channel) {
    IdealSolution ideal;
    const double alpha0 = channel.direct.beta > 0.0 ? channel.direct.alpha : 0.0;
    ideal.angles.resize(channel.cascaded.size());
    double beta_sum = channel.direct.beta;
    for (size_t n = 0; n < channel.cascaded.size(); ++n) {
        ideal.angles[n] = wrap_angle(alpha0 - channel.cascaded[n].alpha);
        beta_sum += channel.cascaded[n].beta;
    }
    ideal.max_power = beta_sum * beta_sum;
    return ideal;
}

namespace {

int nearest_phase(double theta, const PhaseShiftSet& ps) {
    const int k = ps.size();
    int best = 0;
    double best_distance = std::numeric_limits<double>::infinity();
    bool best_below = false;  // theta sits clockwise of the winning phase
    for (int j = 0; j < k; ++j) {
        const double diff = wrap_angle(theta - ps.phases[static_cast<size_t>(j)]);
        const double distance = std::abs(diff);
        // Exact ties occur only at cell midpoints between cyclic neighbors;
        // the half-open cells assign the midpoint to the upper (counter-
        // clockwise) phase, which is the one theta lies clockwise of.
        if (distance < best_distance || (distance == best_distance && diff < 0.0 && !best_below)) {
            best_distance = distance;
            best = j;
            best_below = diff < 0.0;
        }
    }
    return best;
}

}  // namespace

std::vector<int> apq_assign(const ChannelInstance& channel, const PhaseShiftSet& phases) {
    const IdealSolution ideal = ideal_phases(channel);
    std::vector<int> selections(ideal.angles.size());
    for (size_t n = 0; n < ideal.angles.size(); ++n) {
        selections[n] = nearest_phase(ideal.angles[n], phases);
    }
    return selections;
}

std::vector<int> eapq_assign(const ChannelInstance& channel, const CoefficientSet& ws) {
    const double alpha0 = channel.direct.beta > 0.0 ? channel.direct.alpha : 0.0;
    return best_projection_assign(alpha0, channel, ws);
}

namespace {

BeamformingSolution finish_quantizer(const ChannelInstance& channel, const CoefficientSet& ws,
                                     std::vector<int> selections) {
    const IdealSolution ideal = ideal_phases(channel);
    BeamformingSolution sol = evaluate_solution(channel, ws, std::move(selections));
    sol.quantization_errors.resize(sol.selections.size());
    for (size_t n = 0; n < sol.selections.size(); ++n) {
        sol.quantization_errors[n] = wrap_error(
            ws.phases.phases[static_cast<size_t>(sol.selections[n])] - ideal.angles[n]);
    }
    sol.steps = 1;
    return sol;
}

}  // namespace

BeamformingSolution apq_solve(const ChannelInstance& channel, const CoefficientSet& ws) {
    return finish_quantizer(channel, ws, apq_assign(channel, ws.phases));
}

BeamformingSolution eapq_solve(const ChannelInstance& channel, const CoefficientSet& ws) {
    return finish_quantizer(channel, ws, eapq_assign(channel, ws));
}

}  // namespace ris
