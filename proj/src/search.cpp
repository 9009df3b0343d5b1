#include "ris/search.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

namespace ris {

namespace {

constexpr double kMergeTol = 1e-12;  // boundary angles closer than this share one event

}  // namespace

BoundaryAngles boundary_offsets(const CoefficientSet& ws) {
    const int k = ws.size();
    for (int i = 0; i < k; ++i) {
        if (ws.gains[static_cast<size_t>(i)] == 0.0) {
            throw std::invalid_argument("boundary_offsets: gain at phase index " +
                                        std::to_string(i) +
                                        " is zero; decision boundaries are undefined");
        }
    }
    BoundaryAngles ba;
    ba.deltas.resize(static_cast<size_t>(k));
    ba.s_angles.resize(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        const int prev = (i + k - 1) % k;
        const double gap = ws.phases.gaps[static_cast<size_t>(prev)];
        const double g_here = ws.gains[static_cast<size_t>(i)];
        const double g_prev = ws.gains[static_cast<size_t>(prev)];
        const double delta =
            std::atan2(g_here - g_prev * std::cos(gap), g_prev * std::sin(gap));
        ba.deltas[static_cast<size_t>(i)] = delta;
        ba.s_angles[static_cast<size_t>(i)] =
            wrap_angle(ws.phases.phases[static_cast<size_t>(i)] - delta);
    }
    return ba;
}

BoundarySet build_boundary_schedule(const ChannelInstance& channel, const CoefficientSet& ws) {
    BoundarySet bs;
    bs.offsets = boundary_offsets(ws);
    const int n = channel.n_elements();
    const int k = ws.size();

    bs.element_boundaries.resize(static_cast<size_t>(n));
    std::vector<std::tuple<double, int, int>> entries;  // (angle, element, target)
    entries.reserve(static_cast<size_t>(n) * static_cast<size_t>(k));
    for (int i = 0; i < n; ++i) {
        auto& row = bs.element_boundaries[static_cast<size_t>(i)];
        row.resize(static_cast<size_t>(k));
        for (int j = 0; j < k; ++j) {
            const double angle =
                wrap_two_pi(channel.cascaded[static_cast<size_t>(i)].alpha +
                            bs.offsets.s_angles[static_cast<size_t>(j)]);
            row[static_cast<size_t>(j)] = angle;
            entries.emplace_back(angle, i, j);
        }
    }
    std::sort(entries.begin(), entries.end());

    for (const auto& [angle, element, target] : entries) {
        if (bs.schedule.empty() || angle - bs.schedule.back().angle > kMergeTol) {
            bs.schedule.push_back(BoundaryEvent{angle, {}});
        }
        bs.schedule.back().updates.push_back(BoundaryUpdate{element, target});
    }
    // Coincidence across the 0/2*pi seam merges into the first event.
    if (bs.schedule.size() > 1 &&
        bs.schedule.front().angle + kTwoPi - bs.schedule.back().angle <= kMergeTol) {
        auto& first = bs.schedule.front().updates;
        auto& last = bs.schedule.back().updates;
        first.insert(first.end(), last.begin(), last.end());
        bs.schedule.pop_back();
    }
    return bs;
}

std::vector<int> best_projection_assign(double mu_angle, const ChannelInstance& channel,
                               const CoefficientSet& ws) {
    const int n = channel.n_elements();
    const int k = ws.size();
    std::vector<int> selections(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        const double alpha = channel.cascaded[static_cast<size_t>(i)].alpha;
        int best = 0;
        double best_contribution = -std::numeric_limits<double>::infinity();
        for (int j = 0; j < k; ++j) {
            const double c = ws.gains[static_cast<size_t>(j)] *
                             std::cos(ws.phases.phases[static_cast<size_t>(j)] + alpha - mu_angle);
            if (c > best_contribution) {
                best_contribution = c;
                best = j;
            }
        }
        selections[static_cast<size_t>(i)] = best;
    }
    return selections;
}

BeamformingSolution sweep_optimize(const ChannelInstance& channel, const CoefficientSet& ws) {
    const BoundarySet bs = build_boundary_schedule(channel, ws);
    const int n = channel.n_elements();
    const int l = bs.schedule_size();

    std::vector<int> selections = best_projection_assign(0.0, channel, ws);
    std::vector<std::complex<double>> current(static_cast<size_t>(n));
    std::complex<double> g = channel.direct_complex();
    long long additions = 0;
    for (int i = 0; i < n; ++i) {
        current[static_cast<size_t>(i)] =
            channel.cascaded_complex(i) * ws.coefficient(selections[static_cast<size_t>(i)]);
        g += current[static_cast<size_t>(i)];
        ++additions;
    }

    double best_abs = std::abs(g);
    std::vector<int> best_selections = selections;
    // Arc-interior cursor for the best assignment; the initial arc runs from
    // the last boundary (less 2*pi) to the first.
    double best_mu = 0.0;
    if (l > 0) {
        best_mu = wrap_two_pi((bs.schedule.back().angle - kTwoPi + bs.schedule.front().angle) / 2.0);
    }

    // Crossing the final boundary would re-enter the initial arc, so the sweep
    // stops after L-1 events.
    for (int e = 0; e + 1 < l; ++e) {
        for (const BoundaryUpdate& u : bs.schedule[static_cast<size_t>(e)].updates) {
            const std::complex<double> replacement =
                channel.cascaded_complex(u.element) * ws.coefficient(u.target);
            g += replacement - current[static_cast<size_t>(u.element)];
            additions += 2;
            current[static_cast<size_t>(u.element)] = replacement;
            selections[static_cast<size_t>(u.element)] = u.target;
        }
        const double abs_g = std::abs(g);
        if (abs_g > best_abs) {
            best_abs = abs_g;
            best_selections = selections;
            best_mu = wrap_two_pi((bs.schedule[static_cast<size_t>(e)].angle +
                                   bs.schedule[static_cast<size_t>(e) + 1].angle) /
                                  2.0);
        }
    }

    BeamformingSolution sol = evaluate_solution(channel, ws, std::move(best_selections));
    sol.steps = l > 0 ? l : 1;
    sol.schedule_size = l;
    sol.certified_optimal = ws.locally_convex;
    sol.mu_angle = best_mu;
    sol.vector_additions = additions;
    return sol;
}

ExhaustiveBudgetError::ExhaustiveBudgetError(double required, std::uint64_t budget)
    : std::runtime_error("exhaustive_search: requires " + std::to_string(required) +
                         " evaluations, over the budget of " + std::to_string(budget)),
      required_evaluations(required),
      budget(budget) {}

BeamformingSolution exhaustive_search(const ChannelInstance& channel, const CoefficientSet& ws,
                                      std::uint64_t budget) {
    const int n = channel.n_elements();
    const int k = ws.size();
    const double required = std::pow(static_cast<double>(k), n);
    if (required > static_cast<double>(budget)) {
        throw ExhaustiveBudgetError(required, budget);
    }

    // Per-element candidate contributions h_n * w_k, laid out row-major.
    std::vector<std::complex<double>> candidates(static_cast<size_t>(n) * static_cast<size_t>(k));
    for (int i = 0; i < n; ++i) {
        const std::complex<double> h = channel.cascaded_complex(i);
        for (int j = 0; j < k; ++j) {
            candidates[static_cast<size_t>(i) * static_cast<size_t>(k) + static_cast<size_t>(j)] =
                h * ws.coefficient(j);
        }
    }

    double best_power = -1.0;
    std::vector<int> best(static_cast<size_t>(n), 0);
    std::vector<int> cur(static_cast<size_t>(n), 0);
    // Depth-first enumeration with partial sums; lexicographic order plus a
    // strict comparison yields the lexicographically smallest tie winner.
    auto descend = [&](auto&& self, int depth, std::complex<double> sum) -> void {
        if (depth == n) {
            const double p = std::norm(sum);
            if (p > best_power) {
                best_power = p;
                best = cur;
            }
            return;
        }
        const std::complex<double>* row =
            candidates.data() + static_cast<size_t>(depth) * static_cast<size_t>(k);
        for (int j = 0; j < k; ++j) {
            cur[static_cast<size_t>(depth)] = j;
            self(self, depth + 1, sum + row[j]);
        }
    };
    descend(descend, 0, channel.direct_complex());

    BeamformingSolution sol = evaluate_solution(channel, ws, std::move(best));
    sol.steps = static_cast<long long>(required);
    sol.certified_optimal = true;
    return sol;
}

}  // namespace ris
