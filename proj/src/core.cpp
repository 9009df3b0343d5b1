#include "ris/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ris {

namespace {

double uniform_threshold(int k) { return kTwoPi * (k - 1) / k; }

}  // namespace

PhaseShiftSet build_phase_set(int k, double range) {
    if (k < 2) {
        throw std::invalid_argument("build_phase_set: need at least 2 phases, got " +
                                    std::to_string(k));
    }
    if (!(range > 0.0)) {
        throw std::invalid_argument("build_phase_set: phase range must be positive");
    }
    if (range > kTwoPi) {
        throw std::invalid_argument("build_phase_set: phase range exceeds 2*pi");
    }

    PhaseShiftSet ps;
    ps.range = range;
    ps.phases.resize(static_cast<size_t>(k));
    if (range >= uniform_threshold(k)) {
        ps.regime = PhaseRegime::uniform;
        const double step = kTwoPi / k;
        const double shift = (k - 1) * step / 2.0;
        for (int i = 0; i < k; ++i) ps.phases[static_cast<size_t>(i)] = i * step - shift;
    } else {
        ps.regime = PhaseRegime::limited;
        const double step = range / (k - 1);
        for (int i = 0; i < k; ++i) ps.phases[static_cast<size_t>(i)] = i * step - range / 2.0;
    }

    ps.gaps.resize(static_cast<size_t>(k));
    for (int i = 0; i + 1 < k; ++i) {
        ps.gaps[static_cast<size_t>(i)] = ps.phases[static_cast<size_t>(i) + 1] -
                                          ps.phases[static_cast<size_t>(i)];
    }
    ps.gaps[static_cast<size_t>(k) - 1] = kTwoPi - (ps.phases.back() - ps.phases.front());
    return ps;
}

PhaseShiftSet make_phase_set(std::vector<double> phases) {
    const int k = static_cast<int>(phases.size());
    if (k < 2) throw std::invalid_argument("make_phase_set: need at least 2 phases");
    for (double p : phases) {
        if (!(p >= -kPi && p < kPi)) {
            throw std::invalid_argument("make_phase_set: phases must lie in [-pi, pi)");
        }
    }
    for (int i = 0; i + 1 < k; ++i) {
        if (!(phases[static_cast<size_t>(i)] < phases[static_cast<size_t>(i) + 1])) {
            throw std::invalid_argument("make_phase_set: phases must be strictly increasing");
        }
    }

    PhaseShiftSet ps;
    ps.phases = std::move(phases);
    ps.gaps.resize(static_cast<size_t>(k));
    for (int i = 0; i + 1 < k; ++i) {
        ps.gaps[static_cast<size_t>(i)] = ps.phases[static_cast<size_t>(i) + 1] -
                                          ps.phases[static_cast<size_t>(i)];
    }
    ps.gaps[static_cast<size_t>(k) - 1] = kTwoPi - (ps.phases.back() - ps.phases.front());
    ps.range = ps.phases.back() - ps.phases.front();
    ps.regime = ps.range >= uniform_threshold(k) - 1e-12 ? PhaseRegime::uniform
                                                         : PhaseRegime::limited;
    return ps;
}

PdaProfile make_pda_profile(double beta_min, double alpha_r, double phi_r) {
    if (!(beta_min >= 0.0 && beta_min <= 1.0)) {
        throw std::invalid_argument("make_pda_profile: beta_min must lie in [0, 1]");
    }
    if (!(alpha_r >= 0.0)) {
        throw std::invalid_argument("make_pda_profile: alpha_r must be nonnegative");
    }
    return PdaProfile{beta_min, alpha_r, phi_r};
}

double pda_gain(double theta, const PdaProfile& profile) {
    const double s = (std::sin(theta - profile.phi_r) + 1.0) / 2.0;
    return (1.0 - profile.beta_min) * std::pow(s, profile.alpha_r) + profile.beta_min;
}

namespace {

bool convexity_holds(const PhaseShiftSet& ps, const std::vector<double>& gains) {
    const int k = ps.size();
    if (k < 3) return true;
    for (int i = 0; i < k; ++i) {
        const int prev = (i + k - 1) % k;
        const int next = (i + 1) % k;
        const double span = ps.gaps[static_cast<size_t>(prev)] + ps.gaps[static_cast<size_t>(i)];
        if (!(span < kPi)) continue;
        const std::complex<double> a =
            std::polar(gains[static_cast<size_t>(prev)], ps.phases[static_cast<size_t>(prev)]);
        const std::complex<double> b =
            std::polar(gains[static_cast<size_t>(i)], ps.phases[static_cast<size_t>(i)]);
        const std::complex<double> c =
            std::polar(gains[static_cast<size_t>(next)], ps.phases[static_cast<size_t>(next)]);
        const std::complex<double> chord = c - a;
        auto side = [&](std::complex<double> p) {
            return chord.real() * (p - a).imag() - chord.imag() * (p - a).real();
        };
        // Middle point must lie strictly on the side of the chord opposite the
        // origin; collinear or origin-on-chord cases withhold the certificate.
        if (!(side(b) * side(std::complex<double>(0.0, 0.0)) < 0.0)) return false;
    }
    return true;
}

}  // namespace

CoefficientSet make_coefficient_set(PhaseShiftSet phases, std::vector<double> gains) {
    if (gains.size() != phases.phases.size()) {
        throw std::invalid_argument("make_coefficient_set: one gain per phase required");
    }
    for (double g : gains) {
        if (!(g >= 0.0 && g <= 1.0)) {
            throw std::invalid_argument("make_coefficient_set: gains must lie in [0, 1]");
        }
    }
    CoefficientSet ws;
    ws.phases = std::move(phases);
    ws.gains = std::move(gains);
    ws.locally_convex = convexity_holds(ws.phases, ws.gains);
    return ws;
}

CoefficientSet build_coefficient_set(const PhaseShiftSet& phases, const PdaProfile& profile,
                                     double peak_offset) {
    std::vector<double> gains(phases.phases.size());
    const double anchor = phases.phases.front() + peak_offset;
    for (size_t i = 0; i < gains.size(); ++i) {
        gains[i] = pda_gain(profile.peak_angle() + (phases.phases[i] - anchor), profile);
    }
    return make_coefficient_set(phases, std::move(gains));
}

double literal_peak_offset(const PhaseShiftSet& phases, const PdaProfile& profile) {
    return wrap_angle(profile.peak_angle() - phases.phases.front());
}

bool check_local_convexity(const CoefficientSet& ws) {
    return convexity_holds(ws.phases, ws.gains);
}

ChannelInstance make_channel(ChannelTap direct, std::vector<ChannelTap> cascaded) {
    if (!(direct.beta >= 0.0)) {
        throw std::invalid_argument("make_channel: direct magnitude must be nonnegative");
    }
    for (size_t n = 0; n < cascaded.size(); ++n) {
        if (!(cascaded[n].beta >= 0.0)) {
            throw std::invalid_argument("make_channel: magnitude of element " +
                                        std::to_string(n) + " is negative");
        }
        cascaded[n].alpha = wrap_angle(cascaded[n].alpha);
    }
    direct.alpha = wrap_angle(direct.alpha);
    return ChannelInstance{direct, std::move(cascaded)};
}

ReceivedPower received_power(const ChannelInstance& channel, const CoefficientSet& ws,
                             const std::vector<int>& selections) {
    const int n = channel.n_elements();
    if (static_cast<int>(selections.size()) != n) {
        throw std::invalid_argument("received_power: one selection per element required");
    }
    const int k = ws.size();
    std::complex<double> g = channel.direct_complex();
    for (int i = 0; i < n; ++i) {
        const int sel = selections[static_cast<size_t>(i)];
        if (sel < 0 || sel >= k) {
            throw std::out_of_range("received_power: selection index " + std::to_string(sel) +
                                    " out of range for K=" + std::to_string(k));
        }
        const ChannelTap& t = channel.cascaded[static_cast<size_t>(i)];
        g += std::polar(t.beta * ws.gains[static_cast<size_t>(sel)],
                        t.alpha + ws.phases.phases[static_cast<size_t>(sel)]);
    }
    return ReceivedPower{g, std::norm(g)};
}

std::optional<double> snr_boost(const ChannelInstance& channel, const CoefficientSet& ws,
                                const std::vector<int>& selections) {
    if (channel.direct.beta <= 0.0) return std::nullopt;
    const double p = received_power(channel, ws, selections).power;
    return p / (channel.direct.beta * channel.direct.beta);
}

BeamformingSolution evaluate_solution(const ChannelInstance& channel, const CoefficientSet& ws,
                                      std::vector<int> selections) {
    BeamformingSolution sol;
    const ReceivedPower rp = received_power(channel, ws, selections);
    sol.selections = std::move(selections);
    sol.g = rp.g;
    sol.power = rp.power;
    if (channel.direct.beta > 0.0) {
        sol.snr_boost = rp.power / (channel.direct.beta * channel.direct.beta);
    }
    return sol;
}

}  // namespace ris
