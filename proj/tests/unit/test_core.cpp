#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ris/core.hpp"
#include "test_util.hpp"

using namespace ris;

TEST_CASE("wrap helpers honor their interval conventions") {
    CHECK(wrap_angle(kPi) == doctest::Approx(-kPi));
    CHECK(wrap_angle(-kPi) == doctest::Approx(-kPi));
    CHECK(wrap_angle(3.0 * kPi) == doctest::Approx(-kPi));
    CHECK(wrap_error(-kPi) == doctest::Approx(kPi));
    CHECK(wrap_error(kPi) == doctest::Approx(kPi));
    CHECK(wrap_two_pi(-1e-18) < kTwoPi);
    CHECK(wrap_two_pi(kTwoPi) == doctest::Approx(0.0));
    TrialRng rng(7, 0);
    for (int i = 0; i < 2000; ++i) {
        const double a = (rng.next_unit() - 0.5) * 50.0;
        CHECK(wrap_angle(a) >= -kPi);
        CHECK(wrap_angle(a) < kPi);
        CHECK(wrap_two_pi(a) >= 0.0);
        CHECK(wrap_two_pi(a) < kTwoPi);
        CHECK(wrap_error(a) > -kPi);
        CHECK(wrap_error(a) <= kPi);
    }
}

TEST_CASE("build_phase_set: uniform grid for a sufficient range") {
    const PhaseShiftSet ps = build_phase_set(4, kTwoPi);
    REQUIRE(ps.size() == 4);
    CHECK(ps.regime == PhaseRegime::uniform);
    CHECK(ps.phases[0] == doctest::Approx(-3.0 * kPi / 4.0).epsilon(1e-15));
    CHECK(ps.phases[1] == doctest::Approx(-kPi / 4.0).epsilon(1e-15));
    CHECK(ps.phases[2] == doctest::Approx(kPi / 4.0).epsilon(1e-15));
    CHECK(ps.phases[3] == doctest::Approx(3.0 * kPi / 4.0).epsilon(1e-15));
    for (double gap : ps.gaps) CHECK(gap == doctest::Approx(kPi / 2.0).epsilon(1e-15));
}

TEST_CASE("build_phase_set: boundary case R = 2*pi*(K-1)/K takes the uniform branch") {
    const PhaseShiftSet ps = build_phase_set(2, kPi);
    CHECK(ps.regime == PhaseRegime::uniform);
    CHECK(ps.phases[0] == doctest::Approx(-kPi / 2.0));
    CHECK(ps.phases[1] == doctest::Approx(kPi / 2.0));
    // Both branches of the construction coincide at the threshold.
    for (int k = 2; k <= 8; ++k) {
        const double threshold = kTwoPi * (k - 1) / k;
        const PhaseShiftSet uniform = build_phase_set(k, threshold);
        CHECK(uniform.regime == PhaseRegime::uniform);
        for (int i = 0; i < k; ++i) {
            const double limited_phase = i * threshold / (k - 1) - threshold / 2.0;
            CHECK(uniform.phases[static_cast<size_t>(i)] ==
                  doctest::Approx(limited_phase).epsilon(1e-13));
        }
    }
}

TEST_CASE("build_phase_set: limited grid spans [-R/2, R/2]") {
    const PhaseShiftSet ps = build_phase_set(3, kPi / 2.0);
    CHECK(ps.regime == PhaseRegime::limited);
    CHECK(ps.phases[0] == doctest::Approx(-kPi / 4.0));
    CHECK(ps.phases[1] == doctest::Approx(0.0));
    CHECK(ps.phases[2] == doctest::Approx(kPi / 4.0));
    CHECK(ps.gaps[0] == doctest::Approx(kPi / 4.0));
    CHECK(ps.gaps[1] == doctest::Approx(kPi / 4.0));
    CHECK(ps.gaps[2] == doctest::Approx(3.0 * kPi / 2.0));
    CHECK(ps.phases.back() - ps.phases.front() == doctest::Approx(ps.range).epsilon(1e-15));
}

TEST_CASE("build_phase_set rejects bad arguments") {
    CHECK_THROWS_AS(build_phase_set(1, kPi), std::invalid_argument);
    CHECK_THROWS_AS(build_phase_set(4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_phase_set(4, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_phase_set(4, kTwoPi + 0.01), std::invalid_argument);
}

TEST_CASE("phase-set gaps close the circle") {
    TrialRng rng(11, 0);
    for (int i = 0; i < 500; ++i) {
        const int k = 2 + static_cast<int>(rng.next_unit() * 7);
        const double range = 0.1 + rng.next_unit() * (kTwoPi - 0.1);
        const PhaseShiftSet ps = build_phase_set(k, range);
        const double total = std::accumulate(ps.gaps.begin(), ps.gaps.end(), 0.0);
        CHECK(std::abs(total - kTwoPi) <= 1e-12);
        CHECK(std::is_sorted(ps.phases.begin(), ps.phases.end()));
        CHECK(ps.phases.front() >= -kPi);
        CHECK(ps.phases.back() < kPi);
    }
}

TEST_CASE("pda_gain hits its extremes and the frozen mid-slope value") {
    const PdaProfile profile = make_pda_profile(0.2, 1.6, kPi / 2.0);
    CHECK(pda_gain(profile.phi_r - kPi / 2.0, profile) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(pda_gain(profile.phi_r + kPi / 2.0, profile) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pda_gain(kPi / 2.0, profile) == doctest::Approx(0.4639015821545789).epsilon(1e-14));
    const PdaProfile rotated = make_pda_profile(0.35, 2.2, -1.1);
    CHECK(pda_gain(rotated.phi_r - kPi / 2.0, rotated) == doctest::Approx(0.35).epsilon(1e-14));
    CHECK(pda_gain(rotated.phi_r + kPi / 2.0, rotated) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("pda_gain range and sine symmetry") {
    TrialRng rng(13, 0);
    for (int i = 0; i < 2000; ++i) {
        const double beta_min = rng.next_unit();
        const double alpha_r = rng.next_unit() * 4.0;
        const PdaProfile profile = make_pda_profile(beta_min, alpha_r, rng.next_angle());
        const double x = rng.next_angle() * 3.0;
        const double g = pda_gain(profile.phi_r + x, profile);
        CHECK(g >= beta_min - 1e-15);
        CHECK(g <= 1.0 + 1e-15);
        // gain depends on theta only through sin(theta - phi_r)
        const double mirrored = pda_gain(profile.phi_r + (kPi - x), profile);
        CHECK(g == doctest::Approx(mirrored).epsilon(1e-12));
    }
}

TEST_CASE("build_coefficient_set: peak-aligned sampling") {
    const PdaProfile profile = make_pda_profile(0.2, 1.6);
    SUBCASE("K=2 gains are the two extremes") {
        const CoefficientSet ws = build_coefficient_set(build_phase_set(2, kTwoPi), profile);
        CHECK(ws.gains[0] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(ws.gains[1] == doctest::Approx(0.2).epsilon(1e-14));
    }
    SUBCASE("K=4 matches the frozen offsets {0, pi/2, pi, 3*pi/2}") {
        const CoefficientSet ws = build_coefficient_set(build_phase_set(4, kTwoPi), profile);
        CHECK(ws.gains[0] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(ws.gains[1] == doctest::Approx(0.4639015821545789).epsilon(1e-13));
        CHECK(ws.gains[2] == doctest::Approx(0.2).epsilon(1e-13));
        CHECK(ws.gains[3] == doctest::Approx(0.4639015821545789).epsilon(1e-13));
    }
    SUBCASE("beta_min = 1 collapses all gains to 1") {
        const CoefficientSet ws = build_coefficient_set(build_phase_set(5, kTwoPi),
                                                        make_pda_profile(1.0, 1.6));
        for (double g : ws.gains) CHECK(g == 1.0);
    }
    SUBCASE("literal offset reproduces the raw profile") {
        const PhaseShiftSet ps = build_phase_set(4, kTwoPi);
        const CoefficientSet ws =
            build_coefficient_set(ps, profile, literal_peak_offset(ps, profile));
        for (int k = 0; k < 4; ++k) {
            CHECK(ws.gains[static_cast<size_t>(k)] ==
                  doctest::Approx(pda_gain(ps.phases[static_cast<size_t>(k)], profile))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("check_local_convexity") {
    SUBCASE("unit circle coefficients with spans below pi") {
        const CoefficientSet ws = build_coefficient_set(build_phase_set(8, kTwoPi),
                                                        make_pda_profile(1.0, 1.6));
        CHECK(check_local_convexity(ws));
        CHECK(ws.locally_convex);
    }
    SUBCASE("collinear triplet fails") {
        const PhaseShiftSet ps = make_phase_set({-kPi / 4.0, 0.0, kPi / 4.0});
        // Middle point placed exactly on the chord between the outer points.
        const CoefficientSet ws = make_coefficient_set(ps, {1.0, std::cos(kPi / 4.0), 1.0});
        CHECK_FALSE(check_local_convexity(ws));
        CHECK_FALSE(ws.locally_convex);
        // Nudging the middle point outward restores convexity.
        const CoefficientSet bulged =
            make_coefficient_set(ps, {1.0, std::cos(kPi / 4.0) + 1e-6, 1.0});
        CHECK(check_local_convexity(bulged));
    }
    SUBCASE("K = 2 is vacuously convex") {
        const CoefficientSet ws = make_coefficient_set(build_phase_set(2, kTwoPi), {1.0, 0.01});
        CHECK(check_local_convexity(ws));
    }
    SUBCASE("recommended attenuation band stays convex") {
        const CoefficientSet ws = build_coefficient_set(build_phase_set(4, kTwoPi),
                                                        make_pda_profile(0.4, 1.6));
        CHECK(check_local_convexity(ws));
        const CoefficientSet fine = build_coefficient_set(build_phase_set(8, kTwoPi),
                                                          make_pda_profile(0.4, 1.6));
        CHECK(check_local_convexity(fine));
    }
}

TEST_CASE("received_power basics") {
    const CoefficientSet ws = make_coefficient_set(build_phase_set(2, kTwoPi), {1.0, 0.5});
    SUBCASE("empty sum leaves the direct power") {
        const ChannelInstance channel = make_channel({2.0, 0.3}, {});
        CHECK(received_power(channel, ws, {}).power == doctest::Approx(4.0).epsilon(1e-15));
    }
    SUBCASE("single term") {
        // Selection 1 carries gain 0.5; power is |0.5|^2 independent of phase.
        const ChannelInstance channel = make_channel({0.0, 0.0}, {{1.0, kPi / 2.0}});
        CHECK(received_power(channel, ws, {1}).power == doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("selection validation") {
        const ChannelInstance channel = make_channel({0.0, 0.0}, {{1.0, 0.0}});
        CHECK_THROWS_AS(received_power(channel, ws, {}), std::invalid_argument);
        CHECK_THROWS_AS(received_power(channel, ws, {2}), std::out_of_range);
        CHECK_THROWS_AS(received_power(channel, ws, {-1}), std::out_of_range);
    }
}

TEST_CASE("received_power is permutation invariant") {
    TrialRng rng(17, 0);
    std::mt19937 shuffler(99);
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + static_cast<int>(rng.next_unit() * 12);
        const ChannelInstance channel = testutil::random_channel(rng, n);
        const CoefficientSet ws = testutil::random_coefficients(rng, 4);
        std::vector<int> selections(static_cast<size_t>(n));
        for (auto& s : selections) s = static_cast<int>(rng.next_unit() * 4);

        std::vector<size_t> order(static_cast<size_t>(n));
        std::iota(order.begin(), order.end(), size_t{0});
        std::shuffle(order.begin(), order.end(), shuffler);
        ChannelInstance permuted = channel;
        std::vector<int> permuted_selections(selections.size());
        for (size_t j = 0; j < order.size(); ++j) {
            permuted.cascaded[j] = channel.cascaded[order[j]];
            permuted_selections[j] = selections[order[j]];
        }
        const double a = received_power(channel, ws, selections).power;
        const double b = received_power(permuted, ws, permuted_selections).power;
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("snr_boost") {
    const CoefficientSet unit = make_coefficient_set(build_phase_set(2, kTwoPi), {1.0, 1.0});
    SUBCASE("no elements gives exactly 1") {
        const ChannelInstance channel = make_channel({0.7, 1.2}, {});
        CHECK(snr_boost(channel, unit, {}) == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("perfect alignment of one equal-strength element gives 4") {
        // Channel angle pi/2 plus selected phase -pi/2 lands on the direct angle 0.
        const ChannelInstance channel = make_channel({1.0, 0.0}, {{1.0, kPi / 2.0}});
        CHECK(*snr_boost(channel, unit, {0}) == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("undefined without a direct link") {
        const ChannelInstance channel = make_channel({0.0, 0.0}, {{1.0, 0.0}});
        CHECK_FALSE(snr_boost(channel, unit, {0}).has_value());
    }
    SUBCASE("matches power recomputed by hand on random instances") {
        TrialRng rng(23, 0);
        for (int i = 0; i < 100; ++i) {
            const ChannelInstance channel = testutil::random_channel(rng, 5);
            const CoefficientSet ws = testutil::random_coefficients(rng, 3);
            std::vector<int> selections(5);
            for (auto& s : selections) s = static_cast<int>(rng.next_unit() * 3);
            std::complex<double> g = channel.direct_complex();
            for (int n = 0; n < 5; ++n) {
                g += channel.cascaded_complex(n) * ws.coefficient(selections[static_cast<size_t>(n)]);
            }
            const double expected = std::norm(g) / (channel.direct.beta * channel.direct.beta);
            CHECK(*snr_boost(channel, ws, selections) == doctest::Approx(expected).epsilon(1e-11));
        }
    }
}

TEST_CASE("evaluate_solution is self-consistent") {
    TrialRng rng(29, 0);
    for (int i = 0; i < 100; ++i) {
        const ChannelInstance channel = testutil::random_channel(rng, 6);
        const CoefficientSet ws = testutil::random_coefficients(rng, 4);
        std::vector<int> selections(6);
        for (auto& s : selections) s = static_cast<int>(rng.next_unit() * 4);
        const BeamformingSolution sol = evaluate_solution(channel, ws, selections);
        CHECK(sol.power == doctest::Approx(std::norm(sol.g)).epsilon(1e-12));
        const ReceivedPower again = received_power(channel, ws, sol.selections);
        CHECK(again.g.real() == doctest::Approx(sol.g.real()).epsilon(1e-12));
        CHECK(again.g.imag() == doctest::Approx(sol.g.imag()).epsilon(1e-12));
    }
}

TEST_CASE("make_phase_set validates and derives the regime") {
    CHECK_THROWS_AS(make_phase_set({0.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_phase_set({0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(make_phase_set({0.0, kPi}), std::invalid_argument);
    const PhaseShiftSet ps = make_phase_set({-kPi, 0.0});
    CHECK(ps.regime == PhaseRegime::uniform);
    CHECK(ps.gaps[0] == doctest::Approx(kPi));
    CHECK(ps.gaps[1] == doctest::Approx(kPi));
    const PhaseShiftSet limited = make_phase_set({-0.5, 0.0, 0.5});
    CHECK(limited.regime == PhaseRegime::limited);
    CHECK(limited.range == doctest::Approx(1.0));
}
