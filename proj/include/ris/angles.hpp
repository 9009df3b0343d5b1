#pragma once

#include <cmath>

namespace ris {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Storage convention for phases and channel angles: [-pi, pi).
inline double wrap_angle(double a) {
    double r = std::remainder(a, kTwoPi);
    if (r >= kPi) r -= kTwoPi;
    if (r < -kPi) r += kTwoPi;
    return r;
}

// Sweep-schedule convention: [0, 2*pi).
inline double wrap_two_pi(double a) {
    double r = std::remainder(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

// Quantization-error convention: (-pi, pi].
inline double wrap_error(double a) {
    double r = std::remainder(a, kTwoPi);
    if (r <= -kPi) r += kTwoPi;
    if (r > kPi) r -= kTwoPi;
    return r;
}

}  // namespace ris
