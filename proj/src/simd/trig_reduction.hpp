#pragma once

// Shared constants for the vector cosine used by cos_sum.
//
// Argument t * theta is reduced in units of pi/2 with theta * 2/pi carried as
// a double-double, so the reduction error stays near one ulp of the reduced
// argument even for t ~ 1e9. The reduced x lies in [-pi/4, pi/4] where the
// truncated Taylor series below are accurate to < 1e-17.

namespace pgst::simd::detail {

inline constexpr double kTwoOverPiHi = 0.6366197723675814;
inline constexpr double kTwoOverPiLo = -3.935735335036497e-17;
inline constexpr double kPiOver2Hi = 1.5707963267948966;
inline constexpr double kPiOver2Lo = 6.123233995736766e-17;

// cos x = sum_n kCos[n] x^{2n}
inline constexpr double kCos[] = {
    1.0,
    -1.0 / 2.0,
    1.0 / 24.0,
    -1.0 / 720.0,
    1.0 / 40320.0,
    -1.0 / 3628800.0,
    1.0 / 479001600.0,
    -1.0 / 87178291200.0,
    1.0 / 20922789888000.0,
    -1.0 / 6402373705728000.0,
};

// sin x = x * sum_n kSin[n] x^{2n}
inline constexpr double kSin[] = {
    1.0,
    -1.0 / 6.0,
    1.0 / 120.0,
    -1.0 / 5040.0,
    1.0 / 362880.0,
    -1.0 / 39916800.0,
    1.0 / 6227020800.0,
    -1.0 / 1307674368000.0,
    1.0 / 355687428096000.0,
};

inline constexpr int kCosTerms = sizeof(kCos) / sizeof(kCos[0]);
inline constexpr int kSinTerms = sizeof(kSin) / sizeof(kSin[0]);

}  // namespace pgst::simd::detail
