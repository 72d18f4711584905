// Hand-derived reference states for n = 2, frozen as literal sign tables so
// the library's operators are checked against worked-out amplitudes rather
// than against themselves.
//
// Flat order: (k << 3) | (x << 1) | v, i.e. entries pair up as v = 0, 1 for
// x = 00, 01, 10, 11 within each k row. Entry +1/-1 is the amplitude sign,
// 0 means no amplitude. Every nonzero entry of these states shares one
// magnitude, which normalization then fixes to 1/sqrt(#nonzero).

#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "groverlab/state.hpp"

namespace expected {

// Prepared input: sign (-1)^v everywhere.
inline constexpr std::array<int, 32> kInputSign = {
    +1, -1, +1, -1, +1, -1, +1, -1,   // k = 00
    +1, -1, +1, -1, +1, -1, +1, -1,   // k = 01
    +1, -1, +1, -1, +1, -1, +1, -1,   // k = 10
    +1, -1, +1, -1, +1, -1, +1, -1,   // k = 11
};

// After one oracle query: the x = k pair of each row flips sign.
inline constexpr std::array<int, 32> kPostQuerySign = {
    -1, +1, +1, -1, +1, -1, +1, -1,   // k = 00 (flip at x = 00)
    +1, -1, -1, +1, +1, -1, +1, -1,   // k = 01 (flip at x = 01)
    +1, -1, +1, -1, -1, +1, +1, -1,   // k = 10 (flip at x = 10)
    +1, -1, +1, -1, +1, -1, -1, +1,   // k = 11 (flip at x = 11)
};

// After the X rotation: each row collapses onto x = k.
inline constexpr std::array<int, 32> kOutputSign = {
    +1, -1,  0,  0,  0,  0,  0,  0,   // k = 00
     0,  0, +1, -1,  0,  0,  0,  0,   // k = 01
     0,  0,  0,  0, +1, -1,  0,  0,   // k = 10
     0,  0,  0,  0,  0,  0, +1, -1,   // k = 11
};

// Output after additionally measuring K = 01.
inline constexpr std::array<int, 32> kSolvedK01Sign = {
     0,  0,  0,  0,  0,  0,  0,  0,
     0,  0, +1, -1,  0,  0,  0,  0,   // k = 01, x = 01
     0,  0,  0,  0,  0,  0,  0,  0,
     0,  0,  0,  0,  0,  0,  0,  0,
};

inline groverlab::StateVector from_sign_table(const std::array<int, 32>& sign) {
    int nonzero = 0;
    for (int s : sign) {
        if (s != 0) ++nonzero;
    }
    const double mag = 1.0 / std::sqrt(static_cast<double>(nonzero));
    std::vector<groverlab::Cx> a(32);
    for (std::size_t i = 0; i < 32; ++i) {
        a[i] = groverlab::Cx{sign[i] * mag, 0.0};
    }
    return groverlab::StateVector::from_amplitudes(groverlab::RegisterLayout(2),
                                                   std::move(a));
}

inline groverlab::StateVector input() { return from_sign_table(kInputSign); }
inline groverlab::StateVector post_query() { return from_sign_table(kPostQuerySign); }
inline groverlab::StateVector output() { return from_sign_table(kOutputSign); }
inline groverlab::StateVector solved_k01() { return from_sign_table(kSolvedK01Sign); }

}  // namespace expected
