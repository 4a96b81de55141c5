#pragma once

#include <complex>
#include <cstdint>
#include <numbers>

namespace covalg {

using complex_t = std::complex<double>;

/// Exact evaluation of the root of unity e^{2*pi*i*num/den}.
///
/// Character values are carried as integer numerators over a fixed
/// denominator and only turned into floating point here, so phase
/// arithmetic (products, conjugates, relabelings) never drifts.
inline complex_t unit_phase(std::int64_t num, std::int64_t den) {
    num %= den;
    if (num < 0) num += den;
    if (num == 0) return {1.0, 0.0};
    if (4 * num == den) return {0.0, 1.0};
    if (2 * num == den) return {-1.0, 0.0};
    if (4 * num == 3 * den) return {0.0, -1.0};
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
}

/// Euclidean floor-mod for signed arguments: result always in [0, m).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace covalg
