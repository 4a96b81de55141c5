#pragma once

// Shared helpers for the test suites.

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "covalg/phase.hpp"
#include "covalg/rand.hpp"

namespace testsup {

/// True when fn throws a std::exception whose message starts with prefix.
inline bool throws_with_prefix(const std::function<void()>& fn, const std::string& prefix) {
    try {
        fn();
    } catch (const std::exception& e) {
        return std::string(e.what()).rfind(prefix, 0) == 0;
    }
    return false;
}

inline double max_abs_diff(const std::vector<covalg::complex_t>& a, const std::vector<covalg::complex_t>& b) {
    double worst = 0.0;
    const std::size_t n = a.size() < b.size() ? a.size() : b.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::abs(a[i] - b[i]);
        if (d > worst) worst = d;
    }
    if (a.size() != b.size()) return 1e300;
    return worst;
}

inline std::vector<covalg::complex_t> random_values(std::uint64_t seed, const std::string& label,
                                                    std::uint64_t index, std::size_t n) {
    covalg::Rng rng = covalg::Rng::substream(seed, label, index);
    return covalg::random_complex_vector(rng, n, 1.0);
}

}  // namespace testsup
