#pragma once

#include <complex>
#include <cstdint>
#include <string_view>
#include <vector>

namespace covalg {

/// Deterministic splitmix64 stream.
///
/// Every random draw in the verification harness flows from one user
/// seed; independent substreams are derived by hashing a textual
/// stream id (property name, trial index) into the seed, so trials can
/// run in any order or in parallel and still reproduce byte-identical
/// reports.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53-bit resolution, stdlib-independent.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [-s, s].
    double next_symmetric(double s) { return s * (2.0 * next_unit() - 1.0); }

    /// Complex with both parts uniform in [-s, s].
    std::complex<double> next_complex(double s) {
        const double re = next_symmetric(s);
        const double im = next_symmetric(s);
        return {re, im};
    }

    std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

    static std::uint64_t hash_str(std::string_view text) {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : text) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    /// Substream keyed by (seed, label, index).
    static Rng substream(std::uint64_t seed, std::string_view label, std::uint64_t index) {
        std::uint64_t mix = seed ^ (hash_str(label) + 0x9e3779b97f4a7c15ULL * (index + 1));
        return Rng(mix);
    }

private:
    std::uint64_t state_;
};

inline std::vector<std::complex<double>> random_complex_vector(Rng& rng, std::size_t n, double scale) {
    std::vector<std::complex<double>> out(n);
    for (auto& v : out) v = rng.next_complex(scale);
    return out;
}

}  // namespace covalg
