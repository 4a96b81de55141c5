#pragma once

/**
 * @file verify.hpp
 * @brief Property-based verification of the covariant-algebra identities.
 *
 * Each property draws fresh random data from a substream keyed by
 * (seed, property id, trial index), computes both sides of one identity
 * independently, and records the worst residual across trials. Reports
 * are therefore deterministic for a fixed seed regardless of trial
 * execution order or thread count.
 */

#include <cstdint>
#include <vector>

#include "covalg/covariant.hpp"
#include "covalg/report.hpp"

namespace covalg {

/// Adjustable knobs of the suite. The residual tolerance applies to the
/// properties that compare a projection against a group-side computation;
/// identities that are exact in the algebra keep a fixed 1e-12 budget that
/// only absorbs floating-point accumulation.
struct VerifyTuning {
    double residual_tolerance = 1e-9;
    std::vector<double> p_values = {1.0, 2.0, 3.0};
};

/// Runs the full identity suite over one context. trials >= 1.
VerificationReport run_verification(const CovariantContext& ctx, int trials, std::uint64_t seed);
VerificationReport run_verification(const CovariantContext& ctx, int trials, std::uint64_t seed,
                                    const VerifyTuning& tuning);

}  // namespace covalg
