#pragma once

/**
 * @file report.hpp
 * @brief Machine-readable results of the identity-verification suites.
 */

#include <cstdint>
#include <string>
#include <vector>

namespace covalg {

/// One verified identity: every residual is reported even on pass.
struct PropertyRecord {
    std::string id;       ///< stable machine name, e.g. "homomorphism"
    std::string anchor;   ///< the identity itself, in ASCII math
    int trials = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::string version = "1";
    std::string group;            ///< group descriptor (label)
    int subgroup_order = 0;       ///< |N|
    std::vector<int> subgroup_members;
    std::vector<std::int64_t> xi_num;  ///< exact character numerators over xi_den
    std::int64_t xi_den = 1;
    std::uint64_t seed = 0;
    std::vector<PropertyRecord> properties;

    bool all_pass() const {
        for (const auto& p : properties)
            if (!p.pass) return false;
        return true;
    }
};

/// JSON object {version, group, N, xi, seed, timestamp?, properties:[...]}
/// with fixed field names. The timestamp is the only non-reproducible
/// field and can be omitted for byte-stable comparisons.
std::string report_json(const VerificationReport& report, bool include_timestamp);

/// JSON array of report objects.
std::string reports_json(const std::vector<VerificationReport>& reports, bool include_timestamp);

/// Flat CSV: one row per property, quoted where needed.
std::string reports_csv(const std::vector<VerificationReport>& reports);

}  // namespace covalg
