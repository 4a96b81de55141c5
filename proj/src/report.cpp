#include "covalg/report.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

#include <json.hpp>

namespace covalg {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ordered_json report_object(const VerificationReport& report, bool include_timestamp) {
    ordered_json j;
    j["version"] = report.version;
    j["group"] = report.group;
    j["N"] = ordered_json{{"order", report.subgroup_order}, {"members", report.subgroup_members}};
    j["xi"] = ordered_json{{"den", report.xi_den}, {"num", report.xi_num}};
    j["seed"] = report.seed;
    if (include_timestamp) j["timestamp"] = utc_timestamp();
    j["properties"] = ordered_json::array();
    for (const auto& p : report.properties) {
        ordered_json rec;
        rec["id"] = p.id;
        rec["anchor"] = p.anchor;
        rec["trials"] = p.trials;
        rec["max_residual"] = p.max_residual;
        rec["tolerance"] = p.tolerance;
        rec["pass"] = p.pass;
        j["properties"].push_back(std::move(rec));
    }
    return j;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string report_json(const VerificationReport& report, bool include_timestamp) {
    return report_object(report, include_timestamp).dump(2) + "\n";
}

std::string reports_json(const std::vector<VerificationReport>& reports, bool include_timestamp) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) arr.push_back(report_object(r, include_timestamp));
    return arr.dump(2) + "\n";
}

std::string reports_csv(const std::vector<VerificationReport>& reports) {
    std::ostringstream out;
    out << "group,N_order,xi_den,xi_num,seed,property,anchor,trials,max_residual,tolerance,pass\n";
    for (const auto& r : reports) {
        std::ostringstream xi;
        for (std::size_t i = 0; i < r.xi_num.size(); ++i) xi << (i ? " " : "") << r.xi_num[i];
        for (const auto& p : r.properties) {
            out << csv_escape(r.group) << ',' << r.subgroup_order << ',' << r.xi_den << ','
                << csv_escape(xi.str()) << ',' << r.seed << ',' << csv_escape(p.id) << ','
                << csv_escape(p.anchor) << ',' << p.trials << ',';
            out.precision(17);
            out << p.max_residual << ',' << p.tolerance << ',' << (p.pass ? "true" : "false") << '\n';
        }
    }
    return out.str();
}

}  // namespace covalg
