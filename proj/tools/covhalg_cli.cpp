// covhalg: command-line surface over the covariant-algebra library.
//
// Subcommands:
//   characters  enumerate all characters of the selected subgroup
//   invariant   the conjugation-invariant subset, computed two ways
//   verify      run the identity suite and emit verification reports
//   wh          closed-form Weyl-Heisenberg operations and the circle oracle
//   continuum   quadrature residual tables for the continuous models
//   bench       wall-clock timings of the coset convolution
//
// Exit codes: 0 when every check passes, 1 when a verified property fails,
// 2 for usage, parse, or configuration errors, 3 when the two
// invariant-character criteria disagree.
//
// Machine output goes to --out (written atomically, temp file then rename)
// or to stdout; notes and summaries go to stderr. The environment variable
// COVHALG_THREADS caps internal parallelism.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "covalg/character.hpp"
#include "covalg/continuum.hpp"
#include "covalg/covariant.hpp"
#include "covalg/group.hpp"
#include "covalg/group_spec.hpp"
#include "covalg/rand.hpp"
#include "covalg/report.hpp"
#include "covalg/semidirect.hpp"
#include "covalg/verify.hpp"
#include "covalg/wh.hpp"

namespace {

using json = nlohmann::ordered_json;

std::string fmt_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::filesystem::path tmp(path);
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("io-error: cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("io-error: failed while writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

/// Machine output goes to the --out path when given, otherwise to stdout.
void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
    } else {
        write_file_atomic(out_path, content);
        std::cerr << "wrote " << out_path << "\n";
    }
}

// ---------------------------------------------------------------- listings

std::string character_table_text(const covalg::ResolvedSpec& resolved, const covalg::CharacterSet& set,
                                 const std::string& heading) {
    std::ostringstream out;
    out << "group: " << resolved.label << "\n";
    out << "subgroup order: " << resolved.subgroup.size() << "\n";
    out << "members:";
    for (int m : resolved.subgroup.members) out << ' ' << m;
    out << "\n";
    out << heading << ": " << set.size() << "\n";
    out << "each row lists the exponent k per member, the value being e^(2 pi i k / "
        << resolved.subgroup.size() << ")\n";
    for (int i = 0; i < set.size(); ++i) {
        out << "chi[" << i << "]";
        for (std::int64_t k : set.items[i].num) out << ' ' << k;
        out << "\n";
    }
    return out.str();
}

json character_rows_json(const covalg::CharacterSet& set) {
    json rows = json::array();
    for (const covalg::Character& c : set.items) rows.push_back(c.num);
    return rows;
}

std::string character_table_csv(const covalg::ResolvedSpec& resolved, const covalg::CharacterSet& set) {
    std::ostringstream out;
    out << "character,member,numerator,denominator\n";
    for (int i = 0; i < set.size(); ++i)
        for (std::size_t slot = 0; slot < set.items[i].num.size(); ++slot)
            out << i << ',' << resolved.subgroup.members[slot] << ',' << set.items[i].num[slot] << ','
                << set.items[i].den << "\n";
    return out.str();
}

int cmd_characters(const std::string& spec_path, const std::string& out, const std::string& format) {
    const covalg::ResolvedSpec resolved = covalg::resolve_group_spec(covalg::parse_group_spec_file(spec_path));
    const covalg::CharacterSet set = covalg::enumerate_characters(resolved.subgroup);
    if (format == "json") {
        json j;
        j["group"] = resolved.label;
        j["subgroup_order"] = resolved.subgroup.size();
        j["members"] = resolved.subgroup.members;
        j["denominator"] = resolved.subgroup.size();
        j["characters"] = character_rows_json(set);
        emit(out, j.dump(2) + "\n");
    } else if (format == "csv") {
        emit(out, character_table_csv(resolved, set));
    } else {
        emit(out, character_table_text(resolved, set, "characters"));
    }
    return 0;
}

bool subgroup_is_central(const covalg::FiniteGroup& group, const covalg::SubgroupHandle& subgroup) {
    const covalg::SubgroupHandle z = covalg::center(group);
    for (int m : subgroup.members)
        if (z.position[m] < 0) return false;
    return true;
}

int cmd_invariant(const std::string& spec_path, const std::string& out, const std::string& format) {
    const covalg::ResolvedSpec resolved = covalg::resolve_group_spec(covalg::parse_group_spec_file(spec_path));
    const covalg::CharacterSet all = covalg::enumerate_characters(resolved.subgroup);
    const covalg::CharacterSet brute = covalg::invariant_characters(resolved.group(), resolved.subgroup);

    bool compared = false;
    bool agree = true;
    int via_count = -1;
    if (resolved.subgroup_in_k) {
        const covalg::CharacterSet via =
            covalg::invariant_characters_semidirect(*resolved.product, resolved.k_subgroup);
        compared = true;
        via_count = via.size();
        agree = covalg::same_character_set(brute, via);
    }
    const bool central = subgroup_is_central(resolved.group(), resolved.subgroup);

    if (format == "json") {
        json j;
        j["group"] = resolved.label;
        j["subgroup_order"] = resolved.subgroup.size();
        j["members"] = resolved.subgroup.members;
        j["total_characters"] = all.size();
        j["invariant_brute_force"] = brute.size();
        if (compared)
            j["invariant_semidirect"] = via_count;
        else
            j["invariant_semidirect"] = nullptr;
        j["paths_agree"] = agree;
        j["central"] = central;
        j["denominator"] = resolved.subgroup.size();
        j["characters"] = character_rows_json(brute);
        emit(out, j.dump(2) + "\n");
    } else if (format == "csv") {
        emit(out, character_table_csv(resolved, brute));
    } else {
        std::ostringstream text;
        text << character_table_text(resolved, brute, "invariant characters (brute force over all conjugations)");
        text << "total characters: " << all.size() << "\n";
        if (compared) {
            text << "invariant characters (semidirect-action criterion): " << via_count << "\n";
            text << (agree ? "criterion paths agree\n" : "criterion paths DISAGREE\n");
        } else {
            text << "semidirect-action criterion not applicable: the subgroup was not selected inside the"
                    " abelian factor\n";
        }
        if (central) text << "the subgroup is central, so every character is invariant\n";
        emit(out, text.str());
    }
    if (!agree) {
        std::cerr << "error: the invariant-character criteria disagree on " << resolved.label << "\n";
        return 3;
    }
    return 0;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
    std::string spec_path;
    int xi = -1;
    bool corrupt = false;
    std::uint64_t seed = 2026;
    int trials = 25;
    double tolerance = 1e-9;
    std::vector<double> p_values{1.0, 2.0, 3.0};
    std::string out;
    std::string format = "json";
    bool no_timestamp = false;
};

int cmd_verify(const VerifyArgs& args) {
    covalg::RunConfig cfg;
    cfg.seed = args.seed;
    cfg.trials = args.trials;
    cfg.tolerance = args.tolerance;
    cfg.p_values = args.p_values;
    cfg.out_path = args.out;
    cfg.validate();
    const covalg::VerifyTuning tuning{cfg.tolerance, cfg.p_values};

    if (args.spec_path.empty() && args.xi >= 0)
        throw std::invalid_argument("invalid-parameter: --xi selects a character of one group, name it with --spec");
    if (args.spec_path.empty() && args.corrupt)
        throw std::invalid_argument("invalid-parameter: --corrupt-xi targets one group, name it with --spec");
    if (args.corrupt && args.xi >= 0)
        throw std::invalid_argument("invalid-parameter: choose either --xi or --corrupt-xi, not both");

    std::vector<covalg::ResolvedSpec> targets;
    if (!args.spec_path.empty()) {
        targets.push_back(covalg::resolve_group_spec(covalg::parse_group_spec_file(args.spec_path)));
    } else {
        for (const covalg::GroupSpec& spec : covalg::bundled_fixtures())
            targets.push_back(covalg::resolve_group_spec(spec));
    }

    std::vector<covalg::VerificationReport> reports;
    bool all_ok = true;
    for (const covalg::ResolvedSpec& target : targets) {
        if (args.corrupt) {
            const covalg::CharacterSet all = covalg::enumerate_characters(target.subgroup);
            const covalg::CharacterSet gamma = covalg::invariant_characters(target.group(), target.subgroup);
            const covalg::Character* bad = nullptr;
            for (const covalg::Character& c : all.items)
                if (!gamma.contains(c)) {
                    bad = &c;
                    break;
                }
            if (bad == nullptr)
                throw std::invalid_argument(
                    "invalid-parameter: every character of this subgroup is invariant, so there is no"
                    " corrupting choice; pick a fixture whose invariant set is proper");
            const covalg::CovariantContext ctx =
                covalg::make_covariant_context_unchecked(target.group(), target.subgroup, *bad);
            covalg::VerificationReport report = covalg::run_verification(ctx, cfg.trials, cfg.seed, tuning);
            for (const covalg::PropertyRecord& p : report.properties)
                if (!p.pass)
                    std::cerr << "corrupted character fails: " << p.id << " (residual "
                              << fmt_double(p.max_residual) << ")\n";
            if (report.all_pass())
                std::cerr << "warning: the corrupted character did not break any property\n";
            all_ok = false;
            reports.push_back(std::move(report));
            continue;
        }

        const covalg::CharacterSet gamma = covalg::invariant_characters(target.group(), target.subgroup);
        int lo = 0;
        int hi = gamma.size();
        if (args.xi >= 0) {
            if (args.xi >= gamma.size())
                throw std::invalid_argument("invalid-parameter: --xi " + std::to_string(args.xi) +
                                            " is out of range, the group has " + std::to_string(gamma.size()) +
                                            " invariant characters");
            lo = args.xi;
            hi = args.xi + 1;
        }
        for (int i = lo; i < hi; ++i) {
            const covalg::CovariantContext ctx =
                covalg::make_covariant_context(target.group(), target.subgroup, gamma.items[i]);
            covalg::VerificationReport report = covalg::run_verification(ctx, cfg.trials, cfg.seed, tuning);
            std::cerr << (report.all_pass() ? "PASS " : "FAIL ") << target.label << " xi " << i << " of "
                      << gamma.size() << "\n";
            if (!report.all_pass()) {
                all_ok = false;
                for (const covalg::PropertyRecord& p : report.properties)
                    if (!p.pass)
                        std::cerr << "  failing property: " << p.id << " (residual "
                                  << fmt_double(p.max_residual) << ")\n";
            }
            reports.push_back(std::move(report));
        }
    }

    const std::string content = args.format == "csv" ? covalg::reports_csv(reports)
                                                     : covalg::reports_json(reports, !args.no_timestamp);
    emit(args.out, content);
    return all_ok ? 0 : 1;
}

// ------------------------------------------------------- Weyl-Heisenberg IO

/// CSV carrier for transversal value arrays. The metadata line pins the
/// base order, the circle degree, and the fiber kind so files cannot be
/// combined across algebras by accident:
///
///   # M=4 n=1 kind=center          # M=4 y=2 n=4 kind=full
///   m,l,re,im                      m,re,im
///   0,0,1,0                        0,1,0
struct WhFile {
    bool is_center = true;
    covalg::WHCenterCovariant center;
    covalg::WHFullCovariant full;

    int base_order() const { return is_center ? center.base_order : full.base_order; }
    std::int64_t degree() const { return is_center ? center.degree : full.degree; }
};

std::string wh_center_csv(const covalg::WHCenterCovariant& f) {
    std::ostringstream out;
    out << "# M=" << f.base_order << " n=" << f.degree << " kind=center\n";
    out << "m,l,re,im\n";
    for (int m = 0; m < f.base_order; ++m)
        for (int l = 0; l < f.base_order; ++l) {
            const covalg::complex_t v = f.values[static_cast<std::size_t>(m) * f.base_order + l];
            out << m << ',' << l << ',' << fmt_double(v.real()) << ',' << fmt_double(v.imag()) << "\n";
        }
    return out.str();
}

std::string wh_full_csv(const covalg::WHFullCovariant& f) {
    std::ostringstream out;
    out << "# M=" << f.base_order << " y=" << f.base_point << " n=" << f.degree << " kind=full\n";
    out << "m,re,im\n";
    for (int m = 0; m < f.base_order; ++m)
        out << m << ',' << fmt_double(f.values[m].real()) << ',' << fmt_double(f.values[m].imag()) << "\n";
    return out.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) out.push_back(field);
    return out;
}

[[noreturn]] void csv_fail(const std::string& path, int lineno, const std::string& message) {
    throw std::invalid_argument("csv-parse-error: " + path + ":" + std::to_string(lineno) + ": " + message);
}

WhFile parse_wh_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("csv-parse-error: cannot open " + path);

    std::string line;
    int lineno = 0;

    auto next_line = [&](std::string& target) {
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            target = line;
            return true;
        }
        return false;
    };

    std::string meta;
    if (!next_line(meta) || meta.empty() || meta[0] != '#')
        csv_fail(path, lineno, "expected a metadata line starting with '#'");

    int base_order = -1;
    int base_point = -1;
    std::int64_t degree = 0;
    bool have_degree = false;
    std::string kind;
    std::istringstream meta_in(meta.substr(1));
    std::string token;
    while (meta_in >> token) {
        const std::size_t eq = token.find('=');
        if (eq == std::string::npos) csv_fail(path, lineno, "metadata token '" + token + "' is not key=value");
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        try {
            if (key == "M")
                base_order = std::stoi(value);
            else if (key == "y")
                base_point = std::stoi(value);
            else if (key == "n") {
                degree = std::stoll(value);
                have_degree = true;
            } else if (key == "kind")
                kind = value;
            else
                csv_fail(path, lineno, "unknown metadata key '" + key + "'");
        } catch (const std::invalid_argument&) {
            csv_fail(path, lineno, "metadata value for '" + key + "' is not a number");
        } catch (const std::out_of_range&) {
            csv_fail(path, lineno, "metadata value for '" + key + "' is out of range");
        }
    }
    if (base_order < 1) csv_fail(path, lineno, "metadata must set M to a positive base order");
    if (!have_degree) csv_fail(path, lineno, "metadata must set the circle degree n");
    if (kind != "center" && kind != "full") csv_fail(path, lineno, "metadata must set kind=center or kind=full");
    const bool is_center = kind == "center";
    if (!is_center && base_point < 0) csv_fail(path, lineno, "kind=full requires the evaluation point y");

    std::string header;
    if (!next_line(header)) csv_fail(path, lineno, "missing column header");
    const std::string expected_header = is_center ? "m,l,re,im" : "m,re,im";
    if (header != expected_header) csv_fail(path, lineno, "column header must be '" + expected_header + "'");

    const std::size_t count =
        is_center ? static_cast<std::size_t>(base_order) * base_order : static_cast<std::size_t>(base_order);
    std::vector<covalg::complex_t> values(count);
    std::vector<bool> seen(count, false);
    std::string row;
    while (next_line(row)) {
        const std::vector<std::string> fields = split(row, ',');
        if (fields.size() != (is_center ? 4u : 3u))
            csv_fail(path, lineno, "expected " + std::to_string(is_center ? 4 : 3) + " fields");
        try {
            const int m = std::stoi(fields[0]);
            if (m < 0 || m >= base_order) csv_fail(path, lineno, "index m out of range");
            std::size_t slot = static_cast<std::size_t>(m);
            if (is_center) {
                const int l = std::stoi(fields[1]);
                if (l < 0 || l >= base_order) csv_fail(path, lineno, "index l out of range");
                slot = static_cast<std::size_t>(m) * base_order + l;
            }
            if (seen[slot]) csv_fail(path, lineno, "duplicate entry");
            seen[slot] = true;
            const double re = std::stod(fields[is_center ? 2 : 1]);
            const double im = std::stod(fields[is_center ? 3 : 2]);
            values[slot] = covalg::complex_t{re, im};
        } catch (const std::invalid_argument& e) {
            // Re-raise our own diagnostics unchanged; wrap stoi/stod noise.
            const std::string what = e.what();
            if (what.rfind("csv-parse-error:", 0) == 0) throw;
            csv_fail(path, lineno, "field is not a number");
        } catch (const std::out_of_range&) {
            csv_fail(path, lineno, "field is out of range");
        }
    }
    for (std::size_t i = 0; i < count; ++i)
        if (!seen[i]) csv_fail(path, lineno, "missing entries: the table must cover every index exactly once");

    WhFile file;
    file.is_center = is_center;
    if (is_center)
        file.center = covalg::make_wh_center(base_order, degree, std::move(values));
    else
        file.full = covalg::make_wh_full(base_order, base_point, degree, std::move(values));
    return file;
}

void check_wh_flags(const WhFile& file, const std::string& path, int base_order, std::int64_t degree) {
    if (file.base_order() != base_order)
        throw std::invalid_argument("invalid-parameter: " + path + " carries M=" +
                                    std::to_string(file.base_order()) + " but --M asked for " +
                                    std::to_string(base_order));
    if (file.degree() != degree)
        throw std::invalid_argument("invalid-parameter: " + path + " carries n=" + std::to_string(file.degree()) +
                                    " but --n asked for " + std::to_string(degree));
}

int cmd_wh_convolve(const std::string& psi_path, const std::string& phi_path, int base_order,
                    std::int64_t degree, const std::string& out) {
    const WhFile psi = parse_wh_csv(psi_path);
    const WhFile phi = parse_wh_csv(phi_path);
    check_wh_flags(psi, psi_path, base_order, degree);
    check_wh_flags(phi, phi_path, base_order, degree);
    if (psi.is_center != phi.is_center)
        throw std::invalid_argument("incompatible-context: " + psi_path + " and " + phi_path +
                                    " carry different fiber kinds");
    if (psi.is_center) {
        emit(out, wh_center_csv(covalg::wh_center_convolve(psi.center, phi.center)));
    } else {
        emit(out, wh_full_csv(covalg::wh_full_convolve(psi.full, phi.full)));
    }
    return 0;
}

int cmd_wh_involve(const std::string& psi_path, int base_order, std::int64_t degree, const std::string& out) {
    const WhFile psi = parse_wh_csv(psi_path);
    check_wh_flags(psi, psi_path, base_order, degree);
    if (psi.is_center)
        emit(out, wh_center_csv(covalg::wh_center_involve(psi.center)));
    else
        emit(out, wh_full_csv(covalg::wh_full_involve(psi.full)));
    return 0;
}

int cmd_wh_gamma(int base_order, std::int64_t degree_bound, const std::string& out, const std::string& format) {
    const std::vector<covalg::WHCharacter> items = covalg::wh_invariant_characters(base_order, degree_bound);
    if (format == "json") {
        json rows = json::array();
        for (const covalg::WHCharacter& c : items) rows.push_back(json{{"y", c.base_point}, {"n", c.degree}});
        emit(out, rows.dump(2) + "\n");
    } else if (format == "csv") {
        std::ostringstream text;
        text << "y,n\n";
        for (const covalg::WHCharacter& c : items) text << c.base_point << ',' << c.degree << "\n";
        emit(out, text.str());
    } else {
        std::ostringstream text;
        text << "invariant characters (y, n) of the full fiber with |n| <= " << degree_bound << ": "
             << items.size() << "\n";
        for (const covalg::WHCharacter& c : items) text << "y=" << c.base_point << " n=" << c.degree << "\n";
        emit(out, text.str());
    }
    return 0;
}

int cmd_wh_oracle(int base_order, std::int64_t degree, int trig_degree, int quadrature_points, int trials,
                  std::uint64_t seed, const std::string& out, const std::string& format, bool no_timestamp) {
    const covalg::VerificationReport report =
        covalg::circle_oracle_check(base_order, degree, trig_degree, quadrature_points, trials, seed);
    std::cerr << (report.all_pass() ? "PASS " : "FAIL ") << "circle oracle M=" << base_order << " n=" << degree
              << " (worst residual " << fmt_double(report.properties.front().max_residual) << ")\n";
    const std::vector<covalg::VerificationReport> reports{report};
    emit(out, format == "csv" ? covalg::reports_csv(reports) : covalg::reports_json(reports, !no_timestamp));
    return report.all_pass() ? 0 : 1;
}

// --------------------------------------------------------------- continuum

/// Smallest node count of the form modulus*k+1 that is >= requested, so the
/// fixed evaluation points of the residual tables land on grid nodes.
int snap_resolution(int requested, int modulus) {
    if (requested <= modulus + 1) return modulus + 1;
    const int k = (requested - 2) / modulus + 1;
    return modulus * k + 1;
}

std::string residual_rows_text(const std::vector<covalg::ResidualRow>& rows) {
    std::ostringstream out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-24s %10s %13s %13s  %s\n", "property", "resolution", "residual",
                  "tolerance", "status");
    out << buf;
    for (const covalg::ResidualRow& row : rows) {
        std::snprintf(buf, sizeof buf, "%-24s %10d %13.5e %13.5e  %s\n", row.property.c_str(), row.resolution,
                      row.residual, row.tolerance, row.pass ? "pass" : "FAIL");
        out << buf;
    }
    return out.str();
}

json residual_rows_json(const std::vector<covalg::ResidualRow>& rows) {
    json out = json::array();
    for (const covalg::ResidualRow& row : rows)
        out.push_back(json{{"property", row.property},
                           {"resolution", row.resolution},
                           {"residual", row.residual},
                           {"tolerance", row.tolerance},
                           {"pass", row.pass}});
    return out;
}

int cmd_continuum_verify(const std::string& group, std::vector<int> resolutions, double freq,
                         const std::string& out, const std::string& format) {
    const bool affine = group == "affine";
    const int modulus = affine ? 8 : 20;
    if (resolutions.empty()) resolutions = affine ? std::vector<int>{65, 129, 257} : std::vector<int>{21, 41, 81};

    std::vector<int> snapped;
    for (int r : resolutions) {
        const int s = snap_resolution(r, modulus);
        if (s != r)
            std::cerr << "note: resolution " << r << " adjusted to " << s
                      << " so the evaluation points fall on grid nodes\n";
        snapped.push_back(s);
    }
    std::sort(snapped.begin(), snapped.end());
    const auto last = std::unique(snapped.begin(), snapped.end());
    if (last != snapped.end()) {
        snapped.erase(last, snapped.end());
        std::cerr << "note: duplicate resolutions collapsed\n";
    }

    const std::vector<covalg::ResidualRow> rows =
        affine ? covalg::affine_residual_table(snapped) : covalg::h1_residual_table(snapped, freq);
    const bool ok = covalg::residual_study_ok(rows);

    if (format == "json")
        emit(out, residual_rows_json(rows).dump(2) + "\n");
    else if (format == "text")
        emit(out, residual_rows_text(rows));
    else
        emit(out, covalg::residual_rows_csv(rows));
    std::cerr << "residual study: " << (ok ? "pass" : "FAIL")
              << " (every row within budget and refinement non-increasing)\n";
    return ok ? 0 : 1;
}

// ------------------------------------------------------------------- bench

struct BenchRow {
    std::string label;
    int order = 0;
    int cosets = 0;
    int pairs = 0;
    std::vector<double> repeat_ms;  ///< per-convolution milliseconds, one entry per repeat
    double mean_ms = 0.0;
    double min_ms = 0.0;
    double max_ms = 0.0;
    double stddev_ms = 0.0;
};

volatile double benchmark_sink = 0.0;

BenchRow bench_context(const covalg::CovariantContext& ctx, const std::string& label, int pairs, int repeats,
                       std::uint64_t seed) {
    BenchRow row;
    row.label = label;
    row.order = ctx.group->order;
    row.cosets = ctx.coset_count();
    row.pairs = pairs;

    std::vector<covalg::CovariantFunction> psi(pairs);
    std::vector<covalg::CovariantFunction> phi(pairs);
    for (int i = 0; i < pairs; ++i) {
        covalg::Rng rng = covalg::Rng::substream(seed, "bench", static_cast<std::uint64_t>(i));
        psi[i] = {&ctx, covalg::random_complex_vector(rng, static_cast<std::size_t>(row.cosets), 1.0)};
        phi[i] = {&ctx, covalg::random_complex_vector(rng, static_cast<std::size_t>(row.cosets), 1.0)};
    }

    for (int r = 0; r < repeats; ++r) {
        const auto start = std::chrono::steady_clock::now();
        for (int i = 0; i < pairs; ++i) {
            const covalg::CovariantFunction result = covalg::cov_convolve(psi[i], phi[i]);
            benchmark_sink = benchmark_sink + result.values[0].real();
        }
        const auto stop = std::chrono::steady_clock::now();
        const double total_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        row.repeat_ms.push_back(total_ms / pairs);
    }

    row.min_ms = *std::min_element(row.repeat_ms.begin(), row.repeat_ms.end());
    row.max_ms = *std::max_element(row.repeat_ms.begin(), row.repeat_ms.end());
    for (double v : row.repeat_ms) row.mean_ms += v;
    row.mean_ms /= static_cast<double>(repeats);
    double var = 0.0;
    for (double v : row.repeat_ms) var += (v - row.mean_ms) * (v - row.mean_ms);
    row.stddev_ms = std::sqrt(var / static_cast<double>(repeats));
    return row;
}

int cmd_bench(const std::string& spec_path, const std::vector<int>& sizes, int pairs, int repeats,
              std::uint64_t seed, const std::string& out, const std::string& format) {
    if (pairs < 1) throw std::invalid_argument("invalid-parameter: --pairs must be at least 1");
    if (repeats < 1) throw std::invalid_argument("invalid-parameter: --repeats must be at least 1");

    std::vector<BenchRow> rows;
    if (!spec_path.empty()) {
        const covalg::ResolvedSpec resolved = covalg::resolve_group_spec(covalg::parse_group_spec_file(spec_path));
        const covalg::CharacterSet gamma = covalg::invariant_characters(resolved.group(), resolved.subgroup);
        const covalg::CovariantContext ctx =
            covalg::make_covariant_context(resolved.group(), resolved.subgroup, gamma.items.back());
        rows.push_back(bench_context(ctx, resolved.label, pairs, repeats, seed));
    }
    for (int M : sizes) {
        if (M < 2)
            throw std::invalid_argument("invalid-parameter: bench sizes are Heisenberg base orders, at least 2");
        const long long order = static_cast<long long>(M) * M * M;
        if (order > 4096)
            throw std::invalid_argument("invalid-parameter: group order " + std::to_string(order) +
                                        " exceeds the table budget of 4096");
        const covalg::SemidirectGroup product = covalg::make_finite_heisenberg(M);
        const covalg::SubgroupHandle fiber = covalg::center(product.group);
        const covalg::CharacterSet gamma = covalg::invariant_characters(product.group, fiber);
        const covalg::CovariantContext ctx =
            covalg::make_covariant_context(product.group, fiber, gamma.items.back());
        rows.push_back(bench_context(ctx, product.group.label, pairs, repeats, seed));
    }

    if (format == "json") {
        json arr = json::array();
        for (const BenchRow& row : rows)
            arr.push_back(json{{"group", row.label},
                               {"order", row.order},
                               {"cosets", row.cosets},
                               {"pairs", row.pairs},
                               {"repeat_ms", row.repeat_ms},
                               {"mean_ms", row.mean_ms},
                               {"min_ms", row.min_ms},
                               {"max_ms", row.max_ms},
                               {"stddev_ms", row.stddev_ms}});
        emit(out, arr.dump(2) + "\n");
    } else if (format == "csv") {
        std::ostringstream text;
        text << "group,order,cosets,pairs,repeats,mean_ms,min_ms,max_ms,stddev_ms\n";
        for (const BenchRow& row : rows)
            text << row.label << ',' << row.order << ',' << row.cosets << ',' << row.pairs << ','
                 << row.repeat_ms.size() << ',' << fmt_double(row.mean_ms) << ',' << fmt_double(row.min_ms) << ','
                 << fmt_double(row.max_ms) << ',' << fmt_double(row.stddev_ms) << "\n";
        emit(out, text.str());
    } else {
        std::ostringstream text;
        char buf[240];
        std::snprintf(buf, sizeof buf, "%-24s %6s %7s %6s %8s %11s %11s %11s %11s\n", "group", "order", "cosets",
                      "pairs", "repeats", "mean_ms", "min_ms", "max_ms", "stddev_ms");
        text << buf;
        for (const BenchRow& row : rows) {
            std::snprintf(buf, sizeof buf, "%-24s %6d %7d %6d %8zu %11.4f %11.4f %11.4f %11.4f\n",
                          row.label.c_str(), row.order, row.cosets, row.pairs, row.repeat_ms.size(), row.mean_ms,
                          row.min_ms, row.max_ms, row.stddev_ms);
            text << buf;
        }
        emit(out, text.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covariant function algebras of invariant characters: construction, verification, benchmarks"};
    app.require_subcommand(1);
    int exit_code = 0;

    // characters
    std::string ch_spec, ch_out, ch_format;
    CLI::App* characters = app.add_subcommand("characters", "enumerate all characters of the selected subgroup");
    characters->add_option("--spec", ch_spec, "group description file, text or JSON")->required();
    characters->add_option("--out", ch_out, "write the listing to this path");
    characters->add_option("--format", ch_format, "machine format instead of the text listing")
        ->check(CLI::IsMember({"json", "csv"}));
    characters->callback([&] { exit_code = cmd_characters(ch_spec, ch_out, ch_format); });

    // invariant
    std::string inv_spec, inv_out, inv_format;
    CLI::App* invariant =
        app.add_subcommand("invariant", "the conjugation-invariant characters, computed by both criteria");
    invariant->add_option("--spec", inv_spec, "group description file, text or JSON")->required();
    invariant->add_option("--out", inv_out, "write the listing to this path");
    invariant->add_option("--format", inv_format, "machine format instead of the text listing")
        ->check(CLI::IsMember({"json", "csv"}));
    invariant->callback([&] { exit_code = cmd_invariant(inv_spec, inv_out, inv_format); });

    // verify
    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "run the identity suite and emit verification reports");
    verify->add_option("--spec", verify_args.spec_path,
                       "group description file; omitted, every bundled fixture runs");
    verify->add_option("--xi", verify_args.xi, "verify only the invariant character with this index");
    verify->add_flag("--corrupt-xi", verify_args.corrupt,
                     "negative control: run with a deliberately non-invariant character");
    verify->add_option("--seed", verify_args.seed, "root seed for all random draws")->capture_default_str();
    verify->add_option("--trials", verify_args.trials, "random trials per property")->capture_default_str();
    verify->add_option("--tol", verify_args.tolerance, "residual tolerance for the projection-based properties")
        ->capture_default_str();
    verify->add_option("--p", verify_args.p_values, "norm exponents to check, each >= 1")->delimiter(',');
    verify->add_option("--out", verify_args.out, "write the report to this path");
    verify->add_option("--format", verify_args.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    verify->add_flag("--no-timestamp", verify_args.no_timestamp,
                     "omit the timestamp so reports compare byte for byte");
    verify->callback([&] { exit_code = cmd_verify(verify_args); });

    // wh
    CLI::App* wh = app.add_subcommand("wh", "closed-form Weyl-Heisenberg operations");
    wh->require_subcommand(1);

    int whg_order = 0;
    std::int64_t whg_bound = 0;
    std::string whg_out, whg_format;
    CLI::App* wh_gamma = wh->add_subcommand("gamma", "invariant characters (y, n) of the full fiber");
    wh_gamma->add_option("--M", whg_order, "base order")->required();
    wh_gamma->add_option("--nmax", whg_bound, "degree bound, at least M")->required();
    wh_gamma->add_option("--out", whg_out, "write the listing to this path");
    wh_gamma->add_option("--format", whg_format, "machine format instead of the text listing")
        ->check(CLI::IsMember({"json", "csv"}));
    wh_gamma->callback([&] { exit_code = cmd_wh_gamma(whg_order, whg_bound, whg_out, whg_format); });

    int whc_order = 0;
    std::int64_t whc_degree = 0;
    std::string whc_psi, whc_phi, whc_out;
    CLI::App* wh_convolve = wh->add_subcommand("convolve", "transversal convolution of two CSV tables");
    wh_convolve->add_option("--M", whc_order, "base order, must match the files")->required();
    wh_convolve->add_option("--n", whc_degree, "circle degree, must match the files")->required();
    wh_convolve->add_option("--psi", whc_psi, "left operand CSV")->required()->check(CLI::ExistingFile);
    wh_convolve->add_option("--phi", whc_phi, "right operand CSV")->required()->check(CLI::ExistingFile);
    wh_convolve->add_option("--out", whc_out, "write the result CSV to this path");
    wh_convolve->callback([&] { exit_code = cmd_wh_convolve(whc_psi, whc_phi, whc_order, whc_degree, whc_out); });

    int whi_order = 0;
    std::int64_t whi_degree = 0;
    std::string whi_psi, whi_out;
    CLI::App* wh_involve = wh->add_subcommand("involve", "transversal involution of a CSV table");
    wh_involve->add_option("--M", whi_order, "base order, must match the file")->required();
    wh_involve->add_option("--n", whi_degree, "circle degree, must match the file")->required();
    wh_involve->add_option("--psi", whi_psi, "operand CSV")->required()->check(CLI::ExistingFile);
    wh_involve->add_option("--out", whi_out, "write the result CSV to this path");
    wh_involve->callback([&] { exit_code = cmd_wh_involve(whi_psi, whi_order, whi_degree, whi_out); });

    int who_order = 0;
    std::int64_t who_degree = 0;
    int who_trig = 3, who_quadrature = 64, who_trials = 50;
    std::uint64_t who_seed = 2026;
    std::string who_out, who_format = "json";
    bool who_no_timestamp = false;
    CLI::App* wh_oracle =
        wh->add_subcommand("oracle", "compare the closed form against literal circle quadrature");
    wh_oracle->add_option("--M", who_order, "base order")->required();
    wh_oracle->add_option("--n", who_degree, "circle degree")->required();
    wh_oracle->add_option("--trig-degree", who_trig, "trigonometric degree of the random circle data")
        ->capture_default_str();
    wh_oracle->add_option("--quadrature", who_quadrature, "circle quadrature points")->capture_default_str();
    wh_oracle->add_option("--trials", who_trials, "random pairs to test")->capture_default_str();
    wh_oracle->add_option("--seed", who_seed, "root seed")->capture_default_str();
    wh_oracle->add_option("--out", who_out, "write the report to this path");
    wh_oracle->add_option("--format", who_format, "report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    wh_oracle->add_flag("--no-timestamp", who_no_timestamp, "omit the timestamp field");
    wh_oracle->callback([&] {
        exit_code = cmd_wh_oracle(who_order, who_degree, who_trig, who_quadrature, who_trials, who_seed, who_out,
                                  who_format, who_no_timestamp);
    });

    // continuum
    CLI::App* continuum = app.add_subcommand("continuum", "quadrature residual tables for the continuous models");
    continuum->require_subcommand(1);

    std::string cont_group, cont_out, cont_format = "csv";
    std::vector<int> cont_resolutions;
    double cont_freq = 1.0;
    CLI::App* cont_verify = continuum->add_subcommand("verify", "residual table over a refinement study");
    cont_verify->add_option("--group", cont_group, "which continuous model to exercise")
        ->required()
        ->check(CLI::IsMember({"heisenberg", "affine"}));
    cont_verify
        ->add_option("--resolution", cont_resolutions,
                     "grid node counts, snapped up so evaluation points hit nodes")
        ->delimiter(',');
    cont_verify->add_option("--nu", cont_freq, "central frequency of the Heisenberg character")
        ->capture_default_str();
    cont_verify->add_option("--out", cont_out, "write the table to this path");
    cont_verify->add_option("--format", cont_format, "table format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    cont_verify->callback(
        [&] { exit_code = cmd_continuum_verify(cont_group, cont_resolutions, cont_freq, cont_out, cont_format); });

    // bench
    std::string bench_spec, bench_out, bench_format;
    std::vector<int> bench_sizes;
    int bench_pairs = 100, bench_repeats = 3;
    std::uint64_t bench_seed = 2026;
    CLI::App* bench = app.add_subcommand("bench", "wall-clock timings of the coset convolution");
    bench->add_option("--spec", bench_spec, "bench the group a description file names");
    bench->add_option("--sizes", bench_sizes, "Heisenberg base orders to bench (order M^3 capped at 4096)")
        ->delimiter(',');
    bench->add_option("--pairs", bench_pairs, "convolutions per repeat")->capture_default_str();
    bench->add_option("--repeats", bench_repeats, "repeats, for run-to-run variance")->capture_default_str();
    bench->add_option("--seed", bench_seed, "seed for the random operands")->capture_default_str();
    bench->add_option("--out", bench_out, "write the table to this path");
    bench->add_option("--format", bench_format, "machine format instead of the text table")
        ->check(CLI::IsMember({"json", "csv"}));
    bench->callback([&] {
        exit_code = cmd_bench(bench_spec, bench_sizes, bench_pairs, bench_repeats, bench_seed, bench_out,
                              bench_format);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
