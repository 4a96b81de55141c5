// End-to-end acceptance checks. Each numbered check exercises one of the
// headline guarantees across the bundled fixtures, prints a single PASS or
// FAIL line with the worst observed residual, its budget, and the wall time,
// and the process exits 0 only when every check passes.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

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
#include "test_support.hpp"

namespace {

using covalg::complex_t;
using testsup::max_abs_diff;

constexpr std::uint64_t kSeed = 2026;

struct Check {
    bool pass = false;
    double worst = 0.0;      ///< worst residual, or 0 for set-equality checks
    double budget = 0.0;     ///< tolerance the worst value was held against
    double seconds = 0.0;
    double time_budget = 0.0;  ///< 0 when the check carries no time limit
};

int checks_run = 0;
int checks_passed = 0;

void report(int number, const std::string& title, const Check& c) {
    ++checks_run;
    checks_passed += c.pass ? 1 : 0;
    std::string limit;
    if (c.time_budget > 0.0)
        limit = ", limit " + std::to_string(static_cast<int>(c.time_budget)) + "s";
    std::printf("%s %2d. %s (worst %.3g, budget %.3g, %.2fs%s)\n", c.pass ? "PASS" : "FAIL", number,
                title.c_str(), c.worst, c.budget, c.seconds, limit.c_str());
    std::fflush(stdout);
}

double run_timed(const std::function<void()>& body) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

/// Every (group, subgroup, invariant character) triple of the bundled specs.
struct SweepContext {
    covalg::ResolvedSpec resolved;
    covalg::CovariantContext ctx;
};

std::vector<SweepContext> bundled_sweep() {
    std::vector<SweepContext> out;
    for (const covalg::GroupSpec& spec : covalg::bundled_fixtures()) {
        covalg::ResolvedSpec resolved = covalg::resolve_group_spec(spec);
        const covalg::CharacterSet gamma =
            covalg::invariant_characters(resolved.group(), resolved.subgroup);
        for (const covalg::Character& xi : gamma.items) {
            SweepContext sc{resolved, covalg::make_covariant_context(resolved.group(),
                                                                     resolved.subgroup, xi)};
            out.push_back(std::move(sc));
        }
    }
    return out;
}

std::vector<complex_t> random_table(covalg::Rng& rng, int n) {
    return covalg::random_complex_vector(rng, static_cast<std::size_t>(n), 1.0);
}

covalg::CovariantFunction random_covariant(const covalg::CovariantContext& ctx, covalg::Rng& rng) {
    return {&ctx, random_table(rng, ctx.coset_count())};
}

Check check_homomorphism(const std::vector<SweepContext>& sweep) {
    Check c{true, 0.0, 1e-9, 0.0, 20.0};
    c.seconds = run_timed([&] {
        int context_index = 0;
        for (const SweepContext& sc : sweep) {
            const covalg::FiniteGroup& g = *sc.ctx.group;
            covalg::Rng rng =
                covalg::Rng::substream(kSeed, "acc-homomorphism", static_cast<std::uint64_t>(context_index++));
            for (int trial = 0; trial < 100; ++trial) {
                const std::vector<complex_t> f = random_table(rng, g.order);
                const std::vector<complex_t> h = random_table(rng, g.order);
                const covalg::CovariantFunction lhs =
                    covalg::project(sc.ctx, covalg::group_convolve(g, f, h));
                const covalg::CovariantFunction rhs =
                    covalg::cov_convolve(covalg::project(sc.ctx, f), covalg::project(sc.ctx, h));
                c.worst = std::max(c.worst, max_abs_diff(lhs.values, rhs.values));
            }
        }
    });
    c.pass = c.worst <= c.budget && c.seconds < c.time_budget;
    return c;
}

Check check_involution(const std::vector<SweepContext>& sweep) {
    Check c{true, 0.0, 1e-9, 0.0, 0.0};
    c.seconds = run_timed([&] {
        int context_index = 0;
        for (const SweepContext& sc : sweep) {
            const covalg::FiniteGroup& g = *sc.ctx.group;
            covalg::Rng rng =
                covalg::Rng::substream(kSeed, "acc-involution", static_cast<std::uint64_t>(context_index++));
            for (int trial = 0; trial < 100; ++trial) {
                const std::vector<complex_t> f = random_table(rng, g.order);
                const covalg::CovariantFunction lhs =
                    covalg::project(sc.ctx, covalg::group_involve(g, f));
                const covalg::CovariantFunction rhs = covalg::cov_involve(covalg::project(sc.ctx, f));
                c.worst = std::max(c.worst, max_abs_diff(lhs.values, rhs.values));

                const covalg::CovariantFunction psi = random_covariant(sc.ctx, rng);
                const covalg::CovariantFunction phi = random_covariant(sc.ctx, rng);
                c.worst = std::max(
                    c.worst, max_abs_diff(covalg::cov_involve(covalg::cov_involve(psi)).values, psi.values));
                c.worst = std::max(c.worst, std::abs(covalg::cov_norm(covalg::cov_involve(psi), 1.0) -
                                                     covalg::cov_norm(psi, 1.0)));
                c.worst = std::max(
                    c.worst,
                    max_abs_diff(covalg::cov_involve(covalg::cov_convolve(psi, phi)).values,
                                 covalg::cov_convolve(covalg::cov_involve(phi), covalg::cov_involve(psi))
                                     .values));
            }
        }
    });
    c.pass = c.worst <= c.budget;
    return c;
}

Check check_norm_inequality(const std::vector<SweepContext>& sweep) {
    Check c{true, 0.0, 1e-12, 0.0, 0.0};
    c.seconds = run_timed([&] {
        int context_index = 0;
        for (const SweepContext& sc : sweep) {
            covalg::Rng rng =
                covalg::Rng::substream(kSeed, "acc-norms", static_cast<std::uint64_t>(context_index++));
            for (int trial = 0; trial < 300; ++trial) {
                const covalg::CovariantFunction psi = random_covariant(sc.ctx, rng);
                const covalg::CovariantFunction phi = random_covariant(sc.ctx, rng);
                const covalg::CovariantFunction conv = covalg::cov_convolve(psi, phi);
                for (double p : {1.0, 2.0, 3.0}) {
                    const double slack = covalg::cov_norm(conv, p) -
                                         covalg::cov_norm(psi, 1.0) * covalg::cov_norm(phi, p);
                    c.worst = std::max(c.worst, slack);
                }
            }
        }
    });
    c.worst = std::max(c.worst, 0.0);
    c.pass = c.worst <= c.budget;
    return c;
}

Check check_compact_scaling(const std::vector<SweepContext>& sweep) {
    Check c{true, 0.0, 1e-9, 0.0, 0.0};
    c.seconds = run_timed([&] {
        int context_index = 0;
        for (const SweepContext& sc : sweep) {
            covalg::Rng rng =
                covalg::Rng::substream(kSeed, "acc-compact", static_cast<std::uint64_t>(context_index++));
            for (int trial = 0; trial < 100; ++trial) {
                const covalg::CovariantFunction psi = random_covariant(sc.ctx, rng);
                const covalg::CovariantFunction phi = random_covariant(sc.ctx, rng);
                c.worst = std::max(c.worst, covalg::compact_consistency(psi, phi));
            }
        }
    });
    c.pass = c.worst <= c.budget;
    return c;
}

Check check_associativity_identity(const std::vector<SweepContext>& sweep) {
    Check c{true, 0.0, 1e-12, 0.0, 0.0};
    c.seconds = run_timed([&] {
        int context_index = 0;
        for (const SweepContext& sc : sweep) {
            covalg::Rng rng =
                covalg::Rng::substream(kSeed, "acc-assoc", static_cast<std::uint64_t>(context_index++));
            const covalg::CovariantFunction unit = covalg::covariant_identity(sc.ctx);
            for (int trial = 0; trial < 100; ++trial) {
                const covalg::CovariantFunction a = random_covariant(sc.ctx, rng);
                const covalg::CovariantFunction b = random_covariant(sc.ctx, rng);
                const covalg::CovariantFunction d = random_covariant(sc.ctx, rng);
                c.worst = std::max(
                    c.worst, max_abs_diff(covalg::cov_convolve(covalg::cov_convolve(a, b), d).values,
                                          covalg::cov_convolve(a, covalg::cov_convolve(b, d)).values));
                c.worst = std::max(c.worst,
                                   max_abs_diff(covalg::cov_convolve(unit, a).values, a.values));
                c.worst = std::max(c.worst,
                                   max_abs_diff(covalg::cov_convolve(a, unit).values, a.values));
            }
        }
    });
    c.pass = c.worst <= c.budget;
    return c;
}

Check check_invariant_criteria() {
    Check c{true, 0.0, 0.0, 0.0, 0.0};
    bool ok = true;
    c.seconds = run_timed([&] {
        for (const covalg::GroupSpec& spec : covalg::bundled_fixtures()) {
            const covalg::ResolvedSpec resolved = covalg::resolve_group_spec(spec);
            const covalg::CharacterSet brute =
                covalg::invariant_characters(resolved.group(), resolved.subgroup);
            if (!resolved.subgroup_in_k) {
                ok = false;
                continue;
            }
            const covalg::CharacterSet via =
                covalg::invariant_characters_semidirect(*resolved.product, resolved.k_subgroup);
            ok = ok && covalg::same_character_set(brute, via);
            if (spec.selector == covalg::GroupSpec::Selector::center)
                ok = ok && covalg::same_character_set(brute,
                                                      covalg::enumerate_characters(resolved.subgroup));
        }
    });
    c.pass = ok;
    return c;
}

Check check_wh_gamma_pattern() {
    Check c{true, 0.0, 0.0, 0.0, 0.0};
    bool ok = true;
    c.seconds = run_timed([&] {
        const std::vector<covalg::WHCharacter> got = covalg::wh_invariant_characters(4, 8);
        std::vector<covalg::WHCharacter> want;
        for (int y = 0; y < 4; ++y)
            for (std::int64_t n = -8; n <= 8; n += 4) want.push_back({y, n});
        ok = got == want;
    });
    c.pass = ok;
    return c;
}

Check check_circle_oracle() {
    Check c{true, 0.0, 1e-10, 0.0, 10.0};
    c.seconds = run_timed([&] {
        const covalg::VerificationReport first = covalg::circle_oracle_check(4, 1, 3, 64, 50, kSeed);
        const covalg::VerificationReport second = covalg::circle_oracle_check(8, 3, 5, 128, 50, kSeed);
        for (const covalg::VerificationReport* r : {&first, &second})
            for (const covalg::PropertyRecord& p : r->properties)
                c.worst = std::max(c.worst, p.max_residual);
    });
    c.pass = c.worst <= c.budget && c.seconds < c.time_budget;
    return c;
}

Check check_heisenberg_continuum() {
    Check c{true, 0.0, 1e-6, 0.0, 60.0};
    bool ok = true;
    c.seconds = run_timed([&] {
        for (double nu : {0.0, 1.0, 2.5}) {
            const std::vector<covalg::ResidualRow> rows = covalg::h1_residual_table({21, 41, 81}, nu);
            ok = ok && covalg::residual_study_ok(rows);
            for (const covalg::ResidualRow& row : rows)
                if (row.resolution == 81 &&
                    (row.property == "homomorphism" || row.property == "involution-compat")) {
                    c.worst = std::max(c.worst, row.residual);
                    ok = ok && row.residual <= 1e-6;
                }
        }
    });
    c.pass = ok && c.seconds < c.time_budget;
    return c;
}

Check check_affine_continuum() {
    Check c{true, 0.0, 1e-10, 0.0, 0.0};
    bool ok = true;
    double worst_delta = 0.0;
    double worst_involution = 0.0;
    c.seconds = run_timed([&] {
        const std::vector<covalg::ResidualRow> rows = covalg::affine_residual_table({65, 129, 257});
        ok = covalg::residual_study_ok(rows);
        for (const covalg::ResidualRow& row : rows) {
            if (row.property == "delta-homomorphism") {
                worst_delta = std::max(worst_delta, row.residual);
                ok = ok && row.residual <= 1e-10;
            }
            if (row.property == "involution-compat" && row.resolution == 257) {
                worst_involution = std::max(worst_involution, row.residual);
                ok = ok && row.residual <= 1e-6;
            }
        }
    });
    c.worst = worst_delta;
    c.pass = ok && worst_involution <= 1e-6;
    return c;
}

Check check_negative_control() {
    Check c{true, 0.0, 1e-3, 0.0, 0.0};
    bool ok = true;
    c.seconds = run_timed([&] {
        const covalg::SemidirectGroup wh4 = covalg::make_finite_heisenberg(4);
        std::vector<int> members(wh4.k_order);
        for (int k = 0; k < wh4.k_order; ++k) members[k] = wh4.encode(0, k);
        const covalg::SubgroupHandle full_k = covalg::make_subgroup(wh4.group, members);
        const covalg::CharacterSet all = covalg::enumerate_characters(full_k);
        const covalg::CharacterSet gamma = covalg::invariant_characters(wh4.group, full_k);

        const covalg::Character* bad = nullptr;
        for (const covalg::Character& chi : all.items)
            if (!gamma.contains(chi)) {
                bad = &chi;
                break;
            }
        if (bad == nullptr) {
            ok = false;
            return;
        }
        const covalg::CovariantContext loose =
            covalg::make_covariant_context_unchecked(wh4.group, full_k, *bad);
        const covalg::VerificationReport report = covalg::run_verification(loose, 25, kSeed);
        ok = !report.all_pass();
        bool found = false;
        for (const covalg::PropertyRecord& p : report.properties)
            if (p.id == "well-definedness") {
                found = true;
                c.worst = p.max_residual;
                ok = ok && !p.pass && p.max_residual > 1e-3;
            }
        ok = ok && found;
    });
    c.pass = ok;
    return c;
}

Check check_cli_sweep() {
    Check c{true, 0.0, 0.0, 0.0, 120.0};
    int status = -1;
    c.seconds = run_timed([&] {
        const std::filesystem::path dir =
            std::filesystem::temp_directory_path() / "covhalg-acceptance";
        std::filesystem::create_directories(dir);
        const std::filesystem::path report = dir / "sweep.json";
        const std::filesystem::path log = dir / "sweep.log";
        const std::string command = std::string("\"") + COVHALG_CLI_PATH +
                                    "\" verify --no-timestamp --out " + report.string() + " >" +
                                    log.string() + " 2>&1";
        const int raw = std::system(command.c_str());
        status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    });
    c.pass = status == 0 && c.seconds < c.time_budget;
    return c;
}

}  // namespace

int main() {
    std::printf("acceptance checks over the bundled fixtures (seed %llu)\n",
                static_cast<unsigned long long>(kSeed));

    const std::vector<SweepContext> sweep = bundled_sweep();
    std::printf("fixture sweep: %zu (group, subgroup, character) contexts\n\n", sweep.size());

    report(1, "projection turns group convolution into coset convolution", check_homomorphism(sweep));
    report(2, "involutions commute with projection and invert the product order",
           check_involution(sweep));
    report(3, "convolution norm bound for p in {1,2,3}", check_norm_inequality(sweep));
    report(4, "group convolution of covariant data equals the coset one scaled by |N|",
           check_compact_scaling(sweep));
    report(5, "coset convolution is associative with an exact two-sided identity",
           check_associativity_identity(sweep));
    report(6, "both invariance criteria agree, and central fibers keep every character",
           check_invariant_criteria());
    report(7, "discrete Weyl-Heisenberg invariant characters form the expected lattice",
           check_wh_gamma_pattern());
    report(8, "closed-form circle convolution matches independent quadrature", check_circle_oracle());
    report(9, "Heisenberg-group quadrature residuals pass and shrink under refinement",
           check_heisenberg_continuum());
    report(10, "affine measure-factor law and projected involution hold", check_affine_continuum());
    report(11, "a smuggled non-invariant character is caught by well-definedness",
           check_negative_control());
    report(12, "full command-line sweep over the bundled fixtures exits clean", check_cli_sweep());

    std::printf("\n%d of %d checks passed\n", checks_passed, checks_run);
    return checks_passed == checks_run ? 0 : 1;
}
