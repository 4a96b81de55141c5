#include "covalg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "covalg/parallel.hpp"
#include "covalg/rand.hpp"

namespace covalg {

namespace {

CovariantFunction random_covariant(const CovariantContext& ctx, Rng& rng, double scale) {
    CovariantFunction out;
    out.ctx = &ctx;
    out.values = random_complex_vector(rng, ctx.coset_count(), scale);
    return out;
}

double max_abs_diff(const std::vector<complex_t>& a, const std::vector<complex_t>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

/// Worst residual of one per-trial check over `trials` independent draws.
double sweep(int trials, std::uint64_t seed, const std::string& property,
             const std::function<double(Rng&)>& trial_residual) {
    std::vector<double> residuals(trials, 0.0);
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
        Rng rng = Rng::substream(seed, property, t);
        residuals[t] = trial_residual(rng);
    });
    return *std::max_element(residuals.begin(), residuals.end());
}

}  // namespace

VerificationReport run_verification(const CovariantContext& ctx, int trials, std::uint64_t seed) {
    return run_verification(ctx, trials, seed, VerifyTuning{});
}

VerificationReport run_verification(const CovariantContext& ctx, int trials, std::uint64_t seed,
                                    const VerifyTuning& tuning) {
    if (trials < 1) throw std::invalid_argument("invalid-parameter: trials must be >= 1");
    if (!(tuning.residual_tolerance > 0.0))
        throw std::invalid_argument("invalid-parameter: tolerance must be positive");
    for (double p : tuning.p_values)
        if (!(p >= 1.0)) throw std::invalid_argument("invalid-parameter: p values must be >= 1");
    const double rtol = tuning.residual_tolerance;

    const FiniteGroup& g = *ctx.group;
    const int n = g.order;
    const int nsub = ctx.subgroup.size();

    VerificationReport report;
    report.group = g.label;
    report.subgroup_order = nsub;
    report.subgroup_members = ctx.subgroup.members;
    report.xi_num = ctx.character.num;
    report.xi_den = ctx.character.den;
    report.seed = seed;

    auto add = [&](const std::string& id, const std::string& anchor, double tolerance,
                   const std::function<double(Rng&)>& trial_residual) {
        PropertyRecord rec;
        rec.id = id;
        rec.anchor = anchor;
        rec.trials = trials;
        rec.tolerance = tolerance;
        rec.max_residual = sweep(trials, seed, id, trial_residual);
        rec.pass = rec.max_residual <= tolerance;
        report.properties.push_back(std::move(rec));
    };

    add("homomorphism", "T(f *_G g) = T(f) # T(g)", rtol, [&](Rng& rng) {
        const auto f = random_complex_vector(rng, n, 1.0);
        const auto h = random_complex_vector(rng, n, 1.0);
        const auto lhs = project(ctx, group_convolve(g, f, h));
        const auto rhs = cov_convolve(project(ctx, f), project(ctx, h));
        return max_abs_diff(lhs.values, rhs.values);
    });

    add("involution-compat", "T(f^*G) = T(f)^#", rtol, [&](Rng& rng) {
        const auto f = random_complex_vector(rng, n, 1.0);
        const auto lhs = project(ctx, group_involve(g, f));
        const auto rhs = cov_involve(project(ctx, f));
        return max_abs_diff(lhs.values, rhs.values);
    });

    add("involutive", "(psi^#)^# = psi", 1e-12, [&](Rng& rng) {
        const auto psi = random_covariant(ctx, rng, 1.0);
        return max_abs_diff(cov_involve(cov_involve(psi)).values, psi.values);
    });

    add("involution-isometry", "||psi^#||_(1) = ||psi||_(1)", 1e-12, [&](Rng& rng) {
        const auto psi = random_covariant(ctx, rng, 1.0);
        return std::abs(cov_norm(cov_involve(psi), 1.0) - cov_norm(psi, 1.0));
    });

    add("anti-homomorphism", "(psi # phi)^# = phi^# # psi^#", rtol, [&](Rng& rng) {
        const auto psi = random_covariant(ctx, rng, 1.0);
        const auto phi = random_covariant(ctx, rng, 1.0);
        const auto lhs = cov_involve(cov_convolve(psi, phi));
        const auto rhs = cov_convolve(cov_involve(phi), cov_involve(psi));
        return max_abs_diff(lhs.values, rhs.values);
    });

    for (double p : tuning.p_values) {
        std::ostringstream id;
        id << "norm-p" << p;
        std::ostringstream anchor;
        anchor << "||psi # phi||_(" << p << ") <= ||psi||_(1) ||phi||_(" << p << ")";
        add(id.str(), anchor.str(), 1e-12, [&, p](Rng& rng) {
            const auto psi = random_covariant(ctx, rng, 1.0);
            const auto phi = random_covariant(ctx, rng, 1.0);
            const double lhs = cov_norm(cov_convolve(psi, phi), p);
            const double rhs = cov_norm(psi, 1.0) * cov_norm(phi, p);
            return std::max(0.0, lhs - rhs);
        });
    }

    add("associativity", "(psi # phi) # chi = psi # (phi # chi)", 1e-12, [&](Rng& rng) {
        const auto a = random_covariant(ctx, rng, 0.25);
        const auto b = random_covariant(ctx, rng, 0.25);
        const auto c = random_covariant(ctx, rng, 0.25);
        const auto lhs = cov_convolve(cov_convolve(a, b), c);
        const auto rhs = cov_convolve(a, cov_convolve(b, c));
        return max_abs_diff(lhs.values, rhs.values);
    });

    add("identity", "e # psi = psi = psi # e with e = T(delta_identity)", 1e-12, [&](Rng& rng) {
        const auto psi = random_covariant(ctx, rng, 1.0);
        const auto e = covariant_identity(ctx);
        const double left = max_abs_diff(cov_convolve(e, psi).values, psi.values);
        const double right = max_abs_diff(cov_convolve(psi, e).values, psi.values);
        return std::max(left, right);
    });

    add("compact-scaling", "psi *_G phi = |N| (psi # phi)", rtol, [&](Rng& rng) {
        const auto psi = random_covariant(ctx, rng, 1.0);
        const auto phi = random_covariant(ctx, rng, 1.0);
        return compact_consistency(psi, phi);
    });

    add("covariance-closure", "F = eval(psi) *_G eval(phi) obeys F(x s) = xi(s) F(x)", rtol,
        [&](Rng& rng) {
            const auto psi = random_covariant(ctx, rng, 1.0);
            const auto phi = random_covariant(ctx, rng, 1.0);
            const auto conv = group_convolve(g, psi.eval_all(), phi.eval_all());
            double worst = 0.0;
            for (int s : ctx.subgroup.members) {
                const complex_t factor = ctx.character.value(s);
                for (int x = 0; x < n; ++x)
                    worst = std::max(worst, std::abs(conv[g.op(x, s)] - factor * conv[x]));
            }
            return worst;
        });

    add("well-definedness",
        "sum_c psi(r_c) phi(r_c^{-1} x) takes the same value for every choice of coset representatives r_c",
        1e-12, [&](Rng& rng) {
            const auto psi = random_covariant(ctx, rng, 1.0);
            const auto phi = random_covariant(ctx, rng, 1.0);
            std::vector<int> reps(ctx.coset_count());
            for (int c = 0; c < ctx.coset_count(); ++c) {
                const int shift = ctx.subgroup.members[rng.next_below(ctx.subgroup.size())];
                reps[c] = g.op(ctx.quotient.transversal[c], shift);
            }
            const auto randomized = cov_convolve_values(psi, phi, reps);
            return max_abs_diff(randomized, cov_convolve(psi, phi).values);
        });

    add("modulation", "T(L_k f) = conj(xi(k)) T(f) for k in N, L_k f(x) = f(k^{-1} x)", 1e-12,
        [&](Rng& rng) {
            const auto f = random_complex_vector(rng, n, 0.5);
            double worst = 0.0;
            for (int k : ctx.subgroup.members) worst = std::max(worst, verify_modulation(ctx, f, k));
            return worst;
        });

    add("projection-contraction", "||T(f)||_(1) <= ||f||_1", 1e-12, [&](Rng& rng) {
        const auto f = random_complex_vector(rng, n, 1.0);
        return std::max(0.0, cov_norm(project(ctx, f), 1.0) - lp_norm(f, 1.0));
    });

    add("surjectivity", "T(eval(psi) / |N|) = psi", 1e-12, [&](Rng& rng) {
        const auto psi = random_covariant(ctx, rng, 1.0);
        auto table = psi.eval_all();
        for (auto& v : table) v /= static_cast<double>(nsub);
        return max_abs_diff(project(ctx, table).values, psi.values);
    });

    add("weil", "sum_cosets sum_N f(r s) = sum_G f, relative to ||f||_1", 1e-12, [&](Rng& rng) {
        const auto f = random_complex_vector(rng, n, 1.0);
        return weil_residual(g, ctx.subgroup, f) / (1.0 + lp_norm(f, 1.0));
    });

    add("left-covariance", "psi(s x) = xi(s) psi(x)", 1e-12, [&](Rng& rng) {
        const auto psi = random_covariant(ctx, rng, 1.0);
        const auto table = psi.eval_all();
        double worst = 0.0;
        for (int s : ctx.subgroup.members) {
            const complex_t factor = ctx.character.value(s);
            for (int x = 0; x < n; ++x)
                worst = std::max(worst, std::abs(table[g.op(s, x)] - factor * table[x]));
        }
        return worst;
    });

    return report;
}

}  // namespace covalg
