#include "covalg/covariant.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace covalg {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

CovariantContext build_context(const FiniteGroup& group, const SubgroupHandle& normal_subgroup,
                               const Character& character, bool check_invariance) {
    if (character.domain.members != normal_subgroup.members)
        fail("invalid-parameter: character domain differs from the subgroup");
    if (character.den != normal_subgroup.size())
        fail("invalid-parameter: character denominator must equal the subgroup order");
    if (check_invariance) {
        for (int x = 0; x < group.order; ++x) {
            const Character moved = conjugate_character(group, character, x);
            if (!(moved.num == character.num))
                fail("invalid-parameter: character is not invariant under conjugation");
        }
    }

    CovariantContext ctx;
    ctx.group = &group;
    ctx.subgroup = normal_subgroup;
    ctx.quotient = build_quotient(group, normal_subgroup);
    ctx.character = character;

    ctx.eval_num.resize(group.order);
    ctx.eval_phase.resize(group.order);
    for (int x = 0; x < group.order; ++x) {
        const int c = ctx.quotient.coset_of[x];
        ctx.eval_num[x] = character.phase_num(group.op(ctx.quotient.rep_inv[c], x));
        ctx.eval_phase[x] = unit_phase(ctx.eval_num[x], character.den);
    }
    ctx.proj_conj.resize(normal_subgroup.size());
    for (int slot = 0; slot < normal_subgroup.size(); ++slot)
        ctx.proj_conj[slot] = unit_phase(-character.num[slot], character.den);
    return ctx;
}

void require_same_context(const CovariantFunction& a, const CovariantFunction& b) {
    if (a.ctx == nullptr || b.ctx == nullptr) fail("incompatible-context: missing context");
    if (a.ctx == b.ctx) return;
    if (!a.ctx->same_as(*b.ctx)) fail("incompatible-context: operands live over different contexts");
}

}  // namespace

bool CovariantContext::same_as(const CovariantContext& other) const {
    return group == other.group && subgroup.members == other.subgroup.members &&
           character.num == other.character.num && character.den == other.character.den;
}

CovariantContext make_covariant_context(const FiniteGroup& group, const SubgroupHandle& normal_subgroup,
                                        const Character& character) {
    return build_context(group, normal_subgroup, character, true);
}

CovariantContext make_covariant_context_unchecked(const FiniteGroup& group,
                                                  const SubgroupHandle& normal_subgroup,
                                                  const Character& character) {
    return build_context(group, normal_subgroup, character, false);
}

std::vector<complex_t> CovariantFunction::eval_all() const {
    const FiniteGroup& g = *ctx->group;
    std::vector<complex_t> out(g.order);
    for (int x = 0; x < g.order; ++x) out[x] = eval(x);
    return out;
}

CovariantFunction project(const CovariantContext& ctx, const std::vector<complex_t>& f) {
    const FiniteGroup& g = *ctx.group;
    if (f.size() != static_cast<std::size_t>(g.order))
        fail("invalid-parameter: array length must equal group order");
    CovariantFunction out;
    out.ctx = &ctx;
    out.values.resize(ctx.coset_count());
    for (int c = 0; c < ctx.coset_count(); ++c) {
        const int rep = ctx.quotient.transversal[c];
        complex_t acc{0.0, 0.0};
        for (int slot = 0; slot < ctx.subgroup.size(); ++slot)
            acc += f[g.op(rep, ctx.subgroup.members[slot])] * ctx.proj_conj[slot];
        out.values[c] = acc;
    }
    return out;
}

CovariantFunction covariant_identity(const CovariantContext& ctx) {
    CovariantFunction out;
    out.ctx = &ctx;
    out.values.assign(ctx.coset_count(), complex_t{0.0, 0.0});
    out.values[ctx.quotient.coset_of[ctx.group->identity]] = complex_t{1.0, 0.0};
    return out;
}

CovariantFunction cov_convolve(const CovariantFunction& psi, const CovariantFunction& phi) {
    require_same_context(psi, phi);
    const CovariantContext& ctx = *psi.ctx;
    const FiniteGroup& g = *ctx.group;
    CovariantFunction out;
    out.ctx = psi.ctx;
    out.values.resize(ctx.coset_count());
    for (int c = 0; c < ctx.coset_count(); ++c) {
        const int x = ctx.quotient.transversal[c];
        complex_t acc{0.0, 0.0};
        for (int cp = 0; cp < ctx.coset_count(); ++cp)
            acc += psi.values[cp] * phi.eval(g.op(ctx.quotient.rep_inv[cp], x));
        out.values[c] = acc;
    }
    return out;
}

std::vector<complex_t> cov_convolve_values(const CovariantFunction& psi, const CovariantFunction& phi,
                                           const std::vector<int>& integration_reps) {
    require_same_context(psi, phi);
    const CovariantContext& ctx = *psi.ctx;
    const FiniteGroup& g = *ctx.group;
    if (integration_reps.size() != static_cast<std::size_t>(ctx.coset_count()))
        fail("invalid-parameter: one integration representative per coset required");
    for (int c = 0; c < ctx.coset_count(); ++c)
        if (ctx.quotient.coset_of[integration_reps[c]] != c)
            fail("invalid-parameter: representative does not belong to its coset");
    std::vector<complex_t> out(ctx.coset_count());
    for (int c = 0; c < ctx.coset_count(); ++c) {
        const int x = ctx.quotient.transversal[c];
        complex_t acc{0.0, 0.0};
        for (int cp = 0; cp < ctx.coset_count(); ++cp) {
            const int rep = integration_reps[cp];
            acc += psi.eval(rep) * phi.eval(g.op(g.inv(rep), x));
        }
        out[c] = acc;
    }
    return out;
}

CovariantFunction cov_involve(const CovariantFunction& psi) {
    const CovariantContext& ctx = *psi.ctx;
    const FiniteGroup& g = *ctx.group;
    CovariantFunction out;
    out.ctx = psi.ctx;
    out.values.resize(ctx.coset_count());
    for (int c = 0; c < ctx.coset_count(); ++c)
        out.values[c] = std::conj(psi.eval(g.inv(ctx.quotient.transversal[c])));
    return out;
}

double cov_norm(const CovariantFunction& psi, double p) {
    if (p < 1.0) fail("invalid-parameter: p must be >= 1");
    double acc = 0.0;
    for (const auto& v : psi.values) acc += std::pow(std::abs(v), p);
    return std::pow(acc, 1.0 / p);
}

double compact_consistency(const CovariantFunction& psi, const CovariantFunction& phi) {
    require_same_context(psi, phi);
    const CovariantContext& ctx = *psi.ctx;
    const auto conv = group_convolve(*ctx.group, psi.eval_all(), phi.eval_all());
    const CovariantFunction natural = cov_convolve(psi, phi);
    const double mass = static_cast<double>(ctx.subgroup.size());
    double worst = 0.0;
    for (int x = 0; x < ctx.group->order; ++x)
        worst = std::max(worst, std::abs(conv[x] - mass * natural.eval(x)));
    return worst;
}

double verify_modulation(const CovariantContext& ctx, const std::vector<complex_t>& f, int k) {
    if (!ctx.subgroup.contains(k)) fail("invalid-parameter: translation element must lie in N");
    const FiniteGroup& g = *ctx.group;
    const int ki = g.inv(k);
    std::vector<complex_t> shifted(g.order);
    for (int x = 0; x < g.order; ++x) shifted[x] = f[g.op(ki, x)];
    const CovariantFunction lhs = project(ctx, shifted);
    const CovariantFunction base = project(ctx, f);
    const complex_t factor = std::conj(ctx.character.value(k));
    double worst = 0.0;
    for (int c = 0; c < ctx.coset_count(); ++c)
        worst = std::max(worst, std::abs(lhs.values[c] - factor * base.values[c]));
    return worst;
}

}  // namespace covalg
