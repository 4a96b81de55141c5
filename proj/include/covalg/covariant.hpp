#pragma once

/**
 * @file covariant.hpp
 * @brief Covariant functions of an invariant character: the projection
 *        from the group algebra, coset convolution, and involution.
 *
 * Fix a finite group G, a normal abelian subgroup N, and a character xi
 * of N that is unchanged by conjugation with every element of G. A
 * function psi on G is xi-covariant when psi(x s) = xi(s) psi(x) for all
 * s in N; such a function is determined by one value per coset of N, so
 * it is stored as a complex array indexed by the coset transversal.
 *
 * The three core maps:
 *
 *   project:  T(f)(x)     = sum_{s in N} f(x s) conj(xi(s))
 *   convolve: (psi # phi)(x) = sum_{cosets c} psi(rep_c) phi(rep_c^{-1} x)
 *   involve:  psi^#(x)    = conj(psi(x^{-1}))
 *
 * The convolution integrand is constant on cosets precisely because xi
 * is invariant, which is why the context validates invariance eagerly.
 * A deliberately unchecked constructor exists so the test suite can
 * demonstrate the failure mode with a non-invariant character.
 */

#include <vector>

#include "covalg/character.hpp"
#include "covalg/group.hpp"

namespace covalg {

/// Bundles (G, N, quotient, xi) and caches per-element evaluation data.
struct CovariantContext {
    const FiniteGroup* group = nullptr;
    SubgroupHandle subgroup;
    QuotientStructure quotient;
    Character character;

    /// Cached: eval_num[x] = phase numerator of xi(rep^{-1} x), per element.
    std::vector<std::int64_t> eval_num;
    /// Cached: unit_phase(eval_num[x], den) per element.
    std::vector<complex_t> eval_phase;
    /// Cached: conj(xi(s)) per member slot of N, used by project.
    std::vector<complex_t> proj_conj;

    int coset_count() const { return quotient.coset_count; }
    bool same_as(const CovariantContext& other) const;
};

/// Validates that xi is invariant under conjugation by every group
/// element; throws "invalid-parameter: character is not invariant" if not.
CovariantContext make_covariant_context(const FiniteGroup& group, const SubgroupHandle& normal_subgroup,
                                        const Character& character);

/// Negative-control constructor: skips the invariance check so tests can
/// show which verification properties break. Not for production use.
CovariantContext make_covariant_context_unchecked(const FiniteGroup& group,
                                                  const SubgroupHandle& normal_subgroup,
                                                  const Character& character);

/// A xi-covariant function, stored as one value per coset representative.
struct CovariantFunction {
    const CovariantContext* ctx = nullptr;
    std::vector<complex_t> values;

    /// Full evaluation at any element: xi(rep^{-1} x) * values[coset(x)].
    complex_t eval(int x) const {
        return ctx->eval_phase[x] * values[ctx->quotient.coset_of[x]];
    }

    /// Evaluation table over the whole group.
    std::vector<complex_t> eval_all() const;
};

/// T(f): the covariant part of f. Throws on length mismatch.
CovariantFunction project(const CovariantContext& ctx, const std::vector<complex_t>& f);

/// The exact two-sided identity of the coset convolution: T(delta_identity),
/// supported on N where it equals xi.
CovariantFunction covariant_identity(const CovariantContext& ctx);

/// Coset convolution psi # phi. Throws "incompatible-context" when the
/// operands live over different contexts.
CovariantFunction cov_convolve(const CovariantFunction& psi, const CovariantFunction& phi);

/**
 * @brief Coset convolution evaluated with caller-chosen integration
 *        representatives, one per coset.
 *
 * With an invariant character the result is independent of the choice;
 * the verification suite recomputes the convolution with randomized
 * representatives and treats any deviation as a failure of
 * well-definedness.
 */
std::vector<complex_t> cov_convolve_values(const CovariantFunction& psi, const CovariantFunction& phi,
                                           const std::vector<int>& integration_reps);

/// psi^#: the covariant involution (modular corrections are 1 here).
CovariantFunction cov_involve(const CovariantFunction& psi);

/// Coset-counting p-norm: (sum_c |values[c]|^p)^{1/p}, p >= 1.
double cov_norm(const CovariantFunction& psi, double p);

/// max_x | (eval psi * eval phi)(x) - |N| * (psi # phi)(x) |: the compact
/// subgroup consistency between group convolution and coset convolution.
double compact_consistency(const CovariantFunction& psi, const CovariantFunction& phi);

/// Residual of T(L_k f) = conj(xi(k)) T(f) with L_k f(x) = f(k^{-1} x);
/// k must lie in N.
double verify_modulation(const CovariantContext& ctx, const std::vector<complex_t>& f, int k);

}  // namespace covalg
