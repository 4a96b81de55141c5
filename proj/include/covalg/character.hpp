#pragma once

/**
 * @file character.hpp
 * @brief Characters of finite abelian subgroups as exact rational phases,
 *        their conjugates, and the subset invariant under the whole group.
 *
 * A character maps a subgroup homomorphically into the unit circle. All
 * values on a subgroup of order d are d-th roots of unity, so a character
 * is stored as an integer numerator per element over the common
 * denominator |N|: value(s) = e^{2 pi i num(s) / |N|}. Conjugating a
 * character by a group element only permutes the numerators, so phases
 * stay exact no matter how many conjugations are composed; floating
 * point enters once, at evaluation.
 */

#include <cstdint>
#include <vector>

#include "covalg/group.hpp"
#include "covalg/phase.hpp"
#include "covalg/semidirect.hpp"

namespace covalg {

/// A character of a finite abelian subgroup, stored as exact phases.
struct Character {
    SubgroupHandle domain;          ///< abelian subgroup the character lives on
    std::vector<std::int64_t> num;  ///< numerator per member slot, in [0, den)
    std::int64_t den = 1;           ///< common denominator, equal to |domain|

    /// Phase numerator at a parent element index (must lie in the domain).
    std::int64_t phase_num(int element) const { return num[domain.position[element]]; }

    /// e^{2 pi i num/den} at a parent element index.
    complex_t value(int element) const { return unit_phase(phase_num(element), den); }

    bool same_values(const Character& other) const {
        return den == other.den && domain.members == other.domain.members && num == other.num;
    }
};

/// All characters of one abelian subgroup, in a deterministic order.
struct CharacterSet {
    SubgroupHandle domain;
    std::vector<Character> items;

    int size() const { return static_cast<int>(items.size()); }
    bool contains(const Character& candidate) const;
};

/// True when both sets hold exactly the same characters (order ignored).
bool same_character_set(const CharacterSet& a, const CharacterSet& b);

/**
 * @brief Enumerates all |N| characters of an abelian subgroup.
 *
 * Method: extract an independent generating set by greedily taking a
 * maximal-order element whose cyclic span meets the current span only
 * in the identity, then index characters by exponent tuples against
 * that basis. Orthogonality of the result is exercised by the tests.
 *
 * Throws "non-abelian-domain" when the subgroup is not abelian.
 */
CharacterSet enumerate_characters(const SubgroupHandle& subgroup);

/**
 * @brief The conjugate character s -> value(x^{-1} s x).
 *
 * Requires conjugation by x to map the domain into itself (throws
 * "not-normal" otherwise). The result is a permutation of the exact
 * numerators, so no precision is lost.
 */
Character conjugate_character(const FiniteGroup& group, const Character& character, int x);

/**
 * @brief Characters fixed by conjugation with every group element.
 *
 * Exhaustive over all x by default. A generator-restricted variant is
 * available as an optimization; conjugation is a group action, so
 * invariance under generators implies invariance everywhere, and the
 * tests cross-check the two paths.
 */
CharacterSet invariant_characters(const FiniteGroup& group, const SubgroupHandle& normal_subgroup);
CharacterSet invariant_characters_via_generators(const FiniteGroup& group,
                                                 const SubgroupHandle& normal_subgroup,
                                                 const std::vector<int>& generators);

/// Embeds a subgroup of K as {identity_H} x N inside the product group.
SubgroupHandle embed_k_subgroup(const SemidirectGroup& product, const SubgroupHandle& subgroup_of_K);

/**
 * @brief Invariant characters computed by the semidirect criterion.
 *
 * For N inside K, a character is invariant exactly when
 * value(s) = value(theta_h(k^{-1} s k)) for every h in H, k in K, s in N.
 * Returns characters on the embedded domain {identity_H} x N so the
 * result compares directly against invariant_characters on the full
 * product group.
 */
CharacterSet invariant_characters_semidirect(const SemidirectGroup& product,
                                             const SubgroupHandle& subgroup_of_K);

}  // namespace covalg
