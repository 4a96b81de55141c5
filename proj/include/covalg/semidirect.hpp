#pragma once

/**
 * @file semidirect.hpp
 * @brief Semidirect products H x|_theta K from explicit automorphism actions.
 */

#include <vector>

#include "covalg/group.hpp"

namespace covalg {

/// An action of H on K: one permutation of K-indices per h, theta_h.
/// Validated at construction: theta_identity = id, theta_{hh'} =
/// theta_h o theta_{h'}, and every theta_h respects K's composition.
struct Action {
    FiniteGroup H;
    FiniteGroup K;
    std::vector<std::vector<int>> table;  ///< table[h][k] = theta_h(k)

    int apply(int h, int k) const { return table[h][k]; }
    void validate() const;  ///< throws "invalid-action" naming the broken law
};

/// A finite group of order |H||K| carrying its pair encoding:
/// encode(h,k) = h*|K| + k, group law (h,k)(h',k') = (hh', k*theta_h(k')).
struct SemidirectGroup {
    FiniteGroup group;
    Action action;

    int h_order = 0;
    int k_order = 0;

    int encode(int h, int k) const { return h * k_order + k; }
    int decode_h(int x) const { return x / k_order; }
    int decode_k(int x) const { return x % k_order; }
};

/// Builds the product; validates the action and the resulting table.
SemidirectGroup semidirect(const FiniteGroup& H, const FiniteGroup& K, const Action& action);

/// Trivial action (theta_h = id for all h); semidirect with it equals direct_product.
Action trivial_action(const FiniteGroup& H, const FiniteGroup& K);

/// True iff theta_h maps the subgroup of K onto itself for every h.
bool is_theta_invariant(const SubgroupHandle& subgroup_of_K, const Action& action);

/// Counting-measure distortion of theta_h on an invariant finite subgroup.
/// Bijectivity makes it exactly 1; the function asserts that rather than
/// assuming it. (The continuum module carries the case where it is not 1.)
double delta_HN(const Action& action, const SubgroupHandle& subgroup_of_K, int h);

/// Counting-measure distortion of s -> x^{-1} s x on a normal subgroup;
/// exactly 1 for finite groups, asserted via bijectivity of the conjugation.
double sigma_N(const FiniteGroup& group, const SubgroupHandle& normal_subgroup, int x);

/// H = Z_M acting on K = Z_M x Z_M by theta_x(w, z) = (w, z + x*w mod M).
/// Element index of (x, (w, z)) is x*M^2 + w*M + z. Throws on M < 2.
SemidirectGroup make_finite_heisenberg(int M);

}  // namespace covalg
