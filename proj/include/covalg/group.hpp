#pragma once

/**
 * @file group.hpp
 * @brief Finite groups with dense multiplication tables, their subgroups,
 *        quotients, and the counting-measure convolution algebra.
 *
 * Elements of a finite group are dense integer indices 0..n-1. The group
 * is described by a total composition table and an inverse table, which
 * makes composition O(1) and lets every algebraic law be checked
 * exhaustively at desk scale.
 *
 * Haar normalization: all integrals are sums with weight 1 per element,
 * on the group, on each subgroup, and on each quotient. Under this
 * triple normalization the iterated-integration identity relating a sum
 * over the group to a sum over a normal subgroup followed by a sum over
 * its cosets holds exactly, with no normalizing constants:
 *
 *     sum_{x in G} f(x) = sum_{cosets c} sum_{s in N} f(rep_c * s).
 *
 * Finite groups are unimodular; the modular function is stored as an
 * explicit constant-1 table to make that normalization visible at the
 * API surface.
 */

#include <complex>
#include <string>
#include <vector>

namespace covalg {

using complex_t = std::complex<double>;

/**
 * @brief A finite group on indices 0..order-1 with explicit tables.
 *
 * Invariants (checked by validate(), which every factory calls):
 *  - identity is two-sided,
 *  - inverses are two-sided,
 *  - composition is associative (exhaustive for order <= 512, sampled
 *    with at least 1e5 random triples above),
 *  - every row and column of the composition table is a permutation,
 *  - modular(x) == 1 for every x.
 */
struct FiniteGroup {
    int order = 0;
    std::vector<int> op_table;    ///< row-major: op(a,b) = op_table[a*order + b]
    std::vector<int> inv_table;   ///< inv(a) = inv_table[a]
    int identity = 0;
    std::vector<double> modular;  ///< constant 1.0 per element
    std::string label;

    int op(int a, int b) const { return op_table[static_cast<std::size_t>(a) * order + b]; }
    int inv(int a) const { return inv_table[a]; }

    /// Order of the cyclic subgroup generated by a.
    int element_order(int a) const;

    bool is_abelian() const;

    /// Throws std::invalid_argument naming the violated axiom.
    void validate() const;
};

/// Additive group Z_M. Throws on M < 1.
FiniteGroup make_cyclic(int M);

/**
 * @brief Componentwise product group.
 *
 * Index encoding is row-major with the first factor major:
 * encode(a, b) = a * |B| + b. The encoding is part of the API contract
 * and is relied on by the semidirect-product and quotient machinery.
 */
FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B);

/**
 * @brief A subgroup as a sorted member list plus membership lookup.
 *
 * The handle borrows the parent group; parents must outlive handles.
 */
struct SubgroupHandle {
    const FiniteGroup* parent = nullptr;
    std::vector<int> members;   ///< sorted ascending
    std::vector<int> position;  ///< parent index -> slot in members, -1 outside

    int size() const { return static_cast<int>(members.size()); }
    bool contains(int x) const { return position[x] >= 0; }
    bool is_abelian() const;
};

/// Validates closure, identity and inverses. Throws "invalid-subgroup" otherwise.
SubgroupHandle make_subgroup(const FiniteGroup& parent, std::vector<int> members);

/// Subgroup generated by a set of elements (closure by breadth-first products).
SubgroupHandle generated_subgroup(const FiniteGroup& parent, const std::vector<int>& generators);

/// The center {z : zx = xz for all x} as a subgroup handle.
SubgroupHandle center(const FiniteGroup& group);

/// True iff x s x^{-1} stays in the subgroup for every x and s.
bool is_normal(const FiniteGroup& group, const SubgroupHandle& subgroup);

/**
 * @brief Coset decomposition of a group by a normal subgroup.
 *
 * The transversal holds one representative per coset: the minimal
 * element index in that coset. Cosets are numbered in order of their
 * minimal representative, so transversal[0] is the identity whenever
 * the identity has index 0 (true for every factory in this library).
 */
struct QuotientStructure {
    const FiniteGroup* parent = nullptr;
    SubgroupHandle normal_subgroup;
    int coset_count = 0;
    std::vector<int> transversal;  ///< coset -> minimal representative
    std::vector<int> coset_of;     ///< element -> coset index
    std::vector<int> rep_inv;      ///< coset -> inv(transversal[coset]), cached
};

/// Throws "not-normal" when the subgroup is not normal.
QuotientStructure build_quotient(const FiniteGroup& group, const SubgroupHandle& normal_subgroup);

/**
 * @brief Convolution with counting Haar weight:
 *        (f * g)(x) = sum_y f(y) g(y^{-1} x).
 *
 * Output cells are independent; the implementation may evaluate them in
 * parallel without changing any per-cell summation order.
 */
std::vector<complex_t> group_convolve(const FiniteGroup& group,
                                      const std::vector<complex_t>& f,
                                      const std::vector<complex_t>& g);

/// Involution f^*(x) = modular(x^{-1}) * conj(f(x^{-1})); modular is 1 here.
std::vector<complex_t> group_involve(const FiniteGroup& group, const std::vector<complex_t>& f);

/**
 * @brief Fiber sum over a normal subgroup: one value per coset,
 *        value(c) = sum_{s in N} f(transversal[c] * s).
 *
 * The value is independent of which coset representative is used; the
 * implementation asserts that on a rotating spot-check.
 */
std::vector<complex_t> periodize_TN(const FiniteGroup& group, const SubgroupHandle& normal_subgroup,
                                    const std::vector<complex_t>& f);
std::vector<complex_t> periodize_TN(const QuotientStructure& quotient, const std::vector<complex_t>& f);

/**
 * @brief | sum_cosets fiber-sum(f) - sum_G f |.
 *
 * Exactly zero under counting weights up to floating accumulation; the
 * verification suite requires <= 1e-12 relative to the l1 mass of f.
 */
double weil_residual(const FiniteGroup& group, const SubgroupHandle& normal_subgroup,
                     const std::vector<complex_t>& f);

/// lp norm of a coefficient vector under counting measure, p >= 1.
double lp_norm(const std::vector<complex_t>& values, double p);

}  // namespace covalg
