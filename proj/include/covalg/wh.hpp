#pragma once

/// Closed-form covariant algebras on the discrete Weyl-Heisenberg group
/// built from a cyclic base group of order M.  The ambient group has
/// elements (x, w, z) with x in Z_M, w a dual character of Z_M (indexed by
/// l in Z_M via w_l(m) = e^{2 pi i m l / M}), and z on the unit circle,
/// composed as
///
///   (x, w, z) * (x', w', z') = (x + x', w w', w'(x) z z').
///
/// Two normal fibers admit exact transversal representations:
///  - the circle fiber N = {(0, 1, z)}: covariant data lives on the M x M
///    transversal (x, w_l, 1) and the z-dependence is the monomial z^degree;
///  - the full fiber N = {(0, w, z)}: covariant data lives on the length-M
///    transversal (x, 1, 1) with prefactor w(base_point) * z^degree, which
///    requires degree to be a multiple of M.
///
/// The circle is never discretized in these closed forms.  Quadrature enters
/// only in circle_oracle_check, which rebuilds the projected convolution by
/// literal summation over a Q-point circle grid and compares it against
/// wh_center_convolve.

#include <cstdint>
#include <vector>

#include "covalg/phase.hpp"
#include "covalg/report.hpp"

namespace covalg {

/// Covariant function for the circle fiber.  values is an M x M row-major
/// array over (x, l); the full function is (x, w_l, z) -> z^degree *
/// values[x*M + l].  degree is kept as an unreduced integer so that degree
/// and degree + M stay distinct objects.
struct WHCenterCovariant {
    int base_order = 0;
    std::int64_t degree = 0;
    std::vector<complex_t> values;
};

/// Covariant function for the full abelian fiber.  values has length M over
/// x; the full function is (x, w, z) -> w(base_point) * z^degree * values[x].
/// degree must be a multiple of base_order.
struct WHFullCovariant {
    int base_order = 0;
    int base_point = 0;
    std::int64_t degree = 0;
    std::vector<complex_t> values;
};

/// Invariant character of the full fiber, determined by the evaluation
/// point of the dual-character component and the circle degree.
struct WHCharacter {
    int base_point = 0;
    std::int64_t degree = 0;

    friend bool operator==(const WHCharacter&, const WHCharacter&) = default;
};

/// Builds a circle-fiber covariant function after validating the shape.
/// Throws invalid-parameter for base_order < 1 or a values array whose
/// length differs from base_order^2.
WHCenterCovariant make_wh_center(int base_order, std::int64_t degree, std::vector<complex_t> values);

/// Builds a full-fiber covariant function.  Throws invalid-parameter when
/// base_point is outside [0, base_order), when degree is not a multiple of
/// base_order, or when the values length differs from base_order.
WHFullCovariant make_wh_full(int base_order, int base_point, std::int64_t degree,
                             std::vector<complex_t> values);

/// Evaluates the full function at (x, w_l, z).
complex_t wh_center_eval(const WHCenterCovariant& psi, int x, int l, complex_t z);
complex_t wh_full_eval(const WHFullCovariant& psi, int x, int l, complex_t z);

/// Transversal convolution for the circle fiber:
///   out[m][l] = sum_{m', l'} e^{2 pi i degree (l' - l) m' / M}
///               * psi[m'][l'] * phi[m - m'][l - l']   (indices mod M).
/// Throws incompatible-context unless both operands share (M, degree).
WHCenterCovariant wh_center_convolve(const WHCenterCovariant& psi, const WHCenterCovariant& phi);

/// Transversal involution for the circle fiber:
///   out[m][l] = e^{-2 pi i degree m l / M} * conj(psi[-m][-l]).
WHCenterCovariant wh_center_involve(const WHCenterCovariant& psi);

/// Transversal convolution for the full fiber.  The phase
/// e^{-2 pi i degree l m' / M} is evaluated literally for every l, and the
/// resulting rows are checked to agree before the shared row is returned.
/// Throws incompatible-context unless both operands share (M, base_point,
/// degree).
WHFullCovariant wh_full_convolve(const WHFullCovariant& psi, const WHFullCovariant& phi);

/// Transversal involution for the full fiber: out[m] = conj(psi[-m]) with
/// metadata preserved; the evaluation prefactor carries the phases.
WHFullCovariant wh_full_involve(const WHFullCovariant& psi);

/// Enumerates the invariant characters (base_point, degree) of the full
/// fiber with |degree| <= degree_bound, by checking the conjugation
/// criterion "the dual-character component is fixed by every base shift"
/// for each candidate pair.  Requires degree_bound >= base_order so the
/// result is visibly nonempty beyond degree 0.  Sorted by (base_point,
/// degree).
std::vector<WHCharacter> wh_invariant_characters(int base_order, std::int64_t degree_bound);

/// Independent quadrature oracle for the circle fiber.  Draws `trials`
/// random pairs of functions on the ambient group whose circle dependence
/// is a trigonometric polynomial of degree <= trig_degree, computes the
/// group convolution and the covariant projection of the result by literal
/// summation over a quadrature_points-point uniform circle grid, and
/// compares against wh_center_convolve applied to the projections.  The
/// quadrature is exact for the trigonometric degrees involved, so the
/// residual is pure floating-point noise.
///
/// Requires quadrature_points > 2*trig_degree + |degree| (otherwise throws
/// aliasing-risk) and quadrature_points divisible by base_order so that the
/// commutation phases land on grid nodes (otherwise invalid-parameter).
/// The returned report contains a single homomorphism property; its
/// subgroup order is recorded as 0 because the fiber is a continuous
/// circle rather than a finite subgroup.
VerificationReport circle_oracle_check(int base_order, std::int64_t degree, int trig_degree,
                                       int quadrature_points, int trials, std::uint64_t seed);

}  // namespace covalg
