#pragma once

/// Quadrature-based verification of the covariant-algebra identities on two
/// continuous groups:
///
///  - the polarized Heisenberg group on R^3 with composition
///      (x, y, s) (x', y', s') = (x + x', y + y', s + s' + x y'),
///    which is unimodular; covariant functions for the frequency-nu
///    character of the central fiber reduce to sampled data on an (x, y)
///    plane grid;
///
///  - the affine "ax+b" group, scales (0, inf) acting on the real line by
///    multiplication, which is the non-unimodular exercise: the fiber
///    measure distortion and the ambient modular function are both
///    nontrivial and are measured numerically rather than hard-coded.
///
/// Everything here is sampled on explicit grids with trapezoid weights, and
/// the residual tables report how the identity defects shrink as the grids
/// refine.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "covalg/phase.hpp"

namespace covalg {

/// One-dimensional quadrature rule: strictly increasing nodes with positive
/// weights.  Integrating the constant 1 reproduces the measure of the
/// truncation interval to 1e-12 (checked at construction).
struct Grid1D {
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }
    double measure() const;
    double max_spacing() const;
};

/// Uniform endpoint (trapezoid) grid on [-half_width, half_width].  The
/// node count must be odd and >= 3 so that 0 is a node and differences of
/// nodes land on nodes again.
Grid1D make_uniform_grid(double half_width, int count);

/// Logarithmic grid on [1/ratio, ratio] whose weights integrate against the
/// scale-invariant measure da/a; the nodes are symmetric under a -> 1/a and
/// the measure of the interval is 2*log(ratio).  Count must be odd and >= 3.
Grid1D make_log_grid(double ratio, int count);

/// Closed-form bump used as integrand building block.
struct TestFunction {
    enum class Family { gaussian, raised_cosine };

    Family family = Family::gaussian;
    double center = 0.0;
    double width = 1.0;     ///< gaussian: e-folding scale; raised_cosine: support half-width
    double amplitude = 1.0;

    /// gaussian: amplitude * exp(-((t-center)/width)^2)
    /// raised_cosine: amplitude * (1 + cos(pi (t-center)/width)) / 2 on
    /// |t-center| <= width, else 0.
    double operator()(double t) const;
};

TestFunction gaussian(double center, double width, double amplitude);
TestFunction raised_cosine(double center, double width, double amplitude);

/// Separable function on the Heisenberg group: f(x, y, s) =
/// x_factor(x) * y_factor(y) * fiber_factor(s).
struct SeparableFunction3 {
    TestFunction x_factor;
    TestFunction y_factor;
    TestFunction fiber_factor;

    double eval(double x, double y, double s) const {
        return x_factor(x) * y_factor(y) * fiber_factor(s);
    }
};

/// Separable function on the affine group: f(a, s) =
/// log_scale_factor(log a) * fiber_factor(s).
struct AffineSeparable {
    TestFunction log_scale_factor;
    TestFunction fiber_factor;

    double eval(double a, double s) const;
};

/// Covariant function on the Heisenberg group for the frequency-freq
/// central character, stored as samples on the (x, y) plane; the full
/// function is psi(x, y, t) = e^{i freq t} * psi(x, y, 0).  Both plane axes
/// share one grid.
struct HeisenbergCovariant1 {
    double freq = 0.0;
    Grid1D plane_grid;
    std::vector<complex_t> values;  ///< row-major over (x index, y index)

    complex_t at(int i, int j) const;
    /// Bilinear interpolation between nodes; 0 outside the grid.
    complex_t interpolate(double x, double y) const;
};

/// Covariant function on the affine group for the trivial fiber character,
/// stored as samples over the scale axis on a logarithmic grid.
struct AffineCovariant {
    Grid1D scale_grid;
    std::vector<complex_t> values;
};

/// Projection onto the frequency-freq covariant data:
///   out[i][j] = integral of f(x_i, y_j, s) e^{-i freq s} ds
/// by quadrature on fiber_grid.  Requires the fiber grid to resolve the
/// oscillation with at least 10 nodes per period, otherwise throws a
/// resolution error.
HeisenbergCovariant1 h1_project(const SeparableFunction3& f, double freq, const Grid1D& plane_grid,
                                const Grid1D& fiber_grid);

/// Transversal convolution:
///   out(x, y) = integral of psi(x', y') phi(x - x', y - y')
///               e^{-i freq x' (y - y')} dx' dy'
/// by quadrature over the plane grid; node differences that leave the grid
/// contribute 0 (truncation).  Throws incompatible-context unless freq and
/// grids agree.
HeisenbergCovariant1 h1_convolve(const HeisenbergCovariant1& psi, const HeisenbergCovariant1& phi);

/// Transversal involution:
///   out(x, y) = e^{-i freq x y} conj(psi(-x, -y)),
/// exact on the nodes of an origin-symmetric grid (otherwise invalid-grid).
HeisenbergCovariant1 h1_involve(const HeisenbergCovariant1& psi);

/// Numeric measure-transport factor of the affine action: the ratio
/// between the fiber Haar measure of a smooth reference set and of its
/// image under scaling by `scale`, measured by quadrature.  This is the
/// density that makes scale-weights * this * fiber-weights a left Haar
/// quadrature for the ax+b group; the value is forced by the Weil and
/// contraction checks rather than assumed.
double action_measure_factor(double scale);

/// Projection onto the trivial-character covariant data:
///   out[i] = action_measure_factor(a_i) * integral of f(a_i, s) ds.
/// Throws a resolution error when the fiber grid spacing cannot resolve
/// the fiber factor's width.
AffineCovariant affine_project(const AffineSeparable& f, const Grid1D& scale_grid,
                               const Grid1D& fiber_grid);

/// Multiplicative transversal convolution with the scale-invariant measure:
///   out(a) = integral of psi(h) phi(a/h) dh/h,
/// quadrature over the logarithmic grid, off-grid quotients truncated to 0.
AffineCovariant affine_convolve(const AffineCovariant& psi, const AffineCovariant& phi);

/// Transversal involution out(a) = conj(psi(1/a)); exact on the nodes of an
/// inversion-symmetric grid (otherwise invalid-grid).
AffineCovariant affine_involve(const AffineCovariant& psi);

/// One row of a refinement study.
struct ResidualRow {
    std::string property;
    int resolution = 0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Runs the Heisenberg identity suite on fixed Gaussian fixtures at each
/// plane resolution (the fiber grid refines alongside).  Rows cover the
/// projected-convolution and projected-involution comparisons against
/// literal independent quadratures, involutivity, the anti-homomorphism,
/// the norm-1 bound, the closed-form Gaussian projection, and the bilinear
/// interpolation budget.  Resolutions must be strictly increasing and of the
/// form 20*k+1 so the fixed evaluation points fall on grid nodes; strict
/// tolerances apply at the final (reference) resolution while coarser rows
/// carry smoke bounds, with the refinement trend judged separately by
/// residual_study_ok.
std::vector<ResidualRow> h1_residual_table(const std::vector<int>& plane_resolutions, double freq);

/// Runs the affine identity suite on fixed fixtures at each scale-grid
/// resolution.  Rows cover the measure-factor homomorphism law, the Weil
/// consistency of the measured factor, the projected convolution and
/// involution against literal quadratures, involutivity, and the norm-1
/// bound.  Resolutions must be strictly increasing and of the form 8*k+1 so
/// the fixed evaluation offsets fall on grid nodes.
std::vector<ResidualRow> affine_residual_table(const std::vector<int>& scale_resolutions);

/// Aggregate judgment of a refinement study: every row within its budget,
/// and per property the residual non-increasing as resolution grows except
/// below the floating-point floor.
bool residual_study_ok(const std::vector<ResidualRow>& rows, double floor = 1e-10);

/// Renders rows as CSV with header "property,resolution,residual".
std::string residual_rows_csv(const std::vector<ResidualRow>& rows);

}  // namespace covalg
