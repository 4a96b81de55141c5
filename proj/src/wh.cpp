#include "covalg/wh.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "covalg/parallel.hpp"
#include "covalg/rand.hpp"

namespace covalg {

namespace {

[[noreturn]] void fail(const std::string& message) { throw std::invalid_argument(message); }

complex_t integer_power(complex_t base, std::int64_t exponent) {
    if (exponent < 0) {
        base = complex_t{1.0, 0.0} / base;
        exponent = -exponent;
    }
    complex_t acc{1.0, 0.0};
    while (exponent > 0) {
        if (exponent & 1) acc *= base;
        base *= base;
        exponent >>= 1;
    }
    return acc;
}

void require_center_compatible(const WHCenterCovariant& a, const WHCenterCovariant& b) {
    if (a.base_order != b.base_order || a.degree != b.degree)
        fail("incompatible-context: operands differ in base order or degree");
}

void require_full_compatible(const WHFullCovariant& a, const WHFullCovariant& b) {
    if (a.base_order != b.base_order || a.base_point != b.base_point || a.degree != b.degree)
        fail("incompatible-context: operands differ in base order, base point, or degree");
}

}  // namespace

WHCenterCovariant make_wh_center(int base_order, std::int64_t degree, std::vector<complex_t> values) {
    if (base_order < 1) fail("invalid-parameter: base order must be >= 1");
    const std::size_t expected = static_cast<std::size_t>(base_order) * static_cast<std::size_t>(base_order);
    if (values.size() != expected)
        fail("invalid-parameter: values must hold base_order^2 transversal entries");
    return WHCenterCovariant{base_order, degree, std::move(values)};
}

WHFullCovariant make_wh_full(int base_order, int base_point, std::int64_t degree,
                             std::vector<complex_t> values) {
    if (base_order < 1) fail("invalid-parameter: base order must be >= 1");
    if (base_point < 0 || base_point >= base_order)
        fail("invalid-parameter: base point must lie in [0, base_order)");
    if (mod_floor(degree, base_order) != 0)
        fail("invalid-parameter: degree must be a multiple of the base order");
    if (values.size() != static_cast<std::size_t>(base_order))
        fail("invalid-parameter: values must hold base_order transversal entries");
    return WHFullCovariant{base_order, base_point, degree, std::move(values)};
}

complex_t wh_center_eval(const WHCenterCovariant& psi, int x, int l, complex_t z) {
    const int M = psi.base_order;
    x = static_cast<int>(mod_floor(x, M));
    l = static_cast<int>(mod_floor(l, M));
    return integer_power(z, psi.degree) * psi.values[static_cast<std::size_t>(x) * M + l];
}

complex_t wh_full_eval(const WHFullCovariant& psi, int x, int l, complex_t z) {
    const int M = psi.base_order;
    x = static_cast<int>(mod_floor(x, M));
    l = static_cast<int>(mod_floor(l, M));
    const complex_t dual = unit_phase(mod_floor(static_cast<std::int64_t>(l) * psi.base_point, M), M);
    return dual * integer_power(z, psi.degree) * psi.values[static_cast<std::size_t>(x)];
}

WHCenterCovariant wh_center_convolve(const WHCenterCovariant& psi, const WHCenterCovariant& phi) {
    require_center_compatible(psi, phi);
    const int M = psi.base_order;
    const std::int64_t deg = mod_floor(psi.degree, M);
    WHCenterCovariant out{M, psi.degree, std::vector<complex_t>(psi.values.size())};
    parallel_for(out.values.size(), [&](std::size_t cell) {
        const int m = static_cast<int>(cell) / M;
        const int l = static_cast<int>(cell) % M;
        complex_t acc{0.0, 0.0};
        for (int mp = 0; mp < M; ++mp) {
            for (int lp = 0; lp < M; ++lp) {
                const std::int64_t num = mod_floor(deg * (lp - l) * mp, M);
                const complex_t phase = unit_phase(num, M);
                const int md = static_cast<int>(mod_floor(m - mp, M));
                const int ld = static_cast<int>(mod_floor(l - lp, M));
                acc += phase * psi.values[static_cast<std::size_t>(mp) * M + lp] *
                       phi.values[static_cast<std::size_t>(md) * M + ld];
            }
        }
        out.values[cell] = acc;
    });
    return out;
}

WHCenterCovariant wh_center_involve(const WHCenterCovariant& psi) {
    const int M = psi.base_order;
    const std::int64_t deg = mod_floor(psi.degree, M);
    WHCenterCovariant out{M, psi.degree, std::vector<complex_t>(psi.values.size())};
    for (int m = 0; m < M; ++m) {
        for (int l = 0; l < M; ++l) {
            const complex_t phase = unit_phase(mod_floor(-deg * m * l, M), M);
            const int mm = static_cast<int>(mod_floor(-m, M));
            const int ml = static_cast<int>(mod_floor(-l, M));
            out.values[static_cast<std::size_t>(m) * M + l] =
                phase * std::conj(psi.values[static_cast<std::size_t>(mm) * M + ml]);
        }
    }
    return out;
}

WHFullCovariant wh_full_convolve(const WHFullCovariant& psi, const WHFullCovariant& phi) {
    require_full_compatible(psi, phi);
    const int M = psi.base_order;
    const std::int64_t deg = mod_floor(psi.degree, M);
    // The transversal sits inside the coset (m, w, z); the result row is
    // computed once per dual index l and the rows must coincide because the
    // degree is a multiple of the base order.  Computing every row keeps the
    // phase factor literal instead of assuming the cancellation.
    std::vector<complex_t> reference(static_cast<std::size_t>(M));
    for (int l = 0; l < M; ++l) {
        std::vector<complex_t> row(static_cast<std::size_t>(M));
        for (int m = 0; m < M; ++m) {
            complex_t acc{0.0, 0.0};
            for (int mp = 0; mp < M; ++mp) {
                const complex_t phase = unit_phase(mod_floor(-deg * l * mp, M), M);
                acc += phase * psi.values[static_cast<std::size_t>(mp)] *
                       phi.values[static_cast<std::size_t>(mod_floor(m - mp, M))];
            }
            row[static_cast<std::size_t>(m)] = acc;
        }
        if (l == 0) {
            reference = std::move(row);
        } else {
            for (int m = 0; m < M; ++m) {
                if (std::abs(row[static_cast<std::size_t>(m)] - reference[static_cast<std::size_t>(m)]) > 1e-12)
                    throw std::logic_error("internal-error: full-fiber convolution depends on the coset representative");
            }
        }
    }
    return WHFullCovariant{M, psi.base_point, psi.degree, std::move(reference)};
}

WHFullCovariant wh_full_involve(const WHFullCovariant& psi) {
    const int M = psi.base_order;
    WHFullCovariant out{M, psi.base_point, psi.degree, std::vector<complex_t>(psi.values.size())};
    for (int m = 0; m < M; ++m)
        out.values[static_cast<std::size_t>(m)] =
            std::conj(psi.values[static_cast<std::size_t>(mod_floor(-m, M))]);
    return out;
}

std::vector<WHCharacter> wh_invariant_characters(int base_order, std::int64_t degree_bound) {
    if (base_order < 1) fail("invalid-parameter: base order must be >= 1");
    if (degree_bound < base_order)
        fail("invalid-parameter: the degree bound must be at least the base order");
    std::vector<WHCharacter> out;
    for (int y = 0; y < base_order; ++y) {
        for (std::int64_t n = -degree_bound; n <= degree_bound; ++n) {
            // Conjugating by a base shift x moves the dual-character
            // evaluation point from y to y + n*x; invariance means the
            // point is fixed for every x.
            bool invariant = true;
            for (int x = 0; x < base_order && invariant; ++x)
                invariant = mod_floor(static_cast<std::int64_t>(y) + n * x, base_order) == y;
            if (invariant) out.push_back(WHCharacter{y, n});
        }
    }
    return out;
}

VerificationReport circle_oracle_check(int base_order, std::int64_t degree, int trig_degree,
                                       int quadrature_points, int trials, std::uint64_t seed) {
    const int M = base_order;
    const int D = trig_degree;
    const int Q = quadrature_points;
    if (M < 1) fail("invalid-parameter: base order must be >= 1");
    if (D < 0) fail("invalid-parameter: trig degree must be >= 0");
    if (trials < 1) fail("invalid-parameter: trials must be >= 1");
    if (Q <= 2 * D + std::abs(degree))
        throw std::invalid_argument(
            "aliasing-risk: quadrature points must exceed 2*trig_degree + |degree|");
    if (Q % M != 0)
        fail("invalid-parameter: quadrature points must be a multiple of the base order");

    const int n_coef = 2 * D + 1;
    const std::size_t cells = static_cast<std::size_t>(M) * static_cast<std::size_t>(M);
    const double inv_q = 1.0 / static_cast<double>(Q);

    // Circle nodes z_j = e^{2 pi i j / Q} and the projection weights
    // conj(z_j^degree), both exact roots of unity.
    std::vector<complex_t> node(static_cast<std::size_t>(Q));
    std::vector<complex_t> proj_weight(static_cast<std::size_t>(Q));
    for (int j = 0; j < Q; ++j) {
        node[static_cast<std::size_t>(j)] = unit_phase(j, Q);
        proj_weight[static_cast<std::size_t>(j)] = unit_phase(mod_floor(-degree * j, Q), Q);
    }

    const double tolerance = 1e-10;
    double max_residual = 0.0;

    for (int trial = 0; trial < trials; ++trial) {
        // Coefficients of the trigonometric polynomials in z, one block of
        // 2D+1 entries per transversal cell, scaled so |f| stays O(1).
        const double scale = 1.0 / static_cast<double>(n_coef);
        Rng f_rng = Rng::substream(seed, "circle-oracle-f", static_cast<std::uint64_t>(trial));
        Rng g_rng = Rng::substream(seed, "circle-oracle-g", static_cast<std::uint64_t>(trial));
        std::vector<complex_t> f_coef = random_complex_vector(f_rng, cells * n_coef, scale);
        std::vector<complex_t> g_coef = random_complex_vector(g_rng, cells * n_coef, scale);

        // Grid values f(m, l, z_j) and g(m, l, z_j).
        auto tabulate = [&](const std::vector<complex_t>& coef) {
            std::vector<complex_t> tab(cells * static_cast<std::size_t>(Q));
            for (std::size_t cell = 0; cell < cells; ++cell) {
                for (int j = 0; j < Q; ++j) {
                    complex_t acc{0.0, 0.0};
                    for (int d = -D; d <= D; ++d)
                        acc += coef[cell * n_coef + static_cast<std::size_t>(d + D)] *
                               node[static_cast<std::size_t>(mod_floor(static_cast<std::int64_t>(d) * j, Q))];
                    tab[cell * Q + static_cast<std::size_t>(j)] = acc;
                }
            }
            return tab;
        };
        const std::vector<complex_t> f_tab = tabulate(f_coef);
        const std::vector<complex_t> g_tab = tabulate(g_coef);

        // Reversed triple-periodic copies of the g rows, so the inner loop
        // below reads both factors with unit stride.
        const int ext = 3 * Q;
        std::vector<complex_t> g_rev(cells * static_cast<std::size_t>(ext));
        for (std::size_t cell = 0; cell < cells; ++cell)
            for (int t = 0; t < ext; ++t)
                g_rev[cell * ext + static_cast<std::size_t>(t)] =
                    g_tab[cell * Q + static_cast<std::size_t>((ext - 1 - t) % Q)];

        // Projections of f and g onto the transversal.
        auto project = [&](const std::vector<complex_t>& tab) {
            std::vector<complex_t> out(cells);
            for (std::size_t cell = 0; cell < cells; ++cell) {
                complex_t acc{0.0, 0.0};
                for (int j = 0; j < Q; ++j)
                    acc += tab[cell * Q + static_cast<std::size_t>(j)] * proj_weight[static_cast<std::size_t>(j)];
                out[cell] = acc * inv_q;
            }
            return out;
        };
        const WHCenterCovariant tf = make_wh_center(M, degree, project(f_tab));
        const WHCenterCovariant tg = make_wh_center(M, degree, project(g_tab));
        const WHCenterCovariant closed = wh_center_convolve(tf, tg);

        // Literal path: group-convolve f and g over the full quadrature grid
        // and project the result, with no shift-theorem shortcuts.  For a
        // left factor at (m', w_l', z_j') and an output point (m, w_l, z_j),
        // the right factor is evaluated at the inverse-translate
        //   (m - m', w_{l - l'}, z_{(m'(l'-l)Q/M + j - j') mod Q}).
        std::vector<complex_t> literal(cells);
        parallel_for(cells, [&](std::size_t cell) {
            const int m = static_cast<int>(cell) / M;
            const int l = static_cast<int>(cell) % M;
            complex_t acc{0.0, 0.0};
            for (int mp = 0; mp < M; ++mp) {
                for (int lp = 0; lp < M; ++lp) {
                    const int delta = static_cast<int>(
                        mod_floor(static_cast<std::int64_t>(mp) * (lp - l) * (Q / M), Q));
                    const std::size_t f_row = (static_cast<std::size_t>(mp) * M + lp) * Q;
                    const std::size_t g_row =
                        (static_cast<std::size_t>(mod_floor(m - mp, M)) * M +
                         static_cast<std::size_t>(mod_floor(l - lp, M))) *
                        ext;
                    for (int j = 0; j < Q; ++j) {
                        const int offset = ext - 1 - (delta + j + Q);
                        complex_t inner{0.0, 0.0};
                        for (int jp = 0; jp < Q; ++jp)
                            inner += f_tab[f_row + static_cast<std::size_t>(jp)] *
                                     g_rev[g_row + static_cast<std::size_t>(offset + jp)];
                        acc += proj_weight[static_cast<std::size_t>(j)] * inner;
                    }
                }
            }
            literal[cell] = acc * (inv_q * inv_q);
        });

        for (std::size_t cell = 0; cell < cells; ++cell)
            max_residual = std::max(max_residual, std::abs(literal[cell] - closed.values[cell]));
    }

    VerificationReport report;
    report.group = "W(Z" + std::to_string(M) + ")";
    report.subgroup_order = 0;
    report.xi_num = {degree};
    report.xi_den = 1;
    report.seed = seed;
    report.properties.push_back(PropertyRecord{
        "homomorphism",
        "T(f *_G g) = T(f) # T(g), circle fiber integrated by uniform quadrature",
        trials, max_residual, tolerance, max_residual <= tolerance});
    return report;
}

}  // namespace covalg
