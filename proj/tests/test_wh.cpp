#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "covalg/character.hpp"
#include "covalg/covariant.hpp"
#include "covalg/group.hpp"
#include "covalg/rand.hpp"
#include "covalg/semidirect.hpp"
#include "covalg/wh.hpp"
#include "test_support.hpp"

using covalg::complex_t;
using testsup::max_abs_diff;
using testsup::throws_with_prefix;

namespace {

covalg::WHCenterCovariant random_center(int M, std::int64_t degree, covalg::Rng& rng) {
    return covalg::make_wh_center(
        M, degree, covalg::random_complex_vector(rng, static_cast<std::size_t>(M) * M, 1.0));
}

covalg::WHFullCovariant random_full(int M, int base_point, std::int64_t degree, covalg::Rng& rng) {
    return covalg::make_wh_full(M, base_point, degree,
                                covalg::random_complex_vector(rng, static_cast<std::size_t>(M), 1.0));
}

covalg::WHCenterCovariant center_delta(int M, std::int64_t degree, int m, int l) {
    std::vector<complex_t> values(static_cast<std::size_t>(M) * M, 0.0);
    values[static_cast<std::size_t>(m) * M + l] = 1.0;
    return covalg::make_wh_center(M, degree, std::move(values));
}

}  // namespace

TEST_CASE("transversal constructors validate their shapes") {
    CHECK(throws_with_prefix([] { covalg::make_wh_center(0, 1, {}); }, "invalid-parameter"));
    CHECK(throws_with_prefix([] { covalg::make_wh_center(3, 1, std::vector<complex_t>(8, 0.0)); },
                             "invalid-parameter"));
    CHECK(throws_with_prefix([] { covalg::make_wh_full(4, 4, 0, std::vector<complex_t>(4, 0.0)); },
                             "invalid-parameter"));
    CHECK(throws_with_prefix([] { covalg::make_wh_full(4, 1, 6, std::vector<complex_t>(4, 0.0)); },
                             "invalid-parameter"));
    CHECK(throws_with_prefix([] { covalg::make_wh_full(4, 1, 8, std::vector<complex_t>(5, 0.0)); },
                             "invalid-parameter"));

    const covalg::WHCenterCovariant ok =
        covalg::make_wh_center(2, -3, std::vector<complex_t>(4, 1.0));
    CHECK(ok.degree == -3);
    CHECK(std::abs(covalg::wh_center_eval(ok, 1, 1, complex_t(0.0, 1.0)) -
                   std::exp(complex_t(0.0, -3.0 * std::numbers::pi / 2.0))) <= 1e-15);
}

TEST_CASE("degree zero reduces the circle-fiber convolution to a plain cyclic one") {
    const int M = 4;
    covalg::Rng rng = covalg::Rng::substream(505, "wh-plain", 0);
    const covalg::WHCenterCovariant psi = random_center(M, 0, rng);
    const covalg::WHCenterCovariant phi = random_center(M, 0, rng);
    const covalg::WHCenterCovariant out = covalg::wh_center_convolve(psi, phi);

    std::vector<complex_t> direct(static_cast<std::size_t>(M) * M, 0.0);
    for (int m = 0; m < M; ++m)
        for (int l = 0; l < M; ++l)
            for (int mp = 0; mp < M; ++mp)
                for (int lp = 0; lp < M; ++lp)
                    direct[static_cast<std::size_t>(m) * M + l] +=
                        psi.values[static_cast<std::size_t>(mp) * M + lp] *
                        phi.values[static_cast<std::size_t>(((m - mp) % M + M) % M) * M +
                                   ((l - lp) % M + M) % M];
    CHECK(max_abs_diff(out.values, direct) <= 1e-12);
}

TEST_CASE("the delta at the origin is a two-sided convolution identity") {
    for (std::int64_t degree : {0LL, 1LL, 5LL, -3LL}) {
        covalg::Rng rng = covalg::Rng::substream(505, "wh-identity", static_cast<std::uint64_t>(degree + 8));
        const covalg::WHCenterCovariant psi = random_center(4, degree, rng);
        const covalg::WHCenterCovariant unit = center_delta(4, degree, 0, 0);
        CHECK(max_abs_diff(covalg::wh_center_convolve(unit, psi).values, psi.values) == 0.0);
        CHECK(max_abs_diff(covalg::wh_center_convolve(psi, unit).values, psi.values) <= 1e-15);
    }
}

TEST_CASE("a pinned commutation phase") {
    // Composing the shifted delta with itself lands on (2, 2) and picks up
    // exactly one quarter turn: the value is -i.
    const covalg::WHCenterCovariant d = center_delta(4, 1, 1, 1);
    const covalg::WHCenterCovariant out = covalg::wh_center_convolve(d, d);
    for (int m = 0; m < 4; ++m)
        for (int l = 0; l < 4; ++l) {
            const complex_t got = out.values[static_cast<std::size_t>(m) * 4 + l];
            if (m == 2 && l == 2)
                CHECK(std::abs(got - complex_t(0.0, -1.0)) <= 1e-15);
            else
                CHECK(std::abs(got) == 0.0);
        }
}

TEST_CASE("circle-fiber convolution rejects mismatched metadata") {
    covalg::Rng rng = covalg::Rng::substream(505, "wh-mismatch", 0);
    const covalg::WHCenterCovariant a = random_center(4, 1, rng);
    const covalg::WHCenterCovariant b = random_center(4, 2, rng);
    CHECK(throws_with_prefix([&] { covalg::wh_center_convolve(a, b); }, "incompatible-context"));
    const covalg::WHCenterCovariant c = random_center(3, 1, rng);
    CHECK(throws_with_prefix([&] { covalg::wh_center_convolve(a, c); }, "incompatible-context"));
}

TEST_CASE("circle-fiber involution") {
    covalg::Rng rng = covalg::Rng::substream(505, "wh-involve", 0);
    for (std::int64_t degree : {0LL, 1LL, 3LL, -4LL}) {
        const covalg::WHCenterCovariant psi = random_center(4, degree, rng);
        const covalg::WHCenterCovariant phi = random_center(4, degree, rng);

        CHECK(max_abs_diff(covalg::wh_center_involve(covalg::wh_center_involve(psi)).values,
                           psi.values) <= 1e-15);
        CHECK(max_abs_diff(covalg::wh_center_involve(covalg::wh_center_convolve(psi, phi)).values,
                           covalg::wh_center_convolve(covalg::wh_center_involve(phi),
                                                      covalg::wh_center_involve(psi))
                               .values) <= 1e-12);
    }

    // Degree zero: a pure index reversal with conjugation.
    const covalg::WHCenterCovariant psi = random_center(3, 0, rng);
    const covalg::WHCenterCovariant rev = covalg::wh_center_involve(psi);
    for (int m = 0; m < 3; ++m)
        for (int l = 0; l < 3; ++l)
            CHECK(rev.values[static_cast<std::size_t>(m) * 3 + l] ==
                  std::conj(psi.values[static_cast<std::size_t>((3 - m) % 3) * 3 + (3 - l) % 3]));
}

TEST_CASE("full-fiber convolution collapses to the base group when the phases cancel") {
    covalg::Rng rng = covalg::Rng::substream(505, "wh-full", 0);
    for (std::int64_t degree : {0LL, 4LL, -8LL}) {
        const covalg::WHFullCovariant psi = random_full(4, 2, degree, rng);
        const covalg::WHFullCovariant phi = random_full(4, 2, degree, rng);
        const covalg::WHFullCovariant out = covalg::wh_full_convolve(psi, phi);

        std::vector<complex_t> direct(4, 0.0);
        for (int m = 0; m < 4; ++m)
            for (int mp = 0; mp < 4; ++mp)
                direct[static_cast<std::size_t>(m)] +=
                    psi.values[static_cast<std::size_t>(mp)] *
                    phi.values[static_cast<std::size_t>(((m - mp) % 4 + 4) % 4)];
        CHECK(max_abs_diff(out.values, direct) <= 1e-13);

        std::vector<complex_t> unit_values(4, 0.0);
        unit_values[0] = 1.0;
        const covalg::WHFullCovariant unit = covalg::make_wh_full(4, 2, degree, unit_values);
        CHECK(max_abs_diff(covalg::wh_full_convolve(unit, psi).values, psi.values) <= 1e-15);
        CHECK(max_abs_diff(covalg::wh_full_convolve(psi, unit).values, psi.values) <= 1e-15);
    }

    const covalg::WHFullCovariant a = random_full(4, 1, 4, rng);
    const covalg::WHFullCovariant b = random_full(4, 2, 4, rng);
    CHECK(throws_with_prefix([&] { covalg::wh_full_convolve(a, b); }, "incompatible-context"));
}

TEST_CASE("full-fiber involution") {
    covalg::Rng rng = covalg::Rng::substream(505, "wh-full-inv", 0);
    const covalg::WHFullCovariant psi = random_full(5, 3, 10, rng);
    const covalg::WHFullCovariant twice = covalg::wh_full_involve(covalg::wh_full_involve(psi));
    CHECK(max_abs_diff(twice.values, psi.values) == 0.0);
    CHECK(twice.base_point == psi.base_point);
    CHECK(twice.degree == psi.degree);

    covalg::WHFullCovariant sym = covalg::make_wh_full(5, 0, 0, {1.0, 2.0, 3.0, 3.0, 2.0});
    CHECK(max_abs_diff(covalg::wh_full_involve(sym).values, sym.values) == 0.0);

    const covalg::WHFullCovariant phi = random_full(5, 3, 10, rng);
    CHECK(max_abs_diff(covalg::wh_full_involve(covalg::wh_full_convolve(psi, phi)).values,
                       covalg::wh_full_convolve(covalg::wh_full_involve(phi),
                                                covalg::wh_full_involve(psi))
                           .values) <= 1e-12);
}

TEST_CASE("invariant characters of the full fiber") {
    const std::vector<covalg::WHCharacter> got = covalg::wh_invariant_characters(4, 8);
    std::vector<covalg::WHCharacter> want;
    for (int y = 0; y < 4; ++y)
        for (std::int64_t n : {-8LL, -4LL, 0LL, 4LL, 8LL}) want.push_back({y, n});
    std::sort(want.begin(), want.end(), [](const covalg::WHCharacter& a, const covalg::WHCharacter& b) {
        return a.base_point != b.base_point ? a.base_point < b.base_point : a.degree < b.degree;
    });
    CHECK(got == want);
    for (const covalg::WHCharacter& c : got) CHECK(!(c.base_point == 2 && c.degree == 3));

    // Base order one: the criterion is vacuous, every degree survives.
    const std::vector<covalg::WHCharacter> tiny = covalg::wh_invariant_characters(1, 3);
    REQUIRE(tiny.size() == 7);
    for (std::size_t i = 0; i < tiny.size(); ++i) {
        CHECK(tiny[i].base_point == 0);
        CHECK(tiny[i].degree == static_cast<std::int64_t>(i) - 3);
    }

    CHECK(throws_with_prefix([] { covalg::wh_invariant_characters(4, 3); }, "invalid-parameter"));
    CHECK(throws_with_prefix([] { covalg::wh_invariant_characters(0, 5); }, "invalid-parameter"));
}

TEST_CASE("quadrature oracle for the circle fiber") {
    const covalg::VerificationReport constant = covalg::circle_oracle_check(4, 0, 0, 4, 5, 11);
    CHECK(constant.all_pass());
    CHECK(constant.subgroup_order == 0);
    REQUIRE(constant.properties.size() == 1);
    CHECK(constant.properties[0].id == "homomorphism");
    CHECK(constant.properties[0].max_residual <= 1e-12);

    const covalg::VerificationReport main_run = covalg::circle_oracle_check(4, 1, 3, 64, 50, 2026);
    CHECK(main_run.all_pass());
    CHECK(main_run.properties[0].max_residual <= 1e-10);

    // No component at the covariance degree: both sides vanish up to the
    // rounding dust of the quadrature sums.
    const covalg::VerificationReport vanishing = covalg::circle_oracle_check(4, 8, 2, 32, 3, 1);
    CHECK(vanishing.all_pass());
    CHECK(vanishing.properties[0].max_residual <= 1e-14);

    CHECK(throws_with_prefix([] { covalg::circle_oracle_check(4, 1, 3, 4, 5, 1); }, "aliasing-risk"));
    CHECK(throws_with_prefix([] { covalg::circle_oracle_check(4, 1, 3, 66, 5, 1); },
                             "invalid-parameter"));
    CHECK(throws_with_prefix([] { covalg::circle_oracle_check(4, 1, 3, 64, 0, 1); },
                             "invalid-parameter"));
}

TEST_CASE("closed forms agree with the finite-model coset convolution") {
    // The finite model with a central fiber realizes the same transversal
    // data: index the cosets by (m, l) through the representative built from
    // the base element m and the dual index l, evaluate there, and the two
    // convolutions and involutions must produce the same tables.
    for (int M : {3, 4}) {
        const covalg::SemidirectGroup product = covalg::make_finite_heisenberg(M);
        const covalg::FiniteGroup& g = product.group;
        const covalg::SubgroupHandle z = covalg::center(g);
        const covalg::CharacterSet gamma = covalg::invariant_characters(g, z);

        for (int n = 0; n < M; ++n) {
            const covalg::Character* xi = nullptr;
            for (const covalg::Character& c : gamma.items)
                if (c.phase_num(z.members[1 % z.size()]) == n) xi = &c;
            REQUIRE(xi != nullptr);
            const covalg::CovariantContext ctx = covalg::make_covariant_context(g, z, *xi);

            covalg::Rng rng = covalg::Rng::substream(505, "wh-cross", static_cast<std::uint64_t>(M * 8 + n));
            const std::vector<complex_t> raw_a =
                covalg::random_complex_vector(rng, static_cast<std::size_t>(g.order), 1.0);
            const std::vector<complex_t> raw_b =
                covalg::random_complex_vector(rng, static_cast<std::size_t>(g.order), 1.0);
            const covalg::CovariantFunction psi = covalg::project(ctx, raw_a);
            const covalg::CovariantFunction phi = covalg::project(ctx, raw_b);

            const auto rep = [&](int m, int l) { return product.encode(m, l * M); };
            const auto to_wh = [&](const covalg::CovariantFunction& fn) {
                std::vector<complex_t> values(static_cast<std::size_t>(M) * M);
                for (int m = 0; m < M; ++m)
                    for (int l = 0; l < M; ++l)
                        values[static_cast<std::size_t>(m) * M + l] = fn.eval(rep(m, l));
                return covalg::make_wh_center(M, n, std::move(values));
            };

            const covalg::WHCenterCovariant wa = to_wh(psi);
            const covalg::WHCenterCovariant wb = to_wh(phi);
            CHECK(max_abs_diff(covalg::wh_center_convolve(wa, wb).values,
                               to_wh(covalg::cov_convolve(psi, phi)).values) <= 1e-12);
            CHECK(max_abs_diff(covalg::wh_center_involve(wa).values,
                               to_wh(covalg::cov_involve(psi)).values) <= 1e-12);
        }
    }
}
