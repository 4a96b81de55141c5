#include <doctest.h>

#include <vector>

#include "covalg/group.hpp"
#include "covalg/semidirect.hpp"
#include "test_support.hpp"

using testsup::throws_with_prefix;

TEST_CASE("trivial actions reproduce direct products") {
    const covalg::FiniteGroup h = covalg::make_cyclic(3);
    const covalg::FiniteGroup k = covalg::make_cyclic(4);
    const covalg::SemidirectGroup product = covalg::semidirect(h, k, covalg::trivial_action(h, k));
    const covalg::FiniteGroup direct = covalg::direct_product(h, k);
    CHECK(product.group.order == direct.order);
    CHECK(product.group.op_table == direct.op_table);
    CHECK(product.group.inv_table == direct.inv_table);
}

TEST_CASE("action validation") {
    const covalg::FiniteGroup h = covalg::make_cyclic(2);

    // theta_1(k) = 2k on Z_5 is an automorphism but squares to 4k, not the
    // identity, so the table is not a homomorphism from Z_2.
    covalg::Action broken;
    broken.H = h;
    broken.K = covalg::make_cyclic(5);
    broken.table = {{0, 1, 2, 3, 4}, {0, 2, 4, 1, 3}};
    CHECK(throws_with_prefix([&] { covalg::semidirect(h, broken.K, broken); }, "invalid-action"));

    // A permutation that is no automorphism (it moves the identity).
    covalg::Action not_auto;
    not_auto.H = h;
    not_auto.K = covalg::make_cyclic(3);
    not_auto.table = {{0, 1, 2}, {1, 0, 2}};
    CHECK(throws_with_prefix([&] { covalg::semidirect(h, not_auto.K, not_auto); }, "invalid-action"));
}

TEST_CASE("finite Heisenberg construction") {
    CHECK(throws_with_prefix([] { covalg::make_finite_heisenberg(1); }, "invalid-parameter"));

    const covalg::SemidirectGroup wh2 = covalg::make_finite_heisenberg(2);
    CHECK(wh2.group.order == 8);
    bool abelian = true;
    for (int a = 0; a < 8 && abelian; ++a)
        for (int b = 0; b < 8; ++b)
            if (wh2.group.op(a, b) != wh2.group.op(b, a)) {
                abelian = false;
                break;
            }
    CHECK_FALSE(abelian);

    const covalg::SemidirectGroup wh4 = covalg::make_finite_heisenberg(4);
    CHECK(wh4.group.order == 64);
    CHECK(wh4.group.label == "H(Z4)");

    // The center is the (0, (0, z)) fiber.
    const covalg::SubgroupHandle z = covalg::center(wh4.group);
    CHECK(z.members == std::vector<int>{0, 1, 2, 3});

    // A commutator of the two non-central generators lands in the fiber.
    const int a = wh4.encode(1, 0);
    const int b = wh4.encode(0, 4);  // k index 4 is (w, z) = (1, 0)
    const covalg::FiniteGroup& g = wh4.group;
    const int commutator = g.op(g.op(a, b), g.op(g.inv(a), g.inv(b)));
    CHECK(commutator != g.identity);
    CHECK(z.position[commutator] >= 0);
}

TEST_CASE("pair encoding matches the group law") {
    const covalg::SemidirectGroup wh3 = covalg::make_finite_heisenberg(3);
    const covalg::FiniteGroup& g = wh3.group;
    const covalg::Action& theta = wh3.action;

    covalg::Rng rng(77);
    for (int t = 0; t < 100; ++t) {
        const int x = static_cast<int>(rng.next_below(g.order));
        const int y = static_cast<int>(rng.next_below(g.order));
        const int hx = wh3.decode_h(x), kx = wh3.decode_k(x);
        const int hy = wh3.decode_h(y), ky = wh3.decode_k(y);
        const int expected = wh3.encode(theta.H.op(hx, hy), theta.K.op(kx, theta.apply(hx, ky)));
        CHECK(g.op(x, y) == expected);

        const int inv_expected = wh3.encode(theta.H.inv(hx), theta.apply(theta.H.inv(hx), theta.K.inv(kx)));
        CHECK(g.inv(x) == inv_expected);
        CHECK(g.op(x, g.inv(x)) == g.identity);
    }
}

TEST_CASE("theta-invariant subgroups") {
    const covalg::SemidirectGroup wh4 = covalg::make_finite_heisenberg(4);
    const covalg::FiniteGroup& k = wh4.action.K;

    std::vector<int> all_k(k.order);
    for (int i = 0; i < k.order; ++i) all_k[i] = i;
    CHECK(covalg::is_theta_invariant(covalg::make_subgroup(k, all_k), wh4.action));
    CHECK(covalg::is_theta_invariant(covalg::make_subgroup(k, {0}), wh4.action));

    // The (0, z) fiber of K is fixed pointwise by every theta_x.
    CHECK(covalg::is_theta_invariant(covalg::make_subgroup(k, {0, 1, 2, 3}), wh4.action));

    // The (w, 0) line is sheared away: theta_1(1, 0) = (1, 1).
    CHECK_FALSE(covalg::is_theta_invariant(covalg::make_subgroup(k, {0, 4, 8, 12}), wh4.action));
}

TEST_CASE("measure distortion factors are unit on finite groups") {
    const covalg::SemidirectGroup wh4 = covalg::make_finite_heisenberg(4);
    const covalg::FiniteGroup& k = wh4.action.K;
    const covalg::SubgroupHandle fiber = covalg::make_subgroup(k, {0, 1, 2, 3});

    for (int h = 0; h < wh4.h_order; ++h) CHECK(covalg::delta_HN(wh4.action, fiber, h) == 1.0);

    const covalg::FiniteGroup h2 = covalg::make_cyclic(2);
    const covalg::FiniteGroup k3 = covalg::make_cyclic(3);
    const covalg::Action trivial = covalg::trivial_action(h2, k3);
    CHECK(covalg::delta_HN(trivial, covalg::make_subgroup(k3, {0, 1, 2}), 1) == 1.0);

    CHECK(throws_with_prefix([&] { covalg::delta_HN(wh4.action, covalg::make_subgroup(k, {0, 4, 8, 12}), 1); },
                             "invalid-parameter"));

    const covalg::SubgroupHandle z = covalg::center(wh4.group);
    for (int x = 0; x < wh4.group.order; ++x) CHECK(covalg::sigma_N(wh4.group, z, x) == 1.0);
}

TEST_CASE("K embeds as a normal subgroup") {
    const covalg::SemidirectGroup wh5 = covalg::make_finite_heisenberg(5);
    std::vector<int> embedded(wh5.k_order);
    for (int i = 0; i < wh5.k_order; ++i) embedded[i] = wh5.encode(0, i);
    const covalg::SubgroupHandle k_inside = covalg::make_subgroup(wh5.group, embedded);
    CHECK(covalg::is_normal(wh5.group, k_inside));
}
