#include "covalg/semidirect.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace covalg {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

void Action::validate() const {
    if (static_cast<int>(table.size()) != H.order) fail("invalid-action: one permutation per h required");
    for (const auto& perm : table) {
        if (static_cast<int>(perm.size()) != K.order) fail("invalid-action: permutation length mismatch");
        std::vector<char> seen(K.order, 0);
        for (int image : perm) {
            if (image < 0 || image >= K.order || seen[image]) fail("invalid-action: theta_h is not a bijection");
            seen[image] = 1;
        }
    }
    for (int k = 0; k < K.order; ++k)
        if (table[H.identity][k] != k) fail("invalid-action: theta at the identity of H is not the identity map");
    for (int h1 = 0; h1 < H.order; ++h1)
        for (int h2 = 0; h2 < H.order; ++h2) {
            const int h12 = H.op(h1, h2);
            for (int k = 0; k < K.order; ++k)
                if (table[h12][k] != table[h1][table[h2][k]])
                    fail("invalid-action: theta is not a homomorphism from H");
        }
    for (int h = 0; h < H.order; ++h)
        for (int a = 0; a < K.order; ++a)
            for (int b = 0; b < K.order; ++b)
                if (table[h][K.op(a, b)] != K.op(table[h][a], table[h][b]))
                    fail("invalid-action: theta_h is not an automorphism of K");
}

Action trivial_action(const FiniteGroup& H, const FiniteGroup& K) {
    Action a;
    a.H = H;
    a.K = K;
    a.table.assign(H.order, std::vector<int>(K.order));
    for (auto& perm : a.table)
        for (int k = 0; k < K.order; ++k) perm[k] = k;
    return a;
}

SemidirectGroup semidirect(const FiniteGroup& H, const FiniteGroup& K, const Action& action) {
    action.validate();
    if (action.H.order != H.order || action.K.order != K.order)
        fail("invalid-action: action built for different factor groups");

    SemidirectGroup s;
    s.action = action;
    s.h_order = H.order;
    s.k_order = K.order;

    FiniteGroup& g = s.group;
    g.order = H.order * K.order;
    g.identity = s.encode(H.identity, K.identity);
    g.label = H.label + "|x" + K.label;
    g.op_table.resize(static_cast<std::size_t>(g.order) * g.order);
    g.inv_table.resize(g.order);
    g.modular.assign(g.order, 1.0);

    for (int h1 = 0; h1 < H.order; ++h1)
        for (int k1 = 0; k1 < K.order; ++k1) {
            const int x = s.encode(h1, k1);
            const int h1i = H.inv(h1);
            g.inv_table[x] = s.encode(h1i, action.apply(h1i, K.inv(k1)));
            for (int h2 = 0; h2 < H.order; ++h2)
                for (int k2 = 0; k2 < K.order; ++k2)
                    g.op_table[static_cast<std::size_t>(x) * g.order + s.encode(h2, k2)] =
                        s.encode(H.op(h1, h2), K.op(k1, action.apply(h1, k2)));
        }
    g.validate();
    return s;
}

bool is_theta_invariant(const SubgroupHandle& subgroup_of_K, const Action& action) {
    for (const auto& perm : action.table)
        for (int s : subgroup_of_K.members)
            if (!subgroup_of_K.contains(perm[s])) return false;
    return true;
}

double delta_HN(const Action& action, const SubgroupHandle& subgroup_of_K, int h) {
    if (h < 0 || h >= action.H.order) fail("invalid-parameter: h index out of range");
    if (!is_theta_invariant(subgroup_of_K, action))
        fail("invalid-parameter: subgroup is not theta-invariant");
    // theta_h restricted to the subgroup is injective into it, hence a
    // bijection of a finite set: counting measure is transported 1:1.
    std::vector<char> seen(subgroup_of_K.size(), 0);
    for (int s : subgroup_of_K.members) {
        const int slot = subgroup_of_K.position[action.apply(h, s)];
        if (slot < 0 || seen[slot]) fail("invalid-parameter: theta_h does not permute the subgroup");
        seen[slot] = 1;
    }
    return 1.0;
}

double sigma_N(const FiniteGroup& group, const SubgroupHandle& normal_subgroup, int x) {
    if (x < 0 || x >= group.order) fail("invalid-parameter: element index out of range");
    const int xi = group.inv(x);
    std::vector<char> seen(normal_subgroup.size(), 0);
    for (int s : normal_subgroup.members) {
        const int image = group.op(group.op(xi, s), x);
        const int slot = normal_subgroup.position[image];
        if (slot < 0) fail("not-normal: conjugation leaves the subgroup");
        if (seen[slot]) fail("not-normal: conjugation is not a bijection of the subgroup");
        seen[slot] = 1;
    }
    return 1.0;
}

SemidirectGroup make_finite_heisenberg(int M) {
    if (M < 2) fail("invalid-parameter: finite Heisenberg needs M >= 2");
    const FiniteGroup h = make_cyclic(M);
    const FiniteGroup zm = make_cyclic(M);
    const FiniteGroup k = direct_product(zm, zm);  // index of (w, z) is w*M + z

    Action action;
    action.H = h;
    action.K = k;
    action.table.assign(M, std::vector<int>(k.order));
    for (int x = 0; x < M; ++x)
        for (int w = 0; w < M; ++w)
            for (int z = 0; z < M; ++z) action.table[x][w * M + z] = w * M + (z + x * w) % M;

    SemidirectGroup s = semidirect(h, k, action);
    s.group.label = "H(Z" + std::to_string(M) + ")";
    return s;
}

}  // namespace covalg
