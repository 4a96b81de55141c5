#include "covalg/character.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace covalg {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::vector<std::int64_t> sort_key(const Character& c) { return c.num; }

}  // namespace

bool CharacterSet::contains(const Character& candidate) const {
    for (const auto& c : items)
        if (c.same_values(candidate)) return true;
    return false;
}

bool same_character_set(const CharacterSet& a, const CharacterSet& b) {
    if (a.items.size() != b.items.size()) return false;
    if (a.domain.members != b.domain.members) return false;
    std::vector<std::vector<std::int64_t>> ka, kb;
    for (const auto& c : a.items) ka.push_back(sort_key(c));
    for (const auto& c : b.items) kb.push_back(sort_key(c));
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    return ka == kb;
}

CharacterSet enumerate_characters(const SubgroupHandle& subgroup) {
    if (!subgroup.is_abelian()) fail("non-abelian-domain: characters require an abelian subgroup");
    const FiniteGroup& g = *subgroup.parent;
    const int n = subgroup.size();

    // Independent generating set, greedy by maximal element order.
    std::vector<char> span(g.order, 0);
    span[g.identity] = 1;
    int span_size = 1;
    std::vector<int> basis;
    std::vector<int> basis_order;
    while (span_size < n) {
        int best = -1;
        int best_order = 0;
        for (int m : subgroup.members) {
            if (span[m]) continue;
            // Candidate if its cyclic span meets the current span only at
            // the identity; compute the element order in the same walk.
            int order = 1;
            bool independent = true;
            for (int cur = m; cur != g.identity; cur = g.op(cur, m)) {
                if (span[cur]) {
                    independent = false;
                    break;
                }
                ++order;
            }
            if (independent && order > best_order) {
                best_order = order;
                best = m;
            }
        }
        if (best < 0) fail("invalid-subgroup: generating-set extraction stalled (corrupt table?)");
        basis.push_back(best);
        basis_order.push_back(best_order);
        // Span grows by the whole cyclic factor of the new generator.
        std::vector<int> old_span;
        for (int x = 0; x < g.order; ++x)
            if (span[x]) old_span.push_back(x);
        int power = best;
        for (int j = 1; j < best_order; ++j) {
            for (int s : old_span) {
                const int prod = g.op(s, power);
                if (!span[prod]) {
                    span[prod] = 1;
                    ++span_size;
                }
            }
            power = g.op(power, best);
        }
    }
    std::int64_t product = 1;
    for (int d : basis_order) product *= d;
    if (product != n) fail("invalid-subgroup: generating set does not factor the subgroup order");

    const int rank = static_cast<int>(basis.size());

    // Exponent coordinates of every element against the basis, walking
    // all mixed-radix tuples once.
    std::vector<std::vector<int>> exponents(g.order);
    {
        std::vector<int> digits(rank, 0);
        for (int t = 0; t < n; ++t) {
            int e = g.identity;
            for (int i = 0; i < rank; ++i)
                for (int j = 0; j < digits[i]; ++j) e = g.op(e, basis[i]);
            exponents[e] = digits;
            for (int i = rank - 1; i >= 0; --i) {
                if (++digits[i] < basis_order[i]) break;
                digits[i] = 0;
            }
        }
    }

    CharacterSet out;
    out.domain = subgroup;
    out.items.reserve(n);
    std::vector<int> dual(rank, 0);
    for (int t = 0; t < n; ++t) {
        Character c;
        c.domain = subgroup;
        c.den = n;
        c.num.resize(n);
        for (int slot = 0; slot < n; ++slot) {
            const auto& exps = exponents[subgroup.members[slot]];
            std::int64_t acc = 0;
            for (int i = 0; i < rank; ++i)
                acc += static_cast<std::int64_t>(dual[i]) * exps[i] * (n / basis_order[i]);
            c.num[slot] = mod_floor(acc, n);
        }
        out.items.push_back(std::move(c));
        for (int i = rank - 1; i >= 0; --i) {
            if (++dual[i] < basis_order[i]) break;
            dual[i] = 0;
        }
    }
    return out;
}

Character conjugate_character(const FiniteGroup& group, const Character& character, int x) {
    if (x < 0 || x >= group.order) fail("invalid-parameter: element index out of range");
    const int xi = group.inv(x);
    Character out;
    out.domain = character.domain;
    out.den = character.den;
    out.num.resize(character.num.size());
    for (int slot = 0; slot < character.domain.size(); ++slot) {
        const int s = character.domain.members[slot];
        const int conjugated = group.op(group.op(xi, s), x);
        if (!character.domain.contains(conjugated))
            fail("not-normal: conjugation leaves the character's domain");
        out.num[slot] = character.num[character.domain.position[conjugated]];
    }
    return out;
}

namespace {

CharacterSet filter_invariant(const FiniteGroup& group, const SubgroupHandle& normal_subgroup,
                              const std::vector<int>& conjugators) {
    CharacterSet all = enumerate_characters(normal_subgroup);
    CharacterSet out;
    out.domain = normal_subgroup;
    for (auto& c : all.items) {
        bool invariant = true;
        for (int x : conjugators) {
            const Character conj = conjugate_character(group, c, x);
            if (!(conj.num == c.num)) {
                invariant = false;
                break;
            }
        }
        if (invariant) out.items.push_back(std::move(c));
    }
    return out;
}

}  // namespace

CharacterSet invariant_characters(const FiniteGroup& group, const SubgroupHandle& normal_subgroup) {
    std::vector<int> everyone(group.order);
    for (int x = 0; x < group.order; ++x) everyone[x] = x;
    return filter_invariant(group, normal_subgroup, everyone);
}

CharacterSet invariant_characters_via_generators(const FiniteGroup& group,
                                                 const SubgroupHandle& normal_subgroup,
                                                 const std::vector<int>& generators) {
    const SubgroupHandle span = generated_subgroup(group, generators);
    if (span.size() != group.order)
        fail("invalid-parameter: generators do not generate the whole group");
    return filter_invariant(group, normal_subgroup, generators);
}

SubgroupHandle embed_k_subgroup(const SemidirectGroup& product, const SubgroupHandle& subgroup_of_K) {
    std::vector<int> members;
    members.reserve(subgroup_of_K.members.size());
    const int h_id = product.action.H.identity;
    for (int k : subgroup_of_K.members) members.push_back(product.encode(h_id, k));
    return make_subgroup(product.group, std::move(members));
}

CharacterSet invariant_characters_semidirect(const SemidirectGroup& product,
                                             const SubgroupHandle& subgroup_of_K) {
    const FiniteGroup& K = product.action.K;
    if (subgroup_of_K.parent->order != K.order)
        fail("invalid-parameter: subgroup must live on the K factor");
    if (!is_theta_invariant(subgroup_of_K, product.action))
        fail("invalid-parameter: subgroup is not theta-invariant");
    // Normality of N in K, which the criterion presumes.
    for (int k = 0; k < K.order; ++k) {
        const int ki = K.inv(k);
        for (int s : subgroup_of_K.members)
            if (!subgroup_of_K.contains(K.op(K.op(ki, s), k)))
                fail("not-normal: subgroup is not normal in K");
    }

    const SubgroupHandle embedded = embed_k_subgroup(product, subgroup_of_K);
    CharacterSet all = enumerate_characters(embedded);
    CharacterSet out;
    out.domain = embedded;
    const int h_id = product.action.H.identity;
    for (auto& c : all.items) {
        bool invariant = true;
        for (int h = 0; h < product.h_order && invariant; ++h)
            for (int k = 0; k < product.k_order && invariant; ++k)
                for (int s : subgroup_of_K.members) {
                    const int conjugated = K.op(K.op(K.inv(k), s), k);
                    const int moved = product.action.apply(h, conjugated);
                    if (c.phase_num(product.encode(h_id, s)) != c.phase_num(product.encode(h_id, moved))) {
                        invariant = false;
                        break;
                    }
                }
        if (invariant) out.items.push_back(std::move(c));
    }
    return out;
}

}  // namespace covalg
