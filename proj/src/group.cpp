#include "covalg/group.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <stdexcept>

#include "covalg/parallel.hpp"
#include "covalg/rand.hpp"

namespace covalg {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

int FiniteGroup::element_order(int a) const {
    int k = 1;
    int cur = a;
    while (cur != identity) {
        cur = op(cur, a);
        ++k;
        if (k > order) fail("invalid-parameter: element order exceeds group order (corrupt table)");
    }
    return k;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < order; ++a)
        for (int b = a + 1; b < order; ++b)
            if (op(a, b) != op(b, a)) return false;
    return true;
}

void FiniteGroup::validate() const {
    const std::size_t n = static_cast<std::size_t>(order);
    if (order <= 0) fail("invalid-parameter: group order must be positive");
    if (op_table.size() != n * n || inv_table.size() != n || modular.size() != n)
        fail("invalid-parameter: table sizes do not match group order");
    for (int x : op_table)
        if (x < 0 || x >= order) fail("invalid-parameter: op table entry out of range");

    for (int x = 0; x < order; ++x) {
        if (op(identity, x) != x || op(x, identity) != x)
            fail("invalid-parameter: identity is not two-sided");
        const int y = inv(x);
        if (y < 0 || y >= order || op(x, y) != identity || op(y, x) != identity)
            fail("invalid-parameter: inverse is not two-sided");
        if (modular[x] != 1.0)
            fail("invalid-parameter: finite groups are unimodular; modular must be 1");
    }

    // Latin square: each row and column is a permutation of the index set.
    std::vector<char> seen(n);
    for (int a = 0; a < order; ++a) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int b = 0; b < order; ++b) seen[op(a, b)] = 1;
        if (std::find(seen.begin(), seen.end(), 0) != seen.end())
            fail("invalid-parameter: op row is not a permutation");
        std::fill(seen.begin(), seen.end(), 0);
        for (int b = 0; b < order; ++b) seen[op(b, a)] = 1;
        if (std::find(seen.begin(), seen.end(), 0) != seen.end())
            fail("invalid-parameter: op column is not a permutation");
    }

    // Associativity: exhaustive at small scale, sampled above.
    if (order <= 512) {
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b) {
                const int ab = op(a, b);
                for (int c = 0; c < order; ++c)
                    if (op(ab, c) != op(a, op(b, c)))
                        fail("invalid-parameter: op is not associative");
            }
    } else {
        Rng rng(0x61737334u);  // fixed seed: validation must be deterministic
        for (int t = 0; t < 100000; ++t) {
            const int a = static_cast<int>(rng.next_below(order));
            const int b = static_cast<int>(rng.next_below(order));
            const int c = static_cast<int>(rng.next_below(order));
            if (op(op(a, b), c) != op(a, op(b, c)))
                fail("invalid-parameter: op is not associative");
        }
    }
}

FiniteGroup make_cyclic(int M) {
    if (M < 1) fail("invalid-parameter: cyclic order must be >= 1");
    FiniteGroup g;
    g.order = M;
    g.identity = 0;
    g.label = "Z" + std::to_string(M);
    g.op_table.resize(static_cast<std::size_t>(M) * M);
    g.inv_table.resize(M);
    g.modular.assign(M, 1.0);
    for (int a = 0; a < M; ++a) {
        g.inv_table[a] = (M - a) % M;
        for (int b = 0; b < M; ++b) g.op_table[static_cast<std::size_t>(a) * M + b] = (a + b) % M;
    }
    g.validate();
    return g;
}

FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B) {
    FiniteGroup g;
    g.order = A.order * B.order;
    g.identity = A.identity * B.order + B.identity;
    g.label = A.label + "x" + B.label;
    g.op_table.resize(static_cast<std::size_t>(g.order) * g.order);
    g.inv_table.resize(g.order);
    g.modular.assign(g.order, 1.0);
    for (int a1 = 0; a1 < A.order; ++a1)
        for (int b1 = 0; b1 < B.order; ++b1) {
            const int x = a1 * B.order + b1;
            g.inv_table[x] = A.inv(a1) * B.order + B.inv(b1);
            for (int a2 = 0; a2 < A.order; ++a2)
                for (int b2 = 0; b2 < B.order; ++b2) {
                    const int y = a2 * B.order + b2;
                    g.op_table[static_cast<std::size_t>(x) * g.order + y] =
                        A.op(a1, a2) * B.order + B.op(b1, b2);
                }
        }
    g.validate();
    return g;
}

bool SubgroupHandle::is_abelian() const {
    for (int a : members)
        for (int b : members)
            if (parent->op(a, b) != parent->op(b, a)) return false;
    return true;
}

SubgroupHandle make_subgroup(const FiniteGroup& parent, std::vector<int> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    SubgroupHandle s;
    s.parent = &parent;
    s.position.assign(parent.order, -1);
    for (std::size_t i = 0; i < members.size(); ++i) {
        const int m = members[i];
        if (m < 0 || m >= parent.order) fail("invalid-subgroup: member index out of range");
        s.position[m] = static_cast<int>(i);
    }
    s.members = std::move(members);
    if (!s.contains(parent.identity)) fail("invalid-subgroup: missing identity");
    for (int a : s.members) {
        if (!s.contains(parent.inv(a))) fail("invalid-subgroup: not closed under inverse");
        for (int b : s.members)
            if (!s.contains(parent.op(a, b))) fail("invalid-subgroup: not closed under op");
    }
    return s;
}

SubgroupHandle generated_subgroup(const FiniteGroup& parent, const std::vector<int>& generators) {
    std::vector<char> in_set(parent.order, 0);
    std::queue<int> frontier;
    auto push = [&](int x) {
        if (!in_set[x]) {
            in_set[x] = 1;
            frontier.push(x);
        }
    };
    push(parent.identity);
    for (int g : generators) {
        if (g < 0 || g >= parent.order) fail("invalid-parameter: generator index out of range");
        push(g);
        push(parent.inv(g));
    }
    while (!frontier.empty()) {
        const int x = frontier.front();
        frontier.pop();
        for (int y = 0; y < parent.order; ++y)
            if (in_set[y]) {
                push(parent.op(x, y));
                push(parent.op(y, x));
            }
    }
    std::vector<int> members;
    for (int x = 0; x < parent.order; ++x)
        if (in_set[x]) members.push_back(x);
    return make_subgroup(parent, std::move(members));
}

SubgroupHandle center(const FiniteGroup& group) {
    std::vector<int> members;
    for (int z = 0; z < group.order; ++z) {
        bool central = true;
        for (int x = 0; x < group.order && central; ++x) central = group.op(z, x) == group.op(x, z);
        if (central) members.push_back(z);
    }
    return make_subgroup(group, std::move(members));
}

bool is_normal(const FiniteGroup& group, const SubgroupHandle& subgroup) {
    if (subgroup.parent != &group) fail("invalid-parameter: subgroup belongs to a different group");
    for (int x = 0; x < group.order; ++x) {
        const int xi = group.inv(x);
        for (int s : subgroup.members)
            if (!subgroup.contains(group.op(group.op(x, s), xi))) return false;
    }
    return true;
}

QuotientStructure build_quotient(const FiniteGroup& group, const SubgroupHandle& normal_subgroup) {
    if (!is_normal(group, normal_subgroup)) fail("not-normal: quotient requires a normal subgroup");
    QuotientStructure q;
    q.parent = &group;
    q.normal_subgroup = normal_subgroup;
    q.coset_of.assign(group.order, -1);
    for (int x = 0; x < group.order; ++x) {
        if (q.coset_of[x] >= 0) continue;
        const int c = static_cast<int>(q.transversal.size());
        q.transversal.push_back(x);  // minimal index: elements scanned ascending
        for (int s : normal_subgroup.members) q.coset_of[group.op(x, s)] = c;
        if (q.coset_of[x] != c) fail("not-normal: coset scan failed (identity not in subgroup?)");
    }
    q.coset_count = static_cast<int>(q.transversal.size());
    if (q.coset_count * normal_subgroup.size() != group.order)
        fail("not-normal: cosets do not partition the group");
    q.rep_inv.resize(q.coset_count);
    for (int c = 0; c < q.coset_count; ++c) q.rep_inv[c] = group.inv(q.transversal[c]);
    return q;
}

std::vector<complex_t> group_convolve(const FiniteGroup& group, const std::vector<complex_t>& f,
                                      const std::vector<complex_t>& g) {
    const std::size_t n = static_cast<std::size_t>(group.order);
    if (f.size() != n || g.size() != n) fail("invalid-parameter: array length must equal group order");
    std::vector<complex_t> out(n);
    parallel_for(n, [&](std::size_t x) {
        complex_t acc{0.0, 0.0};
        for (int y = 0; y < group.order; ++y)
            acc += f[y] * g[group.op(group.inv(y), static_cast<int>(x))];
        out[x] = acc;
    });
    return out;
}

std::vector<complex_t> group_involve(const FiniteGroup& group, const std::vector<complex_t>& f) {
    const std::size_t n = static_cast<std::size_t>(group.order);
    if (f.size() != n) fail("invalid-parameter: array length must equal group order");
    std::vector<complex_t> out(n);
    for (int x = 0; x < group.order; ++x) {
        const int y = group.inv(x);
        out[x] = group.modular[y] * std::conj(f[y]);
    }
    return out;
}

std::vector<complex_t> periodize_TN(const QuotientStructure& quotient, const std::vector<complex_t>& f) {
    const FiniteGroup& group = *quotient.parent;
    if (f.size() != static_cast<std::size_t>(group.order))
        fail("invalid-parameter: array length must equal group order");
    std::vector<complex_t> out(quotient.coset_count);
    for (int c = 0; c < quotient.coset_count; ++c) {
        complex_t acc{0.0, 0.0};
        const int rep = quotient.transversal[c];
        for (int s : quotient.normal_subgroup.members) acc += f[group.op(rep, s)];
        out[c] = acc;
    }
    // Representative independence, asserted on one rotating coset: the fiber
    // sum from any other member of the coset reorders the same terms.
    if (quotient.coset_count > 0) {
        const int c = static_cast<int>(f.size()) % quotient.coset_count;
        const int rep = quotient.transversal[c];
        const int other = group.op(rep, quotient.normal_subgroup.members.back());
        complex_t acc{0.0, 0.0};
        for (int s : quotient.normal_subgroup.members) acc += f[group.op(other, s)];
        if (std::abs(acc - out[c]) > 1e-9 * (1.0 + std::abs(out[c])))
            fail("invalid-parameter: fiber sum depends on coset representative (subgroup not normal?)");
    }
    return out;
}

std::vector<complex_t> periodize_TN(const FiniteGroup& group, const SubgroupHandle& normal_subgroup,
                                    const std::vector<complex_t>& f) {
    return periodize_TN(build_quotient(group, normal_subgroup), f);
}

double weil_residual(const FiniteGroup& group, const SubgroupHandle& normal_subgroup,
                     const std::vector<complex_t>& f) {
    const auto per = periodize_TN(group, normal_subgroup, f);
    complex_t lhs{0.0, 0.0};
    for (const auto& v : per) lhs += v;
    complex_t rhs{0.0, 0.0};
    for (const auto& v : f) rhs += v;
    return std::abs(lhs - rhs);
}

double lp_norm(const std::vector<complex_t>& values, double p) {
    if (p < 1.0) fail("invalid-parameter: p must be >= 1");
    double acc = 0.0;
    for (const auto& v : values) acc += std::pow(std::abs(v), p);
    return std::pow(acc, 1.0 / p);
}

}  // namespace covalg
