#include <algorithm>
#include <set>

#include "qlg/error.hpp"
#include "qlg/qchar/qchar.hpp"

namespace qlg::qchar {

namespace {

// q-character of the U_q(sl2^) simple module with dominant highest monomial
// prod_k Y_k^{a_k}, as a list of (A^{-1} index multiset, multiplicity)
// relative to the highest monomial. The points split into q-strings in
// general position; each string {a, a+2, ..., b} contributes
// 1 + A_{b+1}^-1 + A_{b+1}^-1 A_{b-1}^-1 + ... and the strings multiply.
std::map<std::vector<int>, long> sl2_character(const std::map<int, int>& points) {
    std::map<int, int> left = points;
    std::map<std::vector<int>, long> acc{{{}, 1}};
    while (!left.empty()) {
        int a = left.begin()->first;
        int b = a;
        while (left.count(b + 2)) b += 2;
        for (int x = a; x <= b; x += 2)
            if (--left[x] == 0) left.erase(x);
        std::vector<std::vector<int>> string_terms{{}};
        std::vector<int> cur;
        for (int top = b + 1; top >= a + 1; top -= 2) {
            cur.push_back(top);
            string_terms.push_back(cur);
        }
        std::map<std::vector<int>, long> next;
        for (const auto& [ms, mult] : acc)
            for (const auto& t : string_terms) {
                std::vector<int> merged = ms;
                merged.insert(merged.end(), t.begin(), t.end());
                std::sort(merged.begin(), merged.end());
                next[merged] += mult;
            }
        acc = std::move(next);
    }
    return acc;
}

struct Node {
    long s = 0;
    std::vector<long> c;  // colors indexed by vertex 1..n (slot 0 unused)
};

}  // namespace

QChar fm_from_monomial(const QuiverData& q, const Monomial& top, long step_cap) {
    if (!top.is_dominant()) throw DomainError("FM algorithm needs a dominant highest monomial");
    const int n = q.rank();
    for (int i = 1; i <= n; ++i)
        if (q.c(i, i) != 2) throw DomainError("FM algorithm needs a Dynkin quiver");
    std::map<Monomial, Node> nodes;
    std::map<int, std::set<Monomial>> levels;
    nodes[top] = Node{1, std::vector<long>(n + 1, 0)};
    levels[0].insert(top);

    QChar out;
    out.highest = top;
    long steps = 0;
    for (auto lit = levels.begin(); lit != levels.end(); ++lit) {
        const int deg = lit->first;
        for (const Monomial& m : lit->second) {
            if (++steps > step_cap) {
                out.incomplete = true;
                goto done;
            }
            Node node = nodes.at(m);
            if (deg > 0 && m.is_dominant())
                throw DomainError("FM algorithm met a second dominant monomial " + m.to_string());
            for (int i = 1; i <= n; ++i) {
                const long free = node.s - node.c[i];
                if (free <= 0) continue;
                if (!m.is_i_dominant(i))
                    throw DomainError("FM algorithm fails at " + m.to_string() + " in direction " + std::to_string(i));
                std::map<int, int> points;
                for (const auto& [key, e] : m.exps())
                    if (key.first == i && e > 0) points[key.second] = e;
                for (const auto& [ms, mult] : sl2_character(points)) {
                    if (ms.empty()) continue;
                    Monomial m2 = m;
                    for (int r : ms) m2 = m2 * Monomial::A(q, i, r, -1);
                    auto [it, fresh] = nodes.try_emplace(m2, Node{0, std::vector<long>(n + 1, 0)});
                    it->second.c[i] += free * mult;
                    it->second.s = std::max(it->second.s, it->second.c[i]);
                    if (fresh) levels[deg + static_cast<int>(ms.size())].insert(m2);
                }
                nodes.at(m).c[i] = node.s;
            }
        }
    }
done:
    for (const auto& [m, node] : nodes) out.add(m, node.s);
    return out;
}

QChar fm_qcharacter(const QuiverData& q, const KRSpec& spec, long step_cap) {
    if (spec.l <= 0) throw DomainError("KR modules need l >= 1");
    if (spec.i < 1 || spec.i > q.rank()) throw DomainError("vertex out of range");
    return fm_from_monomial(q, kr_monomial(spec.i, spec.k, spec.l), step_cap);
}

}  // namespace qlg::qchar
