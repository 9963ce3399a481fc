#include <algorithm>
#include <functional>
#include <set>

#include "qlg/error.hpp"
#include "qlg/qchar/qchar.hpp"

namespace qlg::qchar {

bool right_negative_closure_check(const QuiverData& q, const Monomial& m, int steps) {
    if (!m.is_right_negative()) throw DomainError("precondition violated: " + m.to_string() + " is not right-negative");
    if (steps <= 0) return true;
    int lo = m.exps().begin()->first.second, hi = lo;
    for (const auto& [key, e] : m.exps()) {
        lo = std::min(lo, key.second);
        hi = std::max(hi, key.second);
    }
    std::vector<Monomial> factors;
    for (int i = 1; i <= q.rank(); ++i)
        for (int r = lo - 2; r <= hi + 2; ++r) factors.push_back(Monomial::A(q, i, r, -1));
    // multisets as non-decreasing index sequences
    bool ok = true;
    std::function<void(std::size_t, int, const Monomial&)> walk = [&](std::size_t from, int depth, const Monomial& cur) {
        if (!ok) return;
        for (std::size_t f = from; f < factors.size() && ok; ++f) {
            Monomial next = cur * factors[f];
            if (!next.is_right_negative()) {
                ok = false;
                return;
            }
            if (depth + 1 < steps) walk(f, depth + 1, next);
        }
    };
    walk(0, 0, m);
    return ok;
}

namespace {

void check_tuples(const std::vector<KRTuple>& tuples) {
    for (const auto& t : tuples)
        if (t.l < 1) throw DomainError("KR tuples need l_r >= 1");
}

}  // namespace

bool tpkr_criterion(const std::vector<KRTuple>& tuples, int l, TpkrVariant variant) {
    check_tuples(tuples);
    for (const auto& t : tuples) {
        std::set<int> lhs, rhs;
        if (variant == TpkrVariant::B) {
            if (t.k > l) return false;
            for (int x = t.k; x <= t.k - 2 + 2 * t.l; x += 2) lhs.insert(x);
            for (int x = t.k; x <= l; x += 2) rhs.insert(x);
        } else {
            if (t.k < l) return false;
            for (int x = t.k + 2 - 2 * t.l; x <= t.k; x += 2) lhs.insert(x);
            for (int x = t.k; x >= l; x -= 2) rhs.insert(x);
        }
        if (lhs != rhs) return false;
    }
    return true;
}

SocleCertificate socle_bound_check(const QuiverData& q, const std::vector<KRTuple>& tuples, int l, TpkrVariant variant) {
    check_tuples(tuples);
    if (variant == TpkrVariant::A) {
        // Dualize: Y_{i,r} -> Y_{i*,h-2-r} turns condition (a) into (b).
        int n = q.a_rank();
        if (n == 0) throw DomainError("variant (a) certificates are implemented for type A only");
        const int h = n + 1;
        std::vector<KRTuple> dual;
        for (const auto& t : tuples) dual.push_back(KRTuple{n + 1 - t.i, h - 2 - t.k, t.l});
        return socle_bound_check(q, dual, h - 2 - l, TpkrVariant::B);
    }
    SocleCertificate cert;
    cert.socle_rows_ok = true;
    for (const auto& t : tuples) {
        int row = t.k - 1 + 2 * t.l;
        cert.socle.add(t.i, row, 1);
        if (row != l && row != l + 1) cert.socle_rows_ok = false;
        for (int x = t.k; x <= t.k + 2 * t.l - 2; x += 2) cert.m = cert.m * Monomial::Y(t.i, x);
    }
    cert.right_negative_ok = true;
    cert.closure_ok = true;
    for (int i = 1; i <= q.rank(); ++i)
        for (int s : {l, l + 1}) {
            Monomial w = cert.m * Monomial::A(q, i, s, -1);
            cert.witnesses.push_back(w);
            if (!w.is_right_negative()) {
                cert.right_negative_ok = false;
                cert.closure_ok = false;
            } else if (cert.closure_ok && !right_negative_closure_check(q, w, 1)) {
                cert.closure_ok = false;
            }
        }
    return cert;
}

HJReport hj_limit(const QuiverData& q, int i, int k, int l_max, int cap, long step_cap) {
    if (q.rank() > 2) throw DomainError("hj_limit supports rank <= 2");
    if (l_max < 2) throw DomainError("hj_limit needs l_max >= 2");
    if (cap < 0) throw DomainError("negative degree cap");
    HJReport rep;
    rep.l_max = l_max;
    rep.cap = cap;
    std::vector<std::map<Monomial, int>> degrees;
    for (int l = 1; l <= l_max; ++l) {
        QChar ch = fm_qcharacter(q, KRSpec{i, 1 + k - l, l}, step_cap);
        if (ch.incomplete) throw DomainError("step cap exhausted for l = " + std::to_string(l));
        std::map<Monomial, long> trunc;
        std::map<Monomial, int> deg;
        for (const auto& [ratio, mult] : ch.normalized()) {
            ConeSolution s = cone_solve(q, ratio);
            if (!s.in_cone) throw DomainError("normalized term outside the A^-1 cone: " + ratio.to_string());
            if (s.degree() <= cap) {
                trunc[ratio] = mult;
                deg[ratio] = s.degree();
            }
        }
        rep.truncations.push_back(std::move(trunc));
        degrees.push_back(std::move(deg));
    }
    auto restrict = [&](int idx, int d) {
        std::map<Monomial, long> r;
        for (const auto& [m, mult] : rep.truncations[idx])
            if (degrees[idx].at(m) <= d) r[m] = mult;
        return r;
    };
    for (int idx = 0; idx + 1 < l_max; ++idx) {
        int agree = -1;
        for (int d = 0; d <= cap; ++d) {
            if (restrict(idx, d) != restrict(idx + 1, d)) break;
            agree = d;
        }
        rep.agreement.push_back(agree);
    }
    rep.stable_degree = rep.agreement.back();
    rep.stabilized = restrict(l_max - 1, rep.stable_degree);
    return rep;
}

}  // namespace qlg::qchar
