#include <algorithm>

#include "qlg/error.hpp"
#include "qlg/qchar/qchar.hpp"

namespace qlg::qchar {

Monomial Monomial::Y(int i, int k, int power) {
    Monomial m;
    if (power != 0) m.e_[{i, k}] = power;
    return m;
}

Monomial Monomial::A(const QuiverData& q, int i, int k, int power) {
    if (i < 1 || i > q.rank()) throw DomainError("vertex " + std::to_string(i) + " not in the quiver");
    if (q.c(i, i) != 2) throw DomainError("A_{i,k} needs c_ii = 2");
    Monomial m = Y(i, k + 1, power) * Y(i, k - 1, power);
    for (int j = 1; j <= q.rank(); ++j)
        if (j != i && q.c(i, j) != 0) m = m * Y(j, k, q.c(i, j) * power);
    return m;
}

Monomial Monomial::from_dimvec(const DimVec& x) {
    Monomial m;
    for (const auto& [key, n] : x.entries()) m.e_[key] = static_cast<int>(n);
    return m;
}

int Monomial::exp(int i, int k) const {
    auto it = e_.find({i, k});
    return it == e_.end() ? 0 : it->second;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r = *this;
    for (const auto& [key, n] : o.e_) {
        int& slot = r.e_[key];
        slot += n;
        if (slot == 0) r.e_.erase(key);
    }
    return r;
}

Monomial Monomial::inverse() const {
    Monomial r = *this;
    for (auto& [key, n] : r.e_) n = -n;
    return r;
}

bool Monomial::is_dominant() const {
    for (const auto& [key, n] : e_)
        if (n < 0) return false;
    return true;
}

bool Monomial::is_i_dominant(int i) const {
    for (const auto& [key, n] : e_)
        if (key.first == i && n < 0) return false;
    return true;
}

std::optional<int> Monomial::top_row() const {
    if (e_.empty()) return std::nullopt;
    int top = e_.begin()->first.second;
    for (const auto& [key, n] : e_) top = std::max(top, key.second);
    return top;
}

bool Monomial::is_right_negative() const {
    auto top = top_row();
    if (!top) return false;
    for (const auto& [key, n] : e_)
        if (key.second == *top && n > 0) return false;
    return true;
}

DimVec Monomial::to_dimvec() const {
    DimVec d(true);
    for (const auto& [key, n] : e_) d.set(key.first, key.second, n);
    return d;
}

std::string Monomial::to_string() const {
    if (e_.empty()) return "1";
    std::string s;
    for (const auto& [key, n] : e_) {
        if (!s.empty()) s += " ";
        s += "Y" + std::to_string(key.first) + "," + std::to_string(key.second);
        if (n != 1) s += "^" + std::to_string(n);
    }
    return s;
}

int ConeSolution::degree() const {
    int d = 0;
    for (const auto& [key, v] : n) d += v;
    return d;
}

ConeSolution cone_solve(const QuiverData& q, const Monomial& ratio) {
    ConeSolution sol;
    if (ratio.is_one()) {
        sol.in_lattice = sol.in_cone = true;
        return sol;
    }
    int kmin = ratio.exps().begin()->first.second, kmax = kmin;
    for (const auto& [key, e] : ratio.exps()) {
        kmin = std::min(kmin, key.second);
        kmax = std::max(kmax, key.second);
    }
    const int n = q.rank();
    auto get = [&](int i, int r) {
        auto it = sol.n.find({i, r});
        return it == sol.n.end() ? 0 : it->second;
    };
    // Row k of the ratio fixes n_{.,k-1} once rows above are known.
    for (int k = kmax; k >= kmin + 2; --k)
        for (int i = 1; i <= n; ++i) {
            int val = -ratio.exp(i, k) - get(i, k + 1);
            for (int j = 1; j <= n; ++j)
                if (j != i) val -= q.c(j, i) * get(j, k);
            if (val != 0) sol.n[{i, k - 1}] = val;
        }
    Monomial rebuilt;
    for (const auto& [key, v] : sol.n) rebuilt = rebuilt * Monomial::A(q, key.first, key.second, -v);
    sol.in_lattice = rebuilt == ratio;
    sol.in_cone = sol.in_lattice && std::all_of(sol.n.begin(), sol.n.end(), [](const auto& kv) { return kv.second >= 0; });
    return sol;
}

void QChar::add(const Monomial& m, long mult) {
    if (mult == 0) return;
    long& slot = terms[m];
    slot += mult;
    if (slot == 0) terms.erase(m);
}

long QChar::dim() const {
    long d = 0;
    for (const auto& [m, k] : terms) d += k;
    return d;
}

long QChar::dominant_count() const {
    long c = 0;
    for (const auto& [m, k] : terms)
        if (m.is_dominant()) ++c;
    return c;
}

std::map<Monomial, long> QChar::normalized() const {
    if (!highest) throw DomainError("normalization needs a highest monomial");
    Monomial inv = highest->inverse();
    std::map<Monomial, long> out;
    for (const auto& [m, k] : terms) out[m * inv] += k;
    return out;
}

QChar QChar::operator*(const QChar& o) const {
    QChar r;
    for (const auto& [a, x] : terms)
        for (const auto& [b, y] : o.terms) r.add(a * b, x * y);
    if (highest && o.highest) r.highest = *highest * *o.highest;
    r.incomplete = incomplete || o.incomplete;
    return r;
}

bool unique_dominant(const QChar& c) { return c.dominant_count() == 1; }

DimVec kr_dimvec(int i, int k, int l) {
    if (l <= 0) throw DomainError("KR modules need l >= 1");
    DimVec d(true);
    for (int j = 0; j < l; ++j) d.add(i, k - l + 1 + 2 * j, 1);
    return d;
}

Monomial kr_monomial(int i, int k, int l) { return Monomial::from_dimvec(kr_dimvec(i, k, l)); }

std::vector<alg::RatFunc> drinfeld_lweight(const std::vector<std::vector<int>>& roots) {
    using alg::LaurentPoly;
    using alg::RatFunc;
    std::vector<RatFunc> out;
    const LaurentPoly one(1);
    for (const auto& r : roots) {
        // P(1/(zeta u)) / P(zeta/u) factor by factor
        RatFunc psi(LaurentPoly::var(alg::Zeta, static_cast<int>(r.size())));
        for (int k : r) {
            psi *= RatFunc(one - LaurentPoly::monomial(alg::var_exps(alg::Zeta, k - 1) + alg::var_exps(alg::U, -1)));
            psi /= RatFunc(one - LaurentPoly::monomial(alg::var_exps(alg::Zeta, k + 1) + alg::var_exps(alg::U, -1)));
        }
        out.push_back(psi);
    }
    return out;
}

Monomial bar_involution(const QuiverData& q, const Monomial& m) {
    int n = q.a_rank();
    if (n == 0) throw DomainError("the involution i -> i* is implemented for type A only");
    const int h = n + 1;
    Monomial r;
    for (const auto& [key, e] : m.exps()) r = r * Monomial::Y(n + 1 - key.first, h - 2 - key.second, e);
    return r;
}

nlohmann::ordered_json to_json(const Monomial& m) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [key, e] : m.exps()) j[std::to_string(key.first) + "," + std::to_string(key.second)] = e;
    return j;
}

nlohmann::ordered_json to_json(const QChar& c) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [m, k] : c.terms) arr.push_back({{"monomial", to_json(m)}, {"mult", k}});
    return arr;
}

}  // namespace qlg::qchar
