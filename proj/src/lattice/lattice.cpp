#include "qlg/lattice/lattice.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <numeric>
#include <sstream>

#include "qlg/alg/series_ops.hpp"
#include "qlg/error.hpp"

namespace qlg::lattice {

using alg::Direction;
using alg::Exps;
using alg::USeries;
using alg::VirtualCharacter;

namespace {

LaurentPoly qpow(int k) { return LaurentPoly::var(alg::Q, k); }
LaurentPoly chi(int s) { return LaurentPoly::var(alg::chi(s)); }  // s is 1-based
RatFunc u_var() { return RatFunc::var(alg::U); }
RatFunc linear(const LaurentPoly& c) { return RatFunc(LaurentPoly::var(alg::U) - c); }

Exps chi_q(int s, int qexp) {
    Exps e;
    e[alg::chi(s)] = 1;
    e[alg::Q] = static_cast<int16_t>(qexp);
    return e;
}

LaurentPoly z_of(const Lambda& mu, int s0) { return chi(s0 + 1) * qpow(3 - 2 * mu[s0]); }

}  // namespace

int weight(const Lambda& l) { return std::accumulate(l.begin(), l.end(), 0); }

std::string to_string(const Lambda& l) {
    std::string s = "(";
    for (size_t i = 0; i < l.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(l[i]);
    }
    return s + ")";
}

Lambda parse_lambda(const std::string& text) {
    Lambda out;
    std::string t;
    for (char c : text)
        if (c != '(' && c != ')' && c != ' ') t += c;
    if (t.empty()) return out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(item, &pos);
        } catch (const std::exception&) {
            throw ParseError("bad tuple entry '" + item + "'");
        }
        if (pos != item.size() || v < 0) throw ParseError("bad tuple entry '" + item + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<Lambda> lambdas_of_weight(int w, int v) {
    if (w < 0 || v < 0) throw DomainError("negative framing or weight");
    std::vector<Lambda> out;
    if (w == 0) {
        if (v == 0) out.push_back({});
        return out;
    }
    Lambda cur(w, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == w - 1) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int a = left; a >= 0; --a) {
            cur[pos] = a;
            rec(pos + 1, left - a);
        }
    };
    rec(0, v);
    return out;
}

std::vector<Lambda> lambda_basis(int w, int cap) {
    std::vector<Lambda> out;
    for (int v = 0; v <= cap; ++v) {
        auto part = lambdas_of_weight(w, v);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::optional<int> cover_index(const Lambda& lambda, const Lambda& mu) {
    if (lambda.size() != mu.size()) return std::nullopt;
    std::optional<int> s0;
    for (size_t s = 0; s < lambda.size(); ++s) {
        int d = mu[s] - lambda[s];
        if (d == 0) continue;
        if (d != 1 || s0) return std::nullopt;
        s0 = static_cast<int>(s);
    }
    return s0;
}

std::vector<Lambda> covers(const Lambda& lambda) {
    std::vector<Lambda> out;
    for (size_t s = 0; s < lambda.size(); ++s) {
        Lambda mu = lambda;
        ++mu[s];
        out.push_back(mu);
    }
    return out;
}

std::vector<Lambda> cocovers(const Lambda& lambda) {
    std::vector<Lambda> out;
    for (size_t s = 0; s < lambda.size(); ++s) {
        if (lambda[s] == 0) continue;
        Lambda nu = lambda;
        --nu[s];
        out.push_back(nu);
    }
    return out;
}

VirtualCharacter taut_V(const Lambda& lambda) {
    VirtualCharacter v;
    for (size_t s = 0; s < lambda.size(); ++s)
        for (int r = 1; r <= lambda[s]; ++r) v.add(chi_q(static_cast<int>(s) + 1, 3 - 2 * r), 1);
    return v;
}

VirtualCharacter taut_W(int w) {
    VirtualCharacter v;
    for (int s = 1; s <= w; ++s) v.add(chi_q(s, 0), 1);
    return v;
}

std::vector<LaurentPoly> taut_monomials(const Lambda& lambda) {
    std::vector<LaurentPoly> out;
    for (size_t s = 0; s < lambda.size(); ++s)
        for (int r = 1; r <= lambda[s]; ++r) out.push_back(chi(static_cast<int>(s) + 1) * qpow(3 - 2 * r));
    return out;
}

RatFunc coeff_A_minus(const Lambda& lambda, const Lambda& mu, int n, bool* adjacent) {
    auto s0 = cover_index(lambda, mu);
    if (adjacent) *adjacent = s0.has_value();
    if (!s0) return RatFunc();
    const LaurentPoly z = z_of(mu, *s0);
    // evaluate factor by factor at u = z
    RatFunc val(z.pow(n));
    const LaurentPoly qm2 = qpow(-2);
    for (const auto& zr : taut_monomials(lambda)) val *= RatFunc(z * qm2 - zr, z - zr);
    return val;
}

RatFunc coeff_A_plus(const Lambda& lambda, const Lambda& mu, int m, bool* adjacent) {
    auto s0 = cover_index(lambda, mu);
    if (adjacent) *adjacent = s0.has_value();
    if (!s0) return RatFunc();
    const int w = static_cast<int>(lambda.size());
    const LaurentPoly z = z_of(mu, *s0);
    RatFunc f = u_var().pow(m + w - 1);
    for (int s = 1; s <= w; ++s) f /= linear(chi(s) * qpow(1));
    for (const auto& zr : taut_monomials(lambda)) f *= linear(zr) / linear(zr * qpow(-2));
    RatFunc res = alg::residue(f, RatFunc(z));
    return res / RatFunc(LaurentPoly(1) - qpow(-2));
}

RatFunc phi_lambda(const Lambda& lambda) {
    const int w = static_cast<int>(lambda.size());
    RatFunc f = RatFunc(qpow(-2 * weight(lambda))) * u_var().pow(w);
    for (int s = 0; s < w; ++s) {
        const LaurentPoly c = chi(s + 1);
        f *= linear(c * qpow(3));
        f /= linear(c * qpow(1 - 2 * lambda[s]));
        f /= linear(c * qpow(3 - 2 * lambda[s]));
    }
    return f;
}

namespace {

// [u^k] of the u^-1 and u expansions of phi.
RatFunc phi_plus_coeff(const RatFunc& phi, int k) {
    if (k > 0) return RatFunc();
    return alg::expand(phi, Direction::PowersOfUInverse, k, k).coeff(k);
}
RatFunc phi_minus_coeff(const RatFunc& phi, int w, int k) {
    if (k < w) return RatFunc();
    return alg::expand(phi, Direction::PowersOfU, k, k).coeff(k);
}

}  // namespace

CommutatorResult commutator_check(int w, const Lambda& lambda, int m, int n) {
    if (static_cast<int>(lambda.size()) != w) throw DomainError("tuple length differs from w");
    CommutatorResult r;
    const RatFunc qq = RatFunc(qpow(1) - qpow(-1));
    // <lambda|A+_m A-_n|lambda> - <lambda|A-_n A+_m|lambda>
    RatFunc diag;
    for (const auto& nu : cocovers(lambda)) diag += coeff_A_plus(nu, lambda, m) * coeff_A_minus(nu, lambda, n);
    for (const auto& mu : covers(lambda)) diag -= coeff_A_minus(lambda, mu, n) * coeff_A_plus(lambda, mu, m);
    r.by_sum = qq * diag;

    const RatFunc phi = phi_lambda(lambda);
    const int k = -m - n;
    r.by_series = RatFunc(qpow(1)) * (phi_minus_coeff(phi, w, k) - phi_plus_coeff(phi, k));
    r.pass = r.by_sum == r.by_series;

    // lambda' = lambda - e_s + e_t, s != t
    for (int s = 0; s < w; ++s) {
        if (lambda[s] == 0) continue;
        for (int t = 0; t < w; ++t) {
            if (t == s) continue;
            Lambda lp = lambda;
            --lp[s];
            ++lp[t];
            RatFunc off;
            for (const auto& nu : cocovers(lambda))
                if (cover_index(nu, lp)) off += coeff_A_plus(nu, lp, m) * coeff_A_minus(nu, lambda, n);
            for (const auto& mu : covers(lambda))
                if (cover_index(lp, mu)) off -= coeff_A_minus(lp, mu, n) * coeff_A_plus(lambda, mu, m);
            ++r.offdiagonal_checked;
            if (!off.is_zero()) r.offdiagonal_failures.push_back(lp);
        }
    }
    if (!r.offdiagonal_failures.empty()) r.pass = false;
    return r;
}

USeries psi_series_a1(const Lambda& lambda, int sign, int trunc) {
    if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
    if (trunc < 0) throw DomainError("negative truncation");
    const int w = static_cast<int>(lambda.size());
    const int v = weight(lambda);
    const VirtualCharacter V = taut_V(lambda);
    const VirtualCharacter W = taut_W(w);
    const VirtualCharacter q1 = VirtualCharacter::monomial(alg::var_exps(alg::Q, 1));
    const VirtualCharacter q2 = VirtualCharacter::monomial(alg::var_exps(alg::Q, 2));
    const VirtualCharacter qm1 = VirtualCharacter::monomial(alg::var_exps(alg::Q, -1));
    const VirtualCharacter qm2 = VirtualCharacter::monomial(alg::var_exps(alg::Q, -2));
    const int pairing = w - 2 * v;  // (alpha, w - c v) in type A1
    if (sign > 0) {
        VirtualCharacter E = (q2 - qm2) * V - q1 * W;
        USeries s = alg::lambda_series(E, Direction::PowersOfUInverse, trunc);
        return s.scaled(RatFunc(qpow(-w + pairing)));
    }
    VirtualCharacter E = (qm2 - q2) * V.dual() - qm1 * W.dual();
    USeries s = alg::lambda_series(E, Direction::PowersOfU, trunc);
    LaurentPoly pre = qpow(-pairing) * W.determinant().monomial_inverse();
    if (w % 2) pre = -pre;
    return s.scaled(RatFunc(pre)).shifted(w);
}

RatFunc psi_central(int w) {
    LaurentPoly c = qpow(-w);
    if (w % 2) c = -c;
    for (int s = 1; s <= w; ++s) c = c * LaurentPoly::var(alg::chi(s), -1);
    return RatFunc(c);
}

USeries lweight_series_general(const quiver::QuiverData& q, int i, const std::vector<VirtualCharacter>& V,
                               const VirtualCharacter& W_i, int w_i, int trunc, int sign) {
    if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
    if (trunc < 0) throw DomainError("negative truncation");
    const int n = q.rank();
    if (i < 1 || i > n) throw DomainError("vertex out of range");
    if (static_cast<int>(V.size()) != n) throw DomainError("need one V character per vertex");
    if (W_i.rank() != w_i) throw DomainError("rank of W_i differs from w_i");

    // pairing = (alpha_i, w - c v) = w_i - sum_j c_ij v_j
    long pairing = w_i;
    VirtualCharacter H = W_i;
    for (int j = 1; j <= n; ++j) {
        const int c = q.c(i, j);
        pairing -= static_cast<long>(c) * V[j - 1].rank();
        // [c]_q as a character
        VirtualCharacter qc;
        const int a = std::abs(c);
        for (int t = 0; t < a; ++t) qc.add(alg::var_exps(alg::Q, a - 1 - 2 * t), c > 0 ? 1 : -1);
        H -= qc * V[j - 1];
    }
    if (sign < 0) H = H.dual();

    // exponent series in x = u^{-+1}: a_m = pm (q^m - q^-m)/m psi^m(H)
    std::vector<LaurentPoly> a(trunc + 1);
    for (int m = 1; m <= trunc; ++m)
        a[m] = ((qpow(m) - qpow(-m)) * H.adams(m).to_laurent()).scaled(alg::Rational(sign, m));
    std::vector<LaurentPoly> ex = alg::series_exp(a, trunc, alg::scale_laurent);

    // Lambda_{-u^-1}(q^-1 W_i)^-1 = Lambda_{-u^-1}(-q^-1 W_i); in powers of u it is
    // (-u)^{w_i} det(q^-1 W_i)^-1 Lambda_{-u}(-q W_i^vee).
    const VirtualCharacter qm1 = VirtualCharacter::monomial(alg::var_exps(alg::Q, -1));
    const VirtualCharacter q1 = VirtualCharacter::monomial(alg::var_exps(alg::Q, 1));
    std::vector<LaurentPoly> lw;
    LaurentPoly pre = qpow(static_cast<int>(-w_i + sign * pairing));
    if (sign > 0) {
        lw = alg::lambda_coefficients(-(qm1 * W_i), trunc);
    } else {
        lw = alg::lambda_coefficients(-(q1 * W_i.dual()), trunc);
        pre = pre * (qm1 * W_i).determinant().monomial_inverse();
        if (w_i % 2) pre = -pre;
    }
    USeries out(sign > 0 ? Direction::PowersOfUInverse : Direction::PowersOfU, sign > 0 ? -trunc : w_i,
                sign > 0 ? 0 : w_i + trunc, true);
    for (int k = 0; k <= trunc; ++k) {
        LaurentPoly c;
        for (int t = 0; t <= k; ++t) c += lw[t] * ex[k - t];
        out.set(sign > 0 ? -k : w_i + k, RatFunc(pre * c));
    }
    return out;
}

std::string QuotPoly::to_string() const {
    std::string s;
    for (const auto& [p, c] : coeffs) {
        if (c == 0) continue;
        if (!s.empty()) s += "+";
        if (p == 0) {
            s += std::to_string(c);
            continue;
        }
        if (c != 1) s += std::to_string(c) + "*";
        s += "t";
        if (p != 1) s += "^" + std::to_string(p);
    }
    return s.empty() ? "0" : s;
}

QuotPoly quot_poincare(int w, int v, bool punctual) {
    if (w < 1) throw DomainError("w must be >= 1");
    if (v < 0) throw DomainError("v must be >= 0");
    QuotPoly out;
    // compositions of v into w parts are the weight-v tuples
    for (const auto& comp : lambdas_of_weight(w, v)) {
        int dim = 0;
        for (int r = 1; r <= w; ++r) dim += (r - 1) * comp[r - 1];
        if (!punctual) dim += v;
        out.coeffs[2 * dim] += 1;
        ++out.euler;
    }
    return out;
}

qloop::PresentationSpec a1_presentation(int w) { return qloop::shifted_simply_laced(quiver::dynkin_a(1), {w}); }

qloop::OperatorTable build_operator_table(int w, int weight_cap, int n_window, int threads) {
    if (w < 1) throw DomainError("w must be >= 1");
    if (weight_cap < 0) throw DomainError("weight cap must be >= 0");
    if (n_window < 0) throw DomainError("window must be >= 0");
    using qloop::GenKind;
    using qloop::Generator;
    using qloop::SparseMatrix;

    qloop::OperatorTable t;
    t.weight_cap = weight_cap;
    const auto basis = lambda_basis(w, weight_cap);
    std::map<Lambda, int> index;
    for (size_t b = 0; b < basis.size(); ++b) {
        index[basis[b]] = static_cast<int>(b);
        t.basis.push_back(to_string(basis[b]));
        t.weights.push_back({weight(basis[b])});
    }
    const int dim = static_cast<int>(basis.size());
    const int xn = 2 * n_window;
    const int pn = 2 * n_window;

    // per-column entries, merged in basis order afterwards
    struct Column {
        std::map<Generator, std::vector<std::pair<int, RatFunc>>> e;
    };
    const RatFunc minus_qinv = RatFunc(-qpow(-1));
    auto column = [&](int b) {
        Column col;
        const Lambda& lam = basis[b];
        for (const auto& mu : covers(lam)) {
            auto it = index.find(mu);
            if (it == index.end()) continue;
            for (int n = -xn; n <= xn; ++n)
                col.e[{GenKind::XPlus, 1, n}].push_back({it->second, coeff_A_plus(lam, mu, n)});
        }
        for (const auto& nu : cocovers(lam)) {
            const int row = index.at(nu);
            for (int n = -xn; n <= xn; ++n)
                col.e[{GenKind::XMinus, 1, n}].push_back({row, minus_qinv * coeff_A_minus(nu, lam, n)});
        }
        const RatFunc phi = phi_lambda(lam);
        USeries plus = alg::expand(phi, Direction::PowersOfUInverse, -pn, 0);
        USeries minus = alg::expand(phi, Direction::PowersOfU, w, w + pn);
        for (int k = 0; k <= pn; ++k) col.e[{GenKind::PsiPlus, 1, k}].push_back({b, plus.coeff(-k)});
        for (int k = -w - pn; k <= -w; ++k) col.e[{GenKind::PsiMinus, 1, k}].push_back({b, minus.coeff(-k)});
        return col;
    };

    std::vector<Column> cols(dim);
    const int nt = std::max(1, std::min(threads, dim));
    if (nt == 1) {
        for (int b = 0; b < dim; ++b) cols[b] = column(b);
    } else {
        std::vector<std::future<void>> jobs;
        for (int tid = 0; tid < nt; ++tid)
            jobs.push_back(std::async(std::launch::async, [&, tid] {
                for (int b = tid; b < dim; b += nt) cols[b] = column(b);
            }));
        for (auto& j : jobs) j.get();
    }

    for (int n = -xn; n <= xn; ++n) {
        t.generators[{GenKind::XPlus, 1, n}] = SparseMatrix(dim, dim);
        t.generators[{GenKind::XMinus, 1, n}] = SparseMatrix(dim, dim);
    }
    for (int k = 0; k <= pn; ++k) t.generators[{GenKind::PsiPlus, 1, k}] = SparseMatrix(dim, dim);
    for (int k = -w - pn; k <= -w; ++k) t.generators[{GenKind::PsiMinus, 1, k}] = SparseMatrix(dim, dim);
    for (int b = 0; b < dim; ++b)
        for (auto& [g, entries] : cols[b].e)
            for (auto& [row, val] : entries) t.generators.at(g).set(row, b, std::move(val));
    return t;
}

}  // namespace qlg::lattice
