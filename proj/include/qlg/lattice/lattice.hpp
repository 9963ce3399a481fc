#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qlg/alg/character.hpp"
#include "qlg/alg/ratfunc.hpp"
#include "qlg/alg/useries.hpp"
#include "qlg/qloop/qloop.hpp"
#include "qlg/quiver/quiver.hpp"

namespace qlg::lattice {

using alg::LaurentPoly;
using alg::RatFunc;

/// Fixed point (lambda_1, ..., lambda_w) of the A1 Quot scheme; w = size().
using Lambda = std::vector<int>;

int weight(const Lambda& l);
std::string to_string(const Lambda& l);
Lambda parse_lambda(const std::string& s);  // "2,0,1"; "" is the empty tuple

/// All tuples of length w and weight v, lexicographically decreasing.
std::vector<Lambda> lambdas_of_weight(int w, int v);
/// All tuples with weight <= cap, ordered by weight, then as above.
std::vector<Lambda> lambda_basis(int w, int cap);

/// Index s0 (0-based) when mu is lambda plus one box in coordinate s0.
std::optional<int> cover_index(const Lambda& lambda, const Lambda& mu);
std::vector<Lambda> covers(const Lambda& lambda);
std::vector<Lambda> cocovers(const Lambda& lambda);

/// V_lambda = sum_s sum_{r=1}^{lambda_s} chi_s q^{3-2r}.
alg::VirtualCharacter taut_V(const Lambda& lambda);
/// W = chi_1 + ... + chi_w.
alg::VirtualCharacter taut_W(int w);
/// The monomials z_r of V_lambda, coordinate by coordinate.
std::vector<LaurentPoly> taut_monomials(const Lambda& lambda);

/// <lambda|A^-_n|mu> = ev_{u=z} u^n prod_r (u q^-2 - z_r)/(u - z_r); 0 when
/// mu does not cover lambda (then *adjacent is set false).
RatFunc coeff_A_minus(const Lambda& lambda, const Lambda& mu, int n, bool* adjacent = nullptr);
/// <mu|A^+_m|lambda> = (1-q^-2)^-1 Res_{u=z} u^{m+w-1}/prod_s(u-chi_s q)
///                      * prod_r (u-z_r)/(u-z_r q^-2).
RatFunc coeff_A_plus(const Lambda& lambda, const Lambda& mu, int m, bool* adjacent = nullptr);

/// phi_lambda(u) = q^{-2v} u^w prod_s (u-chi_s q^3)/((u-chi_s q^{1-2l_s})(u-chi_s q^{3-2l_s})).
RatFunc phi_lambda(const Lambda& lambda);

struct CommutatorResult {
    bool pass = false;
    RatFunc by_sum;     // (q-q^-1) <lambda|[A^+_m, A^-_n]|lambda>
    RatFunc by_series;  // [u^{-m-n}] q (phi^- - phi^+)
    /// Off-diagonal targets lambda' where the entry fails to vanish.
    std::vector<Lambda> offdiagonal_failures;
    int offdiagonal_checked = 0;
};

CommutatorResult commutator_check(int w, const Lambda& lambda, int m, int n);

/// psi^+ in powers of u^-1 (u^0 .. u^-trunc) or psi^- in powers of u
/// (u^w .. u^{w+trunc}), from the lambda-ring expressions in V and W.
alg::USeries psi_series_a1(const Lambda& lambda, int sign, int trunc);
/// (-q)^-w prod_s chi_s^-1.
RatFunc psi_central(int w);

/// q^{-w_i pm (alpha_i, w - c v)} Lambda_{-u^-1}(q^-1 W_i)^-1
///   exp(pm (q-q^-1) sum_m H_{i,pm m} u^{-+m}),
/// H_{i,1} = W_i - sum_j [c_ij]_q V_j, H_{i,-1} its dual, H_{i,pm m} = [m]_q/m psi^m(H_{i,pm 1}).
/// V is indexed by base vertex 1..rank; (alpha_i, w) is taken as w_i.
alg::USeries lweight_series_general(const quiver::QuiverData& q, int i,
                                    const std::vector<alg::VirtualCharacter>& V,
                                    const alg::VirtualCharacter& W_i, int w_i, int trunc, int sign);

struct QuotPoly {
    std::map<int, long> coeffs;  // power of t -> count
    long euler = 0;
    std::string to_string() const;
};

/// Sum of t^{2 dim} over the cells indexed by compositions of v into w parts.
QuotPoly quot_poincare(int w, int v, bool punctual);

/// x^+_n = A^+_n, x^-_n = -q^-1 A^-_n on the tuples of weight <= cap; x-modes
/// |n| <= 2 n_window, psi^+ modes 0..2 n_window, psi^- modes -w-2 n_window..-w.
qloop::OperatorTable build_operator_table(int w, int weight_cap, int n_window, int threads = 1);
/// The matching presentation: A1 with w^- = -w.
qloop::PresentationSpec a1_presentation(int w);

}  // namespace qlg::lattice
