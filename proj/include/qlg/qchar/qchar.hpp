#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qlg/alg/ratfunc.hpp"
#include "qlg/quiver/quiver.hpp"

namespace qlg::qchar {

using quiver::DimVec;
using quiver::QuiverData;

/// Monomial in the variables Y_{i,k}^{±1}, (i,k) in I x Z.
class Monomial {
public:
    Monomial() = default;
    static Monomial Y(int i, int k, int power = 1);
    /// A_{i,k} = Y_{i,k+1} Y_{i,k-1} prod_{j != i} Y_{j,k}^{c_ij}.
    static Monomial A(const QuiverData& q, int i, int k, int power = 1);
    /// e^x for an integer vector on I x Z.
    static Monomial from_dimvec(const DimVec& x);

    const std::map<std::pair<int, int>, int>& exps() const { return e_; }
    int exp(int i, int k) const;
    bool is_one() const { return e_.empty(); }

    Monomial operator*(const Monomial& o) const;
    Monomial inverse() const;
    Monomial operator/(const Monomial& o) const { return *this * o.inverse(); }

    /// All exponents non-negative (the trivial monomial counts).
    bool is_dominant() const;
    /// Y_{i,*} exponents all non-negative.
    bool is_i_dominant(int i) const;
    /// Top row (largest k in the support) has only non-positive exponents.
    /// The trivial monomial is not right-negative.
    bool is_right_negative() const;
    std::optional<int> top_row() const;
    DimVec to_dimvec() const;

    std::string to_string() const;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
    std::map<std::pair<int, int>, int> e_;
};

/// Solution n of m = prod A_{j,r}^{-n_{j,r}}.
struct ConeSolution {
    bool in_lattice = false;  // integral solution exists
    bool in_cone = false;     // and all n >= 0
    std::map<std::pair<int, int>, int> n;
    int degree() const;
};

ConeSolution cone_solve(const QuiverData& q, const Monomial& ratio);

class QChar {
public:
    std::map<Monomial, long> terms;
    std::optional<Monomial> highest;
    bool incomplete = false;

    void add(const Monomial& m, long mult);
    long dim() const;
    long dominant_count() const;
    /// Terms divided by the highest monomial.
    std::map<Monomial, long> normalized() const;
    QChar operator*(const QChar& o) const;
};

bool unique_dominant(const QChar& c);

struct KRSpec {
    int i = 1, k = 0, l = 1;
};

DimVec kr_dimvec(int i, int k, int l);
/// m^l_{i,k} = Y_{i,k-l+1} Y_{i,k-l+3} ... Y_{i,k+l-1}.
Monomial kr_monomial(int i, int k, int l);

/// Frenkel-Mukhin algorithm started at the highest monomial of KR^l_{i,k}.
/// step_cap bounds the number of processed monomials; on exhaustion the
/// partial result is returned with `incomplete` set. Throws DomainError if
/// the algorithm fails (not expected for KR modules).
QChar fm_qcharacter(const QuiverData& q, const KRSpec& spec, long step_cap = 100000);
/// Same algorithm from an arbitrary dominant monomial.
QChar fm_from_monomial(const QuiverData& q, const Monomial& top, long step_cap = 100000);

/// Every product m * prod A_{j,r}^{-1} over multisets of size <= steps with
/// r in [min row - 2, max row + 2] is right-negative. Throws DomainError if
/// m itself is not right-negative.
bool right_negative_closure_check(const QuiverData& q, const Monomial& m, int steps);

struct KRTuple {
    int i = 1, k = 0, l = 1;
};

enum class TpkrVariant { A, B };

bool tpkr_criterion(const std::vector<KRTuple>& tuples, int l, TpkrVariant variant);

struct SocleCertificate {
    DimVec socle{true};
    bool socle_rows_ok = false;        // socle inside rows l and l+1
    bool right_negative_ok = false;    // all m A_{i,s}^{-1}, s in {l, l+1}, are right-negative
    bool closure_ok = false;           // and one more A^{-1} step keeps them right-negative
    std::vector<Monomial> witnesses;   // the monomials m A_{i,s}^{-1}
    Monomial m;
    bool holds() const { return socle_rows_ok && right_negative_ok && closure_ok; }
};

/// Variant B directly; variant A through the involution Y_{i,r} -> Y_{i*,h-2-r}
/// (type A only).
SocleCertificate socle_bound_check(const QuiverData& q, const std::vector<KRTuple>& tuples, int l, TpkrVariant variant);

struct HJReport {
    int l_max = 0, cap = 0;
    /// agreement[j] for the pair (l, l+1) = (j+1, j+2): largest degree d <= cap
    /// through which both truncations agree (-1: not even degree 0).
    std::vector<int> agreement;
    std::vector<std::map<Monomial, long>> truncations;  // normalized, degree <= cap, l = 1..l_max
    std::map<Monomial, long> stabilized;                // degree <= stable_degree part
    int stable_degree = -1;
};

/// Normalized q-characters of KR^l_{i,1+k-l} (top point k fixed) for
/// l = 1..l_max, truncated at A^-1-degree cap.
HJReport hj_limit(const QuiverData& q, int i, int k, int l_max, int cap, long step_cap = 100000);

/// Psi_i(u) = zeta^{deg P_i} P_i(1/(zeta u)) / P_i(zeta/u) with
/// P_i(u) = prod_r (1 - zeta^{r} u) over the given root exponents.
std::vector<alg::RatFunc> drinfeld_lweight(const std::vector<std::vector<int>>& roots);

/// Involution Y_{i,r} -> Y_{i*,h-2-r} for type A_n.
Monomial bar_involution(const QuiverData& q, const Monomial& m);

nlohmann::ordered_json to_json(const Monomial& m);
nlohmann::ordered_json to_json(const QChar& c);

}  // namespace qlg::qchar
