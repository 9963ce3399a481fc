#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qlg/alg/ratfunc.hpp"
#include "qlg/alg/useries.hpp"
#include "qlg/quiver/quiver.hpp"

namespace qlg::qloop {

using alg::RatFunc;

class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}
    static SparseMatrix identity(int n);
    static SparseMatrix scalar(int n, const RatFunc& c);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::map<std::pair<int, int>, RatFunc>& entries() const { return e_; }
    RatFunc get(int r, int c) const;
    void set(int r, int c, RatFunc v);
    void add(int r, int c, const RatFunc& v);

    bool is_zero() const { return e_.empty(); }
    bool is_diagonal() const;

    SparseMatrix operator+(const SparseMatrix& o) const;
    SparseMatrix operator-(const SparseMatrix& o) const;
    SparseMatrix operator*(const SparseMatrix& o) const;
    SparseMatrix scaled(const RatFunc& c) const;

    /// First (column, row) in column-major order where the matrices differ,
    /// optionally looking only at the columns accepted by `keep`.
    std::optional<std::pair<int, int>> first_difference(const SparseMatrix& o,
                                                        const std::function<bool(int)>& keep = {}) const;
    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) { return !a.first_difference(b); }

private:
    int rows_ = 0, cols_ = 0;
    std::map<std::pair<int, int>, RatFunc> e_;
};

/// Gauss-Jordan over RatFunc; nullopt when singular.
std::optional<SparseMatrix> inverse(const SparseMatrix& m);

enum class GenKind { XPlus, XMinus, PsiPlus, PsiMinus };

/// x^pm_{i,n}, or psi^pm_{i,k} = coefficient of u^{-k} in psi^pm_i(u).
struct Generator {
    GenKind kind;
    int vertex;
    int mode;
    std::string to_string() const;
    friend auto operator<=>(const Generator&, const Generator&) = default;
};

struct OperatorTable {
    std::vector<std::string> basis;
    std::vector<std::vector<int>> weights;  // per basis vector, per vertex
    std::map<Generator, SparseMatrix> generators;
    /// Set when the basis is cut off at a total weight: a product of x's is
    /// then exact on a column only if its intermediate weights stay <= cap.
    std::optional<int> weight_cap;

    int dim() const { return static_cast<int>(basis.size()); }
    const SparseMatrix* find(const Generator& g) const;
};

enum class PresentationKind { ShiftedSimplyLaced, ShiftedToroidalGl1 };

/// g(z) = num(z) / den(z), coefficient lists in ascending powers of z.
struct StructureFn {
    std::vector<RatFunc> num, den;
    int degree() const { return static_cast<int>(num.size()) - 1; }
    /// As a rational function of the variable u.
    RatFunc as_ratfunc() const;
};

/// The (0, -w)-shifted algebra: psi^+_{i,k} vanishes for k < 0 and
/// psi^-_{i,k} for k > wminus_i, with wminus = -w. psi^+_{i,0} and
/// psi^-_{i,wminus_i} are the invertible leading modes.
struct PresentationSpec {
    PresentationKind kind = PresentationKind::ShiftedSimplyLaced;
    quiver::QuiverData quiver;
    std::vector<int> wminus;

    int rank() const { return kind == PresentationKind::ShiftedToroidalGl1 ? 1 : quiver.rank(); }
    StructureFn g(int i, int j) const;
    /// 1 for the loop group, (1-q1)(1-q2)(1-q3) for toroidal gl1.
    RatFunc commutator_prefactor() const;
};

PresentationSpec shifted_simply_laced(const quiver::QuiverData& q, const std::vector<int>& w);
PresentationSpec shifted_toroidal_gl1(int w);
/// q1 = q t^-1, q2 = q t, q3 = q^-2.
std::vector<RatFunc> toroidal_parameters();

struct RelationCheck {
    std::string name;       // "A.4", "A.4a", "B.7", ...
    std::string statement;  // readable form
    std::string form;       // "series", "modes", "cleared"
    bool convention = false;
    std::string note;
};

std::vector<RelationCheck> relation_catalogue(const PresentationSpec& spec);

struct InstanceResult {
    enum class Status { Pass, Fail, Undetermined };
    std::string relation;
    std::vector<std::pair<std::string, int>> indices;
    Status status = Status::Undetermined;
    /// Fail: basis column, row and both sides; undetermined: missing generator.
    std::optional<nlohmann::ordered_json> witness;
};

std::string status_name(InstanceResult::Status s);

struct RelationReport {
    std::vector<InstanceResult> instances;
    long count(InstanceResult::Status s) const;
    long count(const std::string& relation, InstanceResult::Status s) const;
    nlohmann::ordered_json to_json() const;
    nlohmann::ordered_json summary() const;
};

struct CheckOptions {
    /// Relation names to check; empty means every relation of the catalogue.
    std::vector<std::string> only;
    int threads = 1;
};

/// Instances use x-modes |n| <= n_window and psi-modes within n_window of
/// the leading mode.
RelationReport check_relations(const PresentationSpec& spec, const OperatorTable& rep, int n_window,
                               const CheckOptions& opts = {});

struct HSeries {
    std::vector<RatFunc> plus, minus;                  // h_{m}, h_{-m} for m = 1..order
    std::vector<RatFunc> plus_over_qint, minus_over_qint;  // divided by [m]_q
};

/// Inverts psi^pm(u) = psi^pm_lead u^{pm w^pm} exp(pm (q-q^-1) sum h_{pm m} u^{-+m}).
/// psi^+ leads at u^0, psi^- at u^{-wminus}.
HSeries hseries_from_psi(const alg::USeries& psi_plus, const alg::USeries& psi_minus, int wminus, int order);

/// [n]_q for any integer n.
RatFunc qint(int n);

/// One-dimensional table with x = 0 and psi^pm(u) = Psi(u) id, where Psi is a
/// polynomial in u^-1 of degree d; valid for wminus = d.
OperatorTable trivial_table(int rank, const std::vector<std::vector<RatFunc>>& psi_coeffs, int n_window);

}  // namespace qlg::qloop
