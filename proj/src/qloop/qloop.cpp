#include "qlg/qloop/qloop.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <future>

#include "qlg/alg/series_ops.hpp"
#include "qlg/error.hpp"

namespace qlg::qloop {

using alg::Direction;
using alg::LaurentPoly;
using alg::USeries;
using json = nlohmann::ordered_json;

namespace {
RatFunc qpow(int k) { return RatFunc(LaurentPoly::var(alg::Q, k)); }
}  // namespace

// ---- SparseMatrix ----

SparseMatrix SparseMatrix::identity(int n) { return scalar(n, RatFunc(1)); }

SparseMatrix SparseMatrix::scalar(int n, const RatFunc& c) {
    SparseMatrix m(n, n);
    if (!c.is_zero())
        for (int i = 0; i < n; ++i) m.e_[{i, i}] = c;
    return m;
}

RatFunc SparseMatrix::get(int r, int c) const {
    auto it = e_.find({r, c});
    return it == e_.end() ? RatFunc() : it->second;
}

void SparseMatrix::set(int r, int c, RatFunc v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw DomainError("matrix index out of range");
    if (v.is_zero())
        e_.erase({r, c});
    else
        e_[{r, c}] = std::move(v);
}

void SparseMatrix::add(int r, int c, const RatFunc& v) {
    if (v.is_zero()) return;
    set(r, c, get(r, c) + v);
}

bool SparseMatrix::is_diagonal() const {
    for (const auto& [rc, v] : e_)
        if (rc.first != rc.second) return false;
    return true;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix shape mismatch");
    SparseMatrix r = *this;
    for (const auto& [rc, v] : o.e_) r.add(rc.first, rc.second, v);
    return r;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const { return *this + o.scaled(RatFunc(-1)); }

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
    if (cols_ != o.rows_) throw DomainError("matrix shape mismatch");
    std::map<std::pair<int, int>, RatFunc> acc;
    for (const auto& [rk, a] : e_) {
        const int k = rk.second;
        for (auto it = o.e_.lower_bound({k, INT_MIN}); it != o.e_.end() && it->first.first == k; ++it)
            acc[{rk.first, it->first.second}] += a * it->second;
    }
    SparseMatrix r(rows_, o.cols_);
    for (auto& [rc, v] : acc)
        if (!v.is_zero()) r.e_.emplace(rc, std::move(v));
    return r;
}

SparseMatrix SparseMatrix::scaled(const RatFunc& c) const {
    SparseMatrix r(rows_, cols_);
    if (c.is_zero()) return r;
    for (const auto& [rc, v] : e_) r.e_.emplace(rc, v * c);
    return r;
}

std::optional<std::pair<int, int>> SparseMatrix::first_difference(const SparseMatrix& o,
                                                                  const std::function<bool(int)>& keep) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix shape mismatch");
    std::optional<std::pair<int, int>> best;  // (col, row)
    auto consider = [&](int r, int c) {
        if (keep && !keep(c)) return;
        std::pair<int, int> key{c, r};
        if (!best || key < *best) best = key;
    };
    for (const auto& [rc, v] : e_)
        if (o.get(rc.first, rc.second) != v) consider(rc.first, rc.second);
    for (const auto& [rc, v] : o.e_)
        if (!e_.count(rc)) consider(rc.first, rc.second);
    return best;
}

std::optional<SparseMatrix> inverse(const SparseMatrix& m) {
    if (m.rows() != m.cols()) throw DomainError("inverse of a non-square matrix");
    const int n = m.rows();
    if (m.is_diagonal()) {
        SparseMatrix r(n, n);
        for (int i = 0; i < n; ++i) {
            RatFunc d = m.get(i, i);
            if (d.is_zero()) return std::nullopt;
            r.set(i, i, d.inverse());
        }
        return r;
    }
    std::vector<std::vector<RatFunc>> a(n, std::vector<RatFunc>(2 * n));
    for (const auto& [rc, v] : m.entries()) a[rc.first][rc.second] = v;
    for (int i = 0; i < n; ++i) a[i][n + i] = RatFunc(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!a[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;
        std::swap(a[piv], a[col]);
        RatFunc inv = a[col][col].inverse();
        for (auto& x : a[col]) x *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            RatFunc f = a[r][col];
            for (int c = 0; c < 2 * n; ++c)
                if (!a[col][c].is_zero()) a[r][c] -= f * a[col][c];
        }
    }
    SparseMatrix r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.set(i, j, a[i][n + j]);
    return r;
}

// ---- generators and tables ----

std::string Generator::to_string() const {
    std::string s;
    switch (kind) {
        case GenKind::XPlus: s = "x+"; break;
        case GenKind::XMinus: s = "x-"; break;
        case GenKind::PsiPlus: s = "psi+"; break;
        case GenKind::PsiMinus: s = "psi-"; break;
    }
    return s + "_{" + std::to_string(vertex) + "," + std::to_string(mode) + "}";
}

const SparseMatrix* OperatorTable::find(const Generator& g) const {
    auto it = generators.find(g);
    return it == generators.end() ? nullptr : &it->second;
}

OperatorTable trivial_table(int rank, const std::vector<std::vector<RatFunc>>& psi_coeffs, int n_window) {
    if (static_cast<int>(psi_coeffs.size()) != rank) throw DomainError("need one psi polynomial per vertex");
    OperatorTable t;
    t.basis = {"v"};
    t.weights = {std::vector<int>(rank, 0)};
    const int xn = 2 * n_window;
    for (int i = 1; i <= rank; ++i) {
        const auto& c = psi_coeffs[i - 1];
        if (c.empty()) throw DomainError("empty psi polynomial");
        const int d = static_cast<int>(c.size()) - 1;
        auto coef = [&](int k) { return k >= 0 && k <= d ? c[k] : RatFunc(); };
        for (int n = -xn; n <= xn; ++n) {
            t.generators[{GenKind::XPlus, i, n}] = SparseMatrix(1, 1);
            t.generators[{GenKind::XMinus, i, n}] = SparseMatrix(1, 1);
        }
        for (int k = 0; k <= d + xn; ++k) t.generators[{GenKind::PsiPlus, i, k}] = SparseMatrix::scalar(1, coef(k));
        for (int k = -xn; k <= d; ++k) t.generators[{GenKind::PsiMinus, i, k}] = SparseMatrix::scalar(1, coef(k));
    }
    return t;
}

// ---- presentations ----

RatFunc StructureFn::as_ratfunc() const {
    auto poly = [](const std::vector<RatFunc>& c) {
        RatFunc p;
        for (size_t k = 0; k < c.size(); ++k) p += c[k] * RatFunc::var(alg::U, static_cast<int>(k));
        return p;
    };
    return poly(num) / poly(den);
}

std::vector<RatFunc> toroidal_parameters() {
    RatFunc t = RatFunc::var(alg::T);
    return {qpow(1) / t, qpow(1) * t, qpow(-2)};
}

namespace {

// (a0 + a1 z)(b...) on ascending coefficient lists
std::vector<RatFunc> poly_mul(const std::vector<RatFunc>& a, const std::vector<RatFunc>& b) {
    std::vector<RatFunc> r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

}  // namespace

StructureFn PresentationSpec::g(int i, int j) const {
    StructureFn f;
    if (kind == PresentationKind::ShiftedToroidalGl1) {
        f.num = {RatFunc(1)};
        f.den = {RatFunc(1)};
        for (const auto& qi : toroidal_parameters()) {
            RatFunc inv = qi.inverse();
            f.num = poly_mul(f.num, {-inv, RatFunc(1)});
            f.den = poly_mul(f.den, {RatFunc(-1), inv});
        }
        return f;
    }
    RatFunc qc = qpow(quiver.c(i, j));
    f.num = {-qc, RatFunc(1)};
    f.den = {RatFunc(-1), qc};
    return f;
}

RatFunc PresentationSpec::commutator_prefactor() const {
    if (kind != PresentationKind::ShiftedToroidalGl1) return RatFunc(1);
    RatFunc p(1);
    for (const auto& qi : toroidal_parameters()) p *= RatFunc(1) - qi;
    return p;
}

PresentationSpec shifted_simply_laced(const quiver::QuiverData& q, const std::vector<int>& w) {
    if (static_cast<int>(w.size()) != q.rank()) throw DomainError("shift length differs from the rank");
    for (int i = 1; i <= q.rank(); ++i)
        if (q.c(i, i) != 2) throw DomainError("simply-laced presentation needs c_ii = 2");
    PresentationSpec s;
    s.kind = PresentationKind::ShiftedSimplyLaced;
    s.quiver = q;
    for (int x : w) s.wminus.push_back(-x);
    return s;
}

PresentationSpec shifted_toroidal_gl1(int w) {
    PresentationSpec s;
    s.kind = PresentationKind::ShiftedToroidalGl1;
    s.quiver = quiver::jordan();
    s.wminus = {-w};
    return s;
}

RatFunc qint(int n) {
    if (n == 0) return RatFunc();
    return (qpow(n) - qpow(-n)) / (qpow(1) - qpow(-1));
}

namespace {

RatFunc qbinom(int n, int k) {
    RatFunc r(1);
    for (int t = 0; t < k; ++t) r = r * qint(n - t) / qint(t + 1);
    return r;
}

}  // namespace

std::vector<RelationCheck> relation_catalogue(const PresentationSpec& spec) {
    std::vector<RelationCheck> out;
    if (spec.kind == PresentationKind::ShiftedToroidalGl1) {
        out.push_back({"B.2", "psi+_0 and psi-_{-w} are invertible", "modes", false, ""});
        out.push_back({"B.3", "psi^a(u) psi^pm(v) = psi^pm(v) psi^a(u)", "modes", false, ""});
        out.push_back({"B.4", "x^a(u) psi^pm(v) = psi^pm(v) x^a(u) g(u/v)^a, g expanded in v^-+1", "series", false, ""});
        out.push_back({"B.5", "x^pm(u) x^pm(v) = x^pm(v) x^pm(u) g(u/v)^pm1", "cleared", false,
                       "checked after multiplying by the denominator of g"});
        out.push_back({"B.6", "[x^pm_m, [x^pm_{m+1}, x^pm_{m-1}]] = 0", "modes", false, ""});
        out.push_back({"B.7", "(1-q1)(1-q2)(1-q3) [x+(u), x-(v)] = delta(u/v) (psi+(u) - psi-(u))", "series", false,
                       "q1 = q t^-1, q2 = q t, q3 = q^-2"});
        return out;
    }
    out.push_back({"A.2", "psi^pm_{i,-+w^pm_i} is invertible", "modes", false, ""});
    out.push_back({"A.3", "psi^a_i(u) psi^pm_j(v) = psi^pm_j(v) psi^a_i(u)", "modes", false, ""});
    out.push_back({"A.4", "x^a_j(u) psi^pm_i(v) = psi^pm_i(v) x^a_j(u) g_ij(u/v)^a, g expanded in v^-+1", "series",
                   false, ""});
    out.push_back({"A.4a", "x^a_{j,n} psi^pm_{i,-+w^pm_i} = q^{pm a c_ij} psi^pm_{i,-+w^pm_i} x^a_{j,n}", "modes",
                   false, "equivalent form of A.4"});
    out.push_back({"A.4b", "[h_{i,m}, x^pm_{j,n}] = -+ [m c_ij]_q x^pm_{j,n+m} / m, m != 0", "modes", true,
                   "equivalent form of A.4; the sign is the one forced by the log-expansion of g_ij in A.4"});
    out.push_back({"A.5", "x^pm_i(u) x^pm_j(v) = x^pm_j(v) x^pm_i(u) g_ij(u/v)^pm1", "cleared", false,
                   "checked after multiplying by the denominator of g_ij"});
    out.push_back({"A.6", "(q-q^-1) [x+_i(u), x-_j(v)] = delta_ij delta(u/v) (psi+_i(u) - psi-_j(u))", "series",
                   false, ""});
    const int n = spec.quiver.rank();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j || spec.quiver.c(i, j) >= 0) continue;
            const int p = 1 - spec.quiver.c(i, j);
            RelationCheck r{"A.7",
                            "Sym_{n_1..n_" + std::to_string(p) + "} sum_k (-1)^k [" + std::to_string(p) +
                                " k]_q x^pm_{i,n_1}..x^pm_{i,n_k} x^pm_{j,m} x^pm_{i,n_{k+1}}..x^pm_{i,n_" +
                                std::to_string(p) + "} = 0 for (i,j) = (" + std::to_string(i) + "," +
                                std::to_string(j) + ")",
                            "modes", true, "symmetrized simply-laced normalization"};
            out.push_back(r);
        }
    return out;
}

// ---- relation checking ----

std::string status_name(InstanceResult::Status s) {
    switch (s) {
        case InstanceResult::Status::Pass: return "pass";
        case InstanceResult::Status::Fail: return "fail";
        case InstanceResult::Status::Undetermined: return "undetermined";
    }
    return "?";
}

long RelationReport::count(InstanceResult::Status s) const {
    return std::count_if(instances.begin(), instances.end(), [&](const auto& r) { return r.status == s; });
}

long RelationReport::count(const std::string& relation, InstanceResult::Status s) const {
    return std::count_if(instances.begin(), instances.end(),
                         [&](const auto& r) { return r.status == s && r.relation == relation; });
}

json RelationReport::to_json() const {
    json arr = json::array();
    for (const auto& r : instances) {
        json o;
        o["relation"] = r.relation;
        json idx = json::object();
        for (const auto& [k, v] : r.indices) idx[k] = v;
        o["indices"] = idx;
        o["status"] = status_name(r.status);
        if (r.witness) o["witness"] = *r.witness;
        arr.push_back(o);
    }
    return arr;
}

json RelationReport::summary() const {
    json o;
    o["pass"] = count(InstanceResult::Status::Pass);
    o["fail"] = count(InstanceResult::Status::Fail);
    o["undetermined"] = count(InstanceResult::Status::Undetermined);
    return o;
}

namespace {

using Status = InstanceResult::Status;
using Indices = std::vector<std::pair<std::string, int>>;

struct Missing {
    Generator g;
};

class Checker {
public:
    Checker(const PresentationSpec& spec, const OperatorTable& rep, int window)
        : spec_(spec), rep_(rep), N_(window), zero_(rep.dim(), rep.dim()) {}

    // throws Missing when a needed generator is absent from the table
    const SparseMatrix& M(GenKind k, int i, int mode) const {
        if (k == GenKind::PsiPlus && mode < 0) return zero_;
        if (k == GenKind::PsiMinus && mode > spec_.wminus.at(i - 1)) return zero_;
        const SparseMatrix* m = rep_.find({k, i, mode});
        if (!m) throw Missing{{k, i, mode}};
        return *m;
    }
    const SparseMatrix& x(int a, int i, int n) const { return M(a > 0 ? GenKind::XPlus : GenKind::XMinus, i, n); }
    const SparseMatrix& psi(int b, int i, int k) const { return M(b > 0 ? GenKind::PsiPlus : GenKind::PsiMinus, i, k); }
    int lead(int b, int i) const { return b > 0 ? 0 : spec_.wminus.at(i - 1); }
    std::vector<int> psi_window(int b, int i) const {
        std::vector<int> out;
        for (int t = 0; t <= N_; ++t) out.push_back(b > 0 ? t : lead(b, i) - N_ + t);
        return out;
    }

    // depth: the largest number of weight-raising steps any word of the
    // relation takes before returning, on a truncated basis
    InstanceResult compare(const std::string& rel, Indices idx, const SparseMatrix& lhs, const SparseMatrix& rhs,
                           int depth = 0) const {
        InstanceResult r{rel, std::move(idx), Status::Pass, std::nullopt};
        std::function<bool(int)> keep;
        if (rep_.weight_cap && depth > 0) {
            keep = [&](int col) {
                int tot = 0;
                for (int x : rep_.weights.at(col)) tot += x;
                return tot + depth <= *rep_.weight_cap;
            };
            bool any = false;
            for (int col = 0; col < rep_.dim() && !any; ++col) any = keep(col);
            if (!any) {
                r.status = Status::Undetermined;
                r.witness = json{{"truncated", true}};
                return r;
            }
        }
        if (auto d = lhs.first_difference(rhs, keep)) {
            r.status = Status::Fail;
            json w;
            w["basis"] = rep_.basis.at(d->first);
            w["row"] = rep_.basis.at(d->second);
            w["lhs"] = lhs.get(d->second, d->first).to_string();
            w["rhs"] = rhs.get(d->second, d->first).to_string();
            r.witness = w;
        }
        return r;
    }

    const PresentationSpec& spec_;
    const OperatorTable& rep_;
    int N_;
    SparseMatrix zero_;
    // h_{i,m} per vertex and m = +-1..+-N; absent when undetermined
    std::map<std::pair<int, int>, SparseMatrix> h_;
    std::map<int, std::string> h_missing_;
};

using Job = std::function<InstanceResult()>;

Job guarded(std::string rel, Indices idx, std::function<InstanceResult()> body) {
    return [rel = std::move(rel), idx = std::move(idx), body = std::move(body)]() {
        try {
            return body();
        } catch (const Missing& m) {
            json w;
            w["missing"] = m.g.to_string();
            return InstanceResult{rel, idx, Status::Undetermined, w};
        }
    };
}

std::string A(const PresentationSpec& s, const std::string& suffix) {
    return (s.kind == PresentationKind::ShiftedToroidalGl1 ? "B." : "A.") + suffix;
}

// h_{i,+-m} from the psi matrices: log of psi(u)/leading term.
void compute_h(Checker& c, int i) {
    const int N = c.N_;
    const RatFunc qq = qpow(1) - qpow(-1);
    for (int b : {1, -1}) {
        try {
            const int L = c.lead(b, i);
            auto inv = inverse(c.psi(b, i, L));
            if (!inv) {
                c.h_missing_[b * i] = "singular leading term";
                continue;
            }
            std::vector<SparseMatrix> P(N + 1), a(N + 1);
            for (int k = 1; k <= N; ++k) P[k] = *inv * c.psi(b, i, b > 0 ? L + k : L - k);
            for (int n = 1; n <= N; ++n) {
                SparseMatrix s(c.rep_.dim(), c.rep_.dim());
                for (int k = 1; k < n; ++k) s = s + (a[k] * P[n - k]).scaled(RatFunc(k));
                a[n] = P[n] - s.scaled(RatFunc(alg::Rational(1, n)));
                c.h_[{i, b * n}] = a[n].scaled(RatFunc(b) / qq);
            }
        } catch (const Missing& m) {
            c.h_missing_[b * i] = m.g.to_string();
        }
    }
}

std::vector<Job> build_jobs(Checker& c, const std::vector<std::string>& names) {
    const PresentationSpec& spec = c.spec_;
    const int N = c.N_;
    const int rank = spec.rank();
    const bool toroidal = spec.kind == PresentationKind::ShiftedToroidalGl1;
    auto want = [&](const std::string& n) { return std::find(names.begin(), names.end(), n) != names.end(); };
    std::vector<Job> jobs;
    const int D = c.rep_.dim();

    if (want(A(spec, "2")))
        for (int i = 1; i <= rank; ++i)
            for (int b : {1, -1}) {
                Indices idx{{"i", i}, {"sign", b}};
                jobs.push_back(guarded(A(spec, "2"), idx, [&c, i, b, idx, rel = A(spec, "2")]() {
                    const SparseMatrix& L = c.psi(b, i, c.lead(b, i));
                    InstanceResult r{rel, idx, Status::Pass, std::nullopt};
                    if (!inverse(L)) {
                        r.status = Status::Fail;
                        json w;
                        w["generator"] = Generator{b > 0 ? GenKind::PsiPlus : GenKind::PsiMinus, i, c.lead(b, i)}
                                             .to_string();
                        w["reason"] = "not invertible";
                        r.witness = w;
                    }
                    return r;
                }));
            }

    if (want(A(spec, "3")))
        for (int i = 1; i <= rank; ++i)
            for (int j = i; j <= rank; ++j)
                for (int a : {1, -1})
                    for (int b : {1, -1})
                        for (int k : c.psi_window(a, i))
                            for (int l : c.psi_window(b, j)) {
                                if (i == j && std::make_pair(-a, k) > std::make_pair(-b, l)) continue;
                                Indices idx{{"i", i}, {"j", j}, {"a", a}, {"b", b}, {"k", k}, {"l", l}};
                                jobs.push_back(guarded(A(spec, "3"), idx, [&c, i, j, a, b, k, l, idx, rel = A(spec, "3")]() {
                                    const auto& P = c.psi(a, i, k);
                                    const auto& Qm = c.psi(b, j, l);
                                    return c.compare(rel, idx, P * Qm, Qm * P);
                                }));
                            }

    if (want(A(spec, "4")))
        for (int i = 1; i <= rank; ++i)
            for (int j = 1; j <= rank; ++j)
                for (int a : {1, -1}) {
                    RatFunc g = spec.g(i, j).as_ratfunc();
                    if (a < 0) g = g.inverse();
                    for (int b : {1, -1})
                        for (int k : c.psi_window(b, i)) {
                            // gamma_l for l in [0, k] (psi+) or [k - wminus, 0] (psi-)
                            const int lo = b > 0 ? 0 : k - c.lead(b, i);
                            const int hi = b > 0 ? k : 0;
                            USeries gam = alg::expand(g, b > 0 ? Direction::PowersOfU : Direction::PowersOfUInverse,
                                                      lo, hi);
                            for (int n = -N; n <= N; ++n) {
                                Indices idx{{"i", i}, {"j", j}, {"a", a}, {"b", b}, {"n", n}, {"k", k}};
                                jobs.push_back(guarded(A(spec, "4"), idx, [&c, i, j, a, b, k, n, lo, hi, gam, idx, rel = A(spec, "4")]() {
                                    SparseMatrix lhs = c.x(a, j, n) * c.psi(b, i, k);
                                    SparseMatrix rhs(c.rep_.dim(), c.rep_.dim());
                                    for (int l = lo; l <= hi; ++l) {
                                        RatFunc gl = gam.coeff(l);
                                        if (gl.is_zero()) continue;
                                        rhs = rhs + (c.psi(b, i, k - l) * c.x(a, j, n + l)).scaled(gl);
                                    }
                                    return c.compare(rel, idx, lhs, rhs, a > 0 ? 1 : 0);
                                }));
                            }
                        }
                }

    if (!toroidal && want("A.4a"))
        for (int i = 1; i <= rank; ++i)
            for (int j = 1; j <= rank; ++j)
                for (int a : {1, -1})
                    for (int b : {1, -1})
                        for (int n = -N; n <= N; ++n) {
                            Indices idx{{"i", i}, {"j", j}, {"a", a}, {"b", b}, {"n", n}};
                            jobs.push_back(guarded("A.4a", idx, [&c, i, j, a, b, n, idx]() {
                                const auto& L = c.psi(b, i, c.lead(b, i));
                                const auto& X = c.x(a, j, n);
                                RatFunc f = qpow(b * a * c.spec_.quiver.c(i, j));
                                return c.compare("A.4a", idx, X * L, (L * X).scaled(f), a > 0 ? 1 : 0);
                            }));
                        }

    if (!toroidal && want("A.4b")) {
        for (int i = 1; i <= rank; ++i) compute_h(c, i);
        for (int i = 1; i <= rank; ++i)
            for (int j = 1; j <= rank; ++j)
                for (int m = -N; m <= N; ++m) {
                    if (m == 0) continue;
                    for (int a : {1, -1})
                        for (int n = -N; n <= N; ++n) {
                            Indices idx{{"i", i}, {"j", j}, {"m", m}, {"a", a}, {"n", n}};
                            jobs.push_back(guarded("A.4b", idx, [&c, i, j, m, a, n, idx]() {
                                auto it = c.h_.find({i, m});
                                if (it == c.h_.end()) {
                                    json w;
                                    auto miss = c.h_missing_.find(m > 0 ? i : -i);
                                    w["missing"] = miss == c.h_missing_.end() ? "h" : miss->second;
                                    return InstanceResult{"A.4b", idx, Status::Undetermined, w};
                                }
                                const auto& H = it->second;
                                const auto& X = c.x(a, j, n);
                                // sign fixed by the log of g_ij in A.4, see the catalogue note
                                RatFunc f = RatFunc(-a) * qint(m * c.spec_.quiver.c(i, j)) / RatFunc(m);
                                return c.compare("A.4b", idx, H * X - X * H, c.x(a, j, n + m).scaled(f), a > 0 ? 1 : 0);
                            }));
                        }
                }
    }

    if (want(A(spec, "5")))
        for (int i = 1; i <= rank; ++i)
            for (int j = 1; j <= rank; ++j)
                for (int a : {1, -1}) {
                    StructureFn g = spec.g(i, j);
                    const std::vector<RatFunc>& Dn = a > 0 ? g.den : g.num;
                    const std::vector<RatFunc>& Nm = a > 0 ? g.num : g.den;
                    const int d = g.degree();
                    for (int m = -N; m <= N; ++m)
                        for (int n = -N; n <= N; ++n) {
                            Indices idx{{"i", i}, {"j", j}, {"a", a}, {"m", m}, {"n", n}};
                            jobs.push_back(guarded(A(spec, "5"), idx, [&c, i, j, a, m, n, d, Dn, Nm, idx, D, rel = A(spec, "5")]() {
                                SparseMatrix lhs(D, D), rhs(D, D);
                                for (int t = 0; t <= d; ++t) {
                                    const auto& Xi = c.x(a, i, m + t);
                                    const auto& Xj = c.x(a, j, n + d - t);
                                    if (!Dn[t].is_zero()) lhs = lhs + (Xi * Xj).scaled(Dn[t]);
                                    if (!Nm[t].is_zero()) rhs = rhs + (Xj * Xi).scaled(Nm[t]);
                                }
                                return c.compare(rel, idx, lhs, rhs, a > 0 ? 2 : 0);
                            }));
                        }
                }

    if (toroidal && want("B.6"))
        for (int a : {1, -1})
            for (int m = -N + 1; m <= N - 1; ++m) {
                Indices idx{{"a", a}, {"m", m}};
                jobs.push_back(guarded("B.6", idx, [&c, a, m, idx, D]() {
                    const auto& X0 = c.x(a, 1, m);
                    const auto& X1 = c.x(a, 1, m + 1);
                    const auto& Xm = c.x(a, 1, m - 1);
                    SparseMatrix inner = X1 * Xm - Xm * X1;
                    return c.compare("B.6", idx, X0 * inner - inner * X0, SparseMatrix(D, D), a > 0 ? 3 : 0);
                }));
            }

    if (want(A(spec, toroidal ? "7" : "6"))) {
        const std::string rel = A(spec, toroidal ? "7" : "6");
        const RatFunc pre = spec.commutator_prefactor() * (toroidal ? RatFunc(1) : qpow(1) - qpow(-1));
        for (int i = 1; i <= rank; ++i)
            for (int j = 1; j <= rank; ++j)
                for (int m = -N; m <= N; ++m)
                    for (int n = -N; n <= N; ++n) {
                        Indices idx{{"i", i}, {"j", j}, {"m", m}, {"n", n}};
                        jobs.push_back(guarded(rel, idx, [&c, i, j, m, n, pre, idx, rel, D]() {
                            const auto& Xp = c.x(1, i, m);
                            const auto& Xm = c.x(-1, j, n);
                            SparseMatrix lhs = (Xp * Xm - Xm * Xp).scaled(pre);
                            SparseMatrix rhs(D, D);
                            if (i == j) rhs = c.psi(1, i, m + n) - c.psi(-1, i, m + n);
                            return c.compare(rel, idx, lhs, rhs, 1);
                        }));
                    }
    }

    if (!toroidal && want("A.7"))
        for (int i = 1; i <= rank; ++i)
            for (int j = 1; j <= rank; ++j) {
                if (i == j || spec.quiver.c(i, j) >= 0) continue;
                const int p = 1 - spec.quiver.c(i, j);
                std::vector<RatFunc> coef(p + 1);
                for (int k = 0; k <= p; ++k) coef[k] = qbinom(p, k) * RatFunc(k % 2 ? -1 : 1);
                // non-decreasing tuples n_1 <= ... <= n_p
                std::vector<std::vector<int>> tuples;
                std::vector<int> cur(p, -N);
                std::function<void(int, int)> rec = [&](int pos, int from) {
                    if (pos == p) {
                        tuples.push_back(cur);
                        return;
                    }
                    for (int v = from; v <= N; ++v) {
                        cur[pos] = v;
                        rec(pos + 1, v);
                    }
                };
                rec(0, -N);
                for (int a : {1, -1})
                    for (const auto& tup : tuples)
                        for (int m = -N; m <= N; ++m) {
                            Indices idx{{"i", i}, {"j", j}, {"a", a}, {"m", m}};
                            for (int t = 0; t < p; ++t) idx.push_back({"n" + std::to_string(t + 1), tup[t]});
                            jobs.push_back(guarded("A.7", idx, [&c, i, j, a, m, p, tup, coef, idx, D]() {
                                SparseMatrix total(D, D);
                                std::vector<int> perm = tup;
                                do {
                                    for (int k = 0; k <= p; ++k) {
                                        SparseMatrix prod = SparseMatrix::identity(D);
                                        for (int t = 0; t < k; ++t) prod = prod * c.x(a, i, perm[t]);
                                        prod = prod * c.x(a, j, m);
                                        for (int t = k; t < p; ++t) prod = prod * c.x(a, i, perm[t]);
                                        total = total + prod.scaled(coef[k]);
                                    }
                                } while (std::next_permutation(perm.begin(), perm.end()));
                                return c.compare("A.7", idx, total, SparseMatrix(D, D), a > 0 ? p + 1 : 0);
                            }));
                        }
            }
    return jobs;
}

}  // namespace

RelationReport check_relations(const PresentationSpec& spec, const OperatorTable& rep, int n_window,
                               const CheckOptions& opts) {
    if (n_window < 0) throw DomainError("window must be >= 0");
    if (static_cast<int>(spec.wminus.size()) != spec.rank()) throw DomainError("shift length differs from the rank");
    std::vector<std::string> names = opts.only;
    if (names.empty()) {
        for (const auto& r : relation_catalogue(spec))
            if (std::find(names.begin(), names.end(), r.name) == names.end()) names.push_back(r.name);
    }
    Checker c(spec, rep, n_window);
    std::vector<Job> jobs = build_jobs(c, names);

    RelationReport report;
    report.instances.resize(jobs.size());
    const int nt = std::max(1, std::min<int>(opts.threads, static_cast<int>(jobs.size())));
    if (nt == 1) {
        for (size_t k = 0; k < jobs.size(); ++k) report.instances[k] = jobs[k]();
    } else {
        std::vector<std::future<void>> fut;
        for (int t = 0; t < nt; ++t)
            fut.push_back(std::async(std::launch::async, [&, t] {
                for (size_t k = t; k < jobs.size(); k += nt) report.instances[k] = jobs[k]();
            }));
        for (auto& f : fut) f.get();
    }
    return report;
}

HSeries hseries_from_psi(const USeries& psi_plus, const USeries& psi_minus, int wminus, int order) {
    if (order < 0) throw DomainError("negative order");
    const RatFunc qq = qpow(1) - qpow(-1);
    auto scale = [](const RatFunc& r, const alg::Rational& c) { return r * RatFunc(c); };
    auto run = [&](const USeries& s, int lead_pow, int step, int sign, std::vector<RatFunc>& h,
                   std::vector<RatFunc>& hq) {
        RatFunc lead = s.coeff(lead_pow);
        if (lead.is_zero()) throw DomainError("leading psi coefficient is not invertible");
        std::vector<RatFunc> e(order + 1);
        e[0] = RatFunc(1);
        for (int k = 1; k <= order; ++k) e[k] = s.coeff(lead_pow + step * k) / lead;
        auto a = alg::series_log(e, order, scale);
        for (int m = 1; m <= order; ++m) {
            h.push_back(RatFunc(sign) * a[m] / qq);
            hq.push_back(h.back() / qint(m));
        }
    };
    HSeries out;
    run(psi_plus, 0, -1, 1, out.plus, out.plus_over_qint);
    run(psi_minus, -wminus, 1, -1, out.minus, out.minus_over_qint);
    return out;
}

}  // namespace qlg::qloop
