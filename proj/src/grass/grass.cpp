#include "qlg/grass/grass.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "qlg/error.hpp"
#include "qlg/qchar/qchar.hpp"

namespace qlg::grass {

namespace {

Matrix zeros(int r, int c) { return Matrix(r, std::vector<Rational>(c, Rational(0))); }

Matrix mul(const Matrix& a, const Matrix& b) {
    int r = static_cast<int>(a.size()), n = static_cast<int>(b.size());
    int c = n == 0 ? 0 : static_cast<int>(b[0].size());
    Matrix out = zeros(r, c);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (int j = 0; j < c; ++j)
                if (b[k][j] != 0) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

bool is_zero(const Matrix& m) {
    for (const auto& row : m)
        for (const auto& x : row)
            if (x != 0) return false;
    return true;
}

Matrix transpose(const Matrix& m) {
    if (m.empty()) return m;
    Matrix t = zeros(static_cast<int>(m[0].size()), static_cast<int>(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

std::string path_label(const Preprojective& pi, int s, const Preprojective::Path& p) {
    if (p.empty()) return "e" + std::to_string(s);
    std::string out;
    for (size_t a = 0; a < p.size(); ++a) {
        if (a) out += ".";
        out += pi.arrows()[p[a]].label;
    }
    return out;
}

}  // namespace

Preprojective::Preprojective(int n) : n_(n) {
    if (n < 1) throw DomainError("preprojective algebra needs n >= 1");
    // alpha_{i,i+1}: i+1 -> i and its partner alpha*_{i,i+1}: i -> i+1
    for (int i = 1; i < n; ++i) {
        std::string tag = std::to_string(i) + "_" + std::to_string(i + 1);
        int a = static_cast<int>(arrows_.size());
        arrows_.push_back({"alpha_" + tag, i + 1, i, a + 1});
        arrows_.push_back({"alpha*_" + tag, i, i + 1, a});
    }
    for (int s = 1; s <= n; ++s) {
        std::vector<std::pair<Path, int>> cur = {{{}, s}};
        for (int len = 0;; ++len) {
            if (len > 0) {
                std::vector<std::pair<Path, int>> next;
                for (const auto& [p, v] : cur)
                    for (int a = 0; a < static_cast<int>(arrows_.size()); ++a)
                        if (arrows_[a].source == v) {
                            Path q = p;
                            q.push_back(a);
                            next.push_back({q, arrows_[a].target});
                        }
                cur = std::move(next);
            }
            std::map<int, std::vector<Path>> all;
            for (const auto& [p, v] : cur) all[v].push_back(p);
            bool any = false;
            for (auto& [t, paths] : all) {
                Component c;
                c.paths = paths;
                std::sort(c.paths.begin(), c.paths.end());
                int m = static_cast<int>(c.paths.size());
                auto index = [&](const Path& p) {
                    return static_cast<int>(std::lower_bound(c.paths.begin(), c.paths.end(), p) - c.paths.begin());
                };
                // ideal generators p1 . rho_v . p2
                std::vector<std::vector<Rational>> gens;
                for (int a = 0; a + 2 <= len; ++a)
                    for (const auto& p : c.paths) {
                        // a two-arrow loop at v in positions a, a+1
                        if (p[a + 1] != arrows_[p[a]].partner) continue;
                        int v = arrows_[p[a]].source;
                        std::vector<Rational> row(m, Rational(0));
                        for (int x = 0; x < static_cast<int>(arrows_.size()); ++x) {
                            if (arrows_[x].source != v) continue;
                            Path r = p;
                            r[a] = x;
                            r[a + 1] = arrows_[x].partner;
                            // alpha with target v contributes alpha alpha* (alpha* first), sign +;
                            // alpha with source v contributes alpha* alpha (alpha first), sign -
                            bool starred = arrows_[x].label.rfind("alpha*", 0) == 0;
                            row[index(r)] += starred ? Rational(1) : Rational(-1);
                        }
                        gens.push_back(std::move(row));
                    }
                // RREF
                std::vector<int> pivots;
                int rank = 0;
                for (int col = 0; col < m && rank < static_cast<int>(gens.size()); ++col) {
                    int piv = -1;
                    for (int r = rank; r < static_cast<int>(gens.size()); ++r)
                        if (gens[r][col] != 0) {
                            piv = r;
                            break;
                        }
                    if (piv < 0) continue;
                    std::swap(gens[piv], gens[rank]);
                    Rational inv = 1 / gens[rank][col];
                    for (auto& x : gens[rank]) x *= inv;
                    for (int r = 0; r < static_cast<int>(gens.size()); ++r)
                        if (r != rank && gens[r][col] != 0) {
                            Rational f = gens[r][col];
                            for (int j = 0; j < m; ++j) gens[r][j] -= f * gens[rank][j];
                        }
                    pivots.push_back(col);
                    ++rank;
                }
                gens.resize(rank);
                c.rows = std::move(gens);
                c.pivot_row.assign(m, -1);
                for (int r = 0; r < rank; ++r) c.pivot_row[pivots[r]] = r;
                for (int j = 0; j < m; ++j)
                    if (c.pivot_row[j] < 0) c.basis.push_back(j);
                if (!c.basis.empty()) any = true;
                comp_[{s, t, len}] = std::move(c);
            }
            if (!any) break;
        }
    }
}

int Preprojective::target_of(int s, const Path& p) const { return p.empty() ? s : arrows_[p.back()].target; }

std::vector<Preprojective::Path> Preprojective::basis_from(int s) const {
    std::vector<Path> out;
    for (const auto& [key, c] : comp_)
        if (std::get<0>(key) == s)
            for (int b : c.basis) out.push_back(c.paths[b]);
    return out;
}

std::vector<std::pair<Preprojective::Path, Rational>> Preprojective::normal_form(int s, const Path& p) const {
    int len = static_cast<int>(p.size());
    auto it = comp_.find({s, target_of(s, p), len});
    if (it == comp_.end()) return {};  // beyond the top length: zero
    const auto& c = it->second;
    int j = static_cast<int>(std::lower_bound(c.paths.begin(), c.paths.end(), p) - c.paths.begin());
    if (j >= static_cast<int>(c.paths.size()) || c.paths[j] != p) throw DomainError("normal_form: not a path");
    std::vector<std::pair<Path, Rational>> out;
    if (c.pivot_row[j] < 0) {
        out.push_back({p, Rational(1)});
        return out;
    }
    // e_p = e_p - row, supported on non-pivot columns
    const auto& row = c.rows[c.pivot_row[j]];
    for (int b : c.basis)
        if (row[b] != 0) out.push_back({c.paths[b], -row[b]});
    return out;
}

const ArrowAction& GradedModule::action(const std::string& label) const {
    for (const auto& a : actions)
        if (a.label == label) return a;
    throw DomainError("unknown arrow " + label);
}

std::map<std::pair<int, int>, int> GradedModule::graded_dims() const {
    std::map<std::pair<int, int>, int> out;
    for (const auto& b : basis) ++out[b];
    return out;
}

std::map<std::string, bool> GradedModule::verify() const {
    std::map<std::string, bool> out;
    Matrix rho = zeros(dim(), dim());
    const ArrowAction* eps = nullptr;
    for (const auto& a : actions) {
        if (a.label == "eps") {
            eps = &a;
            continue;
        }
        if (a.label.rfind("alpha*", 0) == 0) continue;
        std::string star = "alpha*" + a.label.substr(5);
        const auto& s = action(star);
        Matrix p1 = mul(a.m, s.m), p2 = mul(s.m, a.m);
        for (int r = 0; r < dim(); ++r)
            for (int c = 0; c < dim(); ++c) rho[r][c] += p1[r][c] - p2[r][c];
    }
    out["preprojective"] = is_zero(rho);
    bool commutes = true;
    bool eps_nil = true;
    if (eps) {
        for (const auto& a : actions)
            if (&a != eps && mul(a.m, eps->m) != mul(eps->m, a.m)) commutes = false;
        Matrix p = zeros(dim(), dim());
        for (int r = 0; r < dim(); ++r) p[r][r] = 1;
        for (int j = 0; j < l; ++j) p = mul(eps->m, p);
        eps_nil = is_zero(p);
    }
    out["eps_commutes"] = commutes;
    out["eps_nilpotent"] = eps_nil;
    // every arrow shifts the degree, so products of length > span vanish on a
    // finite module iff each action is homogeneous of its stated degree
    bool homogeneous = true;
    for (const auto& a : actions)
        for (int r = 0; r < dim(); ++r)
            for (int c = 0; c < dim(); ++c)
                if (a.m[r][c] != 0 &&
                    (basis[r].second != basis[c].second + a.degree ||
                     (a.label == "eps" ? basis[r].first != basis[c].first
                                       : basis[r].first != a.target || basis[c].first != a.source)))
                    homogeneous = false;
    out["nilpotent"] = homogeneous;
    return out;
}

std::vector<int> GradedModule::socle() const {
    std::vector<int> out;
    for (int c = 0; c < dim(); ++c) {
        bool killed = true;
        for (const auto& a : actions)
            for (int r = 0; r < dim() && killed; ++r)
                if (a.m[r][c] != 0) killed = false;
        if (killed) out.push_back(c);
    }
    return out;
}

nlohmann::ordered_json GradedModule::to_json() const {
    nlohmann::ordered_json j;
    j["quiver"] = quiver.type;
    j["i"] = i;
    j["k"] = k;
    j["l"] = l;
    j["shift"] = shift;
    j["dim"] = dim();
    auto b = nlohmann::ordered_json::array();
    for (int x = 0; x < dim(); ++x)
        b.push_back({{"label", labels[x]}, {"vertex", basis[x].first}, {"degree", basis[x].second}});
    j["basis"] = b;
    return j;
}

GradedModule build_injective(const quiver::QuiverData& q, int i, int k, int l) {
    int n = q.a_rank();
    if (!q.is_dynkin_a() || n < 1 || n > 3) throw DomainError("build_injective: supported for A_n with n <= 3");
    if (i < 1 || i > n) throw DomainError("build_injective: vertex out of range");
    if (l < 1) throw DomainError("build_injective: l must be >= 1");
    Preprojective pi(n);
    auto paths = pi.basis_from(i);
    int np = static_cast<int>(paths.size());
    auto target = [&](const Preprojective::Path& p) { return p.empty() ? i : pi.arrows()[p.back()].target; };
    auto pindex = [&](const Preprojective::Path& p) {
        return static_cast<int>(std::find(paths.begin(), paths.end(), p) - paths.begin());
    };

    // M = Pi-bar e_i (x) C[eps]/eps^l, basis (p, j) at index j * np + idx(p)
    int dim = np * l;
    std::map<std::string, Matrix> on_m;
    std::map<std::string, std::pair<int, int>> ends;
    for (const auto& a : pi.arrows()) {
        Matrix m = zeros(dim, dim);
        for (int x = 0; x < np; ++x) {
            if (target(paths[x]) != a.source) continue;
            auto p = paths[x];
            p.push_back(static_cast<int>(&a - pi.arrows().data()));
            for (const auto& [bp, c] : pi.normal_form(i, p)) {
                int y = pindex(bp);
                for (int j = 0; j < l; ++j) m[j * np + y][j * np + x] += c;
            }
        }
        on_m[a.label] = std::move(m);
        ends[a.label] = {a.source, a.target};
    }
    Matrix e = zeros(dim, dim);
    for (int j = 0; j + 1 < l; ++j)
        for (int x = 0; x < np; ++x) e[(j + 1) * np + x][j * np + x] = 1;

    GradedModule M;
    M.quiver = q;
    M.i = i;
    M.k = k;
    M.l = l;
    M.shift = -k - l;
    for (int j = 0; j < l; ++j)
        for (int x = 0; x < np; ++x) {
            int deg = -static_cast<int>(paths[x].size()) + 2 * j;
            M.basis.push_back({target(paths[x]), -deg});
            std::string lab = path_label(pi, i, paths[x]);
            if (j > 0) lab += ".eps^" + std::to_string(j);
            M.labels.push_back("D(" + lab + ")");
        }
    // b acts on the dual as the transpose of theta(b): alpha <-> alpha*, eps fixed
    for (const auto& a : pi.arrows()) {
        const auto& partner = pi.arrows()[a.partner];
        ArrowAction act;
        act.label = a.label;
        act.source = a.source;
        act.target = a.target;
        act.degree = -1;
        act.m = transpose(on_m.at(partner.label));
        M.actions.push_back(std::move(act));
    }
    ArrowAction eact;
    eact.label = "eps";
    eact.source = eact.target = 0;
    eact.degree = 2;
    eact.m = transpose(e);
    M.actions.push_back(std::move(eact));
    return M;
}

bool SubmoduleCert::verified() const {
    return std::all_of(stable.begin(), stable.end(), [](const auto& kv) { return kv.second; });
}

std::vector<SubmoduleCert> enumerate_graded_submodules(const GradedModule& M,
                                                       const std::optional<quiver::DimVec>& v) {
    for (const auto& [key, d] : M.graded_dims()) {
        if (d > 4) throw DomainError("graded piece of dimension " + std::to_string(d) + " exceeds the feasibility bound");
        if (d > 1)
            throw DomainError("family: graded piece (" + std::to_string(key.first) + "," +
                              std::to_string(key.second) + ") has dimension " + std::to_string(d) +
                              "; the Grassmannian is not a finite set of points");
    }
    int n = M.dim();
    if (n > 24) throw DomainError("module too large to enumerate");
    // out-neighbours of each basis vector under all actions
    std::vector<unsigned> need(n, 0);
    for (const auto& a : M.actions)
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (a.m[r][c] != 0) need[c] |= 1u << r;
    std::vector<SubmoduleCert> out;
    for (unsigned s = 0; s < (1u << n); ++s) {
        bool closed = true;
        for (int c = 0; c < n && closed; ++c)
            if ((s >> c & 1u) && (need[c] & ~s)) closed = false;
        if (!closed) continue;
        SubmoduleCert cert;
        for (int c = 0; c < n; ++c)
            if (s >> c & 1u) {
                cert.basis.push_back(c);
                cert.v.add(M.basis[c].first, M.basis[c].second, 1);
            }
        if (v && !(cert.v == *v)) continue;
        // independent check: each action maps the span into itself
        for (const auto& a : M.actions) {
            bool ok = true;
            for (int c : cert.basis)
                for (int r = 0; r < n; ++r)
                    if (a.m[r][c] != 0 && !(s >> r & 1u)) ok = false;
            cert.stable[a.label] = ok;
        }
        out.push_back(std::move(cert));
    }
    return out;
}

nlohmann::ordered_json EulerKrReport::to_json() const {
    nlohmann::ordered_json j;
    j["grassmannian_count"] = grassmannian_count;
    j["kr_dim"] = kr_dim;
    j["equal"] = grassmannian_count == kr_dim;
    j["refinement_ok"] = refinement_ok;
    j["monomials_match"] = monomials_match;
    j["pass"] = pass();
    return j;
}

EulerKrReport euler_vs_kr(const quiver::QuiverData& q, int i, int k, int l) {
    auto M = build_injective(q, i, k, l);
    auto subs = enumerate_graded_submodules(M);
    EulerKrReport rep;
    rep.grassmannian_count = static_cast<long>(subs.size());
    auto chi = qchar::fm_qcharacter(q, {i, k, l});
    if (chi.incomplete) throw DomainError("q-character computation did not finish");
    rep.kr_dim = chi.dim();

    // internal degree d at vertex j pairs with A_{j,k+l+d}; the socle is A_{i,k+l}
    auto top = qchar::kr_monomial(i, k, l);
    std::map<qchar::Monomial, long> from_subs;
    bool ok = true;
    for (const auto& s : subs) {
        qchar::Monomial m = top;
        for (const auto& [key, n] : s.v.entries()) m = m * qchar::Monomial::A(q, key.first, k + l + key.second, -static_cast<int>(n));
        ++from_subs[m];
        if (s.v.is_zero()) continue;
        if (s.v.get(i, 0) < 1) ok = false;
        auto sol = qchar::cone_solve(q, m / top);
        if (!sol.in_cone) ok = false;
    }
    rep.refinement_ok = ok;
    rep.monomials_match = from_subs == chi.terms;
    return rep;
}

}  // namespace qlg::grass
