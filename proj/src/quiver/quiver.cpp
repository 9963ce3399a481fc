#include "qlg/quiver/quiver.hpp"

#include <algorithm>
#include <numeric>

#include "qlg/error.hpp"

namespace qlg::quiver {

std::string Vertex::to_string() const {
    std::string s = std::to_string(base);
    if (framing) s += "'";
    if (grade) s += "," + std::to_string(*grade);
    return s;
}

Vertex Vertex::parse(const std::string& s) {
    Vertex v;
    std::size_t comma = s.find(',');
    std::string head = s.substr(0, comma);
    if (!head.empty() && head.back() == '\'') {
        v.framing = true;
        head.pop_back();
    }
    try {
        std::size_t used = 0;
        v.base = std::stoi(head, &used);
        if (used != head.size() || v.base < 1) throw std::invalid_argument("");
        if (comma != std::string::npos) {
            std::string tail = s.substr(comma + 1);
            v.grade = std::stoi(tail, &used);
            if (used != tail.size()) throw std::invalid_argument("");
        }
    } catch (const std::exception&) {
        throw ParseError("bad vertex label \"" + s + "\"");
    }
    return v;
}

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::Base: return "base";
        case Kind::Double: return "double";
        case Kind::Triple: return "triple";
        case Kind::Framed: return "framed";
        case Kind::FramedDouble: return "framed_double";
        case Kind::FramedTriple: return "framed_triple";
        case Kind::SimplyFramedTriple: return "simply_framed_triple";
        case Kind::Graded: return "graded";
    }
    return "?";
}

Kind parse_kind(const std::string& s) {
    for (Kind k : {Kind::Base, Kind::Double, Kind::Triple, Kind::Framed, Kind::FramedDouble, Kind::FramedTriple,
                   Kind::SimplyFramedTriple, Kind::Graded})
        if (kind_name(k) == s) return k;
    throw DomainError("unknown quiver kind \"" + s + "\"");
}

int QuiverData::a_rank() const {
    if (!is_dynkin_a()) return 0;
    try {
        return std::stoi(type.substr(1));
    } catch (const std::exception&) {
        return 0;
    }
}

namespace {

Vertex base_vertex(int i) { return Vertex{i, false, std::nullopt}; }
Vertex framing_vertex(int i) { return Vertex{i, true, std::nullopt}; }

std::string alpha_label(int i, int j, bool star) {
    return std::string(star ? "alpha*_" : "alpha_") + std::to_string(i) + "_" + std::to_string(j);
}

QuiverData from_orientation(std::string type, int n, const std::vector<std::pair<int, int>>& o) {
    QuiverData q;
    q.type = std::move(type);
    for (int i = 1; i <= n; ++i) q.vertices.push_back(base_vertex(i));
    q.cartan.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) q.cartan[i][i] = 2;
    for (auto [i, j] : o) {
        if (i < 1 || j < 1 || i > n || j > n) throw DomainError("arrow endpoint out of range");
        q.arrows.push_back(Arrow{alpha_label(i, j, false), base_vertex(j), base_vertex(i)});
        q.orientation.emplace_back(i, j);
        if (i == j) {
            q.cartan[i - 1][i - 1] -= 2;
        } else {
            q.cartan[i - 1][j - 1] -= 1;
            q.cartan[j - 1][i - 1] -= 1;
        }
    }
    return q;
}

}  // namespace

QuiverData dynkin_a(int n) {
    if (n < 1) throw DomainError("A_n needs n >= 1");
    std::vector<std::pair<int, int>> o;
    for (int i = 1; i < n; ++i) o.emplace_back(i, i + 1);
    return from_orientation("A" + std::to_string(n), n, o);
}

QuiverData dynkin_d(int n) {
    if (n < 4) throw DomainError("D_n needs n >= 4");
    std::vector<std::pair<int, int>> o;
    for (int i = 1; i < n - 1; ++i) o.emplace_back(i, i + 1);
    o.emplace_back(n - 2, n);
    return from_orientation("D" + std::to_string(n), n, o);
}

QuiverData jordan() { return from_orientation("Jordan", 1, {{1, 1}}); }

QuiverData custom_quiver(int n, const std::vector<std::pair<int, int>>& edges) {
    return from_orientation("custom", n, edges);
}

QuiverData quiver_by_name(const std::string& name) {
    if (name == "Jordan" || name == "jordan") return jordan();
    if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'D')) {
        int n = 0;
        try {
            std::size_t used = 0;
            n = std::stoi(name.substr(1), &used);
            if (used != name.size() - 1) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw DomainError("unknown quiver type \"" + name + "\"");
        }
        return name[0] == 'A' ? dynkin_a(n) : dynkin_d(n);
    }
    throw DomainError("unknown quiver type \"" + name + "\"");
}

namespace {

int default_degree(const std::string& label) {
    if (label.rfind("alpha", 0) == 0 || label.rfind("a_", 0) == 0 || label.rfind("a*_", 0) == 0) return -1;
    if (label.rfind("eps", 0) == 0) return 2;
    throw DomainError("degree map missing arrow " + label);
}

}  // namespace

QuiverData derive_quiver(const QuiverData& q, Kind kind, const std::optional<DegreeMap>& degrees,
                         std::pair<int, int> window) {
    if (kind == Kind::Base) return q;
    if (kind == Kind::Graded) {
        if (q.kind == Kind::Graded) throw DomainError("quiver is already graded");
        if (window.first > window.second) throw DomainError("empty grading window");
        DegreeMap dm = degrees.value_or(DegreeMap{});
        std::map<std::string, int> deg;
        for (const auto& a : q.arrows) {
            auto it = dm.by_label.find(a.label);
            if (it != dm.by_label.end()) deg[a.label] = it->second;
            else if (dm.use_defaults) deg[a.label] = default_degree(a.label);
            else throw DomainError("degree map missing arrow " + a.label);
        }
        QuiverData g = q;
        g.kind = Kind::Graded;
        g.window = window;
        g.vertices.clear();
        g.arrows.clear();
        for (int k = window.first; k <= window.second; ++k)
            for (auto v : q.vertices) {
                v.grade = k;
                g.vertices.push_back(v);
            }
        for (int k = window.first; k <= window.second; ++k)
            for (const auto& a : q.arrows) {
                int tk = k + deg[a.label];
                if (tk < window.first || tk > window.second) continue;
                Arrow b = a;
                b.label = a.label + "," + std::to_string(k);
                b.source.grade = k;
                b.target.grade = tk;
                g.arrows.push_back(b);
            }
        return g;
    }
    if (q.kind != Kind::Base) throw DomainError("derived constructions start from a base quiver");

    const int n = q.rank();
    const bool framed = kind == Kind::Framed || kind == Kind::FramedDouble || kind == Kind::FramedTriple ||
                        kind == Kind::SimplyFramedTriple;
    const bool doubled = kind == Kind::Double || kind == Kind::Triple || kind == Kind::FramedDouble ||
                         kind == Kind::FramedTriple || kind == Kind::SimplyFramedTriple;
    const bool loops = kind == Kind::Triple || kind == Kind::FramedTriple || kind == Kind::SimplyFramedTriple;
    // a_i^* only when the framing arrows are doubled too
    const bool star_framing = kind == Kind::FramedDouble || kind == Kind::FramedTriple;

    QuiverData r = q;
    r.kind = kind;
    if (framed)
        for (int i = 1; i <= n; ++i) r.vertices.push_back(framing_vertex(i));
    if (doubled)
        for (auto [i, j] : q.orientation) r.arrows.push_back(Arrow{alpha_label(i, j, true), base_vertex(i), base_vertex(j)});
    if (framed)
        for (int i = 1; i <= n; ++i)
            r.arrows.push_back(Arrow{"a_" + std::to_string(i), base_vertex(i), framing_vertex(i)});
    if (star_framing)
        for (int i = 1; i <= n; ++i)
            r.arrows.push_back(Arrow{"a*_" + std::to_string(i), framing_vertex(i), base_vertex(i)});
    if (loops)
        for (int i = 1; i <= n; ++i) r.arrows.push_back(Arrow{"eps_" + std::to_string(i), base_vertex(i), base_vertex(i)});
    return r;
}

DimVec DimVec::delta(int i) {
    DimVec d(false);
    d.set(i, 0, 1);
    return d;
}

DimVec DimVec::delta(int i, int k) {
    DimVec d(true);
    d.set(i, k, 1);
    return d;
}

long DimVec::get(int i, int k) const {
    auto it = v_.find({i, k});
    return it == v_.end() ? 0 : it->second;
}

void DimVec::add(int i, int k, long n) { set(i, k, get(i, k) + n); }

void DimVec::set(int i, int k, long n) {
    if (!graded_ && k != 0) throw DomainError("ungraded dimension vector with a grade");
    if (n == 0) v_.erase({i, k});
    else v_[{i, k}] = n;
}

long DimVec::total() const {
    long s = 0;
    for (const auto& [key, n] : v_) s += n;
    return s;
}

namespace {

bool compatible(const DimVec& a, const DimVec& b) { return a.graded() == b.graded() || a.is_zero() || b.is_zero(); }

}  // namespace

DimVec DimVec::operator+(const DimVec& o) const {
    if (!compatible(*this, o)) throw DomainError("mismatched supports");
    DimVec r(graded_ || o.graded_);
    r.v_ = v_;
    for (const auto& [key, n] : o.v_) r.add(key.first, key.second, n);
    return r;
}

DimVec DimVec::operator-(const DimVec& o) const { return *this + o.scaled(-1); }

DimVec DimVec::scaled(long k) const {
    DimVec r(graded_);
    if (k == 0) return r;
    for (const auto& [key, n] : v_) r.v_[key] = n * k;
    return r;
}

bool DimVec::leq(const DimVec& o) const {
    DimVec d = o - *this;
    return d.nonnegative();
}

bool DimVec::nonnegative() const {
    for (const auto& [key, n] : v_)
        if (n < 0) return false;
    return true;
}

std::string DimVec::to_string() const {
    std::string s;
    for (const auto& [key, n] : v_) {
        if (!s.empty()) s += " + ";
        if (n != 1) s += std::to_string(n) + "*";
        s += "d(" + std::to_string(key.first);
        if (graded_) s += "," + std::to_string(key.second);
        s += ")";
    }
    return s.empty() ? "0" : s;
}

DimVec cartan_apply(const QuiverData& q, const DimVec& v, const DimVec& w) {
    if (!compatible(v, w)) throw DomainError("mismatched supports");
    const bool graded = v.graded() || w.graded();
    DimVec r(graded);
    for (const auto& [key, n] : w.entries()) r.add(key.first, key.second, n);
    for (const auto& [key, n] : v.entries()) {
        auto [j, k] = key;
        if (j < 1 || j > q.rank()) throw DomainError("vertex " + std::to_string(j) + " not in the quiver");
        if (graded) {
            if (q.c(j, j) != 2) throw DomainError("graded Cartan pairing needs c_ii = 2");
            r.add(j, k - 1, -n);
            r.add(j, k + 1, -n);
        }
        for (int i = 1; i <= q.rank(); ++i) {
            if (graded && i == j) continue;
            if (q.c(i, j) != 0) r.add(i, k, -q.c(i, j) * n);
        }
    }
    return r;
}

bool is_l_dominant(const DimVec& x) { return x.nonnegative(); }

long hall_pairing(const QuiverData& q, const DimVec& v1, const DimVec& v2) {
    if (v1.graded() || v2.graded() || q.kind == Kind::Graded) throw DomainError("hall_pairing needs ungraded data");
    long s = 0;
    for (const auto& a : q.arrows) {
        if (a.source.framing || a.target.framing) continue;
        if (q.kind != Kind::Base && a.label.rfind("alpha_", 0) != 0) continue;
        s += v1.get(a.source.base) * v2.get(a.target.base);
    }
    return s;
}

int hall_sign(const QuiverData& q, const DimVec& v1, const DimVec& v2) {
    return hall_pairing(q, v1, v2) % 2 == 0 ? 1 : -1;
}

std::vector<long> leading_minors(const QuiverData& q) {
    // Bareiss fraction-free elimination; the k-th pivot is the k-th minor.
    const int n = q.rank();
    std::vector<std::vector<long>> a(n, std::vector<long>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = q.cartan[i][j];
    std::vector<long> minors;
    long prev = 1;
    for (int k = 0; k < n; ++k) {
        minors.push_back(a[k][k]);
        if (a[k][k] == 0) {
            // minors beyond a zero pivot are computed directly
            for (int m = k + 2; m <= n; ++m) {
                std::vector<std::vector<long>> b(m, std::vector<long>(m));
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) b[i][j] = q.cartan[i][j];
                long det = 0;
                std::vector<int> perm(m);
                std::iota(perm.begin(), perm.end(), 0);
                do {
                    long p = 1;
                    for (int i = 0; i < m; ++i) p *= b[i][perm[i]];
                    int inv = 0;
                    for (int i = 0; i < m; ++i)
                        for (int j = i + 1; j < m; ++j)
                            if (perm[i] > perm[j]) ++inv;
                    det += inv % 2 ? -p : p;
                } while (std::next_permutation(perm.begin(), perm.end()));
                minors.push_back(det);
            }
            return minors;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return minors;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::ordered_json to_json(const QuiverData& q) {
    nlohmann::ordered_json j;
    j["type"] = q.type;
    j["kind"] = kind_name(q.kind);
    auto& vs = j["vertices"] = nlohmann::ordered_json::array();
    for (const auto& v : q.vertices) vs.push_back(v.to_string());
    auto& as = j["arrows"] = nlohmann::ordered_json::array();
    for (const auto& a : q.arrows)
        as.push_back({{"label", a.label}, {"source", a.source.to_string()}, {"target", a.target.to_string()}});
    j["cartan"] = q.cartan;
    auto& o = j["orientation"] = nlohmann::ordered_json::array();
    for (auto [a, b] : q.orientation) o.push_back({a, b});
    if (q.window) j["window"] = {q.window->first, q.window->second};
    return j;
}

QuiverData quiver_from_json(const nlohmann::json& j) {
    try {
        std::string type = j.at("type").get<std::string>();
        if (!j.contains("vertices") && !j.contains("arrows")) return quiver_by_name(type);
        QuiverData q;
        q.type = type;
        q.kind = j.contains("kind") ? parse_kind(j.at("kind").get<std::string>()) : Kind::Base;
        for (const auto& v : j.at("vertices")) q.vertices.push_back(Vertex::parse(v.get<std::string>()));
        for (const auto& a : j.at("arrows"))
            q.arrows.push_back(Arrow{a.at("label").get<std::string>(), Vertex::parse(a.at("source").get<std::string>()),
                                     Vertex::parse(a.at("target").get<std::string>())});
        if (j.contains("orientation")) {
            for (const auto& p : j.at("orientation")) q.orientation.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
        } else {
            for (const auto& a : q.arrows)
                if (!a.source.framing && !a.target.framing && a.label.rfind("alpha_", 0) == 0)
                    q.orientation.emplace_back(a.target.base, a.source.base);
        }
        if (j.contains("cartan")) {
            q.cartan = j.at("cartan").get<std::vector<std::vector<int>>>();
        } else {
            int n = 0;
            for (const auto& v : q.vertices)
                if (!v.framing) n = std::max(n, v.base);
            q.cartan = custom_quiver(n, q.orientation).cartan;
        }
        const int n = q.rank();
        for (const auto& row : q.cartan)
            if (static_cast<int>(row.size()) != n) throw DomainError("cartan matrix is not square");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (q.cartan[a][b] != q.cartan[b][a]) throw DomainError("cartan matrix is not symmetric");
        for (const auto& a : q.arrows)
            for (const Vertex* v : {&a.source, &a.target})
                if (std::find(q.vertices.begin(), q.vertices.end(), *v) == q.vertices.end())
                    throw DomainError("arrow " + a.label + " uses an undeclared vertex " + v->to_string());
        if (j.contains("window")) q.window = std::make_pair(j.at("window").at(0).get<int>(), j.at("window").at(1).get<int>());
        return q;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed quiver description: ") + e.what());
    }
}

nlohmann::ordered_json to_json(const DimVec& v) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [key, n] : v.entries()) {
        std::string k = std::to_string(key.first);
        if (v.graded()) k += "," + std::to_string(key.second);
        j[k] = n;
    }
    return j;
}

DimVec dimvec_from_json(const nlohmann::json& j, bool graded) {
    if (!j.is_object()) throw ParseError("dimension vector must be a JSON object");
    DimVec d(graded);
    for (auto it = j.begin(); it != j.end(); ++it) {
        Vertex v = Vertex::parse(it.key());
        if (v.framing) throw ParseError("dimension vectors live on base vertices");
        if (graded != v.grade.has_value())
            throw ParseError(std::string("dimension vector key \"") + it.key() + (graded ? "\" needs a grade" : "\" has a grade"));
        if (!it.value().is_number_integer()) throw ParseError("dimension vector entries must be integers");
        d.add(v.base, v.grade.value_or(0), it.value().get<long>());
    }
    return d;
}

}  // namespace qlg::quiver
