#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace qlg::quiver {

/// A vertex of a (possibly framed, possibly graded) quiver: base vertex i,
/// its framing copy i', optionally paired with a grade k.
struct Vertex {
    int base = 0;
    bool framing = false;
    std::optional<int> grade;

    std::string to_string() const;
    static Vertex parse(const std::string& s);
    friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

struct Arrow {
    std::string label;
    Vertex source, target;
    friend bool operator==(const Arrow&, const Arrow&) = default;
};

enum class Kind { Base, Double, Triple, Framed, FramedDouble, FramedTriple, SimplyFramedTriple, Graded };

std::string kind_name(Kind k);
Kind parse_kind(const std::string& s);

struct QuiverData {
    std::string type;  // "A3", "D4", "Jordan", "custom"
    Kind kind = Kind::Base;
    std::vector<Vertex> vertices;
    std::vector<Arrow> arrows;
    /// Cartan matrix on base vertices 1..rank(), c_ij = 2 delta_ij - #(edges i-j)
    /// counted in both directions (a loop contributes -2 to c_ii).
    std::vector<std::vector<int>> cartan;
    /// Arrow orientation on base vertices: (i,j) present when alpha_ij: j -> i.
    std::vector<std::pair<int, int>> orientation;
    std::optional<std::pair<int, int>> window;  // graded quivers only

    int rank() const { return static_cast<int>(cartan.size()); }
    int c(int i, int j) const { return cartan.at(i - 1).at(j - 1); }
    bool is_dynkin_a() const { return type.size() > 1 && type[0] == 'A'; }
    /// n for "A<n>", 0 otherwise.
    int a_rank() const;
    friend bool operator==(const QuiverData&, const QuiverData&) = default;
};

QuiverData dynkin_a(int n);
QuiverData dynkin_d(int n);
QuiverData jordan();
/// Base quiver from vertex count and arrows (j -> i stored as (i, j) pairs).
QuiverData custom_quiver(int n, const std::vector<std::pair<int, int>>& edges_target_source);
/// "A2", "D4", "Jordan".
QuiverData quiver_by_name(const std::string& name);

struct DegreeMap {
    std::map<std::string, int> by_label;  // exact labels win
    /// Defaults: alpha, alpha*, a, a* -> -1 and eps -> 2.
    bool use_defaults = true;
};

/// Derived constructions; kind Graded needs a window [kmin, kmax].
QuiverData derive_quiver(const QuiverData& q, Kind kind, const std::optional<DegreeMap>& degrees = std::nullopt,
                         std::pair<int, int> window = {0, 0});

/// Dimension vector on I (ungraded) or I x Z (graded); zero entries dropped.
class DimVec {
public:
    DimVec() = default;
    explicit DimVec(bool graded) : graded_(graded) {}

    static DimVec delta(int i);
    static DimVec delta(int i, int k);

    bool graded() const { return graded_; }
    long get(int i, int k = 0) const;
    void add(int i, int k, long n);
    void set(int i, int k, long n);
    const std::map<std::pair<int, int>, long>& entries() const { return v_; }
    bool is_zero() const { return v_.empty(); }
    long total() const;

    DimVec operator+(const DimVec& o) const;
    DimVec operator-(const DimVec& o) const;
    DimVec scaled(long k) const;
    /// Componentwise v' <= v.
    bool leq(const DimVec& o) const;
    bool nonnegative() const;

    std::string to_string() const;
    friend bool operator==(const DimVec&, const DimVec&) = default;

private:
    bool graded_ = false;
    std::map<std::pair<int, int>, long> v_;
};

/// w - c v, graded or ungraded according to the supports.
DimVec cartan_apply(const QuiverData& q, const DimVec& v, const DimVec& w);
bool is_l_dominant(const DimVec& x);
/// sum over arrows alpha: i -> j of v1_i v2_j (base arrows only).
long hall_pairing(const QuiverData& q, const DimVec& v1, const DimVec& v2);
/// (-1)^{(v1|v2)}
int hall_sign(const QuiverData& q, const DimVec& v1, const DimVec& v2);
/// Leading principal minors of the Cartan matrix.
std::vector<long> leading_minors(const QuiverData& q);

nlohmann::ordered_json to_json(const QuiverData& q);
QuiverData quiver_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const DimVec& v);
DimVec dimvec_from_json(const nlohmann::json& j, bool graded);

}  // namespace qlg::quiver
