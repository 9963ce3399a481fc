#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qlg/alg/laurent.hpp"
#include "qlg/quiver/quiver.hpp"

namespace qlg::grass {

using alg::Rational;
using Matrix = std::vector<std::vector<Rational>>;  // rows x cols

struct ArrowAction {
    std::string label;
    int source = 0, target = 0;  // base vertices; eps is a loop
    int degree = 0;
    Matrix m;                    // on the whole module
};

/// Finite-dimensional graded module over Pi~ = Pi-bar (x) C[eps], given in a
/// basis of homogeneous vectors.
struct GradedModule {
    quiver::QuiverData quiver;
    int i = 0, k = 0, l = 0;
    int shift = 0;  // the [-k-l] of the definition, kept as metadata
    std::vector<std::pair<int, int>> basis;  // (vertex, degree)
    std::vector<std::string> labels;
    std::vector<ArrowAction> actions;

    int dim() const { return static_cast<int>(basis.size()); }
    const ArrowAction& action(const std::string& label) const;
    /// Dimension of each graded piece (vertex, degree).
    std::map<std::pair<int, int>, int> graded_dims() const;
    /// preprojective, eps_commutes, eps_nilpotent, nilpotent
    std::map<std::string, bool> verify() const;
    /// Common kernel of all arrows and eps, as basis indices (homogeneous basis).
    std::vector<int> socle() const;
    nlohmann::ordered_json to_json() const;
};

/// Pi-bar for type A_n: paths of the double quiver modulo the preprojective
/// relation, with a basis of paths per (source, target).
class Preprojective {
public:
    explicit Preprojective(int n);
    int rank() const { return n_; }

    struct Arrow {
        std::string label;
        int source, target;
        int partner;  // index of the starred (or unstarred) arrow
    };
    const std::vector<Arrow>& arrows() const { return arrows_; }
    using Path = std::vector<int>;  // arrow indices in traversal order
    /// Basis paths starting at vertex s (all targets and lengths).
    std::vector<Path> basis_from(int s) const;
    /// Coordinates of a path in the basis of its (source, target, length) component.
    std::vector<std::pair<Path, Rational>> normal_form(int s, const Path& p) const;
    /// Total dimension of Pi-bar e_s.
    int dim_from(int s) const { return static_cast<int>(basis_from(s).size()); }

private:
    struct Component {
        std::vector<Path> paths;  // all paths
        std::vector<int> pivot_row;  // per path: row of the reduced ideal basis or -1
        std::vector<std::vector<Rational>> rows;  // reduced ideal basis
        std::vector<int> basis;  // indices of non-pivot paths
    };
    int target_of(int s, const Path& p) const;
    int n_;
    std::vector<Arrow> arrows_;
    std::map<std::tuple<int, int, int>, Component> comp_;  // (s, t, length)
};

/// D(Pi~^l e_i) with the grading shift [-k-l]; type A_n, n <= 3.
GradedModule build_injective(const quiver::QuiverData& q, int i, int k, int l);

struct SubmoduleCert {
    quiver::DimVec v{true};            // graded, keys (vertex, degree)
    std::vector<int> basis;            // coordinate vectors spanning the subspace
    std::map<std::string, bool> stable;  // per arrow label
    bool verified() const;
};

/// Arrow-stable graded subspaces, optionally only those of dimension v.
/// Requires every graded piece to have dimension <= 1 (isolated points);
/// larger pieces are reported as a positive-dimensional family and refused.
std::vector<SubmoduleCert> enumerate_graded_submodules(const GradedModule& M,
                                                       const std::optional<quiver::DimVec>& v = std::nullopt);

struct EulerKrReport {
    long grassmannian_count = 0;
    long kr_dim = 0;
    bool refinement_ok = false;   // every nonzero v carries A_{i,k+l}^-1 and lies in the A^-1 cone
    bool monomials_match = false;  // submodule monomials equal the q-character as multisets
    bool pass() const { return grassmannian_count == kr_dim && refinement_ok; }
    nlohmann::ordered_json to_json() const;
};

EulerKrReport euler_vs_kr(const quiver::QuiverData& q, int i, int k, int l);

}  // namespace qlg::grass
