#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "koszul/matrix.hpp"

namespace koszul {

struct ContractError : std::runtime_error {
    explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

struct Arrow {
    std::string id;
    int src = 0;
    int dst = 0;
    bool operator==(const Arrow&) const = default;
};

struct Quiver {
    std::vector<std::string> vertices;  // index is the canonical vertex id
    std::vector<Arrow> arrows;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int arrow_count() const { return static_cast<int>(arrows.size()); }
    int vertex_index(const std::string& name) const;
    int arrow_index(const std::string& id) const;
    bool has_loop() const;
    void validate() const;  // unique ids, in-range endpoints

    bool operator==(const Quiver&) const = default;
};

// A path monomial: arrows composed left to right ("ab" traverses a, then b).
struct Path {
    std::vector<int> arrows;
    int src(const Quiver& q) const;  // meaningless for empty paths
    int dst(const Quiver& q) const;
    int degree() const { return static_cast<int>(arrows.size()); }
    bool composable(const Quiver& q) const;
    bool operator==(const Path&) const = default;
    bool operator<(const Path& o) const { return arrows < o.arrows; }
    std::string str(const Quiver& q) const;
};

// Ordered list of the degree-2 monomials from vertex s to vertex t
// (lexicographic in arrow indices).  These index the coordinates in which
// all degree-2 relation data is stored.
std::vector<std::pair<int, int>> deg2_monomials(const Quiver& q, int s, int t);

// One term of a hand-written relation.
struct RelationTerm {
    Rat coeff;
    Path path;  // degree 2
};

// Parses a relation expression like "y1.x1 - x2.y2" or "1/2*x.y + y.x"
// (paths are arrow ids joined by '.', optional rational coefficient before
// '*').  Throws ContractError on unknown ids or malformed syntax.
std::vector<RelationTerm> parse_relation(const Quiver& q, const std::string& text);

// Quiver plus a component-pure space of quadratic relations.  Relations are
// stored per (source, target) component as a canonical (RREF) subspace of the
// degree-2 monomial span, so two presentations with equal relation spans
// compare equal.
class QuadraticPresentation {
  public:
    QuadraticPresentation() = default;
    // Validates composability and component purity of each listed relation.
    static QuadraticPresentation make(Quiver q,
                                      const std::vector<std::vector<RelationTerm>>& relations);

    const Quiver& quiver() const { return quiver_; }

    // Relation subspace for the (s, t) component (zero subspace when absent).
    Subspace relations(int s, int t) const;
    const std::map<std::pair<int, int>, Subspace>& relation_map() const { return rel_; }
    std::size_t relation_dim() const;

    // Quadratic dual: one reversed arrow per arrow, relations the perp of W
    // under the pairing <f (x) g, m (x) m'> = f(m') g(m).
    QuadraticPresentation quadratic_dual() const;

    // Opposite algebra: arrows reversed, relation monomials reversed.
    QuadraticPresentation opposite() const;

    bool operator==(const QuadraticPresentation&) const = default;

  private:
    Quiver quiver_;
    std::map<std::pair<int, int>, Subspace> rel_;  // only nonzero components
};

}  // namespace koszul
