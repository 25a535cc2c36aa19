#pragma once

#include <map>
#include <vector>

#include "koszul/quiver.hpp"

namespace koszul {

struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

struct NotFiniteDimensional : CapacityError {
    NotFiniteDimensional(const std::string& what, std::vector<std::size_t> trace)
        : CapacityError(what), dimension_trace(std::move(trace)) {}
    std::vector<std::size_t> dimension_trace;
};

inline constexpr int kDefaultDegreeCap = 12;

// The graded algebra A = T_R(M)/<W> computed degree by degree.  Each graded
// piece carries an ordered basis of reduced path monomials; degree d is built
// as (A_{d-1} (x)_R M) modulo the image of A_{d-2} (x)_R W, which also yields
// the right-multiplication structure constants.  Construction stops at the
// first degree with A_d = 0.
//
// Immutable after build; all queries are const and safe to share across
// threads.
class GradedAlgebra {
  public:
    struct BasisElement {
        Path path;  // reduced monomial; empty for degree 0
        int src = 0;
        int dst = 0;
    };

    static GradedAlgebra build(const QuadraticPresentation& pres, int cap = kDefaultDegreeCap);
    // Builds the graded pieces up to `cap` without demanding nilpotency.
    // Pieces beyond the cap are simply absent, so degree queries past the
    // cap are only meaningful on algebras that did terminate.
    static GradedAlgebra build_truncated(const QuadraticPresentation& pres, int cap);

    bool truncated() const { return truncated_; }

    const QuadraticPresentation& presentation() const { return pres_; }
    const Quiver& quiver() const { return pres_.quiver(); }

    int top_degree() const { return top_degree_; }
    std::size_t dim(int d) const {
        return (d >= 0 && d <= top_degree_) ? basis_[d].size() : 0;
    }
    std::size_t total_dim() const;
    std::vector<std::size_t> dims() const;

    const std::vector<BasisElement>& basis(int d) const { return basis_[d]; }
    // Indices into basis(d) of the (src, dst) component, ascending.
    std::vector<std::size_t> component(int d, int src, int dst) const;
    // Indices into basis(d) with the given source vertex, ascending.
    std::vector<std::size_t> component_src(int d, int src) const;

    // Right multiplication of basis element i of degree d by an arrow.
    // Returns the coordinate vector over basis(d+1) (all zero past top).
    RatVec rmul(int d, std::size_t i, int arrow) const;

    // Class of an arbitrary composable path; zero vector past top degree.
    RatVec reduce_path(const Path& p) const;

    // Product of elements given by coordinate vectors in degrees d1, d2.
    RatVec multiply(int d1, const RatVec& v1, int d2, const RatVec& v2) const;

    // Basis of { z in A_d : z commutes with all idempotents and arrows },
    // canonical in the coordinates of basis(d).  Requires d <= top_degree.
    Subspace center_degree(int d) const;

    // Hilbert matrix entry: dim e_s A_d e_t.
    std::size_t component_dim(int d, int s, int t) const { return component(d, s, t).size(); }

  private:
    static GradedAlgebra build_impl(const QuadraticPresentation& pres, int cap,
                                    bool allow_truncation);

    QuadraticPresentation pres_;
    bool truncated_ = false;
    int top_degree_ = 0;
    std::vector<std::vector<BasisElement>> basis_;  // per degree
    // rmul_[d][i * n_arrows + a]: coordinates over basis_[d+1]; empty vector
    // when the pair does not compose.
    std::vector<std::vector<RatVec>> rmul_;
};

}  // namespace koszul
