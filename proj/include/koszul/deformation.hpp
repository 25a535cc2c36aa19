#pragma once

#include <map>

#include "koszul/graded_algebra.hpp"

namespace koszul {

// Exponent vectors of total degree `total` over `dim` variables, in a fixed
// lexicographic order (first variable heaviest).
std::vector<std::vector<int>> exponent_vectors(std::size_t dim, int total);

// The base of a graded deformation: U together with the map psi from the
// dual of the degree-2 center of the quadratic dual.  For the universal
// deformation psi is the identity matrix.
struct DeformationBase {
    std::size_t u_dim = 0;
    Subspace dual_center2;  // Z(A^!)_2 in the coordinates of the dual algebra's degree-2 basis
    RationalMatrix psi;     // u_dim x dual_center2.dim()
};

// Presentation plus the bimodule map Psi: W -> R (x) U defining the deformed
// relations w - Psi(w).  Psi necessarily kills off-diagonal components; it is
// stored extended to every loop component (its restriction to W is what the
// deformed ideal uses).
struct DeformedPresentation {
    QuadraticPresentation pres;
    DeformationBase base;
    // per vertex v: u_dim x #monos(v, v); U-coordinates of Psi°(w)
    std::vector<RationalMatrix> psi_loops;

    RatVec psi_apply(int v, const RatVec& loop_vec) const;
};

// U := Z(A^!)_2^* with psi the identity; deformed relations w - Psi(w).
// The caller is expected to have Koszul-certified `pres` (or to knowingly
// override, as in the non-Koszul counterexample).
DeformedPresentation universal_deformation(const QuadraticPresentation& pres);

// Base change along psi (a u'_dim x dim Z(A^!)_2 matrix).
DeformedPresentation from_psi(const QuadraticPresentation& pres, const RationalMatrix& psi);

struct RawBimoduleMap;

// Wraps an arbitrary candidate bimodule map (not necessarily flat) as a
// deformed presentation.  Throws if the map is nonzero on off-diagonal W.
DeformedPresentation deformation_from_map(const QuadraticPresentation& pres,
                                          const RawBimoduleMap& bm);

// An arbitrary candidate bimodule map for flatness testing, given per
// component; components absent from the map are zero.
struct RawBimoduleMap {
    std::size_t u_dim = 0;
    std::map<std::pair<int, int>, RationalMatrix> comp;  // u_dim x #monos(s, t)
};

struct BGReport {
    bool bg_vanishes;             // (b (x) id - id (x) b) = 0 on (W(x)M) n (M(x)W)
    bool factors_through_center;  // Psi° kills the perp of Z(A^!)_2 inside W
    bool pass;                    // both routes agree (they must) and hold
};
// Throws ContractError if the map is nonzero on an off-diagonal piece of W.
BGReport bg_flatness_check(const QuadraticPresentation& pres, const RawBimoduleMap& bm);
BGReport bg_flatness_check(const DeformedPresentation& def);

// The graded algebra A~ = T_R(M) (x) Sym U / < w - Psi(w) >, built degree by
// degree over the rationals with basis elements (reduced path monomial) x
// (monomial in U).  U sits in degree 2, so every graded piece is finite
// dimensional; the flatness audit compares dim A~_d with
// sum_k dim A_{d-2k} * dim Sym^k U.  Non-flat deformations are representable;
// the audit reports, it does not throw.
class DeformedAlgebra {
  public:
    struct BasisElement {
        Path path;               // may be empty (pure central element)
        std::vector<int> umono;  // exponents over the U basis
        int src = 0, dst = 0;
        int parent = -1;      // index in the previous degree (arrow elements)
        int last_arrow = -1;  // -1 for pure central elements
        int udeg = 0;
    };

    struct Audit {
        std::vector<std::size_t> deformed_dims;
        std::vector<std::size_t> expected_dims;
        std::vector<bool> degree_ok;
        bool pass = true;
    };

    static DeformedAlgebra build(const DeformedPresentation& def, int cap);

    const DeformedPresentation& presentation() const { return def_; }
    const GradedAlgebra& classical() const { return alg_; }
    int cap() const { return cap_; }
    std::size_t u_dim() const { return def_.base.u_dim; }

    std::size_t dim(int d) const {
        return (d >= 0 && d <= cap_) ? basis_[d].size() : 0;
    }
    const std::vector<BasisElement>& basis(int d) const { return basis_[d]; }
    std::vector<std::size_t> component_src(int d, int src) const;
    std::vector<std::size_t> component(int d, int src, int dst) const;

    // Right multiplication by an arrow (degree +1) or a U generator
    // (degree +2).  Throws CapacityError past the cap.
    RatVec rmul_arrow(int d, std::size_t i, int arrow) const;
    RatVec rmul_u(int d, std::size_t i, std::size_t j) const;

    // v * (path monomial * u monomial); v in degree d.
    RatVec multiply_monomial(int d, const RatVec& v, const Path& p,
                             const std::vector<int>& umono) const;
    // v * w for w a coordinate vector in degree dw.
    RatVec multiply(int dv, const RatVec& v, int dw, const RatVec& w) const;
    // Class of e_v * umono * path (reduction of an arbitrary monomial).
    RatVec reduce_monomial(int v, const Path& p, const std::vector<int>& umono) const;

    // Setting U -> 0: the first dim A_d coordinates of degree d are the
    // classical standard monomials, in the classical order.
    std::size_t classical_dim(int d) const { return alg_.dim(d); }

    const Audit& audit() const { return audit_; }

  private:
    DeformedPresentation def_;
    GradedAlgebra alg_;  // the undeformed algebra (truncated build)
    int cap_ = 0;
    std::vector<std::vector<BasisElement>> basis_;
    std::vector<std::vector<RatVec>> rmul_arrow_;  // [d][i * na + a] -> degree d+1
    std::vector<std::vector<RatVec>> rmul_u_;      // [d][i * udim + j] -> degree d+2
    Audit audit_;
};

// Specialization A_chi = T_R(M) / < w - chi(Psi(w)) > with its length
// filtration; reports associated-graded dimensions against dim A_d.
struct SpecializeReport {
    std::vector<std::size_t> gr_dims;  // through the cap
    std::vector<std::size_t> a_dims;
    bool gr_matches_a;
    std::size_t total_dim;
    int cap;
};
SpecializeReport specialize(const DeformedPresentation& def, const RatVec& chi, int cap);

}  // namespace koszul
