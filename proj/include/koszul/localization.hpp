#pragma once

#include <optional>

#include "koszul/deformation.hpp"
#include "koszul/highest_weight.hpp"

namespace koszul {

// A mathematical check that must hold by theorem failed; indicates corrupt
// input or an engine bug, never a property of a valid instance.
struct CheckError : std::runtime_error {
    explicit CheckError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Deformed standard modules

// V~_alpha = e_alpha A~ / e_alpha A~ eps_alpha A~, computed per degree inside
// the built deformed algebra.
struct DeformedStandard {
    int alpha = 0;
    int cap = 0;
    std::vector<std::vector<std::size_t>> ambient;  // e_alpha A~_d indices
    std::vector<Subspace> killed;                   // N_d in ambient coordinates
    std::vector<std::size_t> dims;                  // quotient dimensions
    std::vector<std::size_t> expected;              // sum_k dim V_{alpha,d-2k} dim Sym^k U
    bool flat = false;

    // class of an ambient-coordinate vector (non-pivot coordinates)
    RatVec reduce(int d, const RatVec& ambient_vec) const;
    std::size_t dim(int d) const { return dims[d]; }
};

// Throws CheckError when the rank audit fails on a deformation claimed flat.
DeformedStandard deformed_standard(const DeformedAlgebra& da, const OrderedPresentation& op,
                                   int alpha, bool require_flat = true);

// h_alpha on one central element zeta in A~_d: coefficients over the degree
// d/2 U-monomials.  Verifies zeta acts by that scalar on every basis vector
// of V~ up to the algebra cap; throws CheckError otherwise.
RatVec central_character_of(const DeformedAlgebra& da, const DeformedStandard& v, int d,
                            const RatVec& zeta);

// Z(A~)_d: commutant of idempotents and arrows inside A~_d (U is central by
// construction).  Requires d + 1 <= da.cap().
Subspace deformed_center(const DeformedAlgebra& da, int d);

// ---------------------------------------------------------------------------
// Localization algebras (abstract data, engine-built or hand-coded)

struct LocalizationAlgebra {
    std::size_t u_dim = 0;
    std::size_t index_count = 0;
    int cap = 2;                        // degrees carried: 0..cap
    std::vector<std::size_t> z_dims;    // dim Z_d
    // h[alpha][d]: (#U-monomials of degree d) x z_dims[d]
    std::vector<std::vector<RationalMatrix>> h;
    // u_action[d][i * u_dim + j]: coordinates of u_j * zeta_i over Z_{d+2}
    // (present when d + 2 <= cap and products are known)
    std::vector<std::vector<RatVec>> u_action;
    bool products_known = false;
    RationalMatrix u_inclusion;  // z_dims[2] x u_dim: U -> Z_2
    std::string label;
};

struct FiberedArrangement {
    std::size_t e_dim = 0, f_dim = 0;
    RationalMatrix projection;  // f_dim x e_dim, surjective
    std::vector<Subspace> h;    // H_alpha in E, projecting isomorphically onto F
    Subspace kernel() const { return Subspace::from_span(projection.kernel()); }
};

// E = Z_2^*, F = U^*, H_alpha = image of the degree-2 part of h_alpha^*.
// Throws CheckError if some H_alpha fails the isomorphic-projection test.
FiberedArrangement fibered(const LocalizationAlgebra& la);

// E^* ->> E^*/F^* with subspaces H_alpha^perp; involutive up to the
// canonical identification of E^** with E.
FiberedArrangement dual_arrangement(const FiberedArrangement& fa);

struct DualityCertificate {
    RationalMatrix pairing;      // e_dim(A) x e_dim(B), perfect
    std::vector<int> bijection;  // index of B matched to each index of A
};

struct DualityReport {
    bool kernels_perpendicular = false;
    bool subspaces_perpendicular = false;
    bool j_transpose = true;  // vacuous when no j data is given
    bool pass = false;
    std::string witness;
};

// Optional j data for route (iii): j[a][b] maps Z(A)_2-side coordinates into
// the opposite base, expressed so that the dual side must be the transpose.
struct JFamily {
    std::vector<std::vector<RationalMatrix>> j;  // [alpha][beta]
};

DualityReport check_duality(const FiberedArrangement& fa, const FiberedArrangement& fb,
                            const DualityCertificate& cert,
                            const std::optional<JFamily>& ja = std::nullopt,
                            const std::optional<JFamily>& jb = std::nullopt);
DualityReport check_duality(const LocalizationAlgebra& za, const LocalizationAlgebra& zb,
                            const DualityCertificate& cert,
                            const std::optional<JFamily>& ja = std::nullopt,
                            const std::optional<JFamily>& jb = std::nullopt);

// ---------------------------------------------------------------------------
// The quiver-side pipeline

struct LocalizationOptions {
    int z_cap = -1;             // default: top_degree(A) + 2
    bool require_checks = true; // insist on the standard-Koszul certificate
};

// Everything the engine knows about Z(A~) for one ordered presentation.
struct QuiverLocalization {
    OrderedPresentation op;
    GradedAlgebra alg;        // A
    DeformedPresentation def; // universal (or supplied) deformation
    DeformedAlgebra da;       // A~, built to z_cap + 1
    int z_cap = 0;
    std::vector<Subspace> z;  // Z(A~)_d in A~_d coordinates, d = 0..z_cap
    Subspace classical_center2;  // Z(A)_2 in A_2 coordinates
    std::vector<DeformedStandard> standards;
    LocalizationAlgebra la;

    // projection of a Z(A~)_2 basis vector to A_2 (u -> 0), as coordinates
    // in the classical degree-2 basis
    RationalMatrix pi2;  // dim A_2 x dim Z_2
};

QuiverLocalization localization_algebra(const OrderedPresentation& op,
                                        const LocalizationOptions& opt = {});
// Same pipeline for a non-universal deformation.
QuiverLocalization localization_algebra(const OrderedPresentation& op,
                                        const DeformedPresentation& def,
                                        const LocalizationOptions& opt = {});

// j_{alpha beta}: Z(A)_2 -> U, as a u_dim x dim Z(A)_2 matrix over the
// canonical bases.  Throws CheckError when the deformation is not flexible
// or a lift-independence check fails.
RationalMatrix character_j(const QuiverLocalization& ql, int alpha, int beta);

// mu(z): the unique expression of z as up-then-down loops, per vertex;
// nu(z): its image in A~_2.
struct UpDownLift {
    // per vertex: coefficient vector over the (up arrow, down arrow) pairs
    std::vector<RatVec> mu;
    std::vector<std::vector<std::pair<int, int>>> pairs;  // the pair lists
    RatVec nu;  // in A~_2 coordinates
};
UpDownLift up_down_lift(const QuiverLocalization& ql, const RatVec& z_in_a2);

enum class TriState { yes, no, indeterminate_to_cap };

struct DiagnosticsReport {
    bool flexible = false;
    TriState malleable = TriState::indeterminate_to_cap;
    bool malleable_applicable = false;  // requires the A = A^op hypothesis
    bool strong_at_point = false;
    bool free_to_cap = false;
    std::size_t generic_fiber_dim = 0;
    RatVec point_used;
    std::vector<Rat> hilbert_numerator;  // p(t) coefficients through cap
    int cap = 0;
};
DiagnosticsReport diagnostics(const QuiverLocalization& ql, bool opposite_iso_flag,
                              const std::vector<long>& seed_primes = {});

struct CanonicalPairing {
    RationalMatrix pairing;  // dim Z(A~)_2 x dim Z(A~!)_2, canonical bases
    std::vector<int> bijection;
    bool perfect = false;
};
// Builds the dual-side localization and the alpha-independent pairing;
// throws CheckError if the per-alpha pairings disagree (Prop-level identity)
// or either side fails to be flexible.
CanonicalPairing canonical_pairing(const QuiverLocalization& ql, const QuiverLocalization& qdual);

// Convenience: U-image inside Z(A~)_2 as a subspace (exactness check data).
Subspace u_image_in_center(const QuiverLocalization& ql);

}  // namespace koszul
