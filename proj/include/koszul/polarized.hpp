#pragma once

#include "koszul/localization.hpp"

namespace koszul {

struct GenericityError : std::runtime_error {
    explicit GenericityError(const std::string& what) : std::runtime_error(what) {}
};

// The triple (V, eta, xi): V a subspace of Q^n, eta a representative of a
// class in Q^n / V, xi a covector representing a class in (Q^n)^* / V^perp.
// All outputs are invariant under changing the representatives.
struct PolarizedArrangement {
    int n = 0;
    Subspace v;  // canonical basis, dim k
    RatVec eta;
    RatVec xi;
    int k() const { return static_cast<int>(v.dim()); }
};

struct ValidationReport {
    bool pass = true;
    std::string failure;  // names the degenerate index set
};

// Simplicity (every m hyperplanes meet in codimension m or not at all, no
// point on more than k of them) and xi-nonconstancy on every
// positive-dimensional intersection, via exact rank checks.
ValidationReport validate_arrangement(const PolarizedArrangement& pa);

struct Chamber {
    std::vector<int> sign;  // entries +1 / -1
    bool feasible = false;
    bool bounded = false;   // xi bounded above on the chamber
    RatVec vertex;          // p_alpha in Q^n when feasible and bounded
    std::vector<int> basis; // b_alpha: indices of hyperplanes through p_alpha
};

struct ChamberSet {
    std::vector<Chamber> chambers;              // indexed by sign-vector code
    std::vector<std::size_t> index_set;         // codes with alpha in I
};

// Exact-LP chamber enumeration (Fourier-Motzkin elimination per sign vector).
// The OpenMP version writes each chamber into its own slot, so its output is
// byte-identical to the serial reference at any thread count.
ChamberSet enumerate_chambers(const PolarizedArrangement& pa, int threads);
ChamberSet enumerate_chambers_serial(const PolarizedArrangement& pa);

// (V^perp, -xi, -eta), coordinates staying in Q^n; involutive up to choice
// of representatives.
PolarizedArrangement gale_dual(const PolarizedArrangement& pa);
bool arrangement_equal(const PolarizedArrangement& a, const PolarizedArrangement& b);

// E = (Q^n)^*, F = V^*, H_alpha the coordinate subspace on b_alpha.
FiberedArrangement fibered_from_polarized(const PolarizedArrangement& pa, const ChamberSet& cs);

struct GaleConsistencyReport {
    bool hypotheses = false;  // no coordinate line in V, V in no coordinate hyperplane
    bool checks_run = false;  // false when the hypotheses are flagged as reduced
    bool index_sets_equal = false;
    bool bases_complementary = false;
    bool arrangements_dual = false;
    bool differences_span = false;
    bool pass = false;
    std::string witness;
};
GaleConsistencyReport gale_consistency(const PolarizedArrangement& pa, int threads = 1);

}  // namespace koszul
