#pragma once

// Test-only oracles, kept independent of the construction paths they check.

#include <random>
#include <vector>

#include "koszul/quiver.hpp"

namespace koszul::oracle {

// All composable paths of the given degree, lexicographic in arrow indices.
std::vector<Path> all_paths(const Quiver& q, int degree);

// dim A_d by brute force: enumerate every degree-d path, span the degree-d
// piece of the two-sided ideal <W> by all p*w*q, and count the corank.
std::size_t brute_force_dim(const QuadraticPresentation& pres, int d);

// Same, restricted to the (s, t) component.
std::size_t brute_force_component_dim(const QuadraticPresentation& pres, int d, int s, int t);

// Small random presentation (loops allowed), for involution property tests.
QuadraticPresentation random_presentation(std::mt19937& rng, int max_vertices = 4,
                                          int max_arrows = 6);

}  // namespace koszul::oracle

#include "koszul/polarized.hpp"

namespace koszul::oracle {

// Complete feasibility/boundedness decision for one chamber, independent of
// Fourier-Motzkin: every minimal face of a nonempty polyhedron is the
// solution set of its tight constraints, so the canonical solutions of all
// constraint subsets hit every nonempty chamber; boundedness is decided on
// the recession cone via kernel and extreme-ray candidates.
struct ChamberDecision {
    bool feasible = false;
    bool bounded = false;
};
ChamberDecision chamber_oracle(const PolarizedArrangement& pa, const std::vector<int>& sign);

// Random polarized arrangement with validate() passing (retry loop).
PolarizedArrangement random_arrangement(std::mt19937& rng, int n, int k);

}  // namespace koszul::oracle
