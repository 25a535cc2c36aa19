#pragma once

#include "koszul/quiver.hpp"

namespace koszul::builtin {

// Two-node quiver with r arrows x1..xr: 1 -> 2 and s arrows y1..ys: 2 -> 1,
// relations y_j x_i = 0.  Standard Koszul for the order 1 < 2 and

// self-quadratic-dual; the r = s = 1 member is the running small example.
QuadraticPresentation a_rs(int r, int s);

// Three-node quiver, arrows x1: 1->2, y1: 2->1, x2: 2->3, y2: 3->2 with
// relations x1 y1 and y1 x1 - x2 y2.  Standard Koszul for 3 < 2 < 1.
QuadraticPresentation sl3_quiver();

// Semisimple algebra on n isolated vertices.
QuadraticPresentation semisimple(int n);

// Single vertex, loops x and y, relations x^2 and y^2 - xy.  Not Koszul;
// admits a bimodule map that passes the Braverman-Gaitsgory degree-3 test
// yet fails flatness.
QuadraticPresentation nonkoszul_counterexample();

// Convenience: builds a presentation from arrow specs "id:src>dst" and
// relation strings over length-2 paths like "x1*y1" or "y1*x1 - x2*y2"
// with optional "p/q " coefficient prefixes.
QuadraticPresentation make_presentation(const std::vector<std::string>& vertices,
                                        const std::vector<std::string>& arrow_specs,
                                        const std::vector<std::string>& relation_specs);

}  // namespace koszul::builtin
