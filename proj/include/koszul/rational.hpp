#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace koszul {

// Exact rational scalar. All arithmetic in the engine goes through this
// type; there is no floating point anywhere.
using Rat = mpq_class;
using RatVec = std::vector<Rat>;

inline Rat rat_of(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p", "-p", "p/q".  Throws std::invalid_argument on malformed input.
Rat parse_rat(const std::string& text);

// Serializes as "p" or "p/q" (canonical form, denominator positive).
std::string rat_str(const Rat& r);

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

}  // namespace koszul
