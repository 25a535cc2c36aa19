#pragma once

#include <map>
#include <string>
#include <vector>

#include "koszul/graded_algebra.hpp"

namespace koszul {

// Finitely supported composition: a doubly-infinite sequence of nonnegative
// integers with finite sum, stored sparsely.
class Composition {
  public:
    Composition() = default;
    static Composition of(const std::vector<long>& entries, int origin = 1);

    long at(int i) const;
    void set(int i, long value);
    long total() const;
    std::map<int, long> support() const { return parts_; }  // nonzero entries

    Composition transpose() const;  // nu^t_j = #{i : nu_i >= j}, a partition
    Composition sorted() const;     // nu^+: parts in non-increasing order at 1..
    Composition reversed() const;   // nu^o_i = nu_{-i}
    Composition compacted() const;  // nonzero parts pushed to consecutive 1..m

    // dominance order on partitions (prefix sums); both must be partitions
    // with equal totals
    bool dominated_by(const Composition& other) const;

    bool operator==(const Composition& o) const { return parts_ == o.parts_; }
    std::string str() const;

  private:
    std::map<int, long> parts_;  // only nonzero entries
};

std::vector<Composition> all_compositions(int n);  // positive parts at 1..m

struct BlockPair {
    int n = 0;
    Composition mu, nu;

    // dominant weight with nu_i entries equal to -i, weakly decreasing
    std::vector<long> alpha_nu() const;
    std::vector<long> alpha_mu_reversed() const;  // alpha of mu^o
    // consecutive intervals of {0..n-1} sized by the nonzero parts of mu
    std::vector<std::vector<int>> mu_blocks() const;
    std::vector<std::vector<int>> nu_blocks() const;
};

// A coset w W_nu is represented faithfully by the vector w alpha_nu.
using WeightVector = std::vector<long>;

// I^mu_nu: vectors w alpha_nu that decrease strictly along every mu-block.
// Lexicographically sorted.  Throws CapacityError past the bound.
std::vector<WeightVector> index_set(const BlockPair& bp, int bound = 8);

// Independent re-derivation through the fixed-point condition: w such that
// j < k in one mu-block forces w^{-1}(j) in a strictly later nu-block.
std::vector<WeightVector> index_set_fixed_point(const BlockPair& bp, int bound = 6);

// Nonemptiness criterion mu^+ <= nu^t in dominance order.
bool block_nonempty_criterion(const BlockPair& bp);

struct DoubleCosetReport {
    std::size_t full_size_cosets = 0;
    std::size_t index_count = 0;
    bool bijection_ok = false;
    bool pass = false;
};
// Brute force over S_n (n <= bound): counts double cosets in W_mu \ W / W_nu
// of size |W_mu| x |W_nu| and certifies w -> W_mu w as a bijection from
// I^mu_nu onto them.
DoubleCosetReport double_coset_audit(const BlockPair& bp, int bound = 6);

struct JayTorus {
    std::vector<std::vector<int>> jsets;  // subsets of {0..n-1}, sorted
    std::size_t torus_dim = 0;            // dim t^mu_nu
};
JayTorus jay_torus(const BlockPair& bp);

struct SingleOrbitReport {
    bool pass = true;
    std::string witness;
};
// For each J: the entry multiset of w alpha_nu on J is w-independent.
SingleOrbitReport single_orbit_audit(const BlockPair& bp, int bound = 6);

struct DualBijectionReport {
    std::vector<std::pair<WeightVector, WeightVector>> pairs;  // v -> image
    bool image_in_dual = false;
    bool injective = false;
    bool onto = false;
    bool pass = false;
};
// w W_nu -> w^{-1} w_0 W_{mu^o} with w the longest coset representative and
// w_0 the longest element of W; certified onto I^nu_{mu^o}.
DualBijectionReport dual_bijection(const BlockPair& bp, int bound = 8);

// Exhaustive audit over all ordered pairs of compositions of n; parallelizes
// over pairs with a deterministic result order.
struct BlocksAuditSummary {
    int n = 0;
    std::size_t pairs = 0;
    bool counts_match = true;        // |I| vs full-size double cosets
    bool nonempty_criterion = true;  // nonempty iff mu^+ <= nu^t
    bool fixed_point_match = true;   // index_set vs flag-condition route
    bool single_orbit = true;
    bool dual_bijections = true;
    std::string witness;
};
BlocksAuditSummary blocks_audit_all(int n, int threads = 1);

}  // namespace koszul
