#include "koszul/blocks.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace koszul {

Composition Composition::of(const std::vector<long>& entries, int origin) {
    Composition c;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i] < 0) throw ContractError("composition entries must be nonnegative");
        if (entries[i] > 0) c.parts_[origin + static_cast<int>(i)] = entries[i];
    }
    return c;
}

long Composition::at(int i) const {
    auto it = parts_.find(i);
    return it == parts_.end() ? 0 : it->second;
}

void Composition::set(int i, long value) {
    if (value == 0)
        parts_.erase(i);
    else
        parts_[i] = value;
}

long Composition::total() const {
    long t = 0;
    for (const auto& [i, v] : parts_) t += v;
    return t;
}

Composition Composition::transpose() const {
    Composition t;
    for (long j = 1;; ++j) {
        long count = 0;
        for (const auto& [i, v] : parts_)
            if (v >= j) ++count;
        if (count == 0) break;
        t.parts_[static_cast<int>(j)] = count;
    }
    return t;
}

Composition Composition::sorted() const {
    std::vector<long> vals;
    for (const auto& [i, v] : parts_) vals.push_back(v);
    std::sort(vals.rbegin(), vals.rend());
    return of(vals, 1);
}

Composition Composition::reversed() const {
    Composition r;
    for (const auto& [i, v] : parts_) r.parts_[-i] = v;
    return r;
}

Composition Composition::compacted() const {
    std::vector<long> vals;
    for (const auto& [i, v] : parts_) vals.push_back(v);
    return of(vals, 1);
}

bool Composition::dominated_by(const Composition& other) const {
    if (total() != other.total()) return false;
    long mine = 0, theirs = 0;
    for (int k = 1; k <= static_cast<int>(total()); ++k) {
        mine += at(k);
        theirs += other.at(k);
        if (mine > theirs) return false;
    }
    return true;
}

std::string Composition::str() const {
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (const auto& [i, v] : parts_) {
        if (!first) os << ", ";
        os << i << ":" << v;
        first = false;
    }
    os << ")";
    return os.str();
}

std::vector<Composition> all_compositions(int n) {
    std::vector<Composition> out;
    std::vector<long> cur;
    auto rec = [&](auto&& self, long rest) -> void {
        if (rest == 0) {
            out.push_back(Composition::of(cur, 1));
            return;
        }
        for (long p = 1; p <= rest; ++p) {
            cur.push_back(p);
            self(self, rest - p);
            cur.pop_back();
        }
    };
    rec(rec, n);
    return out;
}

std::vector<long> BlockPair::alpha_nu() const {
    std::vector<long> a;
    for (const auto& [i, v] : nu.support())
        for (long r = 0; r < v; ++r) a.push_back(-i);
    if (static_cast<int>(a.size()) != n) throw ContractError("nu is not a composition of n");
    return a;  // i ascending gives -i weakly decreasing
}

std::vector<long> BlockPair::alpha_mu_reversed() const {
    BlockPair rev{n, Composition(), mu.reversed()};
    return rev.alpha_nu();
}

namespace {

std::vector<std::vector<int>> blocks_of(const Composition& c, int n) {
    std::vector<std::vector<int>> blocks;
    int pos = 0;
    for (const auto& [i, v] : c.support()) {
        std::vector<int> b;
        for (long r = 0; r < v; ++r) b.push_back(pos++);
        blocks.push_back(std::move(b));
    }
    if (pos != n) throw ContractError("composition blocks do not partition {1..n}");
    return blocks;
}

bool strictly_decreasing_on_blocks(const WeightVector& v,
                                   const std::vector<std::vector<int>>& blocks) {
    for (const auto& b : blocks)
        for (std::size_t t = 0; t + 1 < b.size(); ++t)
            if (v[b[t]] <= v[b[t + 1]]) return false;
    return true;
}

}  // namespace

std::vector<std::vector<int>> BlockPair::mu_blocks() const { return blocks_of(mu, n); }
std::vector<std::vector<int>> BlockPair::nu_blocks() const { return blocks_of(nu, n); }

std::vector<WeightVector> index_set(const BlockPair& bp, int bound) {
    if (bp.n > bound)
        throw CapacityError("index_set: n = " + std::to_string(bp.n) + " exceeds the bound " +
                            std::to_string(bound));
    std::vector<long> a = bp.alpha_nu();
    auto blocks = bp.mu_blocks();
    std::sort(a.begin(), a.end());
    std::vector<WeightVector> out;
    do {
        if (strictly_decreasing_on_blocks(a, blocks)) out.push_back(a);
    } while (std::next_permutation(a.begin(), a.end()));
    std::sort(out.begin(), out.end());
    return out;
}

bool block_nonempty_criterion(const BlockPair& bp) {
    return bp.mu.sorted().dominated_by(bp.nu.transpose());
}

namespace {

std::vector<std::vector<int>> all_perms(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

WeightVector act(const std::vector<int>& w, const std::vector<long>& a) {
    WeightVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[w[i]] = a[i];
    return out;
}

std::vector<int> inverse_perm(const std::vector<int>& w) {
    std::vector<int> inv(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) inv[w[i]] = static_cast<int>(i);
    return inv;
}

std::vector<int> compose(const std::vector<int>& f, const std::vector<int>& g) {
    // (f g)(i) = f(g(i))
    std::vector<int> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[g[i]];
    return out;
}

bool preserves_blocks(const std::vector<int>& w, const std::vector<std::vector<int>>& blocks) {
    for (const auto& b : blocks)
        for (int i : b)
            if (std::find(b.begin(), b.end(), w[i]) == b.end()) return false;
    return true;
}

// longest permutation with w(alpha_nu) = v: each run of equal values in
// alpha_nu maps, in ascending position order, onto the positions of that
// value in v in descending order
std::vector<int> longest_rep(const std::vector<long>& alpha, const WeightVector& v) {
    std::vector<int> w(alpha.size());
    std::map<long, std::vector<int>> where;
    for (std::size_t j = 0; j < v.size(); ++j) where[v[j]].push_back(static_cast<int>(j));
    std::map<long, std::size_t> used;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        auto& positions = where[alpha[i]];
        w[i] = positions[positions.size() - 1 - used[alpha[i]]];
        ++used[alpha[i]];
    }
    return w;
}

}  // namespace

std::vector<WeightVector> index_set_fixed_point(const BlockPair& bp, int bound) {
    if (bp.n > bound) throw CapacityError("index_set_fixed_point: n exceeds the bound");
    std::vector<long> a = bp.alpha_nu();
    auto mublocks = bp.mu_blocks();
    auto nublocks = bp.nu_blocks();
    std::vector<int> nu_block_of(bp.n);
    for (std::size_t b = 0; b < nublocks.size(); ++b)
        for (int i : nublocks[b]) nu_block_of[i] = static_cast<int>(b);

    std::set<WeightVector> out;
    for (const auto& w : all_perms(bp.n)) {
        std::vector<int> inv = inverse_perm(w);
        bool ok = true;
        for (const auto& b : mublocks)
            for (std::size_t s = 0; s < b.size() && ok; ++s)
                for (std::size_t t = s + 1; t < b.size() && ok; ++t)
                    // j < k in one mu-block: w^{-1}(j) sits in a strictly
                    // earlier nu-block (the flag condition, written for the
                    // action (w a)_{w(i)} = a_i)
                    if (nu_block_of[inv[b[s]]] >= nu_block_of[inv[b[t]]]) ok = false;
        if (ok) out.insert(act(w, a));
    }
    return std::vector<WeightVector>(out.begin(), out.end());
}

DoubleCosetReport double_coset_audit(const BlockPair& bp, int bound) {
    if (bp.n > bound) throw CapacityError("double_coset_audit: n exceeds the bound");
    DoubleCosetReport rep;
    auto perms = all_perms(bp.n);
    auto mublocks = bp.mu_blocks();
    auto nublocks = bp.nu_blocks();
    std::vector<std::vector<int>> wmu, wnu;
    for (const auto& w : perms) {
        if (preserves_blocks(w, mublocks)) wmu.push_back(w);
        if (preserves_blocks(w, nublocks)) wnu.push_back(w);
    }
    // double coset of each permutation, keyed by its lexicographically
    // smallest member
    std::map<std::vector<int>, std::vector<int>> coset_key;  // perm -> key
    std::map<std::vector<int>, std::size_t> coset_size;
    for (const auto& w : perms) {
        if (coset_key.count(w)) continue;
        std::set<std::vector<int>> orbit;
        for (const auto& m : wmu)
            for (const auto& v : wnu) orbit.insert(compose(compose(m, w), v));
        const std::vector<int>& key = *orbit.begin();
        for (const auto& el : orbit) coset_key[el] = key;
        coset_size[key] = orbit.size();
    }
    const std::size_t full = wmu.size() * wnu.size();
    for (const auto& [key, size] : coset_size)
        if (size == full) ++rep.full_size_cosets;

    std::vector<WeightVector> idx = index_set(bp, bound);
    rep.index_count = idx.size();

    // w -> W_mu w must biject I^mu_nu with the full-size double cosets
    std::vector<long> a = bp.alpha_nu();
    std::set<std::vector<int>> images;
    rep.bijection_ok = true;
    for (const WeightVector& v : idx) {
        // any permutation with w alpha = v represents the coset w W_nu
        std::vector<int> w = longest_rep(a, v);
        const std::vector<int>& key = coset_key.at(w);
        if (coset_size.at(key) != full || !images.insert(key).second) rep.bijection_ok = false;
    }
    rep.bijection_ok = rep.bijection_ok && images.size() == rep.full_size_cosets;
    rep.pass = rep.bijection_ok && rep.full_size_cosets == rep.index_count;
    return rep;
}

JayTorus jay_torus(const BlockPair& bp) {
    JayTorus jt;
    auto blocks = bp.mu_blocks();
    Composition lambda = bp.nu.transpose();
    const std::size_t m = blocks.size();
    for (std::size_t code = 1; code < (std::size_t{1} << m); ++code) {
        std::vector<int> jset;
        long k = 0;
        for (std::size_t b = 0; b < m; ++b)
            if (code >> b & 1) {
                ++k;
                for (int i : blocks[b]) jset.push_back(i);
            }
        long target = 0;
        for (long t = 1; t <= k; ++t) target += lambda.at(static_cast<int>(t));
        if (static_cast<long>(jset.size()) == target) {
            std::sort(jset.begin(), jset.end());
            jt.jsets.push_back(std::move(jset));
        }
    }
    std::sort(jt.jsets.begin(), jt.jsets.end());
    // indicators in block coordinates
    RationalMatrix span(0, m);
    for (const auto& jset : jt.jsets) {
        RatVec row(m, Rat(0));
        for (std::size_t b = 0; b < m; ++b)
            if (std::find(jset.begin(), jset.end(), blocks[b][0]) != jset.end()) row[b] = 1;
        span.append_row(row);
    }
    jt.torus_dim = m - span.rank();
    return jt;
}

SingleOrbitReport single_orbit_audit(const BlockPair& bp, int bound) {
    if (bp.n > bound) throw CapacityError("single_orbit_audit: n exceeds the bound");
    SingleOrbitReport rep;
    JayTorus jt = jay_torus(bp);
    std::vector<WeightVector> idx = index_set(bp, bound);
    for (const auto& jset : jt.jsets) {
        std::multiset<long> reference;
        bool first = true;
        for (const WeightVector& v : idx) {
            std::multiset<long> entries;
            for (int j : jset) entries.insert(v[j]);
            if (first) {
                reference = entries;
                first = false;
            } else if (entries != reference) {
                rep.pass = false;
                rep.witness = "entry multiset varies on a J-set";
                return rep;
            }
        }
    }
    return rep;
}

DualBijectionReport dual_bijection(const BlockPair& bp, int bound) {
    if (bp.n > bound) throw CapacityError("dual_bijection: n exceeds the bound");
    DualBijectionReport rep;
    std::vector<long> a = bp.alpha_nu();
    std::vector<long> adual = bp.alpha_mu_reversed();
    std::vector<int> w0(bp.n);
    for (int i = 0; i < bp.n; ++i) w0[i] = bp.n - 1 - i;

    std::vector<WeightVector> idx = index_set(bp, bound);
    BlockPair dual{bp.n, bp.nu, bp.mu.reversed()};
    std::vector<WeightVector> didx = index_set(dual, bound);
    std::set<WeightVector> dual_set(didx.begin(), didx.end());

    std::set<WeightVector> images;
    rep.image_in_dual = true;
    rep.injective = true;
    for (const WeightVector& v : idx) {
        std::vector<int> w = longest_rep(a, v);
        std::vector<int> u = compose(inverse_perm(w), w0);
        WeightVector img = act(u, adual);
        if (!dual_set.count(img)) rep.image_in_dual = false;
        if (!images.insert(img).second) rep.injective = false;
        rep.pairs.emplace_back(v, img);
    }
    rep.onto = images.size() == didx.size();
    rep.pass = rep.image_in_dual && rep.injective && rep.onto;
    return rep;
}

BlocksAuditSummary blocks_audit_all(int n, int threads) {
    BlocksAuditSummary sum;
    sum.n = n;
    auto comps = all_compositions(n);
    std::vector<std::pair<Composition, Composition>> pairs;
    for (const auto& mu : comps)
        for (const auto& nu : comps) pairs.emplace_back(mu, nu);
    sum.pairs = pairs.size();

    std::vector<std::string> witnesses(pairs.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, threads))
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        BlockPair bp{n, pairs[p].first, pairs[p].second};
        std::string w;
        auto idx = index_set(bp, n);
        if (idx.empty() != !block_nonempty_criterion(bp)) w += "nonempty-criterion;";
        auto fp = index_set_fixed_point(bp, n);
        if (fp != idx) w += "fixed-point;";
        auto dc = double_coset_audit(bp, n);
        if (!dc.pass) w += "double-coset;";
        if (!single_orbit_audit(bp, n).pass) w += "single-orbit;";
        if (!dual_bijection(bp, n).pass) w += "dual-bijection;";
        witnesses[p] = std::move(w);
    }
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const std::string& w = witnesses[p];
        if (w.empty()) continue;
        if (w.find("nonempty-criterion") != std::string::npos) sum.nonempty_criterion = false;
        if (w.find("fixed-point") != std::string::npos) sum.fixed_point_match = false;
        if (w.find("double-coset") != std::string::npos) sum.counts_match = false;
        if (w.find("single-orbit") != std::string::npos) sum.single_orbit = false;
        if (w.find("dual-bijection") != std::string::npos) sum.dual_bijections = false;
        if (sum.witness.empty())
            sum.witness = "pair (" + pairs[p].first.str() + ", " + pairs[p].second.str() +
                          "): " + w;
    }
    return sum;
}

}  // namespace koszul
