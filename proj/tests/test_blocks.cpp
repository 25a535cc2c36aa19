#include <random>

#include "doctest.h"
#include "koszul/blocks.hpp"

using namespace koszul;

namespace {

// origin 0: nu = (2, 1) at indices 0, 1 gives alpha_nu = (0, 0, -1)
BlockPair make(int n, std::vector<long> mu, std::vector<long> nu) {
    return {n, Composition::of(mu, 0), Composition::of(nu, 0)};
}

}  // namespace

TEST_CASE("composition calculus: transpose, sorted, reversed") {
    auto nu = Composition::of({2, 1});
    CHECK(nu.transpose() == Composition::of({2, 1}));  // staircase self-transpose
    CHECK(Composition::of({1, 1, 1}).transpose() == Composition::of({3}));
    CHECK(Composition::of({1, 3, 2}).sorted() == Composition::of({3, 2, 1}));
    auto rev = Composition::of({2, 1}).reversed();
    CHECK(rev.at(-1) == 2);
    CHECK(rev.at(-2) == 1);
    CHECK(rev.compacted() == Composition::of({1, 2}));
}

TEST_CASE("(nu^t)^t = nu^+ on random compositions of n <= 8") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> nn(1, 8);
    for (int t = 0; t < 200; ++t) {
        int n = nn(rng);
        std::vector<long> parts;
        long rest = n;
        while (rest > 0) {
            std::uniform_int_distribution<long> pp(1, rest);
            long p = pp(rng);
            parts.push_back(p);
            rest -= p;
        }
        std::shuffle(parts.begin(), parts.end(), rng);
        auto nu = Composition::of(parts);
        CHECK(nu.transpose().transpose() == nu.sorted());
    }
}

TEST_CASE("index sets: the (2,1)/(2,1) singleton and the regular count") {
    auto bp = make(3, {2, 1}, {2, 1});
    auto idx = index_set(bp);
    REQUIRE(idx.size() == 1);
    CHECK(idx[0] == WeightVector{0, -1, 0});

    // mu regular: no filter, |I| = |W/W_nu| = n! / prod nu_i!
    auto reg = make(4, {1, 1, 1, 1}, {2, 2});
    CHECK(index_set(reg).size() == 24 / (2 * 2));

    // dominance failure: empty
    auto empty = make(3, {3}, {1, 1, 1});
    CHECK(empty.mu.sorted() == Composition::of({3}));
    CHECK(empty.nu.transpose() == Composition::of({3}));
    CHECK(block_nonempty_criterion(empty));  // (3) <= (3): nonempty
    auto really_empty = make(3, {3}, {3});   // nu^t = (1,1,1), mu^+ = (3)
    CHECK_FALSE(block_nonempty_criterion(really_empty));
    CHECK(index_set(really_empty).empty());
}

TEST_CASE("capacity bound is enforced") {
    auto bp = make(3, {2, 1}, {2, 1});
    CHECK_THROWS_AS(index_set(bp, 2), CapacityError);
}

TEST_CASE("double cosets: (2,1)/(2,1) has exactly one full-size coset") {
    auto rep = double_coset_audit(make(3, {2, 1}, {2, 1}));
    CHECK(rep.full_size_cosets == 1);
    CHECK(rep.index_count == 1);
    CHECK(rep.bijection_ok);
    CHECK(rep.pass);
}

TEST_CASE("mu regular: every double coset is a right W_nu-coset") {
    auto rep = double_coset_audit(make(4, {1, 1, 1, 1}, {2, 1, 1}));
    CHECK(rep.index_count == 12);
    CHECK(rep.full_size_cosets == 12);
    CHECK(rep.pass);
}

TEST_CASE("jay torus: the worked (2,1) block and the regular/regular case") {
    auto jt = jay_torus(make(3, {2, 1}, {2, 1}));
    REQUIRE(jt.jsets.size() == 2);
    CHECK(jt.jsets[0] == std::vector<int>{0, 1});
    CHECK(jt.jsets[1] == std::vector<int>{0, 1, 2});
    CHECK(jt.torus_dim == 0);

    // single mu-block (with the block nonempty: nu regular): J = {1..n}
    auto single = jay_torus(make(4, {4}, {1, 1, 1, 1}));
    REQUIRE(single.jsets.size() == 1);
    CHECK(single.jsets[0].size() == 4);
    CHECK(single.torus_dim == 0);

    // mu and nu regular: only k = n satisfies the cardinality equation
    auto reg = jay_torus(make(4, {1, 1, 1, 1}, {1, 1, 1, 1}));
    REQUIRE(reg.jsets.size() == 1);
    CHECK(reg.jsets[0].size() == 4);
    CHECK(reg.torus_dim == 3);
}

TEST_CASE("single orbit audit passes exhaustively for n <= 4") {
    for (int n = 1; n <= 4; ++n)
        for (const auto& mu : all_compositions(n))
            for (const auto& nu : all_compositions(n)) {
                auto rep = single_orbit_audit({n, mu, nu});
                CHECK(rep.pass);
            }
}

TEST_CASE("dual bijection: the worked examples") {
    // mu = (2,1), nu regular: three simples on both sides
    auto bp = make(3, {2, 1}, {1, 1, 1});
    auto rep = dual_bijection(bp);
    CHECK(rep.pairs.size() == 3);
    CHECK(rep.pass);

    // singleton to singleton: the image rearranges alpha of mu^o = (1, 0, 0)
    auto s = dual_bijection(make(3, {2, 1}, {2, 1}));
    REQUIRE(s.pairs.size() == 1);
    CHECK(s.pass);
    CHECK(s.pairs[0].second == WeightVector{1, 0, 0});
}

TEST_CASE("dual bijection is bijective for all n = 4 pairs") {
    for (const auto& mu : all_compositions(4))
        for (const auto& nu : all_compositions(4)) {
            auto rep = dual_bijection({4, mu, nu});
            CHECK(rep.pass);
        }
}

TEST_CASE("dual bijection composed with the reversal identification is an involution") {
    // I^mu_nu -> I^nu_{mu^o} -> I^{mu^o}_{nu^o} -> I^mu_nu, the last step the
    // canonical identification v -> reverse(-v)
    for (int n = 2; n <= 5; ++n)
        for (const auto& mu : all_compositions(n))
            for (const auto& nu : all_compositions(n)) {
                BlockPair bp{n, mu, nu};
                auto first = dual_bijection(bp, 5);
                BlockPair dual{n, nu, mu.reversed()};
                auto second = dual_bijection(dual, 5);
                std::map<WeightVector, WeightVector> smap(second.pairs.begin(),
                                                          second.pairs.end());
                for (const auto& [v, img] : first.pairs) {
                    WeightVector twice = smap.at(img);
                    WeightVector back(twice.rbegin(), twice.rend());
                    for (long& x : back) x = -x;
                    CHECK(back == v);
                }
            }
}

TEST_CASE("exhaustive audit to n = 5 and OpenMP determinism") {
    for (int n = 1; n <= 5; ++n) {
        auto serial = blocks_audit_all(n, 1);
        CHECK(serial.counts_match);
        CHECK(serial.nonempty_criterion);
        CHECK(serial.fixed_point_match);
        CHECK(serial.single_orbit);
        CHECK(serial.dual_bijections);
        auto par = blocks_audit_all(n, 4);
        CHECK(par.counts_match == serial.counts_match);
        CHECK(par.witness == serial.witness);
    }
}
