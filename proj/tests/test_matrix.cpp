#include <random>

#include "doctest.h"
#include "koszul/matrix.hpp"

using namespace koszul;

namespace {

RationalMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    RationalMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rat_of(num(rng), den(rng));
    return m;
}

}  // namespace

TEST_CASE("reduce: identity is a fixed point") {
    RationalMatrix id = RationalMatrix::identity(4);
    CHECK(id.reduced() == id);
}

TEST_CASE("reduce: proportional rows collapse") {
    RationalMatrix m = RationalMatrix::from_rows(2, {{rat_of(2), rat_of(4)}, {rat_of(1), rat_of(2)}});
    RationalMatrix r = m.reduced();
    CHECK(r.rank() == 1);
    CHECK(r == RationalMatrix::from_rows(2, {{rat_of(1), rat_of(2)}}));
}

TEST_CASE("reduce is idempotent and rank-preserving on random input") {
    std::mt19937 rng(7);
    for (int t = 0; t < 40; ++t) {
        RationalMatrix m = random_matrix(rng, 5, 5);
        RationalMatrix r = m.reduced();
        CHECK(r.reduced() == r);
        CHECK(r.rank() == m.rank());
    }
}

TEST_CASE("kernel: zero matrix has full kernel") {
    RationalMatrix z(2, 3);
    RationalMatrix k = z.kernel();
    CHECK(k.rows() == 3);
    CHECK(Subspace::from_span(k) == Subspace::full(3));
}

TEST_CASE("kernel: all-ones row") {
    RationalMatrix m = RationalMatrix::from_rows(3, {{rat_of(1), rat_of(1), rat_of(1)}});
    RationalMatrix k = m.kernel();
    CHECK(k.rows() == 2);
    CHECK(Subspace::from_span(k).contains({rat_of(1), rat_of(-1), rat_of(0)}));
}

TEST_CASE("kernel vectors are annihilated (random)") {
    std::mt19937 rng(11);
    for (int t = 0; t < 30; ++t) {
        RationalMatrix m = random_matrix(rng, 3, 5);
        RationalMatrix k = m.kernel();
        CHECK(k.rows() + m.rank() == 5);
        for (std::size_t i = 0; i < k.rows(); ++i) {
            RatVec img = m.apply(k.row(i));
            for (const Rat& x : img) CHECK(is_zero(x));
        }
    }
}

TEST_CASE("annihilator: zero and hyperplane cases") {
    CHECK(Subspace::zero(3).annihilator() == Subspace::full(3));
    Subspace diag = Subspace::from_span(
        RationalMatrix::from_rows(3, {{rat_of(1), rat_of(1), rat_of(1)}}));
    Subspace ann = diag.annihilator();
    CHECK(ann.dim() == 2);
    for (std::size_t i = 0; i < ann.dim(); ++i) {
        Rat s = 0;
        for (std::size_t j = 0; j < 3; ++j) s += ann.basis().at(i, j);
        CHECK(is_zero(s));
    }
}

TEST_CASE("annihilator is an involution on random subspaces") {
    std::mt19937 rng(13);
    for (int t = 0; t < 30; ++t) {
        Subspace s = Subspace::from_span(random_matrix(rng, 2, 5));
        CHECK(s.annihilator().annihilator() == s);
        CHECK(s.dim() + s.annihilator().dim() == 5);
    }
}

TEST_CASE("intersect: coordinate planes meet in the shared axis") {
    Subspace xy = Subspace::from_span(RationalMatrix::from_rows(
        3, {{rat_of(1), rat_of(0), rat_of(0)}, {rat_of(0), rat_of(1), rat_of(0)}}));
    Subspace yz = Subspace::from_span(RationalMatrix::from_rows(
        3, {{rat_of(0), rat_of(1), rat_of(0)}, {rat_of(0), rat_of(0), rat_of(1)}}));
    Subspace axis = intersect(xy, yz);
    CHECK(axis.dim() == 1);
    CHECK(axis.contains({rat_of(0), rat_of(1), rat_of(0)}));
    CHECK(intersect(xy, xy) == xy);
}

TEST_CASE("intersect: ambient mismatch is rejected") {
    CHECK_THROWS_AS(intersect(Subspace::full(2), Subspace::full(3)), AmbientMismatch);
}

TEST_CASE("dimension formula on random pairs") {
    std::mt19937 rng(17);
    for (int t = 0; t < 30; ++t) {
        Subspace a = Subspace::from_span(random_matrix(rng, 2, 4));
        Subspace b = Subspace::from_span(random_matrix(rng, 2, 4));
        CHECK(a.dim() + b.dim() == sum(a, b).dim() + intersect(a, b).dim());
    }
}

TEST_CASE("solve: consistent and inconsistent systems") {
    RationalMatrix m = RationalMatrix::from_rows(2, {{rat_of(1), rat_of(2)}, {rat_of(2), rat_of(4)}});
    RatVec x;
    CHECK(solve(m, {rat_of(3), rat_of(6)}, x));
    CHECK(x[0] + 2 * x[1] == rat_of(3));
    CHECK_FALSE(solve(m, {rat_of(3), rat_of(7)}, x));
}
