#include <random>

#include "doctest.h"
#include "koszul/builtin.hpp"
#include "koszul/deformation.hpp"
#include "oracles.hpp"

using namespace koszul;

TEST_CASE("universal deformation of a11: single relation yx = u e2") {
    auto def = universal_deformation(builtin::a_rs(1, 1));
    CHECK(def.base.u_dim == 1);
    const Quiver& q = def.pres.quiver();
    // loop component at vertex 2 has the single monomial yx; Psi°(yx) = u
    auto monos2 = deg2_monomials(q, 1, 1);
    REQUIRE(monos2.size() == 1);
    CHECK(monos2[0] == std::make_pair(q.arrow_index("y"), q.arrow_index("x")));
    CHECK(def.psi_loops[1].at(0, 0) == Rat(1));
    // loop component at vertex 1 (monomial xy) maps to zero
    CHECK(is_zero(def.psi_loops[0].at(0, 0)));
}

TEST_CASE("universal deformation of a_rs has base dimension rs") {
    for (int r = 1; r <= 3; ++r)
        for (int s = 1; s <= 2; ++s) {
            auto def = universal_deformation(builtin::a_rs(r, s));
            CHECK(def.base.u_dim == static_cast<std::size_t>(r) * s);
            // every loop monomial y_j x_i at vertex 2 carries its own unit
            // coordinate: the matrix has full rank rs
            CHECK(def.psi_loops[1].rank() == static_cast<std::size_t>(r) * s);
            CHECK(bg_flatness_check(def).pass);
        }
}

TEST_CASE("presentation with W = 0 deforms trivially") {
    auto pres = builtin::make_presentation({"1", "2"}, {"x:1>2", "y:2>1"}, {});
    auto def = universal_deformation(pres);
    CHECK(def.base.u_dim == 0);
}

TEST_CASE("from_psi: identity reproduces the universal deformation, zero kills Psi") {
    auto pres = builtin::a_rs(2, 2);
    auto uni = universal_deformation(pres);
    auto same = from_psi(pres, RationalMatrix::identity(uni.base.u_dim));
    for (int v = 0; v < 2; ++v) CHECK(same.psi_loops[v] == uni.psi_loops[v]);

    auto zero = from_psi(pres, RationalMatrix(0, uni.base.u_dim));
    CHECK(zero.base.u_dim == 0);
    for (int v = 0; v < 2; ++v)
        CHECK(zero.psi_loops[v].rows() == 0);
}

TEST_CASE("from_psi: projection to a one-dimensional base substitutes the matrix") {
    auto pres = builtin::a_rs(2, 1);
    auto uni = universal_deformation(pres);
    REQUIRE(uni.base.u_dim == 2);
    RationalMatrix proj(1, 2);
    proj.at(0, 0) = rat_of(3);
    proj.at(0, 1) = rat_of(5);
    auto def = from_psi(pres, proj);
    REQUIRE(def.base.u_dim == 1);
    // each deformed loop coefficient is the psi-image of the universal one
    CHECK(def.psi_loops[1] == proj.multiply(uni.psi_loops[1]));
    CHECK(bg_flatness_check(def).pass);
    CHECK(from_psi(pres, RationalMatrix::identity(2)).psi_loops[1] == uni.psi_loops[1]);
}

TEST_CASE("bg_flatness_check: universal and zero maps pass") {
    for (const auto& pres : {builtin::a_rs(1, 1), builtin::sl3_quiver()}) {
        auto uni = universal_deformation(pres);
        auto rep = bg_flatness_check(uni);
        CHECK(rep.bg_vanishes);
        CHECK(rep.factors_through_center);

        RawBimoduleMap zero;
        zero.u_dim = 1;
        auto rep0 = bg_flatness_check(pres, zero);
        CHECK(rep0.pass);
    }
}

TEST_CASE("bg_flatness_check rejects a perturbed non-central map on the sl3 dual") {
    auto dual = builtin::sl3_quiver().quadratic_dual();
    // dual relation space at vertex 2 contains x1!y1! + y2!x2!; a map reading
    // off only one of the two loop coordinates does not factor through the
    // center and must fail both routes
    const Quiver& q = dual.quiver();
    RawBimoduleMap bm;
    bm.u_dim = 1;
    auto monos = deg2_monomials(q, 1, 1);
    RationalMatrix m(1, monos.size());
    for (std::size_t i = 0; i < monos.size(); ++i)
        if (monos[i] == std::make_pair(q.arrow_index("x1"), q.arrow_index("y1")))
            m.at(0, i) = 1;
    bm.comp[{1, 1}] = m;
    auto rep = bg_flatness_check(dual, bm);
    CHECK_FALSE(rep.bg_vanishes);
    CHECK_FALSE(rep.factors_through_center);
}

TEST_CASE("bg_flatness_check: off-diagonal Psi is a contract error") {
    auto pres = builtin::sl3_quiver();
    const Quiver& q = pres.quiver();
    // component (1, 3) carries the zero relation space, so a map there is
    // harmless; instead hit a component with actual relations: none are
    // off-diagonal for sl3, so fabricate a quiver with an off-diagonal W
    auto odd = builtin::make_presentation({"1", "2", "3"},
                                          {"a:1>2", "b:2>3", "c:1>2", "d:2>3"},
                                          {"a.b - c.d"});
    RawBimoduleMap bm;
    bm.u_dim = 1;
    auto monos = deg2_monomials(odd.quiver(), 0, 2);
    RationalMatrix m(1, monos.size());
    m.at(0, 0) = 1;
    bm.comp[{0, 2}] = m;
    CHECK_THROWS_AS(bg_flatness_check(odd, bm), ContractError);
    (void)q;
}

TEST_CASE("deformed algebra of a11: degree-2 basis {xy, u e1, u e2}") {
    auto def = universal_deformation(builtin::a_rs(1, 1));
    auto da = DeformedAlgebra::build(def, 6);
    CHECK(da.audit().pass);
    REQUIRE(da.dim(2) == 3);
    const auto& b2 = da.basis(2);
    // classical monomial first (xy), then the central elements u e1, u e2
    CHECK(b2[0].path.degree() == 2);
    CHECK(b2[0].udeg == 0);
    CHECK(b2[1].last_arrow == -1);
    CHECK(b2[2].last_arrow == -1);
    CHECK(da.classical_dim(2) == 1);

    // yx = u e2: reduce the path yx and compare with e2 * u
    const Quiver& q = def.pres.quiver();
    Path yx{{q.arrow_index("y"), q.arrow_index("x")}};
    RatVec lhs = da.reduce_monomial(1, yx, {0});
    RatVec rhs = da.reduce_monomial(1, Path{}, {1});
    CHECK(lhs == rhs);
}

TEST_CASE("Psi = 0 audits trivially in every degree") {
    auto pres = builtin::sl3_quiver();
    auto uni = universal_deformation(pres);
    auto zero = from_psi(pres, RationalMatrix(uni.base.u_dim, uni.base.u_dim));
    auto da = DeformedAlgebra::build(zero, 6);
    CHECK(da.audit().pass);
}

TEST_CASE("sl3 universal deformation: dim A~_2 = 10") {
    auto def = universal_deformation(builtin::sl3_quiver());
    CHECK(def.base.u_dim == 2);
    auto da = DeformedAlgebra::build(def, 7);
    CHECK(da.audit().pass);
    CHECK(da.dim(2) == 10);  // 4 + 3 * 2
}

TEST_CASE("setting U to zero recovers the classical structure constants") {
    auto def = universal_deformation(builtin::sl3_quiver());
    auto da = DeformedAlgebra::build(def, 6);
    const GradedAlgebra& a = da.classical();
    const int na = def.pres.quiver().arrow_count();
    for (int d = 1; d + 1 <= 5; ++d)
        for (std::size_t i = 0; i < a.dim(d); ++i)
            for (int ar = 0; ar < na; ++ar) {
                if (def.pres.quiver().arrows[ar].src != a.basis(d)[i].dst) continue;
                RatVec classical = a.rmul(d, i, ar);
                RatVec deformed = da.rmul_arrow(d, i, ar);  // same index: k=0 block first
                for (std::size_t j = 0; j < a.dim(d + 1); ++j)
                    CHECK(deformed[j] == classical[j]);
            }
}

TEST_CASE("specialize a11 at chi(u) = 1: dimension 5 with gr = A") {
    auto def = universal_deformation(builtin::a_rs(1, 1));
    auto rep = specialize(def, {rat_of(1)}, 4);
    CHECK(rep.gr_matches_a);
    CHECK(rep.total_dim == 5);

    auto rep0 = specialize(def, {rat_of(0)}, 4);
    CHECK(rep0.gr_matches_a);
    CHECK(rep0.gr_dims == rep0.a_dims);
}

TEST_CASE("the non-Koszul counterexample passes BG but fails flatness") {
    auto pres = builtin::nonkoszul_counterexample();
    auto def = universal_deformation(pres);
    REQUIRE(def.base.u_dim == 2);
    auto rep = bg_flatness_check(def);
    CHECK(rep.bg_vanishes);
    CHECK(rep.factors_through_center);

    auto da = DeformedAlgebra::build(def, 6);
    CHECK_FALSE(da.audit().pass);

    // scan specialization points for a dimension drop
    bool found_drop = false;
    for (const RatVec& chi :
         {RatVec{rat_of(1), rat_of(0)}, RatVec{rat_of(0), rat_of(1)},
          RatVec{rat_of(1), rat_of(1)}, RatVec{rat_of(1), rat_of(-1)}}) {
        auto srep = specialize(def, chi, 5);
        if (!srep.gr_matches_a) found_drop = true;
    }
    CHECK(found_drop);
}

TEST_CASE("flatness equivalence on random psi (Theorem-flat cross-check)") {
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (const auto& pres : {builtin::a_rs(1, 1), builtin::a_rs(2, 2), builtin::sl3_quiver()}) {
        auto uni = universal_deformation(pres);
        const std::size_t k = uni.base.u_dim;
        for (int trial = 0; trial < 12; ++trial) {
            // factoring maps: random base change; always flat
            std::size_t updim = 1 + (trial % 2);
            RationalMatrix psi(updim, k);
            for (std::size_t i = 0; i < updim; ++i)
                for (std::size_t j = 0; j < k; ++j) psi.at(i, j) = rat_of(coef(rng));
            auto def = from_psi(pres, psi);
            CHECK(bg_flatness_check(def).pass);
            auto da = DeformedAlgebra::build(def, 5);
            CHECK(da.audit().pass);
        }
        // random raw maps: the two flatness routes must always agree
        for (int trial = 0; trial < 12; ++trial) {
            RawBimoduleMap bm;
            bm.u_dim = 1;
            for (int v = 0; v < pres.quiver().vertex_count(); ++v) {
                auto monos = deg2_monomials(pres.quiver(), v, v);
                if (monos.empty()) continue;
                RationalMatrix m(1, monos.size());
                for (std::size_t c = 0; c < monos.size(); ++c) m.at(0, c) = rat_of(coef(rng));
                bm.comp[{v, v}] = m;
            }
            auto rep = bg_flatness_check(pres, bm);
            CHECK(rep.bg_vanishes == rep.factors_through_center);
            auto def = deformation_from_map(pres, bm);
            auto da = DeformedAlgebra::build(def, 5);
            CHECK(da.audit().pass == rep.pass);
        }
    }
}
