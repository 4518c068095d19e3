#include <doctest.h>

#include "fixtures.hpp"
#include "leray/oracle.hpp"

using namespace leray;

namespace {

int euler_from_counts(const SimplicialComplex& k) {
    int chi = 0;
    for (int q = 0; q <= k.dimension(); ++q) {
        int count = static_cast<int>(k.simplices_of_dim(q).size());
        chi += (q % 2 == 0) ? count : -count;
    }
    return chi;
}

int euler_from_cohomology(const SimplicialComplex& k, std::uint32_t p) {
    int chi = 0;
    for (int q = 0; q <= k.dimension(); ++q) {
        int h = cohomology_dim(k, q, p);
        chi += (q % 2 == 0) ? h : -h;
    }
    return chi;
}

}  // namespace

TEST_SUITE_BEGIN("complex_core");

TEST_CASE("simplex validation and order") {
    CHECK(Simplex({2, 0, 1}).vertices == std::vector<int>{0, 1, 2});
    CHECK_THROWS_AS(Simplex(std::vector<int>{}), InvalidSimplex);
    CHECK_THROWS_AS(Simplex({1, 1}), InvalidSimplex);
    CHECK_THROWS_AS(Simplex({-1}), InvalidSimplex);
    CHECK(Simplex{0, 1} < Simplex{0, 2});
    CHECK(Simplex{2} < Simplex{0, 1});  // dimension first
    CHECK(Simplex{0, 1, 2}.has_face(Simplex{0, 2}));
    CHECK_FALSE(Simplex{0, 1}.has_face(Simplex{2}));
}

TEST_CASE("build_complex") {
    SUBCASE("single edge with explicit closure") {
        FilteredComplex k = build_complex({{{0}, 1}, {{1}, 1}, {{0, 1}, 1}});
        CHECK(k.length() == 1);
        CHECK(k.full_complex().size() == 3);
        CHECK(k.slice(0).size() == 3);
        CHECK(k.slice(1).empty());
    }
    SUBCASE("face dying before its coface is rejected") {
        CHECK_THROWS_AS(build_complex({{{0, 1}, 2}, {{0}, 1}}), LevelMonotonicityError);
    }
    SUBCASE("missing faces are inserted with the coface level, with warnings") {
        std::vector<BuildWarning> warnings;
        FilteredComplex k = build_complex({{{0, 1}, 2}}, &warnings);
        CHECK(k.full_complex().size() == 3);
        REQUIRE(warnings.size() == 2);
        CHECK(warnings[0].level == 2);
        CHECK(k.level(Simplex{0}) == 2);
    }
    SUBCASE("implicit face inherits the max over all cofaces") {
        std::vector<BuildWarning> warnings;
        FilteredComplex k = build_complex({{{0, 1}, 1}, {{1, 2}, 3}}, &warnings);
        CHECK(k.level(Simplex{1}) == 3);
        CHECK(k.level(Simplex{0}) == 1);
    }
    SUBCASE("empty input is the trivial complex") {
        FilteredComplex k = build_complex({});
        CHECK(k.length() == 0);
        CHECK(k.full_complex().empty());
        CHECK(k.slice(0).empty());
    }
    SUBCASE("level below 1 is rejected") {
        CHECK_THROWS_AS(build_complex({{{0}, 0}}), InvalidLevel);
    }
    SUBCASE("duplicate simplex rejected") {
        CHECK_THROWS_AS(build_complex({{{0}, 1}, {{0}, 2}}), InvalidSimplex);
    }
    SUBCASE("circle fixture") {
        Fixture fx = fx_circle();
        CHECK(fx.complex.full_complex().size() == 6);
        CHECK(fx.complex.slice(0).size() == 6);
        CHECK(fx.complex.slice(1).empty());
    }
    SUBCASE("filtered hexagon slices") {
        Fixture fx = fx_filtcirc();
        CHECK(fx.complex.length() == 2);
        CHECK(fx.complex.slice(0).size() == 12);
        CHECK(fx.complex.slice(1).size() == 11);  // the arc
        CHECK(fx.complex.slice(2).empty());
    }
    SUBCASE("slice index range") {
        Fixture fx = fx_circle();
        CHECK_THROWS_AS(fx.complex.slice(-1), IndexOutOfRange);
        CHECK_THROWS_AS(fx.complex.slice(2), IndexOutOfRange);
    }
}

TEST_CASE("complex closure is validated") {
    std::set<Simplex> bad{Simplex{0, 1}};
    CHECK_THROWS_AS(SimplicialComplex(std::move(bad)), NotSubcomplex);
    SimplicialComplex ok = SimplicialComplex::closure_of({Simplex{0, 1, 2}});
    CHECK(ok.size() == 7);
    CHECK(ok.dimension() == 2);
}

TEST_CASE("coboundary") {
    SUBCASE("point") {
        SimplicialComplex pt = SimplicialComplex::closure_of({Simplex{0}});
        Matrix d0 = coboundary(pt, 0);
        CHECK(d0.rows() == 0);
        CHECK(d0.cols() == 1);
    }
    SUBCASE("circle degree 0 has rank 2") {
        SimplicialComplex circle = fx_circle().complex.slice(0);
        Matrix d0 = coboundary(circle, 0);
        CHECK(d0.rows() == 3);
        CHECK(d0.cols() == 3);
        CHECK(rank(d0) == 2);
    }
    SUBCASE("d squared vanishes on every fixture, slice and degree") {
        for (const Fixture& fx : all_fixtures()) {
            for (int i = 0; i <= fx.complex.length(); ++i) {
                SimplicialComplex k_i = fx.complex.slice(i);
                for (int q = 0; q + 1 <= k_i.dimension(); ++q)
                    for (std::uint32_t p : {2u, 3u})
                        CHECK((coboundary(k_i, q + 1, p) * coboundary(k_i, q, p)).is_zero());
            }
        }
    }
}

TEST_CASE("cohomology dimensions") {
    SimplicialComplex pt = SimplicialComplex::closure_of({Simplex{0}});
    CHECK(cohomology_dim(pt, 0) == 1);
    CHECK(cohomology_dim(pt, 1) == 0);
    SimplicialComplex circle = fx_circle().complex.slice(0);
    CHECK(cohomology_dim(circle, 0) == 1);
    CHECK(cohomology_dim(circle, 1) == 1);
    CHECK(cohomology_dim(SimplicialComplex(), 0) == 0);
    CHECK(cohomology_dim(SimplicialComplex(), 3) == 0);
    SUBCASE("two disjoint edges") {
        SimplicialComplex two = SimplicialComplex::closure_of({Simplex{0, 1}, Simplex{2, 3}});
        CHECK(cohomology_dim(two, 0) == 2);
        CHECK(cohomology_dim(two, 1) == 0);
    }
    SUBCASE("odd primes see the same circle") {
        CHECK(cohomology_dim(circle, 0, 3) == 1);
        CHECK(cohomology_dim(circle, 1, 3) == 1);
        CHECK(cohomology_dim(circle, 0, 5) == 1);
    }
    SUBCASE("torus over F_2 and F_3") {
        SimplicialComplex torus = fx_torus_band().complex.slice(0);
        CHECK(torus.size() == 54);
        for (std::uint32_t p : {2u, 3u}) {
            CHECK(cohomology_dim(torus, 0, p) == 1);
            CHECK(cohomology_dim(torus, 1, p) == 2);
            CHECK(cohomology_dim(torus, 2, p) == 1);
        }
    }
}

TEST_CASE("euler characteristic agrees with cohomology on every slice") {
    for (const Fixture& fx : all_fixtures())
        for (int i = 0; i <= fx.complex.length(); ++i) {
            SimplicialComplex k_i = fx.complex.slice(i);
            CHECK(euler_from_counts(k_i) == euler_from_cohomology(k_i, 2));
            CHECK(euler_from_counts(k_i) == euler_from_cohomology(k_i, 3));
        }
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        FilteredComplex k = oracle::random_instance(seed).complex;
        for (int i = 0; i <= k.length(); ++i) {
            SimplicialComplex k_i = k.slice(i);
            CHECK(euler_from_counts(k_i) == euler_from_cohomology(k_i, 2));
        }
    }
}

TEST_CASE("slices shrink and stay closed") {
    for (const Fixture& fx : all_fixtures()) {
        for (int i = 0; i + 1 <= fx.complex.length(); ++i) {
            SimplicialComplex outer = fx.complex.slice(i);
            SimplicialComplex inner = fx.complex.slice(i + 1);
            for (const Simplex& s : inner.simplices()) CHECK(outer.contains(s));
        }
    }
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        FilteredComplex k = oracle::random_instance(seed).complex;
        for (int i = 0; i + 1 <= k.length(); ++i) {
            SimplicialComplex outer = k.slice(i);
            SimplicialComplex inner = k.slice(i + 1);
            for (const Simplex& s : inner.simplices()) CHECK(outer.contains(s));
        }
    }
}

TEST_CASE("cochain restriction") {
    SimplicialComplex circle = fx_circle().complex.slice(0);
    CHECK(cochain_restriction(circle, circle, 1).is_identity());
    SimplicialComplex arc = SimplicialComplex::closure_of({Simplex{0, 1}});
    Matrix rest = cochain_restriction(circle, arc, 1);
    CHECK(rest.rows() == 1);
    CHECK(rest.cols() == 3);
    CHECK(rank(rest) == 1);
    CHECK_THROWS_AS(cochain_restriction(arc, circle, 1), NotSubcomplex);
}

TEST_SUITE_END();
