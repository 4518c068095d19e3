#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "leray/oracle.hpp"
#include "leray/persistence.hpp"

using namespace leray;

namespace {

PersistenceModule random_module(std::mt19937_64& rng, int length, std::uint32_t p) {
    PersistenceModule m;
    m.modulus = p;
    for (int i = 0; i <= length; ++i) m.dims.push_back(static_cast<int>(rng() % 4));
    for (int i = 0; i < length; ++i) {
        Matrix phi(static_cast<std::size_t>(m.dims[i + 1]), static_cast<std::size_t>(m.dims[i]), p);
        for (std::size_t r = 0; r < phi.rows(); ++r)
            for (std::size_t c = 0; c < phi.cols(); ++c)
                phi.set(r, c, static_cast<std::int64_t>(rng() % p));
        m.maps.push_back(std::move(phi));
    }
    return m;
}

Matrix random_invertible(std::mt19937_64& rng, std::size_t n, std::uint32_t p) {
    Matrix lo = Matrix::identity(n, p), up = Matrix::identity(n, p);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            if (r > c) lo.set(r, c, static_cast<std::int64_t>(rng() % p));
            if (r < c) up.set(r, c, static_cast<std::int64_t>(rng() % p));
        }
    return lo * up;
}

// solve-based inverse for small invertible matrices
Matrix inverse_of(const Matrix& m) {
    Matrix out(m.rows(), m.cols(), m.modulus());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        Vec e(m.rows(), 0);
        e[c] = 1;
        auto x = solve(m, e);
        REQUIRE(x.has_value());
        out.set_column(c, *x);
    }
    return out;
}

void check_rank_function(const PersistenceModule& m, const Barcode& bars) {
    for (int i = 0; i <= m.length(); ++i)
        for (int j = i; j <= m.length(); ++j) {
            int covering = 0;
            for (const Interval& bar : bars)
                if (bar.birth <= i && j < bar.death) ++covering;
            CHECK(covering == rank(m.composite(i, j)));
        }
}

}  // namespace

TEST_SUITE_BEGIN("persistence");

TEST_CASE("cohomology towers") {
    SUBCASE("filtered hexagon, degree 0") {
        CochainTower t = cohomology_tower(fx_filtcirc().complex, 0);
        CHECK(t.module.dims == std::vector<int>{1, 1, 0});
        CHECK(rank(t.module.maps[0]) == 1);
    }
    SUBCASE("filtered hexagon, degree 1") {
        CochainTower t = cohomology_tower(fx_filtcirc().complex, 1);
        CHECK(t.module.dims == std::vector<int>{1, 0, 0});
    }
    SUBCASE("constant filtration maps have full rank") {
        CochainTower t = cohomology_tower(fx_constant_circle().complex, 1);
        CHECK(t.module.dims == std::vector<int>{1, 1, 0});
        CHECK(rank(t.module.maps[0]) == 1);
    }
}

TEST_CASE("persistent dimensions") {
    CochainTower t0 = cohomology_tower(fx_filtcirc().complex, 0);
    CochainTower t1 = cohomology_tower(fx_filtcirc().complex, 1);
    SUBCASE("offset zero is the plain dimension") {
        for (int i = 0; i <= t0.module.length(); ++i)
            CHECK(persistent_dim(t0.module, i, 0) == t0.module.dims[i]);
    }
    SUBCASE("the component survives one step, the circle class does not") {
        CHECK(persistent_dim(t0, 0, 1) == 1);
        CHECK(persistent_dim(t1, 0, 1) == 0);
    }
    SUBCASE("negative start clamps, overlong offset dies") {
        CHECK(persistent_dim(t0, -3, 1) == persistent_dim(t0, 0, 1));
        CHECK(persistent_dim(t0.module, 0, 99) == 0);
    }
    SUBCASE("both formulas agree on towers of random complexes") {
        int towers = 0;
        for (std::uint64_t seed = 0; towers < 100; ++seed) {
            auto inst = oracle::random_instance(seed);
            int top = std::max(inst.complex.full_complex().dimension(), 0);
            for (int k = 0; k <= top && towers < 100; ++k, ++towers) {
                std::uint32_t p = (seed % 2 == 0) ? 2 : 3;
                CochainTower tower = cohomology_tower(inst.complex, k, p);
                for (int i = 0; i <= tower.module.length(); ++i)
                    for (int off = 0; i + off <= tower.module.length(); ++off)
                        CHECK_NOTHROW(persistent_dim(tower, i, off));  // asserts internally
            }
        }
        CHECK(towers == 100);
    }
}

TEST_CASE("interval decomposition") {
    SUBCASE("identity maps give full-length bars") {
        PersistenceModule m;
        m.dims = {2, 2, 2};
        m.maps = {Matrix::identity(2, 2), Matrix::identity(2, 2)};
        Barcode bars = interval_decomposition(m);
        REQUIRE(bars.size() == 2);
        CHECK(bars[0] == Interval{0, 3});
        CHECK(bars[1] == Interval{0, 3});
    }
    SUBCASE("zero maps give unit-length bars") {
        PersistenceModule m;
        m.dims = {1, 1, 1};
        m.maps = {Matrix(1, 1, 2), Matrix(1, 1, 2)};
        Barcode bars = interval_decomposition(m);
        REQUIRE(bars.size() == 3);
        CHECK(bars[0] == Interval{0, 1});
        CHECK(bars[1] == Interval{1, 2});
        CHECK(bars[2] == Interval{2, 3});
    }
    SUBCASE("filtered hexagon barcodes") {
        CHECK(interval_decomposition(cohomology_tower(fx_filtcirc().complex, 0).module) ==
              Barcode{{0, 2}});
        CHECK(interval_decomposition(cohomology_tower(fx_filtcirc().complex, 1).module) ==
              Barcode{{0, 1}});
    }
    SUBCASE("elder rule keeps the older bar alive") {
        // M_0 = F, M_1 = F^2, M_2 = F; the composite M_0 -> M_2 is nonzero,
        // so the bar born at 0 must be the survivor
        PersistenceModule m;
        m.dims = {1, 2, 1};
        Matrix up(2, 1, 2);
        up.set(0, 0, 1);
        Matrix down(1, 2, 2);
        down.set(0, 0, 1);
        down.set(0, 1, 1);
        m.maps = {up, down};
        Barcode bars = interval_decomposition(m);
        REQUIRE(bars.size() == 2);
        CHECK(bars[0] == Interval{0, 3});
        CHECK(bars[1] == Interval{1, 2});
    }
    SUBCASE("rank function consistency, exhaustively") {
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 60; ++trial) {
            std::uint32_t p = (trial % 2 == 0) ? 2 : 3;
            PersistenceModule m = random_module(rng, 2 + static_cast<int>(rng() % 4), p);
            check_rank_function(m, interval_decomposition(m));
        }
        for (const Fixture& fx : all_fixtures()) {
            int top = std::max(fx.complex.full_complex().dimension(), 0);
            for (int k = 0; k <= top; ++k) {
                PersistenceModule m = cohomology_tower(fx.complex, k).module;
                check_rank_function(m, interval_decomposition(m));
            }
        }
    }
    SUBCASE("decomposition is basis independent") {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 30; ++trial) {
            std::uint32_t p = (trial % 2 == 0) ? 2 : 3;
            PersistenceModule m = random_module(rng, 3, p);
            PersistenceModule shuffled = m;
            std::vector<Matrix> change;
            for (int i = 0; i <= m.length(); ++i)
                change.push_back(random_invertible(rng, static_cast<std::size_t>(m.dims[i]), p));
            for (int i = 0; i < m.length(); ++i)
                shuffled.maps[i] = change[i + 1] * m.maps[i] * inverse_of(change[i]);
            CHECK(interval_decomposition(m) == interval_decomposition(shuffled));
        }
    }
}

TEST_CASE("graded modules and the shift action") {
    SUBCASE("zero module") {
        PersistenceModule zero;
        zero.dims = {0, 0};
        zero.maps = {Matrix(0, 0, 2)};
        GradedModule g = alpha(zero);
        CHECK(g.length() == 1);
        CHECK(g.apply_t(0, {}).first == 1);
    }
    SUBCASE("t shifts the grade by one and squares to the composite") {
        CochainTower t = cohomology_tower(fx_filtcirc().complex, 0);
        GradedModule g = alpha(t.module);
        Vec v{1};
        auto [g1, w1] = g.apply_t(0, v);
        CHECK(g1 == 1);
        CHECK(w1 == t.module.maps[0].apply(v));
        Vec twice = g.apply_t_power(0, v, 2);
        CHECK(twice == t.module.composite(0, 2).apply(v));
    }
    SUBCASE("t to the filtration length annihilates everything") {
        for (const Fixture& fx : all_fixtures()) {
            int top = std::max(fx.complex.full_complex().dimension(), 0);
            for (int k = 0; k <= top; ++k) {
                GradedModule g = alpha(cohomology_tower(fx.complex, k).module);
                int n = g.length();
                for (int grade = 0; grade <= n; ++grade) {
                    for (int c = 0; c < g.dims[grade]; ++c) {
                        Vec e(static_cast<std::size_t>(g.dims[grade]), 0);
                        e[static_cast<std::size_t>(c)] = 1;
                        Vec out = g.apply_t_power(grade, e, n);
                        bool zero = true;
                        for (std::uint32_t x : out) zero = zero && (x == 0);
                        CHECK(zero);
                    }
                }
            }
        }
    }
    SUBCASE("annihilation of a degree-1 generator under the first shift") {
        GradedModule g = alpha(cohomology_tower(fx_filtcirc().complex, 1).module);
        Vec gone = g.apply_t_power(0, {1}, 1);
        bool zero = true;
        for (std::uint32_t x : gone) zero = zero && (x == 0);
        CHECK(zero);
    }
}

TEST_CASE("page modules of the filtered hexagon") {
    Fixture fx = fx_filtcirc();
    SpectralStack stack = SpectralStack::build(fx.complex, fx.cover);
    SUBCASE("the (1,0) module carries the short-lived circle class") {
        PersistenceModule m = persistent_page_module(stack, 2, 1, 0);
        CHECK(m.dims == std::vector<int>{1, 0, 0});
        CHECK(interval_decomposition(m) == Barcode{{0, 1}});
    }
    SUBCASE("the (0,0) module carries the long-lived component") {
        PersistenceModule m = persistent_page_module(stack, 2, 0, 0);
        CHECK(m.dims == std::vector<int>{1, 1, 0});
        CHECK(interval_decomposition(m) == Barcode{{0, 2}});
    }
    SUBCASE("entries outside the rectangle give the zero module") {
        PersistenceModule m = persistent_page_module(stack, 2, 5, 5);
        CHECK(m.dims == std::vector<int>{0, 0, 0});
        CHECK(interval_decomposition(m).empty());
    }
}

TEST_CASE("ph_compare") {
    SUBCASE("constant filtration agrees trivially") {
        Fixture fx = fx_constant_circle();
        PhCompareReport report = ph_compare(fx.complex, fx.cover);
        CHECK(report.all_dims_equal);
        CHECK(report.all_barcodes_agree);
    }
    SUBCASE("filtered hexagon barcodes through both paths") {
        Fixture fx = fx_filtcirc();
        PhCompareReport report = ph_compare(fx.complex, fx.cover);
        REQUIRE(report.degrees.size() >= 2);
        CHECK(report.all_dims_equal);
        CHECK(report.degrees[0].oracle_barcode == Barcode{{0, 2}});
        CHECK(report.degrees[0].spectral_barcode == Barcode{{0, 2}});
        CHECK(report.degrees[1].oracle_barcode == Barcode{{0, 1}});
        CHECK(report.degrees[1].spectral_barcode == Barcode{{0, 1}});
        CHECK(report.all_barcodes_agree);
    }
    SUBCASE("torus with the band filtration: dimensions equal at every index") {
        Fixture fx = fx_torus_band();
        PhCompareReport report = ph_compare(fx.complex, fx.cover);
        CHECK(report.all_dims_equal);
        for (const DegreeComparison& row : report.degrees)
            CHECK(row.tower_dims == row.einf_dims);
        CHECK(report.all_barcodes_agree);
    }
    SUBCASE("the wheel's circle class is born mid-filtration") {
        Fixture fx = fx_wheel();
        PhCompareReport report = ph_compare(fx.complex, fx.cover);
        CHECK(report.all_dims_equal);
        CHECK(report.all_barcodes_agree);
        REQUIRE(report.degrees.size() >= 2);
        CHECK(report.degrees[0].oracle_barcode == Barcode{{0, 2}});
        CHECK(report.degrees[1].oracle_barcode == Barcode{{1, 2}});
        CHECK(report.degrees[1].spectral_barcode == Barcode{{1, 2}});
    }
}

TEST_CASE("direct sums stack blockwise") {
    PersistenceModule a;
    a.dims = {1, 1};
    a.maps = {Matrix::identity(1, 2)};
    PersistenceModule b;
    b.dims = {1, 0};
    b.maps = {Matrix(0, 1, 2)};
    PersistenceModule s = direct_sum({a, b}, 2);
    CHECK(s.dims == std::vector<int>{2, 1});
    Barcode bars = interval_decomposition(s);
    REQUIRE(bars.size() == 2);
    CHECK(bars[0] == Interval{0, 1});
    CHECK(bars[1] == Interval{0, 2});
}

TEST_SUITE_END();
