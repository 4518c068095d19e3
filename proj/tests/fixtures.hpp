#pragma once

// Shared fixtures: the circle with a two-arc cover, the hexagon double cover
// of the triangle, the filtered hexagon, and the 9-vertex torus with a
// three-band cover of one circle factor.

#include <map>
#include <set>
#include <vector>

#include "leray/cover_map.hpp"

struct Fixture {
    leray::FilteredComplex complex;
    leray::CoverSystem cover;
};

// Triangle boundary, all levels 1 (N = 1), identity map, cover by two arcs
// meeting in the two vertices 0 and 2.
inline Fixture fx_circle() {
    using namespace leray;
    FilteredComplex k = build_complex(
        {{{0}, 1}, {{1}, 1}, {{2}, 1}, {{0, 1}, 1}, {{0, 2}, 1}, {{1, 2}, 1}});
    SimplicialComplex x = k.full_complex();
    std::map<int, SimplicialComplex> pieces;
    pieces.emplace(1, SimplicialComplex::closure_of({Simplex{0, 1}, Simplex{1, 2}}));
    pieces.emplace(2, SimplicialComplex::closure_of({Simplex{0, 2}}));
    CoverSystem cover(x, x, SimplicialMap::identity(x), std::move(pieces));
    check_cover(cover);
    return {std::move(k), std::move(cover)};
}

// Hexagon mapping onto the triangle by j -> j mod 3 (a double cover), all
// levels 1, the triangle covered by the same two arcs as fx_circle.
inline Fixture fx_double() {
    using namespace leray;
    std::vector<std::pair<std::vector<int>, int>> pairs;
    for (int v = 0; v < 6; ++v) pairs.push_back({{v}, 1});
    for (int v = 0; v < 6; ++v) pairs.push_back({{std::min(v, (v + 1) % 6), std::max(v, (v + 1) % 6)}, 1});
    FilteredComplex k = build_complex(pairs);
    SimplicialComplex y = SimplicialComplex::closure_of(
        {Simplex{0, 1}, Simplex{0, 2}, Simplex{1, 2}});
    std::map<int, int> vm;
    for (int v = 0; v < 6; ++v) vm.emplace(v, v % 3);
    std::map<int, SimplicialComplex> pieces;
    pieces.emplace(1, SimplicialComplex::closure_of({Simplex{0, 1}, Simplex{1, 2}}));
    pieces.emplace(2, SimplicialComplex::closure_of({Simplex{0, 2}}));
    CoverSystem cover(k.full_complex(), std::move(y), SimplicialMap(std::move(vm)),
                      std::move(pieces));
    check_cover(cover);
    return {std::move(k), std::move(cover)};
}

// Hexagon circle with the edge {0,5} at level 1 and everything else at level
// 2 (N = 2): the circle, then an arc, then nothing.  Identity map; one big
// arc piece and the closed edge {0,5} as the second piece.
inline Fixture fx_filtcirc() {
    using namespace leray;
    std::vector<std::pair<std::vector<int>, int>> pairs;
    for (int v = 0; v < 6; ++v) pairs.push_back({{v}, 2});
    for (int v = 0; v < 5; ++v) pairs.push_back({{v, v + 1}, 2});
    pairs.push_back({{0, 5}, 1});
    FilteredComplex k = build_complex(pairs);
    SimplicialComplex x = k.full_complex();
    std::map<int, SimplicialComplex> pieces;
    pieces.emplace(1, SimplicialComplex::closure_of({Simplex{0, 1}, Simplex{1, 2}, Simplex{2, 3},
                                                     Simplex{3, 4}, Simplex{4, 5}}));
    pieces.emplace(2, SimplicialComplex::closure_of({Simplex{0, 5}}));
    CoverSystem cover(x, x, SimplicialMap::identity(x), std::move(pieces));
    check_cover(cover);
    return {std::move(k), std::move(cover)};
}

// 9-vertex triangulated torus (vertex (a,b) -> 3a+b, columns indexed by a),
// identity map, covered by three two-column bands; the filtration keeps the
// column-{0,1} band one step longer (N = 2): torus, annulus, empty.
inline Fixture fx_torus_band() {
    using namespace leray;
    auto vid = [](int a, int b) { return 3 * ((a % 3 + 3) % 3) + ((b % 3 + 3) % 3); };
    auto col = [](int v) { return v / 3; };
    auto level_of = [&](const std::vector<int>& verts) {
        for (int v : verts)
            if (col(v) == 2) return 1;
        return 2;  // entirely inside columns {0,1}
    };
    std::vector<std::pair<std::vector<int>, int>> pairs;
    auto add = [&](std::vector<int> verts) { pairs.push_back({verts, level_of(verts)}); };
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            add({vid(a, b)});
            add({vid(a, b), vid(a + 1, b)});
            add({vid(a, b), vid(a, b + 1)});
            add({vid(a, b), vid(a + 1, b + 1)});
            add({vid(a, b), vid(a + 1, b), vid(a + 1, b + 1)});
            add({vid(a, b), vid(a, b + 1), vid(a + 1, b + 1)});
        }
    }
    FilteredComplex k = build_complex(pairs);
    SimplicialComplex x = k.full_complex();
    std::map<int, SimplicialComplex> pieces;
    for (int a = 0; a < 3; ++a) {
        std::set<Simplex> piece;
        for (const Simplex& s : x.simplices()) {
            bool inside = true;
            for (int v : s.vertices)
                if (col(v) != a && col(v) != (a + 1) % 3) { inside = false; break; }
            if (inside) piece.insert(s);
        }
        pieces.emplace(a, SimplicialComplex(std::move(piece)));
    }
    CoverSystem cover(x, x, SimplicialMap::identity(x), std::move(pieces));
    check_cover(cover);
    return {std::move(k), std::move(cover)};
}

// Hexagonal wheel disk (center 6, rim 0..5), covered by the rim circle and
// two face fans.  The triple intersection is the two points {0} and {2}, so
// the second page carries classes at (0,1) and (2,0) that only a rank-1 d_2
// can kill: the sequence stabilizes at page three.  The filtration drops the
// interior first (N = 2: disk, rim circle, empty), so degree 1 has a bar
// born in the middle of the filtration.
inline Fixture fx_wheel() {
    using namespace leray;
    std::vector<std::pair<std::vector<int>, int>> pairs;
    for (int v = 0; v < 6; ++v) pairs.push_back({{v}, 2});
    pairs.push_back({{6}, 1});
    for (int j = 0; j < 6; ++j) {
        int a = j, b = (j + 1) % 6;
        pairs.push_back({{std::min(a, b), std::max(a, b)}, 2});
        pairs.push_back({{std::min(a, b), std::max(a, b), 6}, 1});
        pairs.push_back({{j, 6}, 1});
    }
    FilteredComplex k = build_complex(pairs);
    SimplicialComplex x = k.full_complex();
    std::map<int, SimplicialComplex> pieces;
    pieces.emplace(0, SimplicialComplex::closure_of({Simplex{0, 1}, Simplex{1, 2}, Simplex{2, 3},
                                                     Simplex{3, 4}, Simplex{4, 5}, Simplex{0, 5}}));
    pieces.emplace(1, SimplicialComplex::closure_of({Simplex{0, 1, 6}, Simplex{1, 2, 6}}));
    pieces.emplace(2, SimplicialComplex::closure_of({Simplex{2, 3, 6}, Simplex{3, 4, 6},
                                                     Simplex{4, 5, 6}, Simplex{0, 5, 6}}));
    CoverSystem cover(x, x, SimplicialMap::identity(x), std::move(pieces));
    check_cover(cover);
    return {std::move(k), std::move(cover)};
}

// Circle that never shrinks until it disappears: K_0 = K_1 = circle, K_2
// empty.  Single-piece cover.
inline Fixture fx_constant_circle() {
    using namespace leray;
    FilteredComplex k = build_complex(
        {{{0}, 2}, {{1}, 2}, {{2}, 2}, {{0, 1}, 2}, {{0, 2}, 2}, {{1, 2}, 2}});
    SimplicialComplex x = k.full_complex();
    std::map<int, SimplicialComplex> pieces;
    pieces.emplace(0, x);
    CoverSystem cover(x, x, SimplicialMap::identity(x), std::move(pieces));
    check_cover(cover);
    return {std::move(k), std::move(cover)};
}

inline std::vector<Fixture> all_fixtures() {
    std::vector<Fixture> out;
    out.push_back(fx_circle());
    out.push_back(fx_double());
    out.push_back(fx_filtcirc());
    out.push_back(fx_torus_band());
    out.push_back(fx_wheel());
    return out;
}
