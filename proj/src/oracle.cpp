#include "leray/oracle.hpp"

#include <algorithm>
#include <random>

namespace leray::oracle {

namespace {

// Representatives of H^q(K): kernel vectors of d^q that extend the span of
// the coboundary columns, found by rank growth.
std::vector<Vec> cohomology_reps(const Matrix& d_q, const Matrix& d_prev, std::uint32_t p) {
    std::vector<Vec> picked;
    Matrix acc = d_prev;
    int base = rank(acc);
    Matrix z = kernel_basis(d_q);
    for (std::size_t c = 0; c < z.cols(); ++c) {
        Matrix candidate = hconcat(acc, Matrix::from_columns(z.rows(), {z.column(c)}, p));
        if (rank(candidate) > base) {
            picked.push_back(z.column(c));
            acc = std::move(candidate);
            ++base;
        }
    }
    return picked;
}

}  // namespace

CohomologyBasis direct_cohomology(const SimplicialComplex& k, int q, std::uint32_t p) {
    if (q < 0) return {0, Matrix(0, 0, p)};
    Matrix d_q = coboundary(k, q, p);
    Matrix d_prev = (q == 0) ? Matrix(d_q.cols(), 0, p) : coboundary(k, q - 1, p);
    std::vector<Vec> reps = cohomology_reps(d_q, d_prev, p);
    return {static_cast<int>(reps.size()), Matrix::from_columns(d_q.cols(), reps, p)};
}

PersistenceModule direct_tower(const FilteredComplex& k, int degree, std::uint32_t p) {
    if (degree < 0) throw IndexOutOfRange("cohomology degree must be nonnegative");
    PersistenceModule m;
    m.modulus = p;
    int n = k.length();
    std::vector<SimplicialComplex> slices;
    std::vector<Matrix> reps, bds;
    for (int i = 0; i <= n; ++i) {
        slices.push_back(k.slice(i));
        Matrix d_q = coboundary(slices[i], degree, p);
        Matrix d_prev = (degree == 0) ? Matrix(d_q.cols(), 0, p)
                                      : coboundary(slices[i], degree - 1, p);
        std::vector<Vec> r = cohomology_reps(d_q, d_prev, p);
        reps.push_back(Matrix::from_columns(d_q.cols(), r, p));
        bds.push_back(column_space_basis(d_prev));
        m.dims.push_back(static_cast<int>(r.size()));
    }
    for (int i = 0; i < n; ++i) {
        Matrix rest = cochain_restriction(slices[i], slices[i + 1], degree, p);
        Matrix coord_system = hconcat(reps[i + 1], bds[i + 1]);
        Matrix phi(static_cast<std::size_t>(m.dims[i + 1]), static_cast<std::size_t>(m.dims[i]), p);
        for (int c = 0; c < m.dims[i]; ++c) {
            Vec image = rest.apply(reps[i].column(static_cast<std::size_t>(c)));
            auto x = solve(coord_system, image);
            if (!x)
                throw InvariantViolation("direct_tower: restricted cocycle escapes H of the target");
            for (int r = 0; r < m.dims[i + 1]; ++r)
                phi.set(static_cast<std::size_t>(r), static_cast<std::size_t>(c),
                        (*x)[static_cast<std::size_t>(r)]);
        }
        m.maps.push_back(std::move(phi));
    }
    m.validate();
    return m;
}

RandomInstance random_instance(std::uint64_t seed, const InstanceBounds& bounds) {
    std::mt19937_64 rng(seed ^ 0x6c62272e07bb0142ULL);
    auto pick = [&](std::uint64_t n) -> std::uint64_t { return n == 0 ? 0 : rng() % n; };

    // target complex Y
    int y_budget = std::max(bounds.max_y_simplices, 1);
    int vy = 1 + static_cast<int>(pick(static_cast<std::uint64_t>(std::min(y_budget, 4))));
    std::set<Simplex> y_set;
    for (int v = 0; v < vy; ++v) y_set.insert(Simplex{v});
    for (int attempt = 0; attempt < 3 * y_budget; ++attempt) {
        if (vy < 2) break;
        int want = (vy >= 3 && (rng() & 1)) ? 3 : 2;
        std::vector<int> verts;
        while (static_cast<int>(verts.size()) < want) {
            int v = static_cast<int>(pick(static_cast<std::uint64_t>(vy)));
            if (std::find(verts.begin(), verts.end(), v) == verts.end()) verts.push_back(v);
        }
        SimplicialComplex closure = SimplicialComplex::closure_of({Simplex(verts)});
        std::set<Simplex> merged = y_set;
        for (const Simplex& s : closure.simplices()) merged.insert(s);
        if (static_cast<int>(merged.size()) <= y_budget) y_set = std::move(merged);
    }
    SimplicialComplex y(std::move(y_set));

    // domain X and the vertex map; candidate simplices are kept only when
    // their image is a simplex of Y, so the map is simplicial by construction
    int x_budget = std::max(bounds.max_x_simplices, 1);
    int vx = 1 + static_cast<int>(pick(static_cast<std::uint64_t>(std::min(x_budget, 10))));
    std::map<int, int> vertex_map;
    for (int v = 0; v < vx; ++v)
        vertex_map.emplace(v, static_cast<int>(pick(static_cast<std::uint64_t>(vy))));
    SimplicialMap f(vertex_map);
    std::set<Simplex> x_set;
    for (int v = 0; v < vx; ++v) x_set.insert(Simplex{v});
    for (int attempt = 0; attempt < 3 * x_budget; ++attempt) {
        if (vx < 2) break;
        int want = (vx >= 3 && (rng() & 1)) ? 3 : 2;
        std::vector<int> verts;
        while (static_cast<int>(verts.size()) < want) {
            int v = static_cast<int>(pick(static_cast<std::uint64_t>(vx)));
            if (std::find(verts.begin(), verts.end(), v) == verts.end()) verts.push_back(v);
        }
        Simplex s(verts);
        if (!y.contains(f.image(s))) continue;
        SimplicialComplex closure = SimplicialComplex::closure_of({s});
        std::set<Simplex> merged = x_set;
        for (const Simplex& t : closure.simplices()) merged.insert(t);
        if (static_cast<int>(merged.size()) <= x_budget) x_set = std::move(merged);
    }
    SimplicialComplex x(std::move(x_set));

    // random levels, then a downward pass so faces outlive their cofaces
    int max_level = 1 + static_cast<int>(pick(static_cast<std::uint64_t>(
                            std::max(bounds.max_filtration, 1))));
    std::map<Simplex, int> levels;
    for (const Simplex& s : x.simplices())
        levels[s] = 1 + static_cast<int>(pick(static_cast<std::uint64_t>(max_level)));
    std::vector<Simplex> by_dim(x.simplices().begin(), x.simplices().end());
    std::sort(by_dim.begin(), by_dim.end(), [](const Simplex& a, const Simplex& b) { return b < a; });
    for (const Simplex& s : by_dim)
        for (const Simplex& face : s.facets())
            levels[face] = std::max(levels[face], levels[s]);
    std::vector<std::pair<std::vector<int>, int>> pairs;
    for (const auto& [s, lvl] : levels) pairs.push_back({s.vertices, lvl});
    FilteredComplex filtered = build_complex(pairs);

    // cover pieces of Y; retry until the pullback covers X, then fall back to
    // one full-size piece
    int n_pieces = 1 + static_cast<int>(pick(static_cast<std::uint64_t>(
                           std::max(bounds.max_cover_pieces, 1))));
    std::vector<Simplex> y_list(y.simplices().begin(), y.simplices().end());
    std::map<int, SimplicialComplex> pieces;
    bool covering = false;
    for (int attempt = 0; attempt < 100 && !covering; ++attempt) {
        pieces.clear();
        for (int id = 0; id < n_pieces; ++id) {
            std::vector<Simplex> gens;
            for (const Simplex& s : y_list)
                if (rng() & 1) gens.push_back(s);
            pieces.emplace(id, SimplicialComplex::closure_of(gens));
        }
        covering = true;
        for (const Simplex& s : x.simplices()) {
            bool found = false;
            for (const auto& [id, u] : pieces)
                if (u.contains(f.image(s))) { found = true; break; }
            if (!found) { covering = false; break; }
        }
    }
    if (!covering) pieces[0] = y;  // retries exhausted: widen to the whole target

    CoverSystem cover(x, y, f, std::move(pieces));
    check_cover(cover);
    return {std::move(filtered), std::move(cover)};
}

}  // namespace leray::oracle
