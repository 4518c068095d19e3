#include "leray/complex_core.hpp"

#include <algorithm>
#include <sstream>

namespace leray {

Simplex::Simplex(std::vector<int> verts) : vertices(std::move(verts)) {
    if (vertices.empty()) throw InvalidSimplex("simplex must have at least one vertex");
    std::sort(vertices.begin(), vertices.end());
    for (std::size_t i = 1; i < vertices.size(); ++i)
        if (vertices[i] == vertices[i - 1])
            throw InvalidSimplex("repeated vertex " + std::to_string(vertices[i]) + " in simplex");
    for (int v : vertices)
        if (v < 0) throw InvalidSimplex("negative vertex id " + std::to_string(v));
}

std::vector<Simplex> Simplex::facets() const {
    std::vector<Simplex> out;
    if (vertices.size() < 2) return out;
    for (std::size_t j = 0; j < vertices.size(); ++j) {
        std::vector<int> face;
        face.reserve(vertices.size() - 1);
        for (std::size_t k = 0; k < vertices.size(); ++k)
            if (k != j) face.push_back(vertices[k]);
        out.emplace_back(std::move(face));
    }
    return out;
}

bool Simplex::has_face(const Simplex& other) const {
    return std::includes(vertices.begin(), vertices.end(), other.vertices.begin(),
                         other.vertices.end());
}

std::string Simplex::str() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (i) os << ',';
        os << vertices[i];
    }
    os << '}';
    return os.str();
}

bool Simplex::operator<(const Simplex& o) const {
    if (vertices.size() != o.vertices.size()) return vertices.size() < o.vertices.size();
    return vertices < o.vertices;
}

SimplicialComplex::SimplicialComplex(std::set<Simplex> simplices) : simplices_(std::move(simplices)) {
    for (const Simplex& s : simplices_)
        for (const Simplex& f : s.facets())
            if (!simplices_.count(f))
                throw NotSubcomplex("missing face " + f.str() + " of " + s.str());
}

SimplicialComplex SimplicialComplex::closure_of(const std::vector<Simplex>& generators) {
    std::set<Simplex> all;
    std::vector<Simplex> queue = generators;
    while (!queue.empty()) {
        Simplex s = queue.back();
        queue.pop_back();
        if (!all.insert(s).second) continue;
        for (Simplex& f : s.facets()) queue.push_back(std::move(f));
    }
    return SimplicialComplex(std::move(all));
}

std::vector<Simplex> SimplicialComplex::simplices_of_dim(int q) const {
    std::vector<Simplex> out;
    for (const Simplex& s : simplices_)
        if (s.dimension() == q) out.push_back(s);
    return out;  // set order is already canonical
}

int SimplicialComplex::dimension() const {
    int d = -1;
    for (const Simplex& s : simplices_) d = std::max(d, s.dimension());
    return d;
}

std::vector<int> SimplicialComplex::vertex_ids() const {
    std::vector<int> out;
    for (const Simplex& s : simplices_)
        if (s.dimension() == 0) out.push_back(s.vertices[0]);
    return out;
}

int FilteredComplex::level(const Simplex& s) const {
    auto it = levels_.find(s);
    if (it == levels_.end()) throw IndexOutOfRange("simplex " + s.str() + " not in complex");
    return it->second;
}

SimplicialComplex FilteredComplex::slice(int i) const {
    if (i < 0 || i > length_)
        throw IndexOutOfRange("slice index " + std::to_string(i) + " outside [0, " +
                              std::to_string(length_) + "]");
    std::set<Simplex> kept;
    for (const auto& [s, lvl] : levels_)
        if (i < lvl) kept.insert(s);
    return SimplicialComplex(std::move(kept));
}

FilteredComplex build_complex(const std::vector<std::pair<std::vector<int>, int>>& simplex_level_pairs,
                              std::vector<BuildWarning>* warnings) {
    std::map<Simplex, int> levels;
    std::set<Simplex> explicit_set;
    for (const auto& [verts, lvl] : simplex_level_pairs) {
        Simplex s(verts);
        if (lvl < 1)
            throw InvalidLevel("simplex " + s.str() + " has level " + std::to_string(lvl) +
                               "; every simplex must survive in K_0");
        auto [it, inserted] = levels.emplace(s, lvl);
        if (!inserted)
            throw InvalidSimplex("duplicate simplex " + s.str() + " in input");
        explicit_set.insert(s);
    }
    // propagate levels downward, highest dimension first, so implicit faces
    // inherit the max over all their cofaces
    std::set<Simplex> inserted_faces;
    std::size_t cursor = 0;
    std::vector<Simplex> pending(explicit_set.begin(), explicit_set.end());
    std::sort(pending.begin(), pending.end(), [](const Simplex& a, const Simplex& b) { return b < a; });
    while (cursor < pending.size()) {
        Simplex s = pending[cursor++];
        int lvl = levels.at(s);
        for (const Simplex& f : s.facets()) {
            auto it = levels.find(f);
            if (it == levels.end()) {
                levels.emplace(f, lvl);
                inserted_faces.insert(f);
                pending.push_back(f);
            } else if (it->second < lvl) {
                if (explicit_set.count(f))
                    throw LevelMonotonicityError("face " + f.str() + " (level " +
                                                 std::to_string(it->second) + ") dies before coface " +
                                                 s.str() + " (level " + std::to_string(lvl) + ")");
                it->second = lvl;  // implicit face: raise to max over cofaces
                pending.push_back(f);
            }
        }
    }
    if (warnings) {
        for (const Simplex& f : inserted_faces) warnings->push_back({f, levels.at(f)});
    }
    FilteredComplex out;
    int n = 0;
    for (const auto& [s, lvl] : levels) n = std::max(n, lvl);
    out.length_ = n;
    std::set<Simplex> all;
    for (const auto& [s, lvl] : levels) all.insert(s);
    out.full_ = SimplicialComplex(std::move(all));
    out.levels_ = std::move(levels);
    return out;
}

Matrix coboundary(const SimplicialComplex& k, int q, std::uint32_t p) {
    if (q < 0) return Matrix(k.simplices_of_dim(0).size(), 0, p);
    std::vector<Simplex> domain = k.simplices_of_dim(q);
    std::vector<Simplex> codomain = k.simplices_of_dim(q + 1);
    std::map<Simplex, std::size_t> col_of;
    for (std::size_t c = 0; c < domain.size(); ++c) col_of.emplace(domain[c], c);
    Matrix d(codomain.size(), domain.size(), p);
    for (std::size_t r = 0; r < codomain.size(); ++r) {
        const std::vector<int>& vs = codomain[r].vertices;
        for (std::size_t j = 0; j < vs.size(); ++j) {
            std::vector<int> face;
            face.reserve(vs.size() - 1);
            for (std::size_t t = 0; t < vs.size(); ++t)
                if (t != j) face.push_back(vs[t]);
            d.add_at(r, col_of.at(Simplex(std::move(face))), (j % 2 == 0) ? 1 : -1);
        }
    }
    return d;
}

int cohomology_dim(const SimplicialComplex& k, int q, std::uint32_t p) {
    if (q < 0) return 0;
    Matrix d_q = coboundary(k, q, p);
    int ker = static_cast<int>(d_q.cols()) - rank(d_q);
    int im = (q == 0) ? 0 : rank(coboundary(k, q - 1, p));
    return ker - im;
}

Matrix cochain_restriction(const SimplicialComplex& big, const SimplicialComplex& small, int q,
                           std::uint32_t p) {
    std::vector<Simplex> domain = big.simplices_of_dim(q);
    std::vector<Simplex> codomain = small.simplices_of_dim(q);
    std::map<Simplex, std::size_t> col_of;
    for (std::size_t c = 0; c < domain.size(); ++c) col_of.emplace(domain[c], c);
    Matrix m(codomain.size(), domain.size(), p);
    for (std::size_t r = 0; r < codomain.size(); ++r) {
        auto it = col_of.find(codomain[r]);
        if (it == col_of.end())
            throw NotSubcomplex("cochain_restriction: " + codomain[r].str() +
                                " is not a simplex of the larger complex");
        m.set(r, it->second, 1);
    }
    return m;
}

}  // namespace leray
