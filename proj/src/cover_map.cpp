#include "leray/cover_map.hpp"

#include <algorithm>
#include <sstream>

namespace leray {

SimplicialMap SimplicialMap::identity(const SimplicialComplex& x) {
    std::map<int, int> vm;
    for (int v : x.vertex_ids()) vm.emplace(v, v);
    return SimplicialMap(std::move(vm));
}

int SimplicialMap::apply(int vertex) const {
    auto it = vertex_map_.find(vertex);
    if (it == vertex_map_.end())
        throw UnmappedVertex("vertex " + std::to_string(vertex) + " has no image");
    return it->second;
}

Simplex SimplicialMap::image(const Simplex& s) const {
    std::vector<int> image_verts;
    image_verts.reserve(s.vertices.size());
    for (int v : s.vertices) image_verts.push_back(apply(v));
    std::sort(image_verts.begin(), image_verts.end());
    image_verts.erase(std::unique(image_verts.begin(), image_verts.end()), image_verts.end());
    return Simplex(std::move(image_verts));
}

void validate_map(const SimplicialMap& f, const SimplicialComplex& x, const SimplicialComplex& y) {
    for (const Simplex& s : x.simplices()) {
        Simplex img = f.image(s);
        if (!y.contains(img))
            throw NotSimplicial(s, "image " + img.str() + " of simplex " + s.str() +
                                       " is not a simplex of the target");
    }
}

SimplicialComplex pullback(const SimplicialMap& f, const SimplicialComplex& u,
                           const SimplicialComplex& x) {
    // SimplicialComplex construction already guarantees u is closed; an
    // unclosed set cannot exist as a SimplicialComplex value.
    std::set<Simplex> kept;
    for (const Simplex& s : x.simplices())
        if (u.contains(f.image(s))) kept.insert(s);
    return SimplicialComplex(std::move(kept));
}

NerveTuple::NerveTuple(std::vector<int> idx) : indices(std::move(idx)) {
    for (std::size_t i = 1; i < indices.size(); ++i)
        if (indices[i] <= indices[i - 1])
            throw InvariantViolation("nerve tuple indices must be strictly increasing");
}

NerveTuple NerveTuple::omit(std::size_t j) const {
    std::vector<int> out;
    out.reserve(indices.size() - 1);
    for (std::size_t k = 0; k < indices.size(); ++k)
        if (k != j) out.push_back(indices[k]);
    return NerveTuple(std::move(out));
}

std::string NerveTuple::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i) os << ',';
        os << indices[i];
    }
    os << ')';
    return os.str();
}

CoverSystem::CoverSystem(SimplicialComplex x, SimplicialComplex y, SimplicialMap f,
                         std::map<int, SimplicialComplex> pieces)
    : x_(std::move(x)), y_(std::move(y)), f_(std::move(f)), pieces_(std::move(pieces)) {
    validate_map(f_, x_, y_);
    for (const auto& [id, u] : pieces_) {
        for (const Simplex& s : u.simplices())
            if (!y_.contains(s))
                throw NotSubcomplex("cover piece " + std::to_string(id) + " contains " + s.str() +
                                    ", which is not a simplex of the target");
        pullbacks_.emplace(id, pullback(f_, u, x_));
        ids_.push_back(id);
    }
}

const SimplicialComplex& CoverSystem::piece(int id) const {
    auto it = pieces_.find(id);
    if (it == pieces_.end()) throw IndexOutOfRange("no cover piece with id " + std::to_string(id));
    return it->second;
}

const SimplicialComplex& CoverSystem::pullback_piece(int id) const {
    auto it = pullbacks_.find(id);
    if (it == pullbacks_.end()) throw IndexOutOfRange("no cover piece with id " + std::to_string(id));
    return it->second;
}

void check_cover(const CoverSystem& cover) {
    std::vector<Simplex> uncovered;
    for (const Simplex& s : cover.domain().simplices()) {
        bool found = false;
        for (int id : cover.ids())
            if (cover.pullback_piece(id).contains(s)) { found = true; break; }
        if (!found) uncovered.push_back(s);
    }
    if (!uncovered.empty()) {
        std::ostringstream os;
        os << uncovered.size() << " simplices not covered by any pulled-back piece:";
        for (const Simplex& s : uncovered) os << ' ' << s.str();
        throw NotCovering(std::move(uncovered), os.str());
    }
}

SimplicialComplex intersection(const CoverSystem& cover, const NerveTuple& t,
                               const FilteredComplex& k, int i) {
    std::set<Simplex> kept;
    SimplicialComplex k_i = k.slice(i);
    for (const Simplex& s : k_i.simplices()) {
        bool in_all = true;
        for (int id : t.indices)
            if (!cover.pullback_piece(id).contains(s)) { in_all = false; break; }
        if (in_all) kept.insert(s);
    }
    return SimplicialComplex(std::move(kept));
}

}  // namespace leray
