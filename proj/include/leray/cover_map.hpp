#pragma once

#include <map>
#include <vector>

#include "leray/complex_core.hpp"

namespace leray {

// f sends some simplex of X to a vertex set that is no simplex of Y.
struct NotSimplicial : Error {
    NotSimplicial(const Simplex& s, const std::string& what) : Error(what), simplex(s) {}
    Simplex simplex;
};

struct UnmappedVertex : Error {
    explicit UnmappedVertex(const std::string& what) : Error(what) {}
};

// The pulled-back pieces fail to cover X; carries the uncovered simplices.
struct NotCovering : Error {
    NotCovering(std::vector<Simplex> missing, const std::string& what)
        : Error(what), uncovered(std::move(missing)) {}
    std::vector<Simplex> uncovered;
};

// Vertex map inducing a simplicial map X -> Y; collapses are allowed.
class SimplicialMap {
public:
    explicit SimplicialMap(std::map<int, int> vertex_map) : vertex_map_(std::move(vertex_map)) {}
    static SimplicialMap identity(const SimplicialComplex& x);

    int apply(int vertex) const;
    Simplex image(const Simplex& s) const;  // deduplicated, sorted
    const std::map<int, int>& vertex_map() const { return vertex_map_; }

private:
    std::map<int, int> vertex_map_;
};

// Confirms that every simplex of x maps to a simplex of y.
void validate_map(const SimplicialMap& f, const SimplicialComplex& x, const SimplicialComplex& y);

// {s in x : f(s) in u}; closed under faces by construction.
SimplicialComplex pullback(const SimplicialMap& f, const SimplicialComplex& u,
                           const SimplicialComplex& x);

// Strictly increasing tuple of cover indices labelling an intersection.
struct NerveTuple {
    std::vector<int> indices;

    NerveTuple() = default;
    explicit NerveTuple(std::vector<int> idx);
    NerveTuple(std::initializer_list<int> idx) : NerveTuple(std::vector<int>(idx)) {}

    int p() const { return static_cast<int>(indices.size()) - 1; }
    NerveTuple omit(std::size_t j) const;
    std::string str() const;

    bool operator<(const NerveTuple& o) const { return indices < o.indices; }
    bool operator==(const NerveTuple& o) const { return indices == o.indices; }
};

// Indexed cover of Y by subcomplexes together with its pullback along f.
// The pieces need not cover Y; whether the pullback covers X is checked
// separately by check_cover.
class CoverSystem {
public:
    CoverSystem(SimplicialComplex x, SimplicialComplex y, SimplicialMap f,
                std::map<int, SimplicialComplex> pieces);

    const std::vector<int>& ids() const { return ids_; }
    const SimplicialComplex& domain() const { return x_; }
    const SimplicialComplex& target() const { return y_; }
    const SimplicialMap& map() const { return f_; }
    const SimplicialComplex& piece(int id) const;
    const SimplicialComplex& pullback_piece(int id) const;

private:
    SimplicialComplex x_, y_;
    SimplicialMap f_;
    std::map<int, SimplicialComplex> pieces_;
    std::map<int, SimplicialComplex> pullbacks_;
    std::vector<int> ids_;
};

// Every simplex of X must lie in at least one pulled-back piece.
void check_cover(const CoverSystem& cover);

// K_i intersected with all pulled-back pieces named by the tuple.
SimplicialComplex intersection(const CoverSystem& cover, const NerveTuple& t,
                               const FilteredComplex& k, int i);

}  // namespace leray
