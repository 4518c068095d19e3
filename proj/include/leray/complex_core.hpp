#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "leray/field_linalg.hpp"

namespace leray {

struct InvalidSimplex : Error {
    explicit InvalidSimplex(const std::string& what) : Error(what) {}
};

// An explicitly listed face carries a smaller level than one of its cofaces,
// so it would disappear from the filtration first.
struct LevelMonotonicityError : Error {
    explicit LevelMonotonicityError(const std::string& what) : Error(what) {}
};

struct InvalidLevel : Error {
    explicit InvalidLevel(const std::string& what) : Error(what) {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& what) : Error(what) {}
};

// A simplex set that is not closed under taking faces.
struct NotSubcomplex : Error {
    explicit NotSubcomplex(const std::string& what) : Error(what) {}
};

// Abstract simplex: strictly increasing non-empty vertex list.
struct Simplex {
    std::vector<int> vertices;

    Simplex() = default;
    explicit Simplex(std::vector<int> verts);  // sorts, rejects duplicates/empty
    Simplex(std::initializer_list<int> verts) : Simplex(std::vector<int>(verts)) {}

    int dimension() const { return static_cast<int>(vertices.size()) - 1; }
    std::vector<Simplex> facets() const;  // codimension-1 faces
    bool has_face(const Simplex& other) const;
    std::string str() const;

    // canonical order: dimension first, then lexicographic on vertex lists
    bool operator<(const Simplex& o) const;
    bool operator==(const Simplex& o) const { return vertices == o.vertices; }
    bool operator!=(const Simplex& o) const { return !(*this == o); }
};

// Finite simplicial complex, closed under faces (validated at construction).
class SimplicialComplex {
public:
    SimplicialComplex() = default;
    explicit SimplicialComplex(std::set<Simplex> simplices);  // throws NotSubcomplex
    static SimplicialComplex closure_of(const std::vector<Simplex>& generators);

    bool contains(const Simplex& s) const { return simplices_.count(s) > 0; }
    const std::set<Simplex>& simplices() const { return simplices_; }
    std::vector<Simplex> simplices_of_dim(int q) const;  // canonical order
    std::size_t size() const { return simplices_.size(); }
    bool empty() const { return simplices_.empty(); }
    int dimension() const;  // -1 for the empty complex
    std::vector<int> vertex_ids() const;

    bool operator==(const SimplicialComplex& o) const { return simplices_ == o.simplices_; }

private:
    std::set<Simplex> simplices_;
};

// Descending filtration K_0 >= K_1 >= ... >= K_N = empty, encoded by per-simplex
// levels: s lies in K_i exactly when i < level(s).
class FilteredComplex {
public:
    FilteredComplex() = default;

    int length() const { return length_; }  // N
    int level(const Simplex& s) const;
    const std::map<Simplex, int>& levels() const { return levels_; }
    const SimplicialComplex& full_complex() const { return full_; }  // K_0
    SimplicialComplex slice(int i) const;                            // K_i

private:
    friend FilteredComplex build_complex(const std::vector<std::pair<std::vector<int>, int>>&,
                                         std::vector<struct BuildWarning>*);
    std::map<Simplex, int> levels_;
    SimplicialComplex full_;
    int length_ = 0;
};

// A face that had to be inserted to close the complex, with the level it
// inherited from its cofaces.
struct BuildWarning {
    Simplex face;
    int level;
};

FilteredComplex build_complex(const std::vector<std::pair<std::vector<int>, int>>& simplex_level_pairs,
                              std::vector<BuildWarning>* warnings = nullptr);

// Matrix of d : C^q(K) -> C^{q+1}(K) with simplicial signs (-1)^j on the
// omitted vertex; bases in canonical order.
Matrix coboundary(const SimplicialComplex& k, int q, std::uint32_t p = 2);

// dim ker d^q - rank d^{q-1}
int cohomology_dim(const SimplicialComplex& k, int q, std::uint32_t p = 2);

// Restriction of q-cochains from big to a subcomplex of it, the linear dual
// of the inclusion: a coefficient survives exactly when its simplex does.
Matrix cochain_restriction(const SimplicialComplex& big, const SimplicialComplex& small, int q,
                           std::uint32_t p = 2);

}  // namespace leray
