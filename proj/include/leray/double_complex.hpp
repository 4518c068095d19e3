#pragma once

#include <map>
#include <utility>
#include <vector>

#include "leray/cover_map.hpp"

namespace leray {

// D * D failed to vanish while assembling the total differential; indicates a
// broken sign convention.
struct SignError : Error {
    explicit SignError(const std::string& what) : Error(what) {}
};

// Basis label of one coordinate of C^{p,q}: a q-simplex of the intersection
// named by a (p+1)-tuple.
struct CochainLabel {
    NerveTuple tuple;
    Simplex simplex;

    bool operator<(const CochainLabel& o) const {
        if (!(tuple == o.tuple)) return tuple < o.tuple;
        return simplex < o.simplex;
    }
    bool operator==(const CochainLabel& o) const {
        return tuple == o.tuple && simplex == o.simplex;
    }
};

// Bigraded cochain array of one filtration slice: C^{p,q} indexed by nerve
// tuples of length p+1 and q-simplices of the corresponding intersections,
// with the Cech difference operator (horizontal) and the simplicial
// coboundary (vertical).  Tuples are enumerated once from the unfiltered
// pullback intersections, so block layouts are comparable across slices.
class DoubleComplexSlice {
public:
    static DoubleComplexSlice build(const FilteredComplex& k, const CoverSystem& cover, int i,
                                    std::uint32_t p = 2);

    int filtration_index() const { return index_; }
    std::uint32_t modulus() const { return mod_; }
    int max_p() const { return max_p_; }  // number of cover pieces - 1
    int max_q() const { return max_q_; }  // dimension of the full domain

    const std::vector<NerveTuple>& tuples(int p) const;
    const SimplicialComplex& tuple_complex(const NerveTuple& t) const;

    std::size_t block_dim(int p, int q) const;
    const std::vector<CochainLabel>& block_basis(int p, int q) const;

    // C^{p,q} -> C^{p+1,q}: alternating sum of restrictions, sign (-1)^j on
    // the omitted index.
    Matrix delta(int p, int q) const;
    // C^{p,q} -> C^{p,q+1}: blockwise simplicial coboundary.
    Matrix vert_d(int p, int q) const;

private:
    int index_ = 0;
    std::uint32_t mod_ = 2;
    int max_p_ = -1;
    int max_q_ = -1;
    std::vector<std::vector<NerveTuple>> tuples_by_p_;
    std::map<NerveTuple, SimplicialComplex> complexes_;
    std::map<std::pair<int, int>, std::vector<CochainLabel>> bases_;
    static const std::vector<CochainLabel> empty_basis_;
    static const std::vector<NerveTuple> empty_tuples_;
};

// Cochain restriction C^{p,q}(slice from) -> C^{p,q}(slice to) for a deeper
// slice of the same cover system: coefficients survive exactly on the labels
// still present.
Matrix block_restriction(const DoubleComplexSlice& from, const DoubleComplexSlice& to, int p, int q);

struct TotalLabel {
    int p = 0;
    CochainLabel cochain;

    bool operator<(const TotalLabel& o) const {
        if (p != o.p) return p < o.p;
        return cochain < o.cochain;
    }
    bool operator==(const TotalLabel& o) const { return p == o.p && cochain == o.cochain; }
};

// Single complex Tot^n = sum over p+q=n of C^{p,q} with D = delta + (-1)^p d.
// Blocks are laid out by ascending p inside each degree.
class TotalComplex {
public:
    static TotalComplex build(const DoubleComplexSlice& slice);

    int filtration_index() const { return index_; }
    std::uint32_t modulus() const { return mod_; }
    int max_p() const { return max_p_; }
    int max_q() const { return max_q_; }
    int top_degree() const { return top_; }

    std::size_t dim(int n) const;
    const std::vector<TotalLabel>& basis(int n) const;
    const Matrix& differential(int n) const;  // D_n : Tot^n -> Tot^{n+1}
    std::size_t block_offset(int n, int p) const;
    std::size_t block_dim(int n, int p) const;

private:
    int index_ = 0;
    std::uint32_t mod_ = 2;
    int max_p_ = -1;
    int max_q_ = -1;
    int top_ = -1;
    std::vector<std::vector<TotalLabel>> bases_;                 // per degree
    std::vector<std::map<int, std::pair<std::size_t, std::size_t>>> blocks_;  // p -> (offset, dim)
    std::vector<Matrix> differentials_;                          // D_0 .. D_top
    static const std::vector<TotalLabel> empty_basis_;
};

// dim ker D_n - rank D_{n-1}
int total_cohomology_dim(const TotalComplex& tc, int n);

// Degreewise cochain restriction Tot^n(from) -> Tot^n(to) between consecutive
// slices of one cover system.
Matrix tot_restriction(const TotalComplex& from, const TotalComplex& to, int n);

}  // namespace leray
