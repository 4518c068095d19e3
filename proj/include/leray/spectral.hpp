#pragma once

#include <map>
#include <utility>
#include <vector>

#include "leray/double_complex.hpp"

namespace leray {

// The two independent E_2 computations disagree.
struct MismatchError : Error {
    explicit MismatchError(const std::string& what) : Error(what) {}
};

// One page E_r of the spectral sequence of the horizontally filtered total
// complex.  Every entry in the first-quadrant rectangle [0,max_p]x[0,max_q]
// is realized as an explicit Subquotient; entries outside are zero.  For
// pages produced by page() the ambient spaces are the total degrees and the
// differentials d_r are matrices on the quotient bases; the Cech-route page
// from e2_as_cech() uses its own cochain ambients and carries no
// differentials.
class Page {
public:
    Page() = default;

    int r() const { return r_; }
    int filtration_index() const { return index_; }
    int max_p() const { return max_p_; }
    int max_q() const { return max_q_; }
    std::uint32_t modulus() const { return mod_; }

    bool in_rectangle(int p, int q) const {
        return p >= 0 && p <= max_p_ && q >= 0 && q <= max_q_;
    }
    int dim(int p, int q) const;
    const Subquotient& entry(int p, int q) const;  // throws outside the rectangle
    bool has_differential(int p, int q) const;
    const Matrix& differential(int p, int q) const;  // d_r : (p,q) -> (p+r, q-r+1)

    // nonzero dims keyed by (p,q)
    std::map<std::pair<int, int>, int> dims() const;

private:
    friend Page page(const TotalComplex& tot, int r);
    friend Page e2_as_cech(const DoubleComplexSlice& slice, const TotalComplex& tot);
    int r_ = 0;
    int index_ = 0;
    int max_p_ = -1;
    int max_q_ = -1;
    std::uint32_t mod_ = 2;
    std::map<std::pair<int, int>, Subquotient> entries_;
    std::map<std::pair<int, int>, Matrix> differentials_;
};

// E_r of the horizontal filtration F^p Tot = blocks with column index >= p,
// realized through Z_r^{p,q} = {x in F^p : Dx in F^{p+r}} and
// E_r = Z_r / (Z_{r-1}^{p+1,q-1} + D Z_{r-1}^{p-r+1,q+r-2}).
Page page(const TotalComplex& tot, int r);

// E_2 computed the direct way (per-tuple cohomology, then the cohomology of
// the induced Cech complex) and checked against page(tot, 2); throws
// MismatchError when the dimensions disagree.
Page e2_as_cech(const DoubleComplexSlice& slice, const TotalComplex& tot);
Page e2_as_cech(const DoubleComplexSlice& slice);

struct StablePage {
    Page page;      // a stable realization of E_infinity
    int r_stable;   // first page equal to it
};

// Iterates pages until every differential vanishes and the dimensions stop
// changing; the first-quadrant shape bounds the page count.
StablePage run_to_infinity(const TotalComplex& tot);

struct ConvergenceRow {
    int n;
    int einf_total;  // sum of dim E_inf^{p,q} over p+q = n
    int direct_dim;  // cohomology of the slice, computed without the cover
    bool equal;
};

std::vector<ConvergenceRow> convergence_check(const Page& stable, const SimplicialComplex& k_i);

// Maps E_r^{p,q}(K_i) -> E_r^{p,q}(K_{i+1}) induced by cochain restriction.
struct PageMap {
    int r = 0;
    int source_index = 0;
    std::map<std::pair<int, int>, Matrix> entries;

    Matrix matrix(int p, int q) const;
};

PageMap eta_on_page(const Page& at_i, const Page& at_next, const TotalComplex& tot_i,
                    const TotalComplex& tot_next);

// Exact matrix identities d.eta = eta.d and delta.eta = eta.delta on every
// block of two consecutive slices of one cover system.
bool eta_commutes(const DoubleComplexSlice& from, const DoubleComplexSlice& to);

// Everything the persistent theory needs, computed once per instance: slices,
// total complexes, pages 0..r_infinity and the restriction maps between
// consecutive slices on every page.  Slices are built in parallel (capped by
// LERAY_THREADS); the result is immutable.
class SpectralStack {
public:
    static SpectralStack build(const FilteredComplex& k, const CoverSystem& cover,
                               std::uint32_t p = 2);

    int length() const { return length_; }        // filtration length N
    std::uint32_t modulus() const { return mod_; }
    int r_infinity() const { return r_inf_; }
    int max_p() const { return max_p_; }
    int max_q() const { return max_q_; }
    int top_degree() const { return (max_p_ >= 0 && max_q_ >= 0) ? max_p_ + max_q_ : -1; }

    const DoubleComplexSlice& slice(int i) const { return slices_.at(i); }
    const TotalComplex& total(int i) const { return totals_.at(i); }
    const Page& page_at(int i, int r) const;   // r in [0, r_infinity]
    const PageMap& eta_at(int i, int r) const; // i in [0, N-1]
    int r_stable(int i) const { return r_stable_.at(i); }

private:
    int length_ = 0;
    std::uint32_t mod_ = 2;
    int r_inf_ = 1;
    int max_p_ = -1;
    int max_q_ = -1;
    std::vector<DoubleComplexSlice> slices_;
    std::vector<TotalComplex> totals_;
    std::vector<std::vector<Page>> pages_;
    std::vector<std::vector<PageMap>> etas_;
    std::vector<int> r_stable_;
};

}  // namespace leray
