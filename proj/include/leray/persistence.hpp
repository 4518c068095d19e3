#pragma once

#include <vector>

#include "leray/spectral.hpp"

namespace leray {

// Finite sequence of F_p vector spaces M_0 -> M_1 -> ... -> M_N with
// connecting maps; everything outside [0, N] is zero.
struct PersistenceModule {
    std::vector<int> dims;     // size N+1
    std::vector<Matrix> maps;  // size N; maps[i] : M_i -> M_{i+1}
    std::uint32_t modulus = 2;

    int length() const { return static_cast<int>(dims.size()) - 1; }  // N
    void validate() const;                                            // shape chain
    Matrix composite(int i, int j) const;  // maps[j-1] ... maps[i]; identity for i == j
};

// Cohomology tower of a filtered complex in one degree, together with the
// cochain-level data it was computed from: H^k(K_i) as subquotients of the
// cochain spaces and the restriction matrices between them.
struct CochainTower {
    PersistenceModule module;
    std::vector<Subquotient> groups;     // size N+1
    std::vector<Matrix> restrictions;    // size N; C^k(K_i) -> C^k(K_{i+1})
};

CochainTower cohomology_tower(const FilteredComplex& k, int degree, std::uint32_t p = 2);

// rank of the composite M_i -> M_{i+p}; indices below 0 clamp to 0 and
// targets beyond N give 0.
int persistent_dim(const PersistenceModule& m, int i, int p);

// Same value computed both ways: composite rank, and the subquotient
// Z_i / (B_{i+p} cap Z_i) at cochain level (cocycles pushed forward along the
// restrictions against the target coboundaries).  The two are asserted equal.
int persistent_dim(const CochainTower& tower, int i, int p);

// Half-open interval [birth, death); death == length+1 encodes survival
// through the last index.
struct Interval {
    int birth = 0;
    int death = 0;

    bool operator==(const Interval& o) const { return birth == o.birth && death == o.death; }
    bool operator<(const Interval& o) const {
        if (birth != o.birth) return birth < o.birth;
        return death < o.death;
    }
};

using Barcode = std::vector<Interval>;  // sorted by (birth, death)

// Column reduction over the chain of connecting maps, oldest bars kept alive
// first; the multiset of intervals matches the rank function of the module.
Barcode interval_decomposition(const PersistenceModule& m);

// The module reassembled as a graded object whose degree-shift operator t
// acts through the connecting maps.
struct GradedModule {
    std::vector<int> dims;
    std::vector<Matrix> t_action;
    std::uint32_t modulus = 2;

    int length() const { return static_cast<int>(dims.size()) - 1; }
    // t sends grade i to grade i+1; grades past the end are zero.
    std::pair<int, Vec> apply_t(int grade, const Vec& v) const;
    // t^power applied at the given grade; empty vector means the element
    // landed in a zero component.
    Vec apply_t_power(int grade, Vec v, int power) const;
};

GradedModule alpha(const PersistenceModule& m);

// The persistence module i -> E_{r,i}^{p,q} with the restriction-induced maps.
PersistenceModule persistent_page_module(const SpectralStack& stack, int r, int p, int q);

PersistenceModule direct_sum(const std::vector<PersistenceModule>& parts, std::uint32_t p);

struct DegreeComparison {
    int degree;
    std::vector<int> tower_dims;  // dim H^n(K_i) per slice
    std::vector<int> einf_dims;   // sum over p+q = n of dim E_inf per slice
    bool dims_equal;
    Barcode oracle_barcode;     // from the cover-free tower
    Barcode spectral_barcode;   // from the assembled E_inf page modules
    bool barcodes_agree;
};

struct PhCompareReport {
    std::vector<DegreeComparison> degrees;
    bool all_dims_equal;
    bool all_barcodes_agree;
};

// Degreewise comparison of the stable page against the direct towers:
// dimension equality is the theorem-level check, barcode agreement is
// reported alongside it.
PhCompareReport ph_compare(const SpectralStack& stack, const FilteredComplex& k);
PhCompareReport ph_compare(const FilteredComplex& k, const CoverSystem& cover, std::uint32_t p = 2);

}  // namespace leray
