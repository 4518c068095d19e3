#pragma once

#include "leray/persistence.hpp"

// Brute-force reference computations.  Nothing here touches the double
// complex or the spectral machinery; agreement between the two paths is what
// the verification suite checks.
namespace leray::oracle {

struct CohomologyBasis {
    int dim;
    Matrix representatives;  // cocycle columns spanning H^q
};

// Cohomology of one slice by plain elimination on the coboundaries.
CohomologyBasis direct_cohomology(const SimplicialComplex& k, int q, std::uint32_t p = 2);

// The tower of H^degree(K_i) with restriction maps, computed with explicit
// solve-based coordinates instead of the subquotient machinery.
PersistenceModule direct_tower(const FilteredComplex& k, int degree, std::uint32_t p = 2);

struct InstanceBounds {
    int max_x_simplices = 30;
    int max_y_simplices = 10;
    int max_cover_pieces = 4;
    int max_filtration = 6;  // N
};

struct RandomInstance {
    FilteredComplex complex;
    CoverSystem cover;
};

// Deterministic in the seed: a closure-complete, level-monotone filtered
// complex with a simplicial map onto a small target and a pullback-covering
// piece family.  If 100 random piece families fail to cover, one piece is
// widened to the whole target.
RandomInstance random_instance(std::uint64_t seed, const InstanceBounds& bounds = {});

}  // namespace leray::oracle
