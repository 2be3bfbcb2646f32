#pragma once

#include <vector>

#include "hnnlab/exact.hpp"
#include "hnnlab/presentation.hpp"

namespace hnnlab {

using IntMatrix = std::vector<std::vector<Integer>>;

/// Nonzero diagonal entries d1 | d2 | ... of the Smith normal form, all
/// positive.
std::vector<Integer> smith_invariants(IntMatrix m);

/// Rows are relators, columns generators, entries exponent sums.
IntMatrix relation_matrix(const Presentation& p);

struct Abelianization {
    std::size_t betti = 0;
    std::vector<Integer> torsion;  // invariant factors > 1
};

Abelianization abelianization(const Presentation& p);

/// Genus of an index-n cover of a closed genus-g surface: n(g-1)+1.
long genus_from_index(long g, long n);

}  // namespace hnnlab
