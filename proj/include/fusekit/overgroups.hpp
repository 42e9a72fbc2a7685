#ifndef FUSEKIT_OVERGROUPS_HPP
#define FUSEKIT_OVERGROUPS_HPP

#include <vector>

#include "fusekit/group.hpp"

namespace fusekit {

// Smallest subnormal subgroup of g containing t: iterate normal closures
// until stable.
Sub subnormal_closure(const Sub& g, const Sub& t);

// All subgroups of g containing t as a Sylow p-subgroup, up to g-conjugacy.
// Descends through maximal subgroups of subnormal closures, then completes
// with normalizer-side products.  Results are certified (order arithmetic
// plus containment) and pairwise non-conjugate.
std::vector<Sub> overgroups_with_sylow(const GroupPtr& g, const Sub& t, int p);

}  // namespace fusekit

#endif
