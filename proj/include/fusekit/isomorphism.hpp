#ifndef FUSEKIT_ISOMORPHISM_HPP
#define FUSEKIT_ISOMORPHISM_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "fusekit/morphism.hpp"

namespace fusekit {

// Cheap isomorphism invariants used to prune searches and identify catalog
// groups.  Equal fingerprints do not certify isomorphism; a search does.
struct Fingerprint {
  int64_t order = 0;
  std::vector<std::pair<int, int64_t>> order_profile;  // (element order, count)
  int64_t center_order = 0;
  int64_t derived_order = 0;
  int derived_length = 0;
  bool abelian = false;

  bool operator==(const Fingerprint&) const = default;
  std::string to_string() const;
};

Fingerprint fingerprint_of(const Sub& h);

// Full automorphism group of p, realized as a permutation group on p's
// elements.  Backtracking over images of a greedy minimal generating
// sequence, pruned by element order and centralizer order, each complete
// assignment verified multiplicatively.  Memoized per subgroup.
// Fails with AutCapExceeded (message carries the partial count found).
AutSet automorphism_group(const Sub& p);

// One isomorphism from a onto b, or nullopt.
std::optional<Morphism> find_isomorphism(const Sub& a, const Sub& b);

bool are_isomorphic(const GroupPtr& a, const GroupPtr& b);

}  // namespace fusekit

#endif
