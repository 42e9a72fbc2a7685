#ifndef FUSEKIT_TEST_ORACLES_HPP
#define FUSEKIT_TEST_ORACLES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "fusekit/fusion.hpp"
#include "fusekit/group.hpp"

// Independent brute-force oracles.  These deliberately avoid the production
// algorithms: subgroup enumeration is plain join closure over all pairs,
// automorphism counting enumerates raw image tuples, and the fusion oracle
// closes morphism sets under composition with no graph machinery.
namespace fusekit::oracle {

// every subgroup of g, as sorted element-id sets (join closure of cyclics)
std::vector<std::vector<EltId>> all_subgroups(const GroupPtr& g);

// |Aut(g)| by enumerating image tuples of a fixed generating sequence and
// verifying each candidate on the full multiplication table
int64_t automorphism_count(const GroupPtr& g);

// subgroups H <= G (up to G-conjugacy) with t in Syl_p(H): enumerate all
// overgroups of the fixed t, filter by the Sylow condition, reduce
std::vector<Sub> overgroups_with_sylow(const GroupPtr& g, const Sub& t, int p);

// definitional strongly p-embedded detection over the whole subgroup lattice
bool has_strongly_p_embedded(const GroupPtr& h, int p);

// ---- fusion closure oracle --------------------------------------------------

struct FusionClosure {
  GroupPtr s;
  std::vector<std::vector<EltId>> subgroups;          // all subgroups, sorted
  // morphisms[i] = set of (target image vectors) keyed by source subgroup i;
  // each entry is the image list parallel to subgroups[i]
  std::vector<std::set<std::vector<EltId>>> morphisms;

  int subgroup_index(const std::vector<EltId>& set) const;
  // all isomorphisms from subgroup i onto subgroup j
  std::vector<std::vector<EltId>> isos(int i, int j) const;
  bool conjugate(int i, int j) const;
  // automorphisms of subgroup i (image vectors)
  std::vector<std::vector<EltId>> automizer(int i) const;
  std::vector<int> conjugacy_class_of(int i) const;
  std::set<EltId> element_class(EltId x) const;
};

// Builds the full morphism closure of the datum: restrictions of the given
// automorphism maps to all subgroups, closed under composition.
FusionClosure fusion_closure(const GroupPtr& s,
                             const std::vector<std::vector<EltId>>& members,
                             const std::vector<std::vector<std::vector<EltId>>>& auto_gens);

// deterministic xorshift generator for randomized-but-reproducible tests
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
};

}  // namespace fusekit::oracle

// ---- randomized fusion data --------------------------------------------------

namespace fusekit::oracle {

// A deterministic pseudo-random fusion datum on s: a random automizer at the
// top and a random selection of S-centric subgroups with random automizers.
fusekit::FusionData random_datum(const fusekit::GroupPtr& s, int p, Rng& rng);

// oracle-side view of a datum: member element sets plus the generator maps
struct DatumView {
  std::vector<std::vector<EltId>> members;
  std::vector<std::vector<std::vector<EltId>>> auto_gens;
};
DatumView datum_view(const fusekit::FusionData& d);

}  // namespace fusekit::oracle



namespace fusekit::oracle {

// Full cross-check of a fusion system against the morphism closure of its
// datum: conjugacy classes and automizers must coincide.  Returns an error
// description, or an empty string on success.
std::string verify_system_against_closure(const fusekit::FusionSystemPtr& f);

}  // namespace fusekit::oracle

#endif
