#ifndef FUSEKIT_SPEMBEDDED_HPP
#define FUSEKIT_SPEMBEDDED_HPP

#include <string>

#include "fusekit/group.hpp"

namespace fusekit {

enum class SylowShape {
  Cyclic,
  Quaternion,
  ElementaryAbelian,   // of order >= p^2
  OtherAdmissible,     // exceptional shapes at desk-scale orders
  Inadmissible,
};

// True iff h has a strongly p-embedded subgroup: a proper M < h with p | |M|
// and p coprime to |M cap M^g| for every g outside M.  Decided by the Sylow
// intersection graph: p divides |h|, the Sylow p-subgroup is non-normal, and
// the graph on Syl_p(h) with edges at nontrivial intersection is disconnected.
bool has_strongly_p_embedded(const GroupPtr& h, int p);
bool has_strongly_p_embedded_sub(const Sub& h, int p);

// Shape filter for Sylow subgroups of groups with a strongly p-embedded
// subgroup: admissible shapes are cyclic, generalized quaternion, elementary
// abelian of order >= p^2, and the listed exceptional extraspecial shapes.
// Inadmissible shapes certify that no overgroup with this Sylow qualifies.
SylowShape sylow_shape_filter(const Sub& t, int p);

bool shape_admissible(SylowShape s);
std::string shape_name(SylowShape s);

// Rejects soluble groups whose Sylow p-subgroup is neither cyclic nor
// quaternion: such a group has no strongly p-embedded subgroup.
bool soluble_spe_filter(const Sub& k, int p);

}  // namespace fusekit

#endif
