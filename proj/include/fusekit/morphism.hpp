#ifndef FUSEKIT_MORPHISM_HPP
#define FUSEKIT_MORPHISM_HPP

#include <vector>

#include "fusekit/group.hpp"

namespace fusekit {

// An injective homomorphism between subgroups, stored as an explicit element
// map: img[i] is the image (an element id in dst.parent) of src.elems[i].
// The image set always equals dst.elems, i.e. morphisms are stored as
// isomorphisms onto their image; inclusions are handled by the callers.
struct Morphism {
  Sub src;
  Sub dst;
  std::vector<EltId> img;

  EltId apply(EltId x) const { return img[src.position_of(x)]; }

  static Morphism identity(const Sub& s);
  Morphism then(const Morphism& next) const;  // apply this, then next
  Morphism inverse() const;
  Morphism restrict_to(const Sub& smaller) const;  // smaller <= src
  bool is_identity_map() const;

  // exhaustive checks (used by validation and tests)
  bool is_multiplicative() const;
};

// A subgroup of Aut(P): a permutation group acting faithfully on the elements
// of P.  Carrier permutations act on positions into base.elems.
struct AutSet {
  Sub base;
  GroupPtr carrier;

  EltId apply(EltId carrier_elt, EltId x) const {
    return base.elems[carrier->elem(carrier_elt)[base.position_of(x)]];
  }
  Morphism as_morphism(EltId carrier_elt) const;
  // The automorphism c_g|_base for g normalizing base; fails if g does not.
  EltId conjugation_class_of(EltId g) const;
  int64_t order() const { return carrier->order(); }
};

// Builds the carrier element for an explicit automorphism given as an element
// map on base (fails if the map is not a carrier member).
EltId carrier_id_of_map(const AutSet& a, const std::vector<EltId>& image_of_base);

// Aut_G(P) = {c_g|_P : g in N_G(P)} for P <= ambient <= G.
AutSet induced_automizer(const Sub& ambient, const Sub& p);

// Inn(P) as a subgroup (element-id set) of the given automorphism carrier.
Sub inner_automorphisms(const AutSet& a);

// The image of base under an automorphism-like permutation of parent elements
// is not needed; automorphisms of subgroups act via AutSet::apply.

// Subgroup of the carrier fixing the subgroup t <= base setwise.
Sub carrier_stabilizer_of_subgroup(const AutSet& a, const Sub& t);

// Restriction homomorphism: elements of stab (carrier ids fixing t setwise)
// restricted to t, returned as an AutSet on t.
AutSet restrict_automorphisms(const AutSet& a, const Sub& stab_elems, const Sub& t);

}  // namespace fusekit

#endif
