#ifndef FUSEKIT_SATURATION_HPP
#define FUSEKIT_SATURATION_HPP

#include <optional>
#include <string>

#include "fusekit/fusion.hpp"

namespace fusekit {

// N_alpha = {g in N_S(P) | alpha^{-1} c_g alpha in Aut_S(Q)} for an
// F-isomorphism alpha: P -> Q.
Sub extension_control_subgroup(const FusionSystem& f, const Morphism& alpha);

// For every R with C_S(P)P <= R <= N_S(P), the restriction
// N_{Aut_F(R)}(P) -> N_{Aut_F(P)}(Aut_R(P)) must be surjective.
bool surjectivity_property(const FusionSystem& f, const Sub& p);

enum class SaturationFailure {
  None,
  NotFullyAutomizedS,
  NoSurjectiveRep,
  Generation,
};

struct SaturationReport {
  bool verdict = false;
  std::optional<std::vector<EltId>> failing_class;  // representative element set
  SaturationFailure failing_condition = SaturationFailure::None;
};

std::string failure_name(SaturationFailure f);

// Saturation check: S fully automized, and each fusion-graph component of
// F-centric subgroups has a fully normalized representative with the
// surjectivity property.  Components whose members are not all F-centric are
// outside condition (2); datum members failing F-centricity are reported as
// a generation failure rather than silently passed.
SaturationReport is_saturated(const FusionSystem& f);

}  // namespace fusekit

#endif
